#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "playrank/ranking.hpp"
#include "worked_example.hpp"

using namespace playrank;

namespace {

Roster roster(std::string name, std::initializer_list<const char*> ids) {
  Roster r{std::move(name), {}};
  for (const char* id : ids) r.players.push_back({id, id, false});
  return r;
}

oracle::Counts counts_of(const PlayDigraph& g) {
  oracle::Counts c(g.node_count(), std::vector<std::int64_t>(g.node_count()));
  for (std::size_t i = 0; i < g.node_count(); ++i)
    for (std::size_t j = 0; j < g.node_count(); ++j) c[i][j] = g.count(i, j);
  return c;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

GameLog scorers_game(int g1, int g2) {
  GameLog log;
  log.sport = Sport::Soccer;
  log.teams = {roster("One", {"P1"}), roster("Two", {"P2"})};
  for (int k = 0; k < g1; ++k) log.events.push_back(Event::score("P1"));
  for (int k = 0; k < g2; ++k) log.events.push_back(Event::score("P2"));
  return log;
}

}  // namespace

TEST_CASE("initial digraph for 3-on-3") {
  const PlayDigraph g = init_digraph(roster("Reds", {"A", "B", "C"}), roster("Blues", {"D", "E", "F"}));
  REQUIRE(g.node_count() == 7);
  CHECK(g.goal_index() == 6);
  for (std::size_t j = 0; j < 7; ++j) CHECK(g.count(6, j) == 1);
  for (std::size_t p = 0; p < 6; ++p) {
    CHECK(g.out_degree(p) == 1);
    CHECK(g.count(p, 6) == 1);
  }
  CHECK(g.out_degree(6) == 7);
  CHECK(g.node_order()[3] == NodeRef::of("D"));
  CHECK(g.node_order()[6].is_goal());
}

TEST_CASE("initial digraph for two players") {
  const PlayDigraph g = init_digraph(roster("One", {"P"}), roster("Two", {"Q"}));
  const std::vector<std::vector<std::int64_t>> expected = {{0, 0, 1}, {0, 0, 1}, {1, 1, 1}};
  CHECK(counts_of(g) == expected);
}

TEST_CASE("initial transition: goal row uniform, player rows point at the goal") {
  const PlayDigraph g = init_digraph(roster("Reds", {"A", "B", "C"}), roster("Blues", {"D", "E", "F"}));
  const TransitionMatrix t = to_transition(g);
  for (std::size_t j = 0; j < 7; ++j) CHECK(t.exact()(6, j) == Rational(1, 7));
  for (std::size_t p = 0; p < 6; ++p)
    for (std::size_t j = 0; j < 7; ++j) CHECK(t.exact()(p, j) == Rational(j == 6 ? 1 : 0));
}

TEST_CASE("worked example reproduces the printed adjacency matrix") {
  const GameLog log = testing::worked_example_log();
  const PlayDigraph g = build_digraph(log);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(g.count(i, j) == testing::kPrintedAdjacency[i][j]);
    }
}

TEST_CASE("worked example column-stochastic form equals the printed transition matrix") {
  const TransitionMatrix t = to_transition(build_digraph(testing::worked_example_log()));
  const SquareMatrix<Rational> printed = t.column_stochastic();
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      const auto [num, den] = testing::kPrintedTransition[i][j];
      CHECK(printed(i, j) == Rational(num, den));
    }
  CHECK(printed(0, 1) == Rational(2, 7));
  CHECK(printed(0, 6) == Rational(4, 13));
}

TEST_CASE("apply_events: identity, additivity, monotonicity") {
  const Roster a = roster("Reds", {"A", "B"}), b = roster("Blues", {"D"});
  const PlayDigraph start = init_digraph(a, b);

  GameLog log;
  log.teams = {a, b};
  CHECK(apply_events(start, log) == start);

  log.events = {Event::score("A", 2), Event::score("A", 2)};
  const PlayDigraph scored = apply_events(start, log);
  CHECK(scored.count(scored.goal_index(), 0) == 5);

  const GameLog random = generate_random_game(Sport::Basketball, 9, 300, 42);
  const PlayDigraph before = init_digraph(random.teams[0], random.teams[1]);
  const PlayDigraph after = apply_events(before, random);
  for (std::size_t i = 0; i < before.node_count(); ++i)
    for (std::size_t j = 0; j < before.node_count(); ++j) CHECK(after.count(i, j) >= before.count(i, j));

  // Final counts don't depend on event order.
  GameLog reversed = random;
  std::reverse(reversed.events.begin(), reversed.events.end());
  CHECK(apply_events(before, reversed) == after);
}

TEST_CASE("transition rows sum to exactly one") {
  const GameLog log = generate_random_game(Sport::Hockey, 14, 400, 9);
  const TransitionMatrix t = to_transition(build_digraph(log));
  for (std::size_t i = 0; i < t.order(); ++i) {
    Rational sum = 0;
    double fsum = 0.0;
    for (std::size_t j = 0; j < t.order(); ++j) {
      sum += t.exact()(i, j);
      fsum += t.floating()(i, j);
    }
    CHECK(sum == Rational(1));
    CHECK(std::abs(fsum - 1.0) <= 1e-12);
  }
}

TEST_CASE("corrupted matrices are rejected") {
  PlayDigraph g({NodeRef::of("A"), NodeRef::goal()});
  g.add_arcs(1, 0, 1);
  CHECK_THROWS_AS(to_transition(g), CorruptGraphError);

  SquareMatrix<Rational> m(2, Rational(1, 3));
  CHECK_THROWS_AS(TransitionMatrix{m}, CorruptGraphError);
  CHECK_THROWS_AS(g.add_arcs(0, 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(PlayDigraph({NodeRef::goal(), NodeRef::of("A")}), std::invalid_argument);
}

TEST_CASE("primitivity") {
  SUBCASE("initialized game graphs have exponent 2") {
    const PlayDigraph g = init_digraph(roster("R", {"A", "B", "C"}), roster("B", {"D", "E", "F"}));
    const auto r = check_primitive(to_transition(g));
    CHECK(r.primitive);
    CHECK(r.exponent == 2);
  }
  SUBCASE("identity is not primitive") {
    SquareMatrix<bool> id(3, false);
    for (std::size_t i = 0; i < 3; ++i) id(i, i) = true;
    const auto r = check_primitive(id);
    CHECK_FALSE(r.primitive);
    CHECK_FALSE(r.exponent.has_value());
  }
  SUBCASE("worked example agrees with walk enumeration") {
    const TransitionMatrix t = to_transition(build_digraph(testing::worked_example_log()));
    std::vector<std::vector<bool>> pattern(7, std::vector<bool>(7));
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) pattern[i][j] = t.exact()(i, j) > Rational(0);
    CHECK(oracle::brute_force_primitive_exponent(pattern, wielandt_bound(7)) == 2);
    const auto r = check_primitive(t);
    CHECK(r.primitive);
    CHECK(r.exponent == 2);
  }
  SUBCASE("periodic cycle is irreducible but not primitive") {
    SquareMatrix<bool> cycle(4, false);
    for (std::size_t i = 0; i < 4; ++i) cycle(i, (i + 1) % 4) = true;
    CHECK_FALSE(check_primitive(cycle).primitive);
  }
  SUBCASE("Wielandt matrix needs the full bound") {
    // Cycle 0->1->2->3->0 plus the chord 3->1: the extremal primitive example.
    const std::size_t n = 4;
    SquareMatrix<bool> w(n, false);
    std::vector<std::vector<bool>> pattern(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      w(i, (i + 1) % n) = true;
      pattern[i][(i + 1) % n] = true;
    }
    w(n - 1, 1) = true;
    pattern[n - 1][1] = true;
    const auto r = check_primitive(w);
    CHECK(r.primitive);
    CHECK(r.exponent == wielandt_bound(n));
    CHECK(oracle::brute_force_primitive_exponent(pattern, 100) == wielandt_bound(n));
  }
}

TEST_CASE("two-player game without events: v = (1/5, 1/5, 3/5)") {
  const PlayDigraph g = init_digraph(roster("One", {"P"}), roster("Two", {"Q"}));
  const auto exact = oracle::exact_stationary(counts_of(g));
  CHECK(exact[0] == oracle::BigRational(1, 5));
  CHECK(exact[2] == oracle::BigRational(3, 5));

  const TransitionMatrix t = to_transition(g);
  for (const RankVector& r : {stationary_power(t), stationary_direct(t)}) {
    CHECK(std::abs(r.player_ranks[0] - 0.2) <= 1e-11);
    CHECK(std::abs(r.player_ranks[1] - 0.2) <= 1e-11);
    CHECK(std::abs(r.goal_rank - 0.6) <= 1e-11);
    CHECK(r.residual <= 1e-12);
  }
  CHECK(stationary_direct(t).method == SolverMethod::DirectSolve);
  CHECK(stationary_power(t).method == SolverMethod::PowerIteration);
}

TEST_CASE("two scorers (2 goals vs 1): v = (3/11, 2/11, 6/11)") {
  const PlayDigraph g = build_digraph(scorers_game(2, 1));
  CHECK(g.out_degree(g.goal_index()) == 6);
  const auto exact = oracle::exact_stationary(counts_of(g));
  CHECK(exact[0] == oracle::BigRational(3, 11));
  CHECK(exact[1] == oracle::BigRational(2, 11));
  CHECK(exact[2] == oracle::BigRational(6, 11));

  const RankVector r = stationary_direct(to_transition(g));
  CHECK(std::abs(r.player_ranks[0] - 3.0 / 11) <= 1e-15);
  CHECK(std::abs(r.player_ranks[1] - 2.0 / 11) <= 1e-15);
  CHECK(std::abs(r.goal_rank - 6.0 / 11) <= 1e-15);
}

TEST_CASE("worked example stationary vector matches the exact oracle") {
  const PlayDigraph g = build_digraph(testing::worked_example_log());
  const auto exact = oracle::exact_stationary(counts_of(g));
  std::vector<double> expected;
  for (const auto& x : exact) expected.push_back(static_cast<double>(x));

  const TransitionMatrix t = to_transition(g);
  CHECK(max_abs_diff(stationary_power(t).full(), expected) <= 1e-12);
  CHECK(max_abs_diff(stationary_direct(t).full(), expected) <= 1e-14);
}

TEST_CASE("symmetric start: every player of an event-free game ranks the same") {
  for (std::size_t n : {2u, 5u, 12u, 30u}) {
    const GameLog log = generate_random_game(Sport::Basketball, n, 0, 1);
    const RankVector r = stationary_power(to_transition(build_digraph(log)));
    for (double x : r.player_ranks) CHECK(x == doctest::Approx(r.player_ranks.front()).epsilon(1e-13));
    // r_g = (n+1)/(2n+1)
    CHECK(r.goal_rank == doctest::Approx(double(n + 1) / double(2 * n + 1)).epsilon(1e-12));
  }
}

TEST_CASE("power iteration that runs out of iterations reports non-convergence") {
  const TransitionMatrix t = to_transition(build_digraph(testing::worked_example_log()));
  CHECK_THROWS_AS(stationary_power(t, {1e-12, 3}), NonConvergenceError);
  try {
    stationary_power(t, {1e-12, 3});
  } catch (const NonConvergenceError& e) {
    CHECK(e.iterations() == 3);
    CHECK(e.last_step() > 1e-12);
  }
  CHECK_THROWS_AS(stationary_power(t, {0.0, 10}), std::invalid_argument);
  CHECK_THROWS_AS(stationary_power(t, {1e-12, 0}), std::invalid_argument);
}

TEST_CASE("direct solve of a reducible chain is singular") {
  SquareMatrix<Rational> id(3, Rational(0));
  for (std::size_t i = 0; i < 3; ++i) id(i, i) = 1;
  CHECK_THROWS_AS(stationary_direct(TransitionMatrix(id)), SingularSystemError);
}

TEST_CASE("relabeling players permutes the rank vector") {
  const GameLog log = generate_random_game(Sport::Soccer, 10, 250, 77);
  GameLog shuffled = log;
  std::reverse(shuffled.teams[0].players.begin(), shuffled.teams[0].players.end());
  std::rotate(shuffled.teams[1].players.begin(), shuffled.teams[1].players.begin() + 2, shuffled.teams[1].players.end());

  const RankVector a = stationary_direct(to_transition(build_digraph(log)));
  const RankVector b = stationary_direct(to_transition(build_digraph(shuffled)));
  const PlayDigraph ga = build_digraph(log), gb = build_digraph(shuffled);
  for (std::size_t i = 0; i < ga.player_count(); ++i) {
    const std::size_t j = gb.index_of(ga.node_order()[i]);
    CHECK(a.player_ranks[i] == doctest::Approx(b.player_ranks[j]).epsilon(1e-12));
  }
  CHECK(a.goal_rank == doctest::Approx(b.goal_rank).epsilon(1e-12));
}
