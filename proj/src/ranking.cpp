#include "playrank/ranking.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace playrank {

PlayDigraph::PlayDigraph(std::vector<NodeRef> node_order)
    : nodes_(std::move(node_order)), counts_(nodes_.size(), 0) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_goal()) {
      if (i + 1 != nodes_.size()) throw std::invalid_argument("goal node must be the last node");
      continue;
    }
    if (!player_index_.emplace(*nodes_[i].player, i).second) {
      throw std::invalid_argument("duplicate player node '" + *nodes_[i].player + "'");
    }
  }
  if (nodes_.empty() || !nodes_.back().is_goal()) throw std::invalid_argument("digraph needs a goal node");
}

std::int64_t PlayDigraph::out_degree(std::size_t node) const {
  std::int64_t total = 0;
  for (std::size_t j = 0; j < node_count(); ++j) total += counts_(node, j);
  return total;
}

std::size_t PlayDigraph::index_of(const NodeRef& node) const {
  if (node.is_goal()) return goal_index();
  auto it = player_index_.find(*node.player);
  if (it == player_index_.end()) throw std::out_of_range("no node for player '" + *node.player + "'");
  return it->second;
}

void PlayDigraph::add_arcs(std::size_t from, std::size_t to, std::int64_t count) {
  if (count < 0) throw std::invalid_argument("arc counts only increase");
  counts_(from, to) += count;
}

void PlayDigraph::apply(const ArcDelta& delta) {
  for (const Arc& arc : delta) add_arcs(index_of(arc.from), index_of(arc.to), arc.count);
}

PlayDigraph init_digraph(const Roster& team1, const Roster& team2) {
  std::vector<NodeRef> nodes;
  nodes.reserve(team1.size() + team2.size() + 1);
  for (const Roster* roster : {&team1, &team2}) {
    for (const Player& p : roster->players) nodes.push_back(NodeRef::of(p.id));
  }
  nodes.push_back(NodeRef::goal());

  PlayDigraph graph(std::move(nodes));
  const std::size_t goal = graph.goal_index();
  for (std::size_t p = 0; p < goal; ++p) {
    graph.add_arcs(p, goal, 1);
    graph.add_arcs(goal, p, 1);
  }
  graph.add_arcs(goal, goal, 1);
  return graph;
}

PlayDigraph apply_events(PlayDigraph graph, const GameLog& log) {
  for (const Event& event : log.events) graph.apply(arcs_for_event(log.sport, event));
  return graph;
}

PlayDigraph build_digraph(const GameLog& log) {
  return apply_events(init_digraph(log.teams[0], log.teams[1]), log);
}

TransitionMatrix::TransitionMatrix(SquareMatrix<Rational> row_stochastic)
    : exact_(std::move(row_stochastic)), floating_(exact_.order()) {
  const std::size_t n = exact_.order();
  for (std::size_t i = 0; i < n; ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& entry = exact_(i, j);
      if (entry < Rational(0)) throw CorruptGraphError("negative transition probability in row " + std::to_string(i));
      sum += entry;
      floating_(i, j) = boost::rational_cast<double>(entry);
    }
    if (sum != Rational(1)) throw CorruptGraphError("row " + std::to_string(i) + " does not sum to 1");
  }
}

TransitionMatrix to_transition(const PlayDigraph& graph) {
  const std::size_t n = graph.node_count();
  SquareMatrix<Rational> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t degree = graph.out_degree(i);
    if (degree <= 0) {
      throw CorruptGraphError("node '" + graph.node_order()[i].label() + "' has no outgoing arcs");
    }
    for (std::size_t j = 0; j < n; ++j) t(i, j) = Rational(graph.count(i, j), degree);
  }
  return TransitionMatrix(std::move(t));
}

std::size_t wielandt_bound(std::size_t order) { return order * order - 2 * order + 2; }

PrimitivityResult check_primitive(const SquareMatrix<bool>& pattern) {
  const std::size_t n = pattern.order();
  if (n == 0) return {};

  SquareMatrix<bool> power = pattern;
  const std::size_t bound = wielandt_bound(n);
  for (std::size_t m = 1; m <= bound; ++m) {
    bool all_positive = true;
    for (std::size_t i = 0; i < n && all_positive; ++i)
      for (std::size_t j = 0; j < n && all_positive; ++j) all_positive = power(i, j);
    if (all_positive) return {true, m};
    if (m == bound) break;

    SquareMatrix<bool> next(n, false);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (!power(i, k)) continue;
        for (std::size_t j = 0; j < n; ++j) next(i, j) = next(i, j) || pattern(k, j);
      }
    if (next == power) break;  // the power sequence has reached a fixed point
    power = std::move(next);
  }
  return {};
}

PrimitivityResult check_primitive(const TransitionMatrix& t) {
  const std::size_t n = t.order();
  SquareMatrix<bool> pattern(n, false);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pattern(i, j) = t.exact()(i, j) > Rational(0);
  return check_primitive(pattern);
}

std::string_view to_string(SolverMethod method) {
  return method == SolverMethod::PowerIteration ? "power" : "direct";
}

std::vector<double> RankVector::full() const {
  std::vector<double> v = player_ranks;
  v.push_back(goal_rank);
  return v;
}

NonConvergenceError::NonConvergenceError(std::size_t iterations, double last_step)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "power iteration did not converge after " << iterations << " iterations (last step " << last_step
            << ")";
        return msg.str();
      }()),
      iterations_(iterations),
      last_step_(last_step) {}

double stationary_residual(const SquareMatrix<double>& t, const std::vector<double>& v) {
  const std::size_t n = t.order();
  std::vector<double> image(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) image[j] += t(i, j) * v[i];
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(image[j] - v[j]));
  return worst;
}

namespace {

RankVector to_rank_vector(const TransitionMatrix& t, std::vector<double> v, SolverMethod method,
                          std::size_t iterations) {
  RankVector r;
  r.residual = stationary_residual(t.floating(), v);
  r.goal_rank = v.back();
  v.pop_back();
  r.player_ranks = std::move(v);
  r.method = method;
  r.iterations = iterations;
  return r;
}

}  // namespace

RankVector stationary_power(const TransitionMatrix& t, const PowerOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (options.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");

  const std::size_t n = t.order();
  const SquareMatrix<double>& m = t.floating();
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  double step = 0.0;
  for (std::size_t iter = 1; iter <= options.max_iters; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = v[i];
      for (std::size_t j = 0; j < n; ++j) next[j] += m(i, j) * vi;
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    step = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      next[j] /= total;
      step += std::abs(next[j] - v[j]);
    }
    std::swap(v, next);
    if (step <= options.tol) return to_rank_vector(t, std::move(v), SolverMethod::PowerIteration, iter);
  }
  throw NonConvergenceError(options.max_iters, step);
}

RankVector stationary_direct(const TransitionMatrix& t) {
  const std::size_t n = t.order();
  const SquareMatrix<double>& m = t.floating();

  // Augmented system [A | b] with A = T^t - I, last row replaced by all ones.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(j, i) - (i == j ? 1.0 : 0.0);
  }
  std::fill(a[n - 1].begin(), a[n - 1].end() - 1, 1.0);
  a[n - 1][n] = 1.0;

  constexpr double kPivotFloor = 1e-13;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < kPivotFloor) {
      throw SingularSystemError("stationary system is singular at column " + std::to_string(col));
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t k = col; k <= n; ++k) a[row][k] -= factor * a[col][k];
    }
  }

  std::vector<double> v(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = a[i][n];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * v[k];
    v[i] = acc / a[i][i];
  }
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
  return to_rank_vector(t, std::move(v), SolverMethod::DirectSolve, 0);
}

}  // namespace playrank
