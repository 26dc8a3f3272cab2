#include <doctest.h>

#include "playrank/rulebook.hpp"

using namespace playrank;

namespace {

Arc arc(std::string from, std::string to, int count = 1) {
  auto node = [](std::string id) { return id == "G" ? NodeRef::goal() : NodeRef::of(std::move(id)); };
  return {node(std::move(from)), node(std::move(to)), count};
}

ArcDelta one(std::string from, std::string to, int count = 1) { return {arc(std::move(from), std::move(to), count)}; }

}  // namespace

TEST_CASE("basketball rules") {
  const Sport s = Sport::Basketball;
  CHECK(arcs_for_event(s, Event::pass("A", "B")) == one("B", "A"));
  CHECK(arcs_for_event(s, Event::dispossess("i", "j")) == one("j", "i"));
  CHECK(arcs_for_event(s, Event::intercept("i", "j")) == one("j", "i"));
  CHECK(arcs_for_event(s, Event::score("F", 1)) == one("G", "F"));
  CHECK(arcs_for_event(s, Event::score("F", 3)) == one("G", "F", 3));
  CHECK(arcs_for_event(s, Event::contested_miss("i", "j")) == one("i", "j"));
  CHECK(arcs_for_event(s, Event::uncontested_miss_rebounded("i", "j")) == one("i", "j"));
  CHECK(arcs_for_event(s, Event::foul_with_free_throws("i", "j", 2)) == one("G", "j", 2));
  CHECK(arcs_for_event(s, Event::foul_no_free_throws("i", "j")) == one("j", "i"));
  CHECK(arcs_for_event(s, Event::stoppage()).empty());
  CHECK(arcs_for_event(s, Event::touch("i")).empty());
  CHECK(arcs_for_event(s, Event::unforced_turnover("i")).empty());
}

TEST_CASE("soccer rules") {
  const Sport s = Sport::Soccer;
  CHECK(arcs_for_event(s, Event::pass("i", "j")) == one("j", "i"));
  CHECK(arcs_for_event(s, Event::score("i")) == one("G", "i"));
  CHECK(arcs_for_event(s, Event::contested_miss("i", "j")) == one("i", "j"));
  CHECK(arcs_for_event(s, Event::save("i", "j")) == one("i", "j"));
  CHECK(arcs_for_event(s, Event::foul_leading_to_goal("i", "j")) == one("i", "j"));
  CHECK(arcs_for_event(s, Event::offside("j", "i")) == one("j", "i"));
  CHECK(arcs_for_event(s, Event::uncontested_miss_dead("i")).empty());
  CHECK(arcs_for_event(s, Event::foul_dead("i", "j")).empty());
  CHECK(arcs_for_event(s, Event::stoppage()).empty());
}

TEST_CASE("hockey rules") {
  const Sport s = Sport::Hockey;
  CHECK(arcs_for_event(s, Event::score("i")) == one("G", "i"));
  CHECK(arcs_for_event(s, Event::penalty_drawn_no_ppg("i", "j")) == one("i", "j"));
  CHECK(arcs_for_event(s, Event::penalty_drawn_ppg("i", "j")) == one("j", "i"));
  CHECK(arcs_for_event(s, Event::icing("i", "j")) == one("i", "j"));
  CHECK(arcs_for_event(s, Event::save("i", "j")) == one("i", "j"));
  // Offside points from the offside player back to the passer in hockey.
  CHECK(arcs_for_event(s, Event::offside("j", "i")) == one("i", "j"));
  CHECK(arcs_for_event(s, Event::uncontested_miss_dead("i")).empty());
}

TEST_CASE("a basketball score of n points is n goal arcs to the scorer") {
  for (int n = 1; n <= 4; ++n) {
    const ArcDelta d = arcs_for_event(Sport::Basketball, Event::score("P", n));
    int total = 0;
    for (const Arc& a : d) {
      CHECK(a.from.is_goal());
      CHECK(a.to == NodeRef::of("P"));
      total += a.count;
    }
    CHECK(total == n);
  }
}

TEST_CASE("rule table covers exactly the legal (sport, kind) pairs") {
  for (Sport sport : kAllSports) {
    for (std::size_t k = 0; k < kEventKindCount; ++k) {
      const auto kind = static_cast<EventKind>(k);
      CAPTURE(to_string(sport));
      CAPTURE(schema_of(kind).type_name);
      CHECK((find_rule(sport, kind) != nullptr) == is_legal(sport, kind));
    }
  }
  // No duplicate rows.
  const auto table = rule_table();
  for (std::size_t i = 0; i < table.size(); ++i)
    for (std::size_t j = i + 1; j < table.size(); ++j)
      CHECK_FALSE((table[i].sport == table[j].sport && table[i].kind == table[j].kind));
}

TEST_CASE("every legal event maps without error and only adds arcs") {
  for (Sport sport : kAllSports) {
    for (std::size_t k = 0; k < kEventKindCount; ++k) {
      const auto kind = static_cast<EventKind>(k);
      if (!is_legal(sport, kind)) continue;
      Event e;
      e.kind = kind;
      const EventSchema& schema = schema_of(kind);
      if (schema.arity >= 1) e.actors[0] = "x";
      if (schema.arity >= 2) e.actors[1] = "y";
      if (auto range = quantity_range(sport, kind)) e.quantity = range->min;
      ArcDelta d;
      CHECK_NOTHROW(d = arcs_for_event(sport, e));
      for (const Arc& a : d) CHECK(a.count >= 1);
    }
  }
}

TEST_CASE("events without a rule in the sport are rejected") {
  CHECK_THROWS_AS(arcs_for_event(Sport::Basketball, Event::icing("i", "j")), RuleError);
  CHECK_THROWS_AS(arcs_for_event(Sport::Soccer, Event::foul_no_free_throws("i", "j")), RuleError);
  CHECK_THROWS_AS(arcs_for_event(Sport::Hockey, Event::foul_leading_to_goal("i", "j")), RuleError);
  CHECK_THROWS_AS(arcs_for_event(Sport::Basketball, Event::score("i", 0)), RuleError);
}
