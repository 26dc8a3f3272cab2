#include "playrank/rulebook.hpp"

#include <array>

namespace playrank {

namespace {

using enum Endpoint;
using enum EventKind;
constexpr auto kCount = Multiplicity::EventCount;

// Actor slot order follows EventSchema::roles, e.g. Pass(from, to), Dispossess(winner,
// loser), Save(shooter, keeper). "First -> Second" reads "arc from first actor's node".
constexpr ArcTemplate arc(Endpoint from, Endpoint to, Multiplicity m = Multiplicity::One) { return {from, to, m}; }
constexpr std::optional<ArcTemplate> kNoArc = std::nullopt;

constexpr std::array kRules = {
    // Basketball
    ArcRule{Sport::Basketball, Pass, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Basketball, Dispossess, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Basketball, Score, arc(Goal, FirstActor, kCount)},
    ArcRule{Sport::Basketball, ContestedMiss, arc(FirstActor, SecondActor)},
    ArcRule{Sport::Basketball, UncontestedMissRebounded, arc(FirstActor, SecondActor)},
    ArcRule{Sport::Basketball, FoulWithFreeThrows, arc(Goal, SecondActor, kCount)},
    ArcRule{Sport::Basketball, FoulNoFreeThrows, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Basketball, Stoppage, kNoArc},
    ArcRule{Sport::Basketball, Intercept, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Basketball, Touch, kNoArc},
    ArcRule{Sport::Basketball, UnforcedTurnover, kNoArc},

    // Soccer
    ArcRule{Sport::Soccer, Pass, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Soccer, Dispossess, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Soccer, Score, arc(Goal, FirstActor)},
    ArcRule{Sport::Soccer, ContestedMiss, arc(FirstActor, SecondActor)},
    ArcRule{Sport::Soccer, UncontestedMissDead, kNoArc},
    ArcRule{Sport::Soccer, Save, arc(FirstActor, SecondActor)},
    ArcRule{Sport::Soccer, FoulDead, kNoArc},
    ArcRule{Sport::Soccer, FoulLeadingToGoal, arc(FirstActor, SecondActor)},
    ArcRule{Sport::Soccer, Stoppage, kNoArc},
    ArcRule{Sport::Soccer, Intercept, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Soccer, Touch, kNoArc},
    ArcRule{Sport::Soccer, UnforcedTurnover, kNoArc},
    ArcRule{Sport::Soccer, Offside, arc(FirstActor, SecondActor)},  // passer -> offside player

    // Hockey
    ArcRule{Sport::Hockey, Pass, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Hockey, Dispossess, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Hockey, Score, arc(Goal, FirstActor)},
    ArcRule{Sport::Hockey, ContestedMiss, arc(FirstActor, SecondActor)},
    ArcRule{Sport::Hockey, Save, arc(FirstActor, SecondActor)},
    ArcRule{Sport::Hockey, UncontestedMissDead, kNoArc},
    ArcRule{Sport::Hockey, PenaltyDrawnNoPPG, arc(FirstActor, SecondActor)},
    ArcRule{Sport::Hockey, PenaltyDrawnPPG, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Hockey, Stoppage, kNoArc},
    ArcRule{Sport::Hockey, Intercept, arc(SecondActor, FirstActor)},
    ArcRule{Sport::Hockey, Touch, kNoArc},
    ArcRule{Sport::Hockey, UnforcedTurnover, kNoArc},
    ArcRule{Sport::Hockey, Offside, arc(SecondActor, FirstActor)},  // offside player -> passer
    ArcRule{Sport::Hockey, Icing, arc(FirstActor, SecondActor)},
};

NodeRef resolve(Endpoint endpoint, const Event& event) {
  switch (endpoint) {
    case FirstActor: return NodeRef::of(event.actors[0]);
    case SecondActor: return NodeRef::of(event.actors[1]);
    case Goal: return NodeRef::goal();
  }
  return NodeRef::goal();
}

}  // namespace

std::span<const ArcRule> rule_table() { return kRules; }

const ArcRule* find_rule(Sport sport, EventKind kind) {
  for (const ArcRule& rule : kRules) {
    if (rule.sport == sport && rule.kind == kind) return &rule;
  }
  return nullptr;
}

ArcDelta arcs_for_event(Sport sport, const Event& event) {
  const ArcRule* rule = find_rule(sport, event.kind);
  if (rule == nullptr) {
    throw RuleError("event type '" + std::string(schema_of(event.kind).type_name) + "' has no rule in " +
                    std::string(to_string(sport)));
  }
  if (!rule->arc) return {};

  const ArcTemplate& t = *rule->arc;
  for (Endpoint end : {t.from, t.to}) {
    if (end != Goal && event.actors[end == FirstActor ? 0 : 1].empty()) {
      throw RuleError("event type '" + std::string(schema_of(event.kind).type_name) + "' is missing an actor");
    }
  }
  const int count = t.multiplicity == Multiplicity::One ? 1 : event.quantity;
  if (count < 1) {
    throw RuleError("event type '" + std::string(schema_of(event.kind).type_name) + "' has non-positive count");
  }
  return {Arc{resolve(t.from, event), resolve(t.to, event), count}};
}

}  // namespace playrank
