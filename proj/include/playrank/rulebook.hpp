#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "playrank/game_model.hpp"

namespace playrank {

/// A node of the play digraph: a player or the goal node.
struct NodeRef {
  std::optional<PlayerId> player;  // nullopt means the goal node

  static NodeRef goal() { return {}; }
  static NodeRef of(PlayerId id) { return {std::move(id)}; }
  bool is_goal() const { return !player.has_value(); }
  std::string label() const { return player ? *player : std::string("G"); }
  bool operator==(const NodeRef&) const = default;
};

struct Arc {
  NodeRef from;
  NodeRef to;
  int count = 1;

  bool operator==(const Arc&) const = default;
};

/// Arcs one event adds to the digraph. Dead-ball events produce an empty delta.
using ArcDelta = std::vector<Arc>;

// Rule table types. An arc endpoint is either one of the event's actor slots or the
// goal node; the multiplicity is one arc or the event's count (points, free throws).
enum class Endpoint { FirstActor, SecondActor, Goal };
enum class Multiplicity { One, EventCount };

struct ArcTemplate {
  Endpoint from;
  Endpoint to;
  Multiplicity multiplicity = Multiplicity::One;
};

struct ArcRule {
  Sport sport;
  EventKind kind;
  std::optional<ArcTemplate> arc;  // nullopt: no arc drawn
};

class RuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The complete rule table for all three sports.
std::span<const ArcRule> rule_table();

/// Rule for (sport, kind), or nullptr when the kind is not played in that sport.
const ArcRule* find_rule(Sport sport, EventKind kind);

/// Arcs prescribed for one event. Throws RuleError when the event kind has no rule
/// in `sport`, or an actor slot the rule needs is empty.
ArcDelta arcs_for_event(Sport sport, const Event& event);

}  // namespace playrank
