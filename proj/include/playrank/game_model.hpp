#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace playrank {

enum class Sport : std::uint8_t { Basketball, Soccer, Hockey };

inline constexpr std::array<Sport, 3> kAllSports = {Sport::Basketball, Sport::Soccer, Sport::Hockey};

std::string_view to_string(Sport sport);
std::optional<Sport> sport_from_string(std::string_view text);

/// Caller-supplied player identifier, e.g. a surname. Never generated by the engine
/// except by the synthetic game generator.
using PlayerId = std::string;

struct Player {
  PlayerId id;
  std::string display_name;
  bool starter = false;

  bool operator==(const Player&) const = default;
};

/// Ordered list of players for one team. The order fixes the row/column order of
/// the transition matrix.
struct Roster {
  std::string team_name;
  std::vector<Player> players;

  std::size_t size() const { return players.size(); }
  bool contains(std::string_view id) const;
  bool operator==(const Roster&) const = default;
};

// Event vocabulary. Every variant carries up to two actors and an optional count
// (points scored, free throws made). The per-kind schema below names each slot.
enum class EventKind : std::uint8_t {
  Pass,
  Dispossess,
  Intercept,
  Touch,
  UnforcedTurnover,
  Stoppage,
  ContestedMiss,
  Score,
  UncontestedMissRebounded,
  FoulWithFreeThrows,
  FoulNoFreeThrows,
  UncontestedMissDead,
  Save,
  FoulDead,
  FoulLeadingToGoal,
  Offside,
  PenaltyDrawnNoPPG,
  PenaltyDrawnPPG,
  Icing,
};

inline constexpr std::size_t kEventKindCount = 19;

/// Required relationship between the two actors of an event.
enum class TeamRelation : std::uint8_t { NotApplicable, SameTeam, OppositeTeams, Either };

struct EventSchema {
  EventKind kind;
  std::string_view type_name;             // JSON "type" value
  std::size_t arity;                      // number of actor slots in use (0..2)
  std::array<std::string_view, 2> roles;  // JSON field names of the actor slots
  std::string_view quantity_name;         // JSON field name of the count, empty if none
  TeamRelation relation;
  std::array<bool, 3> legal_in;           // indexed by Sport
};

const EventSchema& schema_of(EventKind kind);
std::optional<EventKind> kind_from_type_name(std::string_view type_name);
bool is_legal(Sport sport, EventKind kind);

struct QuantityRange {
  int min = 0;
  int max = 0;
};

/// Allowed count for kinds carrying one: basketball scores are worth 1..4 arcs,
/// soccer and hockey scores exactly 1, made free throws at least 1.
std::optional<QuantityRange> quantity_range(Sport sport, EventKind kind);

struct Event {
  EventKind kind = EventKind::Stoppage;
  std::array<PlayerId, 2> actors;
  int quantity = 0;

  bool operator==(const Event&) const = default;

  static Event pass(PlayerId from, PlayerId to);
  static Event dispossess(PlayerId winner, PlayerId loser);
  static Event intercept(PlayerId winner, PlayerId passer);
  static Event touch(PlayerId player);
  static Event unforced_turnover(PlayerId player);
  static Event stoppage();
  static Event contested_miss(PlayerId shooter, PlayerId defender);
  static Event score(PlayerId scorer, int points = 1);
  static Event uncontested_miss_rebounded(PlayerId shooter, PlayerId rebounder);
  static Event foul_with_free_throws(PlayerId fouler, PlayerId fouled, int made);
  static Event foul_no_free_throws(PlayerId fouler, PlayerId fouled);
  static Event uncontested_miss_dead(PlayerId shooter);
  static Event save(PlayerId shooter, PlayerId keeper);
  static Event foul_dead(PlayerId fouler, PlayerId fouled);
  static Event foul_leading_to_goal(PlayerId fouler, PlayerId fouled);
  static Event offside(PlayerId passer, PlayerId offside_player);
  static Event penalty_drawn_no_ppg(PlayerId drawer, PlayerId penalized);
  static Event penalty_drawn_ppg(PlayerId drawer, PlayerId penalized);
  static Event icing(PlayerId icer, PlayerId toucher);
};

struct GameMetadata {
  std::optional<std::string> date;
  std::optional<std::string> final_score;  // "<team 1 points>-<team 2 points>"

  bool operator==(const GameMetadata&) const = default;
};

/// Parses "92-89" into (team 1, team 2) points.
std::optional<std::pair<int, int>> parse_final_score(std::string_view text);

struct GameLog {
  Sport sport = Sport::Basketball;
  std::array<Roster, 2> teams;
  std::vector<Event> events;
  GameMetadata metadata;

  std::size_t player_count() const { return teams[0].size() + teams[1].size(); }
  /// Team index (0 or 1) of a player, or nullopt when not on either roster.
  std::optional<std::size_t> team_of(std::string_view id) const;
  bool operator==(const GameLog&) const = default;
};

struct Violation {
  std::optional<std::size_t> event_index;  // nullopt for roster-level problems
  std::string reason;

  bool operator==(const Violation&) const = default;
};

std::string describe(const Violation& violation);

/// Collects every broken roster or event invariant. An empty result means the log
/// is safe to feed to the ranking pipeline.
std::vector<Violation> validate_game(const GameLog& log);

/// Relative frequency per event kind for the synthetic generator; kinds illegal
/// in the chosen sport are ignored.
struct GeneratorWeights {
  std::array<double, kEventKindCount> weight;

  GeneratorWeights();
  double& operator[](EventKind kind) { return weight[static_cast<std::size_t>(kind)]; }
  double operator[](EventKind kind) const { return weight[static_cast<std::size_t>(kind)]; }
};

/// Deterministic random game for property testing. Team 1 gets ceil(n/2) players.
/// Throws std::invalid_argument when n_players < 2.
GameLog generate_random_game(Sport sport, std::size_t n_players, std::size_t n_events,
                             std::uint64_t seed, const GeneratorWeights& weights = {});

}  // namespace playrank
