#include "playrank/game_model.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <set>
#include <stdexcept>

namespace playrank {

namespace {

constexpr bool B = true;
constexpr bool _ = false;

using enum TeamRelation;

// Order matches EventKind.
constexpr std::array<EventSchema, kEventKindCount> kSchemas = {{
    //                                           arity  roles                          quantity  relation        bb soc hoc
    {EventKind::Pass, "pass", 2, {"from", "to"}, "", SameTeam, {B, B, B}},
    {EventKind::Dispossess, "dispossess", 2, {"winner", "loser"}, "", OppositeTeams, {B, B, B}},
    {EventKind::Intercept, "intercept", 2, {"winner", "passer"}, "", OppositeTeams, {B, B, B}},
    {EventKind::Touch, "touch", 1, {"player", ""}, "", NotApplicable, {B, B, B}},
    {EventKind::UnforcedTurnover, "unforced_turnover", 1, {"player", ""}, "", NotApplicable, {B, B, B}},
    {EventKind::Stoppage, "stoppage", 0, {"", ""}, "", NotApplicable, {B, B, B}},
    {EventKind::ContestedMiss, "contested_miss", 2, {"shooter", "defender"}, "", OppositeTeams, {B, B, B}},
    {EventKind::Score, "score", 1, {"scorer", ""}, "points", NotApplicable, {B, B, B}},
    {EventKind::UncontestedMissRebounded, "uncontested_miss_rebounded", 2, {"shooter", "rebounder"}, "", Either, {B, _, _}},
    {EventKind::FoulWithFreeThrows, "foul_with_free_throws", 2, {"fouler", "fouled"}, "made", OppositeTeams, {B, _, _}},
    {EventKind::FoulNoFreeThrows, "foul_no_free_throws", 2, {"fouler", "fouled"}, "", OppositeTeams, {B, _, _}},
    {EventKind::UncontestedMissDead, "uncontested_miss_dead", 1, {"shooter", ""}, "", NotApplicable, {_, B, B}},
    {EventKind::Save, "save", 2, {"shooter", "keeper"}, "", OppositeTeams, {_, B, B}},
    {EventKind::FoulDead, "foul_dead", 2, {"fouler", "fouled"}, "", OppositeTeams, {_, B, _}},
    {EventKind::FoulLeadingToGoal, "foul_leading_to_goal", 2, {"fouler", "fouled"}, "", OppositeTeams, {_, B, _}},
    {EventKind::Offside, "offside", 2, {"passer", "offside_player"}, "", SameTeam, {_, B, B}},
    {EventKind::PenaltyDrawnNoPPG, "penalty_drawn_no_ppg", 2, {"drawer", "penalized"}, "", OppositeTeams, {_, _, B}},
    {EventKind::PenaltyDrawnPPG, "penalty_drawn_ppg", 2, {"drawer", "penalized"}, "", OppositeTeams, {_, _, B}},
    {EventKind::Icing, "icing", 2, {"icer", "toucher"}, "", OppositeTeams, {_, _, B}},
}};

constexpr bool schemas_in_enum_order() {
  for (std::size_t i = 0; i < kSchemas.size(); ++i) {
    if (static_cast<std::size_t>(kSchemas[i].kind) != i) return false;
  }
  return true;
}
static_assert(schemas_in_enum_order());

Event make(EventKind kind, PlayerId a = {}, PlayerId b = {}, int quantity = 0) {
  Event e;
  e.kind = kind;
  e.actors = {std::move(a), std::move(b)};
  e.quantity = quantity;
  return e;
}

// Starting line-up size used to flag starters on generated rosters.
std::size_t starting_slots(Sport sport) {
  switch (sport) {
    case Sport::Basketball: return 5;
    case Sport::Soccer: return 11;
    case Sport::Hockey: return 6;
  }
  return 0;
}

class GameRng {
 public:
  explicit GameRng(std::uint64_t seed) : engine_(seed) {}

  // Unbiased integer in [0, bound).
  std::size_t below(std::size_t bound) {
    const std::uint64_t range = bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return static_cast<std::size_t>(draw % range);
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

std::string_view to_string(Sport sport) {
  switch (sport) {
    case Sport::Basketball: return "basketball";
    case Sport::Soccer: return "soccer";
    case Sport::Hockey: return "hockey";
  }
  return "unknown";
}

std::optional<Sport> sport_from_string(std::string_view text) {
  for (Sport s : kAllSports) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

bool Roster::contains(std::string_view id) const {
  return std::any_of(players.begin(), players.end(), [&](const Player& p) { return p.id == id; });
}

const EventSchema& schema_of(EventKind kind) { return kSchemas[static_cast<std::size_t>(kind)]; }

std::optional<EventKind> kind_from_type_name(std::string_view type_name) {
  for (const auto& s : kSchemas) {
    if (s.type_name == type_name) return s.kind;
  }
  return std::nullopt;
}

bool is_legal(Sport sport, EventKind kind) {
  return schema_of(kind).legal_in[static_cast<std::size_t>(sport)];
}

std::optional<QuantityRange> quantity_range(Sport sport, EventKind kind) {
  switch (kind) {
    case EventKind::Score:
      return sport == Sport::Basketball ? QuantityRange{1, 4} : QuantityRange{1, 1};
    case EventKind::FoulWithFreeThrows:
      return QuantityRange{1, std::numeric_limits<int>::max()};
    default:
      return std::nullopt;
  }
}

Event Event::pass(PlayerId from, PlayerId to) { return make(EventKind::Pass, std::move(from), std::move(to)); }
Event Event::dispossess(PlayerId winner, PlayerId loser) {
  return make(EventKind::Dispossess, std::move(winner), std::move(loser));
}
Event Event::intercept(PlayerId winner, PlayerId passer) {
  return make(EventKind::Intercept, std::move(winner), std::move(passer));
}
Event Event::touch(PlayerId player) { return make(EventKind::Touch, std::move(player)); }
Event Event::unforced_turnover(PlayerId player) { return make(EventKind::UnforcedTurnover, std::move(player)); }
Event Event::stoppage() { return make(EventKind::Stoppage); }
Event Event::contested_miss(PlayerId shooter, PlayerId defender) {
  return make(EventKind::ContestedMiss, std::move(shooter), std::move(defender));
}
Event Event::score(PlayerId scorer, int points) { return make(EventKind::Score, std::move(scorer), {}, points); }
Event Event::uncontested_miss_rebounded(PlayerId shooter, PlayerId rebounder) {
  return make(EventKind::UncontestedMissRebounded, std::move(shooter), std::move(rebounder));
}
Event Event::foul_with_free_throws(PlayerId fouler, PlayerId fouled, int made) {
  return make(EventKind::FoulWithFreeThrows, std::move(fouler), std::move(fouled), made);
}
Event Event::foul_no_free_throws(PlayerId fouler, PlayerId fouled) {
  return make(EventKind::FoulNoFreeThrows, std::move(fouler), std::move(fouled));
}
Event Event::uncontested_miss_dead(PlayerId shooter) { return make(EventKind::UncontestedMissDead, std::move(shooter)); }
Event Event::save(PlayerId shooter, PlayerId keeper) {
  return make(EventKind::Save, std::move(shooter), std::move(keeper));
}
Event Event::foul_dead(PlayerId fouler, PlayerId fouled) {
  return make(EventKind::FoulDead, std::move(fouler), std::move(fouled));
}
Event Event::foul_leading_to_goal(PlayerId fouler, PlayerId fouled) {
  return make(EventKind::FoulLeadingToGoal, std::move(fouler), std::move(fouled));
}
Event Event::offside(PlayerId passer, PlayerId offside_player) {
  return make(EventKind::Offside, std::move(passer), std::move(offside_player));
}
Event Event::penalty_drawn_no_ppg(PlayerId drawer, PlayerId penalized) {
  return make(EventKind::PenaltyDrawnNoPPG, std::move(drawer), std::move(penalized));
}
Event Event::penalty_drawn_ppg(PlayerId drawer, PlayerId penalized) {
  return make(EventKind::PenaltyDrawnPPG, std::move(drawer), std::move(penalized));
}
Event Event::icing(PlayerId icer, PlayerId toucher) {
  return make(EventKind::Icing, std::move(icer), std::move(toucher));
}

std::optional<std::pair<int, int>> parse_final_score(std::string_view text) {
  const auto dash = text.find('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 1 == text.size()) return std::nullopt;
  auto parse_int = [](std::string_view digits) -> std::optional<int> {
    int value = 0;
    const auto* end = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(digits.data(), end, value);
    if (ec != std::errc{} || ptr != end || value < 0) return std::nullopt;
    return value;
  };
  auto first = parse_int(text.substr(0, dash));
  auto second = parse_int(text.substr(dash + 1));
  if (!first || !second) return std::nullopt;
  return std::make_pair(*first, *second);
}

std::optional<std::size_t> GameLog::team_of(std::string_view id) const {
  for (std::size_t t = 0; t < teams.size(); ++t) {
    if (teams[t].contains(id)) return t;
  }
  return std::nullopt;
}

std::string describe(const Violation& violation) {
  if (violation.event_index) return "event " + std::to_string(*violation.event_index) + ": " + violation.reason;
  return "roster: " + violation.reason;
}

std::vector<Violation> validate_game(const GameLog& log) {
  std::vector<Violation> out;
  auto roster_problem = [&](std::string reason) { out.push_back({std::nullopt, std::move(reason)}); };

  std::set<std::string_view> seen;
  for (std::size_t t = 0; t < log.teams.size(); ++t) {
    const Roster& roster = log.teams[t];
    const std::string label = "team " + std::to_string(t + 1);
    if (roster.team_name.empty()) roster_problem(label + " has an empty name");
    if (roster.players.empty()) roster_problem(label + " has no players");
    std::set<std::string_view> in_team;
    for (const Player& p : roster.players) {
      if (p.id.empty()) {
        roster_problem(label + " has a player with an empty id");
        continue;
      }
      if (!in_team.insert(p.id).second) {
        roster_problem("duplicate player id '" + p.id + "' in " + label);
      } else if (!seen.insert(p.id).second) {
        roster_problem("player id '" + p.id + "' appears on both rosters");
      }
    }
  }
  if (!log.teams[0].team_name.empty() && log.teams[0].team_name == log.teams[1].team_name) {
    roster_problem("both teams are named '" + log.teams[0].team_name + "'");
  }

  for (std::size_t i = 0; i < log.events.size(); ++i) {
    const Event& e = log.events[i];
    const EventSchema& schema = schema_of(e.kind);
    auto problem = [&](std::string reason) {
      out.push_back({i, std::string(schema.type_name) + ": " + std::move(reason)});
    };

    if (!is_legal(log.sport, e.kind)) {
      problem("event type not allowed in " + std::string(to_string(log.sport)));
    }

    std::array<std::optional<std::size_t>, 2> team{};
    bool actors_ok = true;
    for (std::size_t slot = 0; slot < 2; ++slot) {
      const PlayerId& id = e.actors[slot];
      if (slot >= schema.arity) {
        if (!id.empty()) problem("unexpected actor '" + id + "'");
        continue;
      }
      const std::string role(schema.roles[slot]);
      if (id.empty()) {
        problem("missing " + role);
        actors_ok = false;
        continue;
      }
      team[slot] = log.team_of(id);
      if (!team[slot]) {
        problem(role + " '" + id + "' is not on either roster");
        actors_ok = false;
      }
    }

    if (actors_ok && schema.arity == 2) {
      if (e.actors[0] == e.actors[1]) {
        problem(std::string(schema.roles[0]) + " and " + std::string(schema.roles[1]) + " are the same player");
      } else if (schema.relation == TeamRelation::SameTeam && team[0] != team[1]) {
        problem(schema.kind == EventKind::Pass ? "pass endpoints on opposite teams"
                                               : "endpoints on opposite teams");
      } else if (schema.relation == TeamRelation::OppositeTeams && team[0] == team[1]) {
        problem("endpoints on the same team");
      }
    }

    if (auto range = quantity_range(log.sport, e.kind)) {
      if (e.quantity < range->min || e.quantity > range->max) {
        problem(std::string(schema.quantity_name) + " = " + std::to_string(e.quantity) + " out of range [" +
                std::to_string(range->min) + ", " + std::to_string(range->max) + "]");
      }
    } else if (e.quantity != 0) {
      problem("unexpected count " + std::to_string(e.quantity));
    }
  }
  return out;
}

GeneratorWeights::GeneratorWeights() {
  weight.fill(1.0);
  (*this)[EventKind::Pass] = 8.0;
  (*this)[EventKind::Score] = 2.0;
}

GameLog generate_random_game(Sport sport, std::size_t n_players, std::size_t n_events, std::uint64_t seed,
                             const GeneratorWeights& weights) {
  if (n_players < 2) throw std::invalid_argument("a game needs at least 2 players");

  GameLog log;
  log.sport = sport;
  const std::array<std::size_t, 2> sizes = {(n_players + 1) / 2, n_players / 2};
  const std::array<std::string, 2> names = {"Home", "Away"};
  const std::array<char, 2> prefixes = {'H', 'A'};
  for (std::size_t t = 0; t < 2; ++t) {
    log.teams[t].team_name = names[t];
    const std::size_t starters = std::min(starting_slots(sport), sizes[t] - 1);
    for (std::size_t k = 0; k < sizes[t]; ++k) {
      log.teams[t].players.push_back(
          {prefixes[t] + std::to_string(k + 1), names[t] + " " + std::to_string(k + 1), k < starters});
    }
  }

  const bool can_pair_teammates = sizes[0] >= 2;  // team 1 is never smaller than team 2
  std::vector<EventKind> kinds;
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& schema : kSchemas) {
    const double w = weights[schema.kind];
    if (!is_legal(sport, schema.kind) || !(w > 0.0)) continue;
    if (schema.relation == TeamRelation::SameTeam && !can_pair_teammates) continue;
    total += w;
    kinds.push_back(schema.kind);
    cumulative.push_back(total);
  }
  if (kinds.empty() && n_events > 0) throw std::invalid_argument("no event kind has positive weight");

  GameRng rng(seed);
  auto player_of = [&](std::size_t team, std::size_t k) -> const PlayerId& { return log.teams[team].players[k].id; };
  auto any_player = [&]() -> const PlayerId& {
    const std::size_t k = rng.below(n_players);
    return k < sizes[0] ? player_of(0, k) : player_of(1, k - sizes[0]);
  };

  log.events.reserve(n_events);
  for (std::size_t i = 0; i < n_events; ++i) {
    const double pick = rng.unit() * total;
    const auto pos = std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin();
    const EventKind kind = kinds[std::min<std::size_t>(pos, kinds.size() - 1)];
    const EventSchema& schema = schema_of(kind);

    Event e;
    e.kind = kind;
    if (schema.arity == 1) {
      e.actors[0] = any_player();
    } else if (schema.arity == 2) {
      switch (schema.relation) {
        case TeamRelation::SameTeam: {
          const std::size_t team = sizes[1] >= 2 ? rng.below(2) : 0;
          const std::size_t a = rng.below(sizes[team]);
          std::size_t b = rng.below(sizes[team] - 1);
          if (b >= a) ++b;
          e.actors = {player_of(team, a), player_of(team, b)};
          break;
        }
        case TeamRelation::OppositeTeams: {
          const std::size_t first = rng.below(2);
          e.actors = {player_of(first, rng.below(sizes[first])), player_of(1 - first, rng.below(sizes[1 - first]))};
          break;
        }
        default: {
          e.actors[0] = any_player();
          do {
            e.actors[1] = any_player();
          } while (e.actors[1] == e.actors[0]);
          break;
        }
      }
    }
    if (auto range = quantity_range(sport, kind)) {
      // Free throws are unbounded above; three is the most a single foul awards.
      const int hi = kind == EventKind::FoulWithFreeThrows ? 3 : range->max;
      e.quantity = range->min + static_cast<int>(rng.below(static_cast<std::size_t>(hi - range->min + 1)));
    }
    log.events.push_back(std::move(e));
  }
  return log;
}

}  // namespace playrank
