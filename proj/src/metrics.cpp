#include "playrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace playrank {

const PlayerIpm* IpmReport::find(std::string_view id) const {
  for (const PlayerIpm& p : players) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

void sort_standings(IpmReport& report) {
  report.standings.resize(report.players.size());
  std::iota(report.standings.begin(), report.standings.end(), std::size_t{0});
  // Players are stored team by team in roster order, so the index is the tie-break.
  std::stable_sort(report.standings.begin(), report.standings.end(), [&](std::size_t a, std::size_t b) {
    return report.players[a].ipm > report.players[b].ipm;
  });
}

IpmReport compute_ipm(const RankVector& ranks, const Roster& team1, const Roster& team2) {
  const std::size_t n = team1.size() + team2.size();
  if (ranks.player_ranks.size() != n) {
    throw std::invalid_argument("rank vector has " + std::to_string(ranks.player_ranks.size()) +
                                " player entries for " + std::to_string(n) + " players");
  }
  // Dividing by the player sum instead of 1 - r_g makes the result independent of
  // how the vector was scaled; the two agree for a normalized vector.
  const double player_sum = std::accumulate(ranks.player_ranks.begin(), ranks.player_ranks.end(), 0.0);
  const double total = player_sum + ranks.goal_rank;
  if (!(total > 0.0) || !(player_sum > 1e-15 * total)) {
    throw DegenerateGoalRankError("goal node holds all of the rank; IPM is undefined");
  }

  IpmReport report;
  report.team_names = {team1.team_name, team2.team_name};
  report.n = n;
  report.goal_rank = ranks.goal_rank / total;
  report.residual = ranks.residual;
  report.method = ranks.method;
  report.players.reserve(n);
  std::size_t k = 0;
  for (std::size_t t = 0; t < 2; ++t) {
    for (const Player& p : (t == 0 ? team1 : team2).players) {
      const double r = ranks.player_ranks[k++];
      report.players.push_back({p.id, p.display_name, t, p.starter, r / total,
                                50.0 * static_cast<double>(n) * r / player_sum});
    }
  }
  sort_standings(report);
  return report;
}

TeamAggregates aggregates(const IpmReport& report, const GameMetadata& metadata) {
  TeamAggregates out;
  for (std::size_t t = 0; t < 2; ++t) {
    TeamAggregate& agg = out.teams[t];
    agg.team = report.team_names[t];
    double sum = 0.0, starter_sum = 0.0;
    std::size_t starters = 0;
    for (const PlayerIpm& p : report.players) {
      if (p.team != t) continue;
      ++agg.size;
      sum += p.ipm;
      if (p.starter) {
        ++starters;
        starter_sum += p.ipm;
      }
    }
    if (agg.size > 0) agg.aipm = sum / static_cast<double>(agg.size);
    if (starters > 0) agg.starter_aipm = starter_sum / static_cast<double>(starters);
  }
  if (metadata.final_score) {
    if (auto score = parse_final_score(*metadata.final_score); score && score->first != score->second) {
      out.winner = score->first > score->second ? 0 : 1;
    }
  }
  return out;
}

StarterGapCheck check_starter_gap(const IpmReport& report, std::span<const PlayerId> starters) {
  const std::size_t n = report.players.size();
  std::vector<bool> is_starter(n, false);
  for (const PlayerId& id : starters) {
    const PlayerIpm* p = report.find(id);
    if (p == nullptr) throw NotApplicableError("starter '" + id + "' is not in the report");
    is_starter[static_cast<std::size_t>(p - report.players.data())] = true;
  }
  const auto k = static_cast<std::size_t>(std::count(is_starter.begin(), is_starter.end(), true));
  if (k < 1 || k >= n) {
    throw NotApplicableError("starter/bench spacing needs 1 <= k <= n-1 starters, got k = " + std::to_string(k));
  }

  StarterGapCheck check;
  check.k = k;
  double min_starter = std::numeric_limits<double>::infinity();
  double max_bench = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double ipm = report.players[i].ipm;
    if (is_starter[i]) {
      check.starter_ipm_sum += ipm;
      min_starter = std::min(min_starter, ipm);
    } else {
      max_bench = std::max(max_bench, ipm);
    }
  }
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  check.bound = nd * (check.starter_ipm_sum - 50.0 * kd) / (kd * (nd - kd));
  check.min_signed_gap = min_starter - max_bench;
  return check;
}

PairwiseGapCheck check_pairwise_gap(const IpmReport& report) {
  const std::size_t n = report.players.size();
  if (n < 3) throw NotApplicableError("pairwise spacing needs at least 3 players");
  std::vector<double> ipms;
  ipms.reserve(n);
  for (const PlayerIpm& p : report.players) ipms.push_back(p.ipm);
  std::sort(ipms.begin(), ipms.end());

  PairwiseGapCheck check;
  check.bound = 25.0 * static_cast<double>(n) / static_cast<double>(n - 2);
  check.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; ++i) check.min_gap = std::min(check.min_gap, ipms[i] - ipms[i - 1]);
  return check;
}

BoundsCheck check_spacing_bounds(const IpmReport& report) {
  BoundsCheck out;
  std::vector<PlayerId> starters;
  for (const PlayerIpm& p : report.players) {
    if (p.starter) starters.push_back(p.id);
  }
  try {
    out.starter_gap = check_starter_gap(report, starters);
  } catch (const NotApplicableError&) {
  }
  try {
    out.pairwise_gap = check_pairwise_gap(report);
  } catch (const NotApplicableError&) {
  }
  if (!out.starter_gap && !out.pairwise_gap) {
    throw NotApplicableError("no starters designated and fewer than 3 players");
  }
  return out;
}

ComparisonTable compare_games(std::span<const std::pair<std::string, IpmReport>> reports) {
  if (reports.empty()) throw std::invalid_argument("nothing to compare");

  ComparisonTable table;
  std::map<PlayerId, std::size_t> row_of;
  for (std::size_t g = 0; g < reports.size(); ++g) {
    const auto& [game_id, report] = reports[g];
    table.game_ids.push_back(game_id);
    for (std::size_t place = 0; place < report.standings.size(); ++place) {
      const PlayerIpm& p = report.standing(place);
      auto [it, inserted] = row_of.emplace(p.id, table.rows.size());
      if (inserted) table.rows.push_back({p.id, p.display_name, std::vector<std::optional<double>>(reports.size()), 0.0});
      table.rows[it->second].ipm[g] = p.ipm;
    }
  }
  for (ComparisonRow& row : table.rows) {
    double sum = 0.0;
    std::size_t played = 0;
    for (const auto& cell : row.ipm) {
      if (!cell) continue;
      sum += *cell;
      ++played;
    }
    row.mean_ipm = sum / static_cast<double>(played);
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const ComparisonRow& a, const ComparisonRow& b) { return a.mean_ipm > b.mean_ipm; });
  return table;
}

}  // namespace playrank
