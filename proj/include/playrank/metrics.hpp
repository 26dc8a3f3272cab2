#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "playrank/game_model.hpp"
#include "playrank/ranking.hpp"

namespace playrank {

struct PlayerIpm {
  PlayerId id;
  std::string display_name;
  std::size_t team = 0;  // 0 or 1
  bool starter = false;
  double rank = 0.0;     // stationary probability r_i
  double ipm = 0.0;
};

/// Integrated playmaking metric for every player of one game. IPM_i = 50 n r_i / (1 - r_g),
/// so the player mean is exactly 50.
struct IpmReport {
  std::array<std::string, 2> team_names;
  std::vector<PlayerIpm> players;     // roster order, team 1 first
  std::vector<std::size_t> standings; // indices into players, IPM descending
  double goal_rank = 0.0;
  std::size_t n = 0;
  double residual = 0.0;
  SolverMethod method = SolverMethod::PowerIteration;
  std::optional<double> solver_discrepancy;  // set when both solvers were run

  const PlayerIpm& standing(std::size_t place) const { return players[standings[place]]; }
  const PlayerIpm* find(std::string_view id) const;
};

class DegenerateGoalRankError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

IpmReport compute_ipm(const RankVector& ranks, const Roster& team1, const Roster& team2);

/// Recomputes the standings order: IPM descending, then team, then roster order.
void sort_standings(IpmReport& report);

struct TeamAggregate {
  std::string team;
  std::size_t size = 0;
  double aipm = 0.0;
  std::optional<double> starter_aipm;  // absent when no starters are marked
};

struct TeamAggregates {
  std::array<TeamAggregate, 2> teams;
  std::optional<std::size_t> winner;  // from metadata only; absent without a decided score

  std::optional<std::size_t> loser() const {
    return winner ? std::optional<std::size_t>(1 - *winner) : std::nullopt;
  }
};

TeamAggregates aggregates(const IpmReport& report, const GameMetadata& metadata);

class NotApplicableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Starter/bench spacing: the smallest signed gap IPM_s - IPM_b over starters s and
/// bench players b never exceeds n (R - 50k) / (k (n - k)), R the starters' IPM sum.
struct StarterGapCheck {
  std::size_t k = 0;
  double starter_ipm_sum = 0.0;
  double bound = 0.0;
  double min_signed_gap = 0.0;
  double margin() const { return bound - min_signed_gap; }
  bool holds(double slack = 1e-9) const { return min_signed_gap <= bound + slack; }
};

/// Some pair of players sits within 25 n / (n - 2) IPM of each other.
struct PairwiseGapCheck {
  double bound = 0.0;
  double min_gap = 0.0;
  double margin() const { return bound - min_gap; }
  bool holds(double slack = 1e-9) const { return min_gap <= bound + slack; }
};

/// Throws NotApplicableError unless 1 <= |starters| <= n - 1 and all ids are players.
StarterGapCheck check_starter_gap(const IpmReport& report, std::span<const PlayerId> starters);
/// Throws NotApplicableError when n < 3.
PairwiseGapCheck check_pairwise_gap(const IpmReport& report);

struct BoundsCheck {
  std::optional<StarterGapCheck> starter_gap;  // absent if the designated starters don't qualify
  std::optional<PairwiseGapCheck> pairwise_gap;
  bool holds() const {
    return (!starter_gap || starter_gap->holds()) && (!pairwise_gap || pairwise_gap->holds());
  }
};

/// Both spacing checks using the roster's designated starters. Throws
/// NotApplicableError only when neither check applies.
BoundsCheck check_spacing_bounds(const IpmReport& report);

struct ComparisonRow {
  PlayerId id;
  std::string display_name;
  std::vector<std::optional<double>> ipm;  // one cell per game, empty when absent
  double mean_ipm = 0.0;
};

struct ComparisonTable {
  std::vector<std::string> game_ids;
  std::vector<ComparisonRow> rows;  // mean IPM descending, first appearance breaks ties
};

/// Joins reports by player id. Throws std::invalid_argument on an empty input.
ComparisonTable compare_games(std::span<const std::pair<std::string, IpmReport>> reports);

}  // namespace playrank
