#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

#include "playrank/game_model.hpp"
#include "playrank/rulebook.hpp"

namespace playrank {

using Rational = boost::rational<std::int64_t>;

/// Square row-major matrix. Sizes here are tiny (a game has at most a few dozen
/// players), so everything is dense.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t order, const T& fill = T{}) : order_(order), data_(order * order, Cell{fill}) {}

  std::size_t order() const { return order_; }
  T& operator()(std::size_t row, std::size_t col) { return data_[row * order_ + col].value; }
  const T& operator()(std::size_t row, std::size_t col) const { return data_[row * order_ + col].value; }

  SquareMatrix transposed() const {
    SquareMatrix out(order_);
    for (std::size_t i = 0; i < order_; ++i)
      for (std::size_t j = 0; j < order_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  // Wrapped so that SquareMatrix<bool> hands out real references.
  struct Cell {
    T value{};
    bool operator==(const Cell&) const = default;
  };
  std::size_t order_ = 0;
  std::vector<Cell> data_;
};

/// Directed multigraph over the n players plus the goal node. Node order is team 1
/// players, team 2 players, then the goal node last.
class PlayDigraph {
 public:
  PlayDigraph() = default;
  explicit PlayDigraph(std::vector<NodeRef> node_order);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t player_count() const { return nodes_.empty() ? 0 : nodes_.size() - 1; }
  std::size_t goal_index() const { return nodes_.size() - 1; }
  const std::vector<NodeRef>& node_order() const { return nodes_; }
  const SquareMatrix<std::int64_t>& arc_counts() const { return counts_; }

  std::int64_t count(std::size_t from, std::size_t to) const { return counts_(from, to); }
  std::int64_t out_degree(std::size_t node) const;

  /// Index of a node; throws std::out_of_range for players not in the graph.
  std::size_t index_of(const NodeRef& node) const;

  void add_arcs(std::size_t from, std::size_t to, std::int64_t count);
  void apply(const ArcDelta& delta);

  bool operator==(const PlayDigraph& other) const { return nodes_ == other.nodes_ && counts_ == other.counts_; }

 private:
  std::vector<NodeRef> nodes_;
  std::unordered_map<PlayerId, std::size_t> player_index_;
  SquareMatrix<std::int64_t> counts_;
};

/// One arc each way between every player and the goal node, plus a goal self-loop.
PlayDigraph init_digraph(const Roster& team1, const Roster& team2);

/// `graph` plus the arcs of every event in the log.
PlayDigraph apply_events(PlayDigraph graph, const GameLog& log);

/// init_digraph followed by apply_events.
PlayDigraph build_digraph(const GameLog& log);

class CorruptGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-stochastic transition matrix, T(i, j) = arcs(i -> j) / out_degree(i), kept
/// in exact rationals. Note: the column-stochastic transpose is what one usually
/// sees printed; use column_stochastic() for that orientation.
class TransitionMatrix {
 public:
  /// Throws CorruptGraphError unless every row is nonnegative and sums to exactly 1.
  explicit TransitionMatrix(SquareMatrix<Rational> row_stochastic);

  std::size_t order() const { return exact_.order(); }
  const SquareMatrix<Rational>& exact() const { return exact_; }
  SquareMatrix<Rational> column_stochastic() const { return exact_.transposed(); }
  const SquareMatrix<double>& floating() const { return floating_; }

 private:
  SquareMatrix<Rational> exact_;
  SquareMatrix<double> floating_;
};

/// Throws CorruptGraphError on a node with no outgoing arcs.
TransitionMatrix to_transition(const PlayDigraph& graph);

struct PrimitivityResult {
  bool primitive = false;
  std::optional<std::size_t> exponent;  // smallest m with T^m > 0
};

/// Largest exponent that needs checking for an order-N primitive matrix.
std::size_t wielandt_bound(std::size_t order);

PrimitivityResult check_primitive(const TransitionMatrix& t);
PrimitivityResult check_primitive(const SquareMatrix<bool>& pattern);

enum class SolverMethod { PowerIteration, DirectSolve };

std::string_view to_string(SolverMethod method);

struct RankVector {
  std::vector<double> player_ranks;
  double goal_rank = 0.0;
  double residual = 0.0;  // max-norm of T^t v - v
  SolverMethod method = SolverMethod::PowerIteration;
  std::size_t iterations = 0;

  /// Player ranks followed by the goal rank.
  std::vector<double> full() const;
};

struct PowerOptions {
  double tol = 1e-12;  // stop when the L1 step change drops to this
  std::size_t max_iters = 1'000'000;
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(std::size_t iterations, double last_step);
  std::size_t iterations() const { return iterations_; }
  double last_step() const { return last_step_; }

 private:
  std::size_t iterations_;
  double last_step_;
};

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Power iteration v <- T^t v from the uniform vector.
RankVector stationary_power(const TransitionMatrix& t, const PowerOptions& options = {});

/// Solves (T^t - I) v = 0 with the last equation replaced by sum(v) = 1, using
/// Gaussian elimination with partial pivoting.
RankVector stationary_direct(const TransitionMatrix& t);

/// max_i |(T^t v)_i - v_i|
double stationary_residual(const SquareMatrix<double>& t, const std::vector<double>& v);

}  // namespace playrank
