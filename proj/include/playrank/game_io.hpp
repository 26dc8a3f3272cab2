#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "playrank/game_model.hpp"
#include "playrank/metrics.hpp"
#include "playrank/ranking.hpp"

namespace playrank {

/// Any input that could not be turned into a GameLog. what() includes the location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& location, const std::string& reason)
      : std::runtime_error(location + ": " + reason), location_(location), reason_(reason) {}

  const std::string& location() const { return location_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string location_;
  std::string reason_;
};

// ---------------------------------------------------------------------------
// Playscript: compact arrow notation for basketball games.
//
//   #! comment
//   #team Reds A B C
//   #team Blues D E F
//   #starters A B D E
//   #score 3-2
//   #date 2016-01-18
//   A -> B -> A -> F -> G
//   D -> F -> 0 -> B -> C -> A -> G
//
// Consecutive tokens (i, j) on a line become: Pass(i, j) for teammates,
// Dispossess(winner j, loser i) across teams, Score(i, 1) for "G", Score(i, k)
// for "G:k", UnforcedTurnover(i) for "0". A token after "0" or "G" starts a new
// possession and draws nothing.
// ---------------------------------------------------------------------------

class PlayscriptError : public ParseError {
 public:
  enum class Kind { UnknownToken, UndeclaredPlayer, MalformedHeader };

  PlayscriptError(Kind kind, std::size_t line, std::size_t column, const std::string& reason);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

GameLog parse_playscript(std::string_view text);

// ---------------------------------------------------------------------------
// JSON game log, schema_version "1". Unknown fields are rejected.
// ---------------------------------------------------------------------------

class SchemaError : public ParseError {
 public:
  SchemaError(const std::string& path, const std::string& reason) : ParseError(path, reason) {}
  const std::string& path() const { return location(); }
};

inline constexpr std::string_view kGameLogSchemaVersion = "1";

GameLog parse_gamelog(std::string_view json_text);
std::string render_gamelog(const GameLog& log);

enum class InputFormat { Auto, Json, Playscript };

/// Leading '{' (after whitespace) selects JSON, anything else playscript.
InputFormat detect_format(std::string_view text);
GameLog parse_game(std::string_view text, InputFormat format = InputFormat::Auto);

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

enum class ReportFormat { Table, Csv, Json };
enum class MatrixForm { Adjacency, RowStochastic, ColumnStochastic };

std::string format_fixed(double value, int decimals);
std::string format_rational(const Rational& value);  // "p/q", or "p" when q == 1
std::string csv_escape(std::string_view field);

std::string render_report(const IpmReport& report, const TeamAggregates& aggregates, ReportFormat format);

/// Parses the JSON produced by render_report(..., ReportFormat::Json).
IpmReport parse_report_json(std::string_view json_text);

/// Matrix cells as text, node labels taken from the digraph.
std::vector<std::vector<std::string>> matrix_cells(const PlayDigraph& graph, MatrixForm form);
std::string render_matrix(const PlayDigraph& graph, MatrixForm form, bool as_json = false);

std::string render_comparison(const ComparisonTable& table, ReportFormat format);

}  // namespace playrank
