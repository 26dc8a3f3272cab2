#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "playrank/game_io.hpp"

namespace playrank {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string full_precision(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string short_sci(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", value);
  return buf;
}

const char* result_label(const TeamAggregates& agg, std::size_t team) {
  if (!agg.winner) return "-";
  return *agg.winner == team ? "W" : "L";
}

std::string optional_fixed(const std::optional<double>& value) { return value ? format_fixed(*value, 2) : "-"; }

ordered_json aggregates_json(const TeamAggregates& agg) {
  ordered_json out;
  out["teams"] = ordered_json::array();
  for (const TeamAggregate& t : agg.teams) {
    ordered_json j;
    j["team"] = t.team;
    j["size"] = t.size;
    j["aipm"] = t.aipm;
    j["starter_aipm"] = t.starter_aipm ? ordered_json(*t.starter_aipm) : ordered_json(nullptr);
    out["teams"].push_back(std::move(j));
  }
  out["winner"] = agg.winner ? ordered_json(agg.teams[*agg.winner].team) : ordered_json(nullptr);
  return out;
}

void write_csv_row(std::ostringstream& out, std::initializer_list<std::string> fields) {
  bool first = true;
  for (const std::string& f : fields) {
    if (!first) out << ',';
    out << csv_escape(f);
    first = false;
  }
  out << "\r\n";
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string format_rational(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_report(const IpmReport& report, const TeamAggregates& aggregates, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Table: {
      out << "Player | Team | IPM\n";
      for (std::size_t place = 0; place < report.standings.size(); ++place) {
        const PlayerIpm& p = report.standing(place);
        out << p.display_name << " | " << report.team_names[p.team] << " | " << format_fixed(p.ipm, 2) << "\n";
      }
      out << "\nTeam | Players | AIPM | Starter AIPM | Result\n";
      for (std::size_t t = 0; t < 2; ++t) {
        const TeamAggregate& a = aggregates.teams[t];
        out << a.team << " | " << a.size << " | " << format_fixed(a.aipm, 2) << " | " << optional_fixed(a.starter_aipm)
            << " | " << result_label(aggregates, t) << "\n";
      }
      out << "\ngoal rank " << format_fixed(report.goal_rank, 6) << ", solver " << to_string(report.method)
          << ", residual " << short_sci(report.residual);
      if (report.solver_discrepancy) out << ", solver discrepancy " << short_sci(*report.solver_discrepancy);
      out << "\n";
      break;
    }
    case ReportFormat::Csv: {
      write_csv_row(out, {"Player", "Team", "IPM", "IPM_full", "Rank"});
      for (std::size_t place = 0; place < report.standings.size(); ++place) {
        const PlayerIpm& p = report.standing(place);
        write_csv_row(out, {p.display_name, report.team_names[p.team], format_fixed(p.ipm, 2), full_precision(p.ipm),
                            full_precision(p.rank)});
      }
      break;
    }
    case ReportFormat::Json: {
      ordered_json doc;
      doc["kind"] = "ipm_report";
      doc["teams"] = {report.team_names[0], report.team_names[1]};
      doc["n"] = report.n;
      doc["goal_rank"] = report.goal_rank;
      doc["residual"] = report.residual;
      doc["method"] = to_string(report.method);
      doc["solver_discrepancy"] =
          report.solver_discrepancy ? ordered_json(*report.solver_discrepancy) : ordered_json(nullptr);
      doc["standings"] = ordered_json::array();
      for (std::size_t place = 0; place < report.standings.size(); ++place) {
        const PlayerIpm& p = report.standing(place);
        ordered_json row;
        row["id"] = p.id;
        row["name"] = p.display_name;
        row["team"] = report.team_names[p.team];
        row["starter"] = p.starter;
        row["rank"] = p.rank;
        row["ipm"] = p.ipm;
        doc["standings"].push_back(std::move(row));
      }
      doc["aggregates"] = aggregates_json(aggregates);
      out << doc.dump(2) << "\n";
      break;
    }
  }
  return out.str();
}

IpmReport parse_report_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("byte " + std::to_string(e.byte), "invalid JSON");
  }
  auto fail = [](const std::string& path, const std::string& reason) { throw SchemaError(path, reason); };
  if (!doc.is_object() || doc.value("kind", "") != "ipm_report") fail("$.kind", "not an IPM report");

  IpmReport report;
  try {
    const auto& teams = doc.at("teams");
    if (!teams.is_array() || teams.size() != 2) fail("$.teams", "expected two team names");
    report.team_names = {teams[0].get<std::string>(), teams[1].get<std::string>()};
    report.n = doc.at("n").get<std::size_t>();
    report.goal_rank = doc.at("goal_rank").get<double>();
    report.residual = doc.at("residual").get<double>();
    report.method = doc.at("method").get<std::string>() == "direct" ? SolverMethod::DirectSolve
                                                                   : SolverMethod::PowerIteration;
    if (doc.contains("solver_discrepancy") && !doc["solver_discrepancy"].is_null()) {
      report.solver_discrepancy = doc["solver_discrepancy"].get<double>();
    }
    const auto& rows = doc.at("standings");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      PlayerIpm p;
      p.id = row.at("id").get<std::string>();
      p.display_name = row.value("name", p.id);
      const auto team = row.at("team").get<std::string>();
      if (team != report.team_names[0] && team != report.team_names[1]) {
        fail("$.standings[" + std::to_string(i) + "].team", "unknown team '" + team + "'");
      }
      p.team = team == report.team_names[0] ? 0 : 1;
      p.starter = row.value("starter", false);
      p.rank = row.at("rank").get<double>();
      p.ipm = row.at("ipm").get<double>();
      report.players.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw SchemaError("$", std::string("malformed report: ") + e.what());
  }
  if (report.players.size() != report.n) fail("$.standings", "player count does not match n");
  sort_standings(report);
  return report;
}

std::vector<std::vector<std::string>> matrix_cells(const PlayDigraph& graph, MatrixForm form) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n));
  if (form == MatrixForm::Adjacency) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cells[i][j] = std::to_string(graph.count(i, j));
    return cells;
  }
  const TransitionMatrix t = to_transition(graph);
  const SquareMatrix<Rational> m = form == MatrixForm::RowStochastic ? t.exact() : t.column_stochastic();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cells[i][j] = format_rational(m(i, j));
  return cells;
}

std::string render_matrix(const PlayDigraph& graph, MatrixForm form, bool as_json) {
  const auto cells = matrix_cells(graph, form);
  std::vector<std::string> labels;
  for (const NodeRef& node : graph.node_order()) labels.push_back(node.label());

  if (as_json) {
    ordered_json doc;
    doc["form"] = form == MatrixForm::Adjacency       ? "adjacency"
                  : form == MatrixForm::RowStochastic ? "row-stochastic"
                                                      : "column-stochastic";
    doc["nodes"] = labels;
    doc["entries"] = ordered_json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < cells.size(); ++j) {
        if (form == MatrixForm::Adjacency) {
          row.push_back(graph.count(i, j));
        } else {
          row.push_back(cells[i][j]);
        }
      }
      doc["entries"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
  }

  std::size_t width = 1;
  for (const auto& l : labels) width = std::max(width, l.size());
  for (const auto& row : cells)
    for (const auto& c : row) width = std::max(width, c.size());

  std::ostringstream out;
  auto pad = [&](const std::string& s) { return std::string(width - s.size(), ' ') + s; };
  out << pad("");
  for (const auto& l : labels) out << ' ' << pad(l);
  out << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out << pad(labels[i]);
    for (const auto& c : cells[i]) out << ' ' << pad(c);
    out << '\n';
  }
  return out.str();
}

std::string render_comparison(const ComparisonTable& table, ReportFormat format) {
  std::ostringstream out;
  auto cell = [](const std::optional<double>& v) { return v ? format_fixed(*v, 2) : std::string(); };
  switch (format) {
    case ReportFormat::Table: {
      out << "Player";
      for (const auto& g : table.game_ids) out << " | " << g;
      out << " | Mean\n";
      for (const ComparisonRow& row : table.rows) {
        out << row.display_name;
        for (const auto& v : row.ipm) out << " | " << cell(v);
        out << " | " << format_fixed(row.mean_ipm, 2) << "\n";
      }
      break;
    }
    case ReportFormat::Csv: {
      std::vector<std::string> header{"Player"};
      header.insert(header.end(), table.game_ids.begin(), table.game_ids.end());
      header.push_back("Mean");
      auto write = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_escape(fields[i]);
        out << "\r\n";
      };
      write(header);
      for (const ComparisonRow& row : table.rows) {
        std::vector<std::string> fields{row.display_name};
        for (const auto& v : row.ipm) fields.push_back(cell(v));
        fields.push_back(format_fixed(row.mean_ipm, 2));
        write(fields);
      }
      break;
    }
    case ReportFormat::Json: {
      ordered_json doc;
      doc["games"] = table.game_ids;
      doc["players"] = ordered_json::array();
      for (const ComparisonRow& row : table.rows) {
        ordered_json j;
        j["id"] = row.id;
        j["name"] = row.display_name;
        j["ipm"] = ordered_json::array();
        for (const auto& v : row.ipm) j["ipm"].push_back(v ? ordered_json(*v) : ordered_json(nullptr));
        j["mean_ipm"] = row.mean_ipm;
        doc["players"].push_back(std::move(j));
      }
      out << doc.dump(2) << "\n";
      break;
    }
  }
  return out.str();
}

}  // namespace playrank
