#include "playrank/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "playrank/game_io.hpp"
#include "playrank/metrics.hpp"
#include "playrank/ranking.hpp"

namespace playrank::cli {

namespace fs = std::filesystem;

namespace {

enum class SolverChoice { Power, Direct, Both };

struct RunConfig {
  std::vector<std::string> inputs;
  InputFormat input_format = InputFormat::Auto;
  ReportFormat format = ReportFormat::Table;
  SolverChoice solver = SolverChoice::Power;
  double tol = 1e-12;
  std::size_t max_iters = 1'000'000;
  std::string output;
  std::string out_dir;
  std::size_t jobs = 1;
  MatrixForm form = MatrixForm::Adjacency;
  bool json = false;
  std::string sport = "basketball";
  std::size_t players = 10;
  std::size_t events = 200;
  std::uint64_t seed = 1;
};

/// A command failure carrying its exit code; the message is already user-facing.
struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitParse, path + ": cannot read file"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_atomically(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kExitUsage, tmp.string() + ": cannot write file"};
    out << contents;
    if (!out.flush()) throw Failure{kExitUsage, tmp.string() + ": write failed"};
  }
  fs::rename(tmp, path);
}

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.output.empty()) {
    out << text;
  } else {
    write_atomically(config.output, text);
  }
}

GameLog load_game(const std::string& path, InputFormat format) {
  GameLog log;
  try {
    log = parse_game(read_file(path), format);
  } catch (const ParseError& e) {
    throw Failure{kExitParse, path + ": " + e.what()};
  }
  return log;
}

void require_valid(const std::string& path, const GameLog& log) {
  const auto violations = validate_game(log);
  if (violations.empty()) return;
  std::string msg = path + ": " + std::to_string(violations.size()) + " validation error(s)";
  for (const Violation& v : violations) msg += "\n  " + describe(v);
  throw Failure{kExitValidation, msg};
}

struct Ranked {
  IpmReport report;
  TeamAggregates aggregates;
};

Ranked rank_game(const std::string& path, const GameLog& log, const RunConfig& config) {
  require_valid(path, log);
  try {
    const TransitionMatrix t = to_transition(build_digraph(log));
    if (!check_primitive(t).primitive) throw Failure{kExitNumerical, path + ": transition matrix is not primitive"};

    RankVector ranks;
    std::optional<double> discrepancy;
    switch (config.solver) {
      case SolverChoice::Power:
        ranks = stationary_power(t, {config.tol, config.max_iters});
        break;
      case SolverChoice::Direct:
        ranks = stationary_direct(t);
        break;
      case SolverChoice::Both: {
        ranks = stationary_power(t, {config.tol, config.max_iters});
        const RankVector direct = stationary_direct(t);
        const auto a = ranks.full(), b = direct.full();
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
        if (!(worst <= kSolverAgreementTolerance)) {
          std::ostringstream msg;
          msg << path << ": power and direct solutions differ by " << worst;
          throw Failure{kExitNumerical, msg.str()};
        }
        discrepancy = worst;
        break;
      }
    }
    Ranked out{compute_ipm(ranks, log.teams[0], log.teams[1]), {}};
    out.report.solver_discrepancy = discrepancy;
    out.aggregates = aggregates(out.report, log.metadata);
    return out;
  } catch (const NonConvergenceError& e) {
    throw Failure{kExitNumerical, path + ": " + e.what()};
  } catch (const SingularSystemError& e) {
    throw Failure{kExitNumerical, path + ": " + e.what()};
  } catch (const DegenerateGoalRankError& e) {
    throw Failure{kExitNumerical, path + ": " + e.what()};
  } catch (const CorruptGraphError& e) {
    throw Failure{kExitNumerical, path + ": " + e.what()};
  }
}

std::string extension_for(ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: return ".txt";
    case ReportFormat::Csv: return ".csv";
    case ReportFormat::Json: return ".json";
  }
  return ".txt";
}

int cmd_rank(const RunConfig& config, std::ostream& out) {
  const std::string& path = config.inputs.front();
  const Ranked r = rank_game(path, load_game(path, config.input_format), config);
  emit(config, render_report(r.report, r.aggregates, config.format), out);
  return kExitOk;
}

int cmd_matrix(const RunConfig& config, std::ostream& out) {
  const std::string& path = config.inputs.front();
  const GameLog log = load_game(path, config.input_format);
  require_valid(path, log);
  emit(config, render_matrix(build_digraph(log), config.form, config.json), out);
  return kExitOk;
}

int cmd_validate(const RunConfig& config, std::ostream& out) {
  const std::string& path = config.inputs.front();
  require_valid(path, load_game(path, config.input_format));
  out << path << ": ok\n";
  return kExitOk;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_fixed(*v, 2) : ""; }

int cmd_batch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kExitUsage, config.out_dir + ": cannot create output directory"};

  struct Outcome {
    std::optional<Ranked> ranked;
    std::optional<Failure> failure;
  };
  std::vector<Outcome> outcomes(config.inputs.size());
  std::vector<std::string> stems(config.inputs.size());
  std::map<std::string, int> stem_uses;
  for (std::size_t i = 0; i < config.inputs.size(); ++i) {
    std::string stem = fs::path(config.inputs[i]).stem().string();
    if (const int uses = stem_uses[stem]++; uses > 0) stem += "-" + std::to_string(uses + 1);
    stems[i] = stem;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.inputs.size(); i = next++) {
      const std::string& path = config.inputs[i];
      try {
        Ranked r = rank_game(path, load_game(path, config.input_format), config);
        write_atomically(dir / (stems[i] + extension_for(config.format)),
                         render_report(r.report, r.aggregates, config.format));
        outcomes[i].ranked = std::move(r);
      } catch (const Failure& f) {
        outcomes[i].failure = f;
      } catch (const std::exception& e) {
        outcomes[i].failure = Failure{kExitParse, path + ": " + e.what()};
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(config.jobs, 1, config.inputs.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::ostringstream summary;
  summary << "game,wt,lt,wt_aipm,lt_aipm,wt_starter_aipm,lt_starter_aipm,decided\r\n";
  int worst = kExitOk;
  std::size_t written = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].failure) {
      err << outcomes[i].failure->message << "\n";
      worst = std::max(worst, outcomes[i].failure->code);
      continue;
    }
    const TeamAggregates& agg = outcomes[i].ranked->aggregates;
    const std::size_t w = agg.winner.value_or(0), l = 1 - w;
    summary << csv_escape(stems[i]) << ',' << csv_escape(agg.teams[w].team) << ',' << csv_escape(agg.teams[l].team)
            << ',' << format_fixed(agg.teams[w].aipm, 2) << ',' << format_fixed(agg.teams[l].aipm, 2) << ','
            << format_optional(agg.teams[w].starter_aipm) << ',' << format_optional(agg.teams[l].starter_aipm) << ','
            << (agg.winner ? "true" : "false") << "\r\n";
    ++written;
  }
  write_atomically(dir / "summary.csv", summary.str());
  out << written << " of " << outcomes.size() << " games ranked; reports in " << dir.string() << "\n";
  return worst;
}

IpmReport load_report(const std::string& path, const RunConfig& config) {
  const std::string text = read_file(path);
  if (detect_format(text) == InputFormat::Json && text.find("\"ipm_report\"") != std::string::npos) {
    try {
      return parse_report_json(text);
    } catch (const ParseError& e) {
      throw Failure{kExitParse, path + ": " + e.what()};
    }
  }
  GameLog log;
  try {
    log = parse_game(text, config.input_format);
  } catch (const ParseError& e) {
    throw Failure{kExitParse, path + ": " + e.what()};
  }
  return rank_game(path, log, config).report;
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
  std::vector<std::pair<std::string, IpmReport>> reports;
  std::map<std::string, int> id_uses;
  for (const std::string& path : config.inputs) {
    std::string id = fs::path(path).stem().string();
    if (const int uses = id_uses[id]++; uses > 0) id += "#" + std::to_string(uses + 1);
    reports.emplace_back(id, load_report(path, config));
  }
  emit(config, render_comparison(compare_games(reports), config.format), out);
  return kExitOk;
}

int cmd_synth(const RunConfig& config, std::ostream& out) {
  const auto sport = sport_from_string(config.sport);
  if (!sport) throw Failure{kExitUsage, "unknown sport '" + config.sport + "'"};
  if (config.players < 2) throw Failure{kExitUsage, "--players must be at least 2"};
  emit(config, render_gamelog(generate_random_game(*sport, config.players, config.events, config.seed)), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Integrated playmaking metric: PageRank-based player ratings from play-by-play logs", "playrank"};
  app.require_subcommand(1);

  const std::map<std::string, InputFormat> input_formats{
      {"auto", InputFormat::Auto}, {"json", InputFormat::Json}, {"playscript", InputFormat::Playscript}};
  const std::map<std::string, ReportFormat> report_formats{
      {"table", ReportFormat::Table}, {"csv", ReportFormat::Csv}, {"json", ReportFormat::Json}};
  const std::map<std::string, SolverChoice> solvers{
      {"power", SolverChoice::Power}, {"direct", SolverChoice::Direct}, {"both", SolverChoice::Both}};
  const std::map<std::string, MatrixForm> forms{{"adjacency", MatrixForm::Adjacency},
                                                {"row-stochastic", MatrixForm::RowStochastic},
                                                {"column-stochastic", MatrixForm::ColumnStochastic}};

  auto add_input_format = [&](CLI::App* cmd) {
    cmd->add_option("--input-format", config.input_format, "Input format (default: detect)")
        ->transform(CLI::CheckedTransformer(input_formats, CLI::ignore_case));
  };
  auto add_solver_options = [&](CLI::App* cmd) {
    cmd->add_option("--solver", config.solver, "power, direct, or both (cross-checked)")
        ->transform(CLI::CheckedTransformer(solvers, CLI::ignore_case));
    cmd->add_option("--tol", config.tol, "Power iteration L1 step tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", config.max_iters, "Power iteration limit")->check(CLI::Range(1.0, 1e12));
  };
  auto add_report_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", config.format, "table, csv, or json")
        ->transform(CLI::CheckedTransformer(report_formats, CLI::ignore_case));
  };

  CLI::App* rank = app.add_subcommand("rank", "Rank the players of one game");
  rank->add_option("input", config.inputs, "Game file (JSON or playscript)")->required()->expected(1);
  add_input_format(rank);
  add_report_format(rank);
  add_solver_options(rank);
  rank->add_option("-o,--output", config.output, "Write to a file instead of stdout");

  CLI::App* matrix = app.add_subcommand("matrix", "Dump the adjacency or transition matrix");
  matrix->add_option("input", config.inputs, "Game file")->required()->expected(1);
  add_input_format(matrix);
  matrix->add_option("--form", config.form, "adjacency, row-stochastic, or column-stochastic")
      ->transform(CLI::CheckedTransformer(forms, CLI::ignore_case));
  matrix->add_flag("--json", config.json, "Emit JSON instead of an aligned text grid");
  matrix->add_option("-o,--output", config.output, "Write to a file instead of stdout");

  CLI::App* validate = app.add_subcommand("validate", "Check a game file for rule violations");
  validate->add_option("input", config.inputs, "Game file")->required()->expected(1);
  add_input_format(validate);

  CLI::App* batch = app.add_subcommand("batch", "Rank many games; write one report each plus summary.csv");
  batch->add_option("inputs", config.inputs, "Game files")->required();
  batch->add_option("--out-dir", config.out_dir, "Output directory")->required();
  batch->add_option("--jobs", config.jobs, "Games processed concurrently")->check(CLI::Range(1, 256));
  add_input_format(batch);
  add_report_format(batch);
  add_solver_options(batch);

  CLI::App* compare = app.add_subcommand("compare", "Compare players across games");
  compare->add_option("inputs", config.inputs, "Game files or JSON reports (at least two)")->required();
  add_input_format(compare);
  add_report_format(compare);
  add_solver_options(compare);
  compare->add_option("-o,--output", config.output, "Write to a file instead of stdout");

  CLI::App* synth = app.add_subcommand("synth", "Generate a random valid game log (JSON)");
  synth->add_option("--sport", config.sport, "basketball, soccer, or hockey");
  synth->add_option("--players", config.players, "Total players (at least 2)");
  synth->add_option("--events", config.events, "Number of events");
  synth->add_option("--seed", config.seed, "Random seed");
  synth->add_option("-o,--output", config.output, "Write to a file instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*rank) return cmd_rank(config, out);
    if (*matrix) return cmd_matrix(config, out);
    if (*validate) return cmd_validate(config, out);
    if (*batch) return cmd_batch(config, out, err);
    if (*compare) {
      if (config.inputs.size() < 2) throw Failure{kExitUsage, "compare needs at least two inputs"};
      return cmd_compare(config, out);
    }
    if (*synth) return cmd_synth(config, out);
  } catch (const Failure& f) {
    err << f.message << "\n";
    return f.code;
  } catch (const fs::filesystem_error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace playrank::cli
