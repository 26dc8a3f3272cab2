#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "playrank/cli.hpp"
#include "playrank/game_io.hpp"

namespace fs = std::filesystem;
using namespace playrank;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(PLAYRANK_FIXTURES_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Scratch directory removed at scope exit.
struct Scratch {
  fs::path dir;
  Scratch() {
    static int counter = 0;
    dir = fs::temp_directory_path() / ("playrank_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name, std::ios::binary) << text;
    return (dir / name).string();
  }
};

const char* kCrossTeamPass = R"({"schema_version": "1", "sport": "basketball",
  "teams": [{"name": "A", "players": [{"id": "a1"}, {"id": "a2"}]}, {"name": "B", "players": [{"id": "b1"}]}],
  "events": [{"type": "pass", "from": "a1", "to": "b1"}]})";

}  // namespace

TEST_CASE("rank prints the worked example table") {
  const Result r = run({"rank", fixture("worked_example.play")});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.rfind("Player | Team | IPM\nC | Reds | 64.66\n", 0) == 0);
  CHECK(r.out.find("F | Blues | 60.38") != std::string::npos);
}

TEST_CASE("rank: both solvers agree and JSON is machine readable") {
  const Result r = run({"rank", fixture("worked_example.json"), "--solver", "both", "--format", "json"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["standings"][0]["id"] == "C");
  CHECK(doc["solver_discrepancy"].get<double>() <= cli::kSolverAgreementTolerance);
  CHECK(doc["aggregates"]["winner"] == "Reds");
}

TEST_CASE("rank writes to a file") {
  Scratch s;
  const std::string out = (s.dir / "report.csv").string();
  const Result r = run({"rank", fixture("worked_example.play"), "--format", "csv", "-o", out});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  CHECK(slurp(out).rfind("Player,Team,IPM,IPM_full,Rank\r\nC,Reds,64.66,", 0) == 0);
  CHECK_FALSE(fs::exists(out + ".tmp"));
}

TEST_CASE("exit codes for bad input") {
  Scratch s;
  CHECK(run({"rank", s.write("bad.json", kCrossTeamPass)}).code == cli::kExitValidation);
  const Result v = run({"validate", s.write("bad2.json", kCrossTeamPass)});
  CHECK(v.code == cli::kExitValidation);
  CHECK(v.err.find("event 0") != std::string::npos);
  CHECK(v.err.find("pass endpoints on opposite teams") != std::string::npos);

  CHECK(run({"rank", s.write("broken.json", "{\"schema_version\": ")}).code == cli::kExitParse);
  const Result p = run({"rank", s.write("broken.play", "#team R A\n#team B C\nA -> Z\n")});
  CHECK(p.code == cli::kExitParse);
  CHECK(p.err.find("line 3, column 6") != std::string::npos);
  CHECK(run({"rank", (s.dir / "missing.play").string()}).code == cli::kExitParse);
  CHECK(run({"validate", fixture("worked_example.play")}).code == cli::kExitOk);
}

TEST_CASE("power iteration limits surface as numerical failures") {
  const Result r = run({"rank", fixture("worked_example.play"), "--max-iters", "2"});
  CHECK(r.code == cli::kExitNumerical);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"rank"}).code == cli::kExitUsage);
  CHECK(run({"rank", fixture("worked_example.play"), "--solver", "magic"}).code == cli::kExitUsage);
  CHECK(run({"rank", fixture("worked_example.play"), "--tol", "-1"}).code == cli::kExitUsage);
  CHECK(run({"compare", fixture("worked_example.play")}).code == cli::kExitUsage);
  CHECK(run({"synth", "--sport", "curling"}).code == cli::kExitUsage);
  CHECK(run({"synth", "--players", "1"}).code == cli::kExitUsage);
  CHECK(run({"batch", fixture("worked_example.play")}).code == cli::kExitUsage);
  const Result help = run({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("rank") != std::string::npos);
}

TEST_CASE("matrix forms") {
  const Result column = run({"matrix", fixture("worked_example.play"), "--form", "column-stochastic", "--json"});
  REQUIRE(column.code == cli::kExitOk);
  const auto doc = nlohmann::json::parse(column.out);
  CHECK(doc["entries"][0][1] == "2/7");
  CHECK(doc["entries"][0][6] == "4/13");

  const Result adjacency = run({"matrix", fixture("worked_example.play")});
  CHECK(adjacency.code == cli::kExitOk);
  CHECK(adjacency.out.find(" G") != std::string::npos);
}

TEST_CASE("synth output validates and is deterministic") {
  const Result a = run({"synth", "--sport", "hockey", "--players", "12", "--events", "50", "--seed", "4"});
  const Result b = run({"synth", "--sport", "hockey", "--players", "12", "--events", "50", "--seed", "4"});
  REQUIRE(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  const GameLog log = parse_gamelog(a.out);
  CHECK(log.sport == Sport::Hockey);
  CHECK(log.events.size() == 50);
  CHECK(validate_game(log).empty());
}

TEST_CASE("batch isolates failures and writes a summary") {
  Scratch s;
  const std::string good1 = s.write("g1.json", render_gamelog([] {
    GameLog log = generate_random_game(Sport::Basketball, 10, 100, 1);
    log.metadata.final_score = "80-95";
    return log;
  }()));
  const std::string good2 = s.write("g2.json", render_gamelog(generate_random_game(Sport::Soccer, 22, 100, 2)));
  const std::string bad = s.write("bad.json", kCrossTeamPass);
  const std::string broken = s.write("broken.play", "nonsense");
  const fs::path out_dir = s.dir / "out";

  for (const char* jobs : {"1", "3"}) {
    const Result r = run({"batch", good1, bad, fixture("worked_example.play"), broken, good2, "--out-dir",
                          out_dir.string(), "--jobs", jobs});
    CHECK(r.code == cli::kExitParse);
    CHECK(r.out.find("3 of 5 games ranked") != std::string::npos);
    CHECK(r.err.find("bad.json") != std::string::npos);
    CHECK(r.err.find("broken.play") != std::string::npos);
    CHECK(fs::exists(out_dir / "g1.txt"));
    CHECK(fs::exists(out_dir / "worked_example.txt"));
    CHECK_FALSE(fs::exists(out_dir / "bad.txt"));

    const std::string summary = slurp(out_dir / "summary.csv");
    CHECK(summary.rfind("game,wt,lt,wt_aipm,lt_aipm,wt_starter_aipm,lt_starter_aipm,decided\r\n", 0) == 0);
    CHECK(summary.find("\r\nworked_example,Reds,Blues,58.61,41.39,,,true\r\n") != std::string::npos);
    CHECK(summary.find("\r\ng1,Away,Home,") != std::string::npos);
    CHECK(summary.find(",false\r\n") != std::string::npos);
  }

  const Result ok = run({"batch", good1, good2, "--out-dir", (s.dir / "ok").string(), "--format", "json"});
  CHECK(ok.code == cli::kExitOk);
  CHECK(fs::exists(s.dir / "ok" / "g2.json"));
}

TEST_CASE("compare joins game files and saved reports") {
  Scratch s;
  const Result saved =
      run({"rank", fixture("worked_example.play"), "--format", "json", "-o", (s.dir / "saved.json").string()});
  REQUIRE(saved.code == cli::kExitOk);

  const Result r = run({"compare", fixture("worked_example.play"), (s.dir / "saved.json").string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.rfind("Player | worked_example | saved | Mean\nC | 64.66 | 64.66 | 64.66\n", 0) == 0);

  const Result same = run({"compare", fixture("worked_example.play"), fixture("worked_example.play"), "--format", "csv"});
  REQUIRE(same.code == cli::kExitOk);
  CHECK(same.out.rfind("Player,worked_example,worked_example#2,Mean\r\n", 0) == 0);

  CHECK(run({"compare", fixture("worked_example.play"), s.write("bad.json", kCrossTeamPass)}).code ==
        cli::kExitValidation);
}
