#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "tg/cli.hpp"
#include "tg/orientation.hpp"
#include "tg/transcript_io.hpp"

using namespace tg;
using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<json> json_lines(const std::string& text) {
  std::vector<json> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(json::parse(line));
  return lines;
}

}  // namespace

TEST_CASE("bounds reports the six thresholds and the coupled size") {
  CliRun r = run_cli({"bounds", "--n", "1048576"});
  REQUIRE(r.code == 0);
  auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 7);
  const char* keys[] = {"clique_threshold", "orientation_lower", "orientation_upper",
                        "tournament_lower", "universal_lower",   "universal_upper"};
  bool seen[6] = {};
  for (std::size_t i = 0; i < 6; ++i) {
    REQUIRE(lines[i]["record"] == "threshold");
    for (int t = 0; t < 6; ++t)
      if (lines[i]["key"] == keys[t]) seen[t] = true;
  }
  for (bool s : seen) CHECK(s);
  for (const auto& l : json_lines(r.out)) {
    if (l["record"] != "threshold") continue;
    if (l["key"] == "clique_threshold") {
      CHECK(l["value"].get<double>() == doctest::Approx(31.241533892003204).epsilon(1e-12));
      CHECK(l["floor"].get<int>() == 31);
      CHECK(l["asymptotic"].get<bool>());
    }
    if (l["key"] == "tournament_lower")
      CHECK(l["value"].get<double>() == doctest::Approx(19.356143810225277).epsilon(1e-12));
    if (l["key"] == "universal_upper") CHECK(l["value"].get<double>() == 20.0);
  }
  CHECK(lines[6]["record"] == "coupled_k");
  CHECK(lines[6]["k"].get<int>() == 22);

  CHECK(run_cli({"bounds", "--n", "2"}).code == 2);
}

TEST_CASE("criterion evaluates a coupled point") {
  CliRun r = run_cli({"criterion", "--couple-k", "40"});
  REQUIRE(r.code == 0);
  auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 1);
  const json& j = lines[0];
  CHECK(j["record"] == "corollary_ratio");
  CHECK(j["k"].get<int>() == 40);
  CHECK(j["t_family"]["log2"].get<double>() == doctest::Approx(200.0).epsilon(1e-9));
  CHECK(j["t_family"]["value"].get<double>() == doctest::Approx(std::exp2(200.0)));
  CHECK_FALSE(j["verdict"].get<bool>());

  CliRun far = run_cli({"criterion", "--couple-k", "300"});
  json fj = json_lines(far.out)[0];
  CHECK(fj["verdict"].get<bool>());
  CHECK(fj["awwc_holds"].get<bool>());
  CHECK(fj["ratio"]["log2"].get<double>() < 0.0);
}

TEST_CASE("criterion scans freeze the certified region") {
  CliRun cube = run_cli({"criterion", "--scan", "--mode", "cube"});
  json cj = json_lines(cube.out)[0];
  CHECK(cj["record"] == "ratio_scan");
  CHECK(cj["k_star"].get<int>() == 251);
  CHECK(cj["strictly_decreasing_after"].get<bool>());

  CliRun triple = run_cli({"criterion", "--scan", "--mode", "triple-sum"});
  CHECK(json_lines(triple.out)[0]["k_star"].get<int>() == 196);

  CliRun overlap = run_cli({"criterion", "--overlap-scan"});
  json oj = json_lines(overlap.out)[0];
  CHECK(oj["record"] == "overlap_threshold");
  CHECK(oj["k0"].get<int>() == 5);
  CHECK(oj["k_max"].get<int>() == 500);
}

TEST_CASE("criterion breaker certificate") {
  CliRun r = run_cli({"criterion", "--breaker", "--n", "256", "--k", "34"});
  json j = json_lines(r.out)[0];
  CHECK(j["record"] == "breaker_certificate");
  CHECK(j["log2_bound"].get<double>() == doctest::Approx(-8.5).epsilon(1e-12));
  CHECK(j["holds"].get<bool>());
  CHECK_FALSE(j["vacuous"].get<bool>());
  CHECK(run_cli({"criterion", "--breaker", "--n", "256"}).code == 2);
}

TEST_CASE("enumerate lists tournaments with their counting bound") {
  CliRun r = run_cli({"enumerate", "--k", "3"});
  REQUIRE(r.code == 0);
  auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0]["record"] == "tournament_count");
  CHECK(lines[0]["count"].get<int>() == 2);
  for (int i = 1; i <= 2; ++i) {
    CHECK(lines[i]["record"] == "tournament");
    Tournament t = parse_tournament_text(lines[i]["text"].get<std::string>());
    CHECK(t.bits() == lines[i]["bits"].get<std::uint64_t>());
  }

  CliRun six = run_cli({"enumerate", "--k", "6", "--count-only"});
  auto slines = json_lines(six.out);
  REQUIRE(slines.size() == 1);
  CHECK(slines[0]["count"].get<int>() == 56);
  CHECK(slines[0]["lower_bound_ceil"].get<int>() == 46);
}

TEST_CASE("play emits a replayable transcript") {
  std::vector<std::string> args = {"play", "--variant", "reduced-clique", "--n", "6",
                                   "--k", "3", "--seed", "5"};
  CliRun r = run_cli(args);
  REQUIRE(r.code == 0);
  Transcript t = transcript_from_string(r.out);
  CHECK(t.board_kind == BoardKind::ReducedKPartite);
  CHECK(t.outcome != Outcome::Incomplete);
  CHECK_FALSE(t.records.empty());
  CHECK(run_cli(args).out == r.out);
}

TEST_CASE("play drives the orientation pair through the same transcript form") {
  std::vector<std::string> args = {"play",   "--variant", "orientation", "--n",  "4",
                                   "--goal", "cyclic:3",  "--maker",     "random",
                                   "--breaker", "wrapped", "--seed",     "9"};
  CliRun r = run_cli(args);
  REQUIRE(r.code == 0);
  Transcript t = transcript_from_string(r.out);
  OrientationState replay = orientation_from_transcript(t);
  CHECK(replay.finished());
  bool built = contains_copy(replay.digraph(), Tournament::cyclic_triangle());
  CHECK((t.outcome == Outcome::MakerWin) == built);
  CHECK(run_cli(args).out == r.out);
}

TEST_CASE("simulate scans deterministically in both formats") {
  std::vector<std::string> args = {"simulate", "--variant", "random-reduced-clique",
                                   "--n", "32", "--k-range", "2:5",
                                   "--trials", "30", "--seed", "3"};
  CliRun r = run_cli(args);
  REQUIRE(r.code == 0);
  auto lines = json_lines(r.out);
  REQUIRE(lines.size() == 1);
  const json& j = lines[0];
  CHECK(j["record"] == "threshold_estimate");
  REQUIRE(j["per_k"].size() == 4);
  CHECK(j["per_k"][0]["k"].get<int>() == 2);
  CHECK(j["per_k"][0]["frequency"].get<double>() == 1.0);
  CHECK(run_cli(args).out == r.out);

  std::vector<std::string> csv_args = args;
  csv_args.push_back("--format");
  csv_args.push_back("csv");
  CliRun c = run_cli(csv_args);
  REQUIRE(c.code == 0);
  CHECK(c.out.rfind("k,wins,trials,frequency,wilson_low,wilson_high\n", 0) == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 5);

  CHECK(run_cli({"simulate", "--variant", "random-tournament", "--n", "8"}).code == 2);
}

TEST_CASE("solve emits winner and principal records") {
  CliRun mb = run_cli({"solve", "--variant", "mb", "--n", "6", "--k", "2"});
  REQUIRE(mb.code == 0);
  json j = json_lines(mb.out)[0];
  CHECK(j["record"] == "solve");
  CHECK(j["winner"] == "maker");
  CHECK(j["principal"].is_array());
  CHECK(j["nodes"].get<std::uint64_t>() > 0);

  CliRun ori = run_cli({"solve", "--variant", "orientation", "--n", "3",
                        "--goal", "cyclic:3"});
  json oj = json_lines(ori.out)[0];
  CHECK(oj["winner"] == "breaker");
  CHECK(oj["principal_arc"].is_null());

  CliRun trans = run_cli({"solve", "--variant", "orientation", "--n", "3",
                          "--goal", "transitive:3"});
  CHECK(json_lines(trans.out)[0]["winner"] == "maker");
}

TEST_CASE("goal files load through the same reader") {
  std::string path = "test_goal_tmp.txt";
  {
    std::ofstream f(path);
    f << format_tournament(Tournament::cyclic_triangle());
  }
  CliRun r = run_cli({"solve", "--variant", "orientation", "--n", "3", "--goal", path});
  std::remove(path.c_str());
  REQUIRE(r.code == 0);
  CHECK(json_lines(r.out)[0]["winner"] == "breaker");

  CliRun missing = run_cli({"solve", "--variant", "orientation", "--goal", "no_such_file"});
  CHECK(missing.code == 2);
  CHECK(missing.err.rfind("error:", 0) == 0);
}

TEST_CASE("exit codes separate parse errors from refusals") {
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"bounds"}).code == 2);  // missing --n
  CHECK(run_cli({}).code == 2);          // a subcommand is required
  CHECK(run_cli({"criterion"}).code == 2);

  CliRun refusal = run_cli({"solve", "--variant", "orientation", "--n", "7"});
  CHECK(refusal.code == 3);
  CHECK(refusal.err.rfind("refused:", 0) == 0);

  CliRun help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("out flag routes records to a file") {
  std::string path = "test_cli_out_tmp.jsonl";
  CliRun direct = run_cli({"enumerate", "--k", "4", "--count-only"});
  CliRun routed = run_cli({"--out", path, "enumerate", "--k", "4", "--count-only"});
  REQUIRE(routed.code == 0);
  CHECK(routed.out.empty());
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  f.close();
  std::remove(path.c_str());
  CHECK(buf.str() == direct.out);
}

TEST_CASE("golden solves stay frozen") {
  std::ifstream f(TG_GOLDEN_SOLVES);
  REQUIRE(f.is_open());
  std::string line;
  int checked = 0;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    json fixture = json::parse(line);
    std::vector<std::string> args;
    for (const auto& a : fixture["args"]) args.push_back(a.get<std::string>());
    CliRun r = run_cli(args);
    REQUIRE(r.code == 0);
    auto lines = json_lines(r.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0] == fixture["output"]);
    ++checked;
  }
  CHECK(checked >= 10);
}
