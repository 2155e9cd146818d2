#include "tg/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "tg/bounds.hpp"
#include "tg/game.hpp"
#include "tg/orientation.hpp"
#include "tg/potential.hpp"
#include "tg/random_games.hpp"
#include "tg/solver.hpp"
#include "tg/tournament.hpp"
#include "tg/transcript_io.hpp"

namespace tg::cli {
namespace {

using nlohmann::json;

/// log2 representation always, decimal value when it fits in a double.
json number_record(const Log2Real& v) {
  json j;
  if (v.is_zero()) {
    j["log2"] = nullptr;
    j["value"] = 0.0;
    return j;
  }
  double lg = v.log2();
  j["log2"] = lg;
  double value = std::exp2(lg);
  j["value"] = std::isfinite(value) ? json(value) : json(nullptr);
  return j;
}

Tournament parse_goal(const std::string& s) {
  if (s.rfind("transitive:", 0) == 0)
    return Tournament::transitive(std::stoi(s.substr(std::string("transitive:").size())));
  if (s.rfind("cyclic:", 0) == 0) {
    if (s != "cyclic:3") throw std::invalid_argument("goal: only cyclic:3 is built in");
    return Tournament::cyclic_triangle();
  }
  std::ifstream in(s);
  if (!in) throw std::invalid_argument("goal: cannot open '" + s + "'");
  return read_tournament(in);
}

std::pair<int, int> parse_k_range(const std::string& s) {
  auto c = s.find(':');
  if (c == std::string::npos || c == 0 || c + 1 == s.size())
    throw std::invalid_argument("k-range wants the form lo:hi");
  int lo = std::stoi(s.substr(0, c));
  int hi = std::stoi(s.substr(c + 1));
  if (lo < 1 || hi < lo) throw std::invalid_argument("k-range wants 1 <= lo <= hi");
  return {lo, hi};
}

std::ostream& target(std::ofstream& file, const std::string& path, std::ostream& out) {
  if (path.empty()) return out;
  file.open(path);
  if (!file) throw std::invalid_argument("cannot open output path '" + path + "'");
  return file;
}

struct BoundsCmd {
  std::uint64_t n = 0;

  void emit(std::ostream& os) const {
    for (const auto& e : threshold_report(n)) {
      json j{{"record", "threshold"}, {"key", e.key},   {"detail", e.detail},
             {"n", n},                {"value", e.value}, {"asymptotic", e.asymptotic}};
      j["floor"] = e.floor_value ? json(*e.floor_value) : json(nullptr);
      os << j.dump() << "\n";
    }
    if (n >= 32) {
      json j{{"record", "coupled_k"}, {"n", n}, {"k", k_of_n(n)}};
      os << j.dump() << "\n";
    }
  }
};

struct CriterionCmd {
  std::optional<int> couple_k;
  std::optional<std::uint64_t> n;
  std::optional<int> k;
  int p = 4;
  std::string mode = "cube";
  bool breaker = false;
  bool scan = false;
  bool overlap_scan = false;
  int k_max = 400;

  ClusterPotentialMode cluster_mode() const {
    if (mode == "cube") return ClusterPotentialMode::CubeTimesSunflower;
    if (mode == "triple-sum") return ClusterPotentialMode::TripleSum;
    throw std::invalid_argument("mode wants cube or triple-sum");
  }

  void emit(std::ostream& os) const {
    if (breaker) {
      if (!n || !k) throw std::invalid_argument("criterion --breaker wants --n and --k");
      auto cert = obreaker_certificate(*n, *k);
      json j{{"record", "breaker_certificate"},
             {"n", *n},
             {"k", *k},
             {"log2_bound", cert.log2_bound},
             {"threshold_log2", -1.0},
             {"holds", cert.holds},
             {"vacuous", cert.vacuous}};
      os << j.dump() << "\n";
      return;
    }
    if (overlap_scan) {
      int cap = k_max == 400 ? 500 : k_max;
      json j{{"record", "overlap_threshold"}, {"k0", overlap_factor_unit_threshold(cap)},
             {"k_max", cap}};
      os << j.dump() << "\n";
      return;
    }
    if (scan) {
      auto r = win_certificate_scan(k_max, cluster_mode());
      json j{{"record", "ratio_scan"},
             {"k_max", r.k_max},
             {"mode", mode},
             {"strictly_decreasing_after", r.strictly_decreasing_after}};
      j["k_star"] = r.k_star ? json(*r.k_star) : json(nullptr);
      os << j.dump() << "\n";
      return;
    }
    GameParameters prm;
    if (couple_k)
      prm = coupled_parameters(*couple_k, p);
    else if (n && k)
      prm = parameters_for_n(*n, *k, p);
    else
      throw std::invalid_argument("criterion wants --couple-k or both --n and --k");
    Log2Real board = reduced_board_size_bound(prm.log2_n, prm.k);
    Log2Real t_family = clique_family_potential(prm.log2_n, prm.k);
    Log2Real clusters = cluster_family_potential_upper(prm.log2_n, prm.k, cluster_mode());
    Log2Real ratio = win_certificate_ratio(prm.log2_n, prm.k, cluster_mode());
    AwwcResult aw = awwc_check(board, t_family, prm.p, clusters);
    json j{{"record", "corollary_ratio"},
           {"k", prm.k},
           {"log2_n", prm.log2_n},
           {"p", prm.p},
           {"mode", mode}};
    j["board"] = number_record(board);
    j["t_family"] = number_record(t_family);
    j["clusters_upper"] = number_record(clusters);
    j["ratio"] = number_record(ratio);
    j["verdict"] = ratio.is_zero() || ratio.log2() < -1e-9;
    j["awwc_holds"] = aw.holds;
    j["awwc_lhs"] = number_record(aw.lhs);
    j["awwc_rhs"] = number_record(aw.rhs);
    os << j.dump() << "\n";
  }
};

struct PlayCmd {
  std::string variant = "reduced-clique";
  int n = 6;
  int k = 3;
  int a = 1;
  int b = 1;
  std::string goal;
  std::string maker = "potential";
  std::string breaker = "es";
  std::uint64_t seed = 0;

  Tournament goal_tournament() const {
    return goal.empty() ? Tournament::transitive(k) : parse_goal(goal);
  }

  void emit(std::ostream& os) const {
    if (variant == "orientation") {
      Tournament g = goal_tournament();
      OrientationStrategy om;
      if (maker == "random" || maker == "potential")
        om = random_orientation_strategy();
      else if (maker == "solver")
        om = optimal_orientation_strategy(g);
      else
        throw std::invalid_argument("orientation maker wants random or solver");
      OrientationStrategy ob;
      if (breaker == "es" || breaker == "wrapped")
        ob = obreaker_from_breaker(g);
      else if (breaker == "random")
        ob = random_orientation_strategy();
      else if (breaker == "solver")
        ob = optimal_orientation_strategy(g);
      else
        throw std::invalid_argument("orientation breaker wants wrapped, random or solver");
      OrientationState st = play_orientation(n, om, ob, seed);
      Transcript t = orientation_transcript(st);
      t.seed = seed;
      t.k = g.k();
      t.outcome = contains_copy(st.digraph(), g) ? Outcome::MakerWin : Outcome::BreakerWin;
      write_transcript(os, t);
      return;
    }
    if (variant != "reduced-clique" && variant != "tournament")
      throw std::invalid_argument("variant wants reduced-clique, tournament or orientation");
    auto board = std::make_shared<Board>(Board::reduced_k_partite(n, k));
    auto family = std::make_shared<WinningFamily>(
        WinningFamily::materialize(*board, transversal_clique_family(board->partition())));
    Strategy mk;
    if (maker == "potential")
      mk = maker_potential_strategy();
    else if (maker == "random")
      mk = random_strategy();
    else if (maker == "solver")
      mk = optimal_mb_strategy();
    else
      throw std::invalid_argument("maker wants potential, random or solver");
    if (variant == "tournament") mk = maker_tournament_wrapper(goal_tournament(), board->partition(), mk);
    Strategy br;
    if (breaker == "es")
      br = es_breaker_strategy();
    else if (breaker == "random")
      br = random_strategy();
    else if (breaker == "solver")
      br = optimal_mb_strategy();
    else
      throw std::invalid_argument("breaker wants es, random or solver");
    GameState fin = play_out(new_game(board, family, a, b), mk, br, seed);
    write_transcript(os, fin.history());
  }
};

struct SimulateCmd {
  std::string variant = "random-tournament";
  int n = 16;
  std::optional<int> k;
  std::string k_range;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string goal;
  std::string format = "json";

  void emit(std::ostream& os) const {
    int k_min, k_max;
    if (!k_range.empty())
      std::tie(k_min, k_max) = parse_k_range(k_range);
    else if (k)
      k_min = k_max = *k;
    else
      throw std::invalid_argument("simulate wants --k or --k-range");
    TrialConfig base;
    base.variant = random_variant_from_string(variant);
    base.n = n;
    base.k = k_min;
    base.trials = trials;
    base.seed = seed;
    if (!goal.empty()) base.goal = parse_goal(goal);
    ThresholdEstimate est = estimate_threshold(base, k_min, k_max);
    if (format == "csv") {
      os << estimate_csv(est);
      return;
    }
    if (format != "json") throw std::invalid_argument("format wants json or csv");
    json j{{"record", "threshold_estimate"},
           {"variant", variant},
           {"n", n},
           {"k_min", k_min},
           {"k_max", k_max},
           {"trials", trials},
           {"seed", seed},
           {"low_trials", est.low_trials}};
    j["crossing_k"] = est.crossing_k ? json(*est.crossing_k) : json(nullptr);
    auto rows = json::array();
    for (const auto& e : est.per_k)
      rows.push_back(json{{"k", e.k},
                          {"wins", e.wins},
                          {"trials", e.trials},
                          {"frequency", e.frequency},
                          {"wilson_low", e.wilson_low},
                          {"wilson_high", e.wilson_high}});
    j["per_k"] = rows;
    os << j.dump() << "\n";
  }
};

struct SolveCmd {
  std::string variant = "mb";
  int n = 4;
  int k = 2;
  int a = 1;
  int b = 1;
  std::string goal;
  int max_remaining = SolverLimits{}.max_remaining;
  int max_unoriented = SolverLimits{}.max_unoriented;
  bool underclaim = false;

  void emit(std::ostream& os) const {
    SolverLimits lim;
    lim.max_remaining = max_remaining;
    lim.max_unoriented = max_unoriented;
    lim.allow_maker_underclaim = underclaim;
    Solver solver(lim);
    if (variant == "orientation") {
      Tournament g = goal.empty() ? Tournament::transitive(k) : parse_goal(goal);
      OrientationState st(n);
      SolveResult r = solver.solve_orientation(st, g);
      json j{{"record", "solve"},
             {"variant", "orientation"},
             {"n", n},
             {"goal_k", g.k()},
             {"goal_bits", g.bits()},
             {"winner", r.winner == Outcome::MakerWin ? "maker" : "breaker"},
             {"nodes", r.nodes},
             {"table_hits", r.table_hits}};
      j["principal_arc"] =
          r.principal_arc ? json::array({r.principal_arc->from, r.principal_arc->to})
                          : json(nullptr);
      os << j.dump() << "\n";
      return;
    }
    if (variant != "mb") throw std::invalid_argument("variant wants mb or orientation");
    auto board = std::make_shared<Board>(Board::reduced_k_partite(n, k));
    auto family = std::make_shared<WinningFamily>(
        WinningFamily::materialize(*board, transversal_clique_family(board->partition())));
    SolveResult r = solver.solve_mb(new_game(board, family, a, b));
    json j{{"record", "solve"},
           {"variant", "mb"},
           {"n", n},
           {"k", k},
           {"a", a},
           {"b", b},
           {"winner", r.winner == Outcome::MakerWin ? "maker" : "breaker"},
           {"nodes", r.nodes},
           {"table_hits", r.table_hits}};
    j["principal"] = r.principal ? json(r.principal->elements) : json(nullptr);
    os << j.dump() << "\n";
  }
};

struct EnumerateCmd {
  int k = 3;
  bool count_only = false;

  void emit(std::ostream& os) const {
    auto ts = enumerate_tournaments(k);
    auto lower = tournament_count_lower(k);
    json j{{"record", "tournament_count"}, {"k", k}, {"count", ts.size()}};
    j["lower_bound"] = number_record(lower.count);
    j["lower_bound_ceil"] =
        static_cast<std::uint64_t>(std::ceil(std::exp2(lower.count.log2())));
    j["weak_lower"] = number_record(lower.weak);
    os << j.dump() << "\n";
    if (count_only) return;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      json rec{{"record", "tournament"},
               {"index", i},
               {"bits", ts[i].bits()},
               {"text", format_tournament(ts[i])}};
      os << rec.dump() << "\n";
    }
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{
      "Maker-Breaker tournament game toolkit: certificate reports, playouts, "
      "simulations, exact solving and tournament enumeration. TGAME_THREADS "
      "sets the default parallel width for simulate."};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write records to this path instead of stdout")
      ->capture_default_str();

  BoundsCmd bounds_cmd;
  auto* bounds_app = app.add_subcommand("bounds", "threshold report for a board size");
  bounds_app->add_option("--n", bounds_cmd.n, "number of vertices")->required();

  CriterionCmd crit_cmd;
  auto* crit_app = app.add_subcommand("criterion", "certificate evaluations and scans");
  crit_app->add_option("--couple-k", crit_cmd.couple_k, "clique size with n at the coupling");
  crit_app->add_option("--n", crit_cmd.n, "number of vertices");
  crit_app->add_option("--k", crit_cmd.k, "clique or goal size");
  crit_app->add_option("--p", crit_cmd.p, "cluster order")->capture_default_str();
  crit_app->add_option("--mode", crit_cmd.mode, "cluster potential mode: cube or triple-sum")
      ->capture_default_str();
  crit_app->add_flag("--breaker", crit_cmd.breaker, "orientation breaker certificate");
  crit_app->add_flag("--scan", crit_cmd.scan, "scan for the first certified clique size");
  crit_app->add_flag("--overlap-scan", crit_cmd.overlap_scan,
                     "scan for the overlap factor unit threshold");
  crit_app->add_option("--k-max", crit_cmd.k_max, "scan cap")->capture_default_str();

  PlayCmd play_cmd;
  auto* play_app = app.add_subcommand("play", "one seeded playout, emitted as a transcript");
  play_app->add_option("--variant", play_cmd.variant,
                       "reduced-clique, tournament or orientation")
      ->capture_default_str();
  play_app->add_option("--n", play_cmd.n, "number of vertices")->capture_default_str();
  play_app->add_option("--k", play_cmd.k, "clique or goal size")->capture_default_str();
  play_app->add_option("--a", play_cmd.a, "Maker bias")->capture_default_str();
  play_app->add_option("--b", play_cmd.b, "Breaker bias")->capture_default_str();
  play_app->add_option("--goal", play_cmd.goal,
                       "goal tournament: transitive:k, cyclic:3 or a file path");
  play_app->add_option("--maker", play_cmd.maker, "potential, random or solver")
      ->capture_default_str();
  play_app->add_option("--breaker", play_cmd.breaker, "es, random, solver (wrapped for orientation)")
      ->capture_default_str();
  play_app->add_option("--seed", play_cmd.seed, "RNG seed")->capture_default_str();

  SimulateCmd sim_cmd;
  auto* sim_app = app.add_subcommand("simulate", "Monte Carlo threshold estimation");
  sim_app->add_option("--variant", sim_cmd.variant,
                      "random-tournament, random-reduced-clique or random-orientation")
      ->capture_default_str();
  sim_app->add_option("--n", sim_cmd.n, "number of vertices")->capture_default_str();
  sim_app->add_option("--k", sim_cmd.k, "single goal size");
  sim_app->add_option("--k-range", sim_cmd.k_range, "goal size range lo:hi");
  sim_app->add_option("--trials", sim_cmd.trials, "trials per goal size")->capture_default_str();
  sim_app->add_option("--seed", sim_cmd.seed, "RNG seed")->capture_default_str();
  sim_app->add_option("--goal", sim_cmd.goal, "goal tournament (single k only)");
  sim_app->add_option("--format", sim_cmd.format, "json or csv")->capture_default_str();

  SolveCmd solve_cmd;
  auto* solve_app = app.add_subcommand("solve", "exact solve of a small instance");
  solve_app->add_option("--variant", solve_cmd.variant, "mb or orientation")
      ->capture_default_str();
  solve_app->add_option("--n", solve_cmd.n, "number of vertices")->capture_default_str();
  solve_app->add_option("--k", solve_cmd.k, "clique or goal size")->capture_default_str();
  solve_app->add_option("--a", solve_cmd.a, "Maker bias")->capture_default_str();
  solve_app->add_option("--b", solve_cmd.b, "Breaker bias")->capture_default_str();
  solve_app->add_option("--goal", solve_cmd.goal,
                        "goal tournament: transitive:k, cyclic:3 or a file path");
  solve_app->add_option("--max-remaining", solve_cmd.max_remaining, "refusal cap on open elements")
      ->capture_default_str();
  solve_app->add_option("--max-unoriented", solve_cmd.max_unoriented, "refusal cap on open edges")
      ->capture_default_str();
  solve_app->add_flag("--underclaim", solve_cmd.underclaim,
                      "let Maker claim fewer than a elements (10-element boards)");

  EnumerateCmd enum_cmd;
  auto* enum_app = app.add_subcommand("enumerate", "tournaments up to isomorphism");
  enum_app->add_option("--k", enum_cmd.k, "number of vertices (1..6)")->capture_default_str();
  enum_app->add_flag("--count-only", enum_cmd.count_only, "emit just the count record");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::ofstream file;
    std::ostream& os = target(file, out_path, out);
    if (bounds_app->parsed())
      bounds_cmd.emit(os);
    else if (crit_app->parsed())
      crit_cmd.emit(os);
    else if (play_app->parsed())
      play_cmd.emit(os);
    else if (sim_app->parsed())
      sim_cmd.emit(os);
    else if (solve_app->parsed())
      solve_cmd.emit(os);
    else if (enum_app->parsed())
      enum_cmd.emit(os);
    return 0;
  } catch (const SolverRefusal& e) {
    err << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace tg::cli
