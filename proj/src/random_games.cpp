#include "tg/random_games.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tg/rng.hpp"

namespace tg {

std::string to_string(RandomVariant v) {
  switch (v) {
    case RandomVariant::Tournament: return "random-tournament";
    case RandomVariant::ReducedClique: return "random-reduced-clique";
    case RandomVariant::Orientation: return "random-orientation";
  }
  return "?";
}

RandomVariant random_variant_from_string(const std::string& s) {
  if (s == "random-tournament") return RandomVariant::Tournament;
  if (s == "random-reduced-clique") return RandomVariant::ReducedClique;
  if (s == "random-orientation") return RandomVariant::Orientation;
  throw std::invalid_argument("unknown random variant: " + s);
}

namespace {

int thread_width() {
  if (const char* env = std::getenv("TGAME_THREADS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

std::vector<ElementId> shuffled_ids(std::size_t count, Rng& rng) {
  std::vector<ElementId> ids(count);
  std::iota(ids.begin(), ids.end(), 0u);
  for (std::size_t i = count; i > 1; --i)
    std::swap(ids[i - 1], ids[bounded(rng, i)]);
  return ids;
}

Tournament goal_for(const TrialConfig& c) {
  if (c.goal) {
    if (c.goal->k() != c.k)
      throw std::invalid_argument("random_playout: goal size differs from k");
    return *c.goal;
  }
  return Tournament::transitive(c.k);
}

void append_record(Transcript& t, std::size_t pos, ElementId e, const Arc* arc) {
  MoveRecord rec;
  rec.round = static_cast<int>(pos / 2) + 1;
  rec.player = pos % 2 == 0 ? Player::Maker : Player::Breaker;
  rec.elements = {e};
  if (arc) rec.arcs = {*arc};
  t.records.push_back(std::move(rec));
}

}  // namespace

TrialResult random_playout(const TrialConfig& config, int trial_index, bool with_transcript) {
  if (config.n < 2 || config.k < 1)
    throw std::invalid_argument("random_playout: need n >= 2, k >= 1");
  if (trial_index < 0) throw std::invalid_argument("random_playout: negative trial index");
  Rng rng(config.seed + static_cast<std::uint64_t>(trial_index));
  TrialResult res;
  res.transcript.n = config.n;
  res.transcript.k = config.k;
  res.transcript.seed = config.seed + static_cast<std::uint64_t>(trial_index);

  switch (config.variant) {
    case RandomVariant::Tournament: {
      Board board = Board::complete_graph(config.n);
      auto order = shuffled_ids(board.size(), rng);
      Digraph maker(config.n);
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        Arc e = board.element(order[pos]);
        Arc a = coin(rng) ? e : Arc{e.to, e.from};
        if (pos % 2 == 0) maker.add_arc(static_cast<int>(a.from), static_cast<int>(a.to));
        if (with_transcript) append_record(res.transcript, pos, order[pos], &a);
      }
      res.maker_win = config.goal ? contains_copy(maker, goal_for(config))
                                  : contains_transitive(maker, config.k);
      res.transcript.board_kind = BoardKind::CompleteGraphEdges;
      break;
    }
    case RandomVariant::ReducedClique: {
      Board board = Board::reduced_k_partite(config.n, config.k);
      WinningFamily family = transversal_clique_family(board.partition());
      auto order = shuffled_ids(board.size(), rng);
      std::vector<Cell> marks(board.size(), Cell::Unclaimed);
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        marks[order[pos]] = pos % 2 == 0 ? Cell::Maker : Cell::Breaker;
        if (with_transcript) append_record(res.transcript, pos, order[pos], nullptr);
      }
      res.maker_win = family.maker_has_win(board, marks);
      res.transcript.board_kind = BoardKind::ReducedKPartite;
      break;
    }
    case RandomVariant::Orientation: {
      Board board = Board::complete_graph(config.n);
      auto order = shuffled_ids(board.size(), rng);
      Digraph all(config.n);
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        Arc e = board.element(order[pos]);
        Arc a = coin(rng) ? e : Arc{e.to, e.from};
        all.add_arc(static_cast<int>(a.from), static_cast<int>(a.to));
        if (with_transcript) append_record(res.transcript, pos, order[pos], &a);
      }
      res.maker_win = config.goal ? contains_copy(all, goal_for(config))
                                  : contains_transitive(all, config.k);
      res.transcript.board_kind = BoardKind::CompleteGraphEdges;
      break;
    }
  }
  res.transcript.outcome = res.maker_win ? Outcome::MakerWin : Outcome::BreakerWin;
  if (!with_transcript) res.transcript.records.clear();
  return res;
}

Log2Real expected_transversal_cliques(std::uint64_t n, int k) {
  if (k < 1) throw std::domain_error("expected_transversal_cliques: k must be positive");
  if (n < static_cast<std::uint64_t>(k))
    throw std::domain_error("expected_transversal_cliques: n must be at least k");
  return clique_family_potential(std::log2(static_cast<double>(n)), k);
}

int expectation_crossing_k(std::uint64_t n) {
  if (n < 2) throw std::domain_error("expectation_crossing_k: n too small");
  int cap = static_cast<int>(4 * std::log2(static_cast<double>(n))) + 16;
  for (int k = 2; k <= cap && static_cast<std::uint64_t>(k) <= n; ++k)
    if (expected_transversal_cliques(n, k).log2() < 0.0) return k;
  throw std::runtime_error("expectation_crossing_k: no crossing found below the scan cap");
}

WilsonInterval wilson_95(int wins, int trials) {
  if (trials < 1 || wins < 0 || wins > trials)
    throw std::invalid_argument("wilson_95: bad counts");
  const double z = 1.96;
  double nn = trials;
  double p = static_cast<double>(wins) / nn;
  double z2 = z * z;
  double denom = 1.0 + z2 / nn;
  double center = (p + z2 / (2.0 * nn)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

ThresholdEstimate estimate_threshold(const TrialConfig& base, int k_min, int k_max) {
  if (k_min < 1 || k_max < k_min)
    throw std::invalid_argument("estimate_threshold: bad k range");
  if (base.trials < 1) throw std::invalid_argument("estimate_threshold: trials must be >= 1");
  if (base.goal && k_min != k_max)
    throw std::invalid_argument("estimate_threshold: an explicit goal needs a single-k range");
  ThresholdEstimate est;
  est.low_trials = base.trials == 1;
  int width = thread_width();
  for (int k = k_min; k <= k_max; ++k) {
    TrialConfig c = base;
    c.k = k;
    long first = static_cast<long>(k - k_min) * base.trials;
    int wins = 0;
    if (width <= 1 || base.trials < 2 * width) {
      for (int t = 0; t < base.trials; ++t)
        wins += random_playout(c, static_cast<int>(first + t)).maker_win ? 1 : 0;
    } else {
      std::vector<int> partial(width, 0);
      std::vector<std::thread> pool;
      for (int w = 0; w < width; ++w) {
        pool.emplace_back([&, w]() {
          for (int t = w; t < base.trials; t += width)
            partial[w] += random_playout(c, static_cast<int>(first + t)).maker_win ? 1 : 0;
        });
      }
      for (auto& th : pool) th.join();
      for (int w : partial) wins += w;
    }
    auto ci = wilson_95(wins, base.trials);
    est.per_k.push_back({k, wins, base.trials, static_cast<double>(wins) / base.trials,
                         ci.low, ci.high});
  }
  if (!est.per_k.empty() && est.per_k.front().frequency >= 0.5) {
    for (const auto& e : est.per_k)
      if (e.frequency < 0.5) {
        est.crossing_k = e.k;
        break;
      }
  }
  return est;
}

std::string estimate_csv(const ThresholdEstimate& est) {
  std::ostringstream out;
  out << "k,wins,trials,frequency,wilson_low,wilson_high\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& e : est.per_k)
    out << e.k << "," << e.wins << "," << e.trials << "," << e.frequency << "," << e.wilson_low
        << "," << e.wilson_high << "\n";
  return out.str();
}

}  // namespace tg
