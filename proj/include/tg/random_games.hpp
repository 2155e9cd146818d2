#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tg/bounds.hpp"
#include "tg/tournament.hpp"

namespace tg {

enum class RandomVariant {
  Tournament,     // both claim random edges, Maker orients hers at random
  ReducedClique,  // random edges on the reduced board, no orientations
  Orientation,    // both orient random edges; the final digraph counts
};
std::string to_string(RandomVariant v);
RandomVariant random_variant_from_string(const std::string& s);

struct TrialConfig {
  RandomVariant variant = RandomVariant::Tournament;
  int n = 4;
  int k = 2;
  std::optional<Tournament> goal;  // defaults to the transitive tournament on k
  int trials = 1;
  std::uint64_t seed = 0;
};

struct TrialResult {
  bool maker_win = false;
  Transcript transcript;  // filled only on request
};

/// One playout under per-trial generator mt19937_64(seed + trial_index):
/// a uniform shuffle decides claim order (Maker takes the even positions),
/// uniform bits decide orientations, and the winner is read off the final
/// position only.
TrialResult random_playout(const TrialConfig& config, int trial_index,
                           bool with_transcript = false);

/// Interior of the expectation for RandomMaker's transversal cliques:
/// (n/k)^k * 2^(-C(k,2)).
Log2Real expected_transversal_cliques(std::uint64_t n, int k);

/// Smallest k >= 2 whose expectation drops below 1.
int expectation_crossing_k(std::uint64_t n);

struct KEstimate {
  int k = 0;
  int wins = 0;
  int trials = 0;
  double frequency = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 1.0;
};

struct ThresholdEstimate {
  std::vector<KEstimate> per_k;
  /// Smallest k with frequency < 1/2; absent when the range fails to
  /// bracket 1/2 from above.
  std::optional<int> crossing_k;
  bool low_trials = false;  // trials == 1, intervals near [0,1]
};

/// Runs config.trials playouts for every k in [k_min, k_max] with raw
/// (unsmoothed) frequencies and Wilson 95% intervals. Trial indices run
/// k-major so the whole estimate is one deterministic stream.
ThresholdEstimate estimate_threshold(const TrialConfig& base, int k_min, int k_max);

std::string estimate_csv(const ThresholdEstimate& est);

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};
WilsonInterval wilson_95(int wins, int trials);

}  // namespace tg
