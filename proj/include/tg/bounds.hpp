#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tg/log2real.hpp"

namespace tg {

/// Board size n and goal size k for the clique-to-tournament reduction.
/// n lives in log2 form because the coupling n = k*2^((k+9)/2) is irrational
/// for even k; integer entry points keep the rounded-down n alongside.
struct GameParameters {
  int k = 2;
  double log2_n = 0.0;
  int p = 4;
};

double coupling_log2_n(int k);
/// Floor of the coupled n when it fits in 64 bits.
std::optional<std::uint64_t> coupling_n_floor(int k);
GameParameters coupled_parameters(int k, int p = 4);
GameParameters parameters_for_n(std::uint64_t n, int k, int p = 4);

/// Largest k with k*2^((k+9)/2) <= n. Requires n >= 32 (the k=1 anchor).
int k_of_n(std::uint64_t n);

/// T of the transversal-clique family: (n/k)^k * 2^(-C(k,2)). Equals 2^(5k)
/// at the coupling.
Log2Real clique_family_potential(double log2_n, int k);

/// Cross pairs of the balanced reduction: C(k,2) * (n/k)^2.
Log2Real reduced_board_size_bound(double log2_n, int k);

/// Upper bound for the count-weighted potential of the sunflower family:
/// C(k,3) * (n/k)^(4k-9) * 2^(-4C(k,2)+9). Requires k >= 3.
Log2Real sunflower_potential_bound(double log2_n, int k);

/// Core overlap sizes (m1,m2,m3) of a 4-set cluster, 3 <= m_i <= k.
struct ClusterSignature {
  int m1 = 3;
  int m2 = 3;
  int m3 = 3;
};

/// Per-overlap correction factor C(jk, m-3) * (k/n)^(m-3) * 2^(C(m,2)-3);
/// exactly 1 at m = 3. Requires j in {1,2,3} and 3 <= m <= k.
Log2Real overlap_factor(int j, int m, double log2_n, int k);

/// Bound for the number of 4-set clusters with the given signature:
/// C(k,3) * (n/k)^(4k) * prod_j C(jk, m_j-3) * (k/n)^(m_j).
Log2Real cluster_count_bound(const ClusterSignature& sig, double log2_n, int k);

/// Fewest elements such a cluster can span: 4C(k,2) - sum C(m_i,2).
std::int64_t cluster_min_size(const ClusterSignature& sig, int k);

enum class ClusterPotentialMode {
  CubeTimesSunflower,  // k^3 * f
  TripleSum,           // f * prod_j sum_{m=3..k} overlap_factor(j,m)
};
std::string to_string(ClusterPotentialMode mode);

/// Upper bound for the potential of the 4-set cluster family. Requires k >= 3.
Log2Real cluster_family_potential_upper(double log2_n, int k, ClusterPotentialMode mode);

/// 16*|X|*((T of clusters)^(1/4) + 1/4) / (T of cliques); a value below 1 is
/// a sound Maker-win certificate for the reduced game at bias p = 4.
Log2Real win_certificate_ratio(double log2_n, int k,
                               ClusterPotentialMode mode = ClusterPotentialMode::CubeTimesSunflower);

/// Smallest K0 such that overlap_factor(j,m) <= 1 for every j, every
/// m in [3,k], and every k in [K0, k_max] at the coupling.
int overlap_factor_unit_threshold(int k_max = 500);

struct RatioScan {
  std::optional<int> k_star;          // first k with ratio < 1
  bool strictly_decreasing_after = false;  // ratio falls from k_star to k_max
  int k_max = 0;
};
RatioScan win_certificate_scan(int k_max = 400,
                               ClusterPotentialMode mode = ClusterPotentialMode::CubeTimesSunflower);

struct ThresholdEntry {
  std::string key;
  std::string detail;
  double value = 0.0;
  std::optional<int> floor_value;
  bool asymptotic = false;  // an o(1) term was dropped; interior value only
};

/// Known thresholds for a given board size: clique building, tournament
/// building, the orientation window, and the universal window.
std::vector<ThresholdEntry> threshold_report(std::uint64_t n);

struct TournamentCountLower {
  Log2Real count;  // 2^C(k,2) / k!
  Log2Real weak;   // 2^(C(k,2) - k log2 k)
};
TournamentCountLower tournament_count_lower(int k);

}  // namespace tg
