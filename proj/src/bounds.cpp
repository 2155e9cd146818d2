#include "tg/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace tg {

double coupling_log2_n(int k) {
  if (k < 1) throw std::domain_error("coupling_log2_n: k must be positive");
  return std::log2(static_cast<double>(k)) + (k + 9) / 2.0;
}

std::optional<std::uint64_t> coupling_n_floor(int k) {
  double lg = coupling_log2_n(k);
  if (lg >= 63.0) return std::nullopt;
  long double n = static_cast<long double>(k) * std::exp2(static_cast<long double>(k + 9) / 2);
  return static_cast<std::uint64_t>(std::floor(n));
}

GameParameters coupled_parameters(int k, int p) {
  if (k < 2) throw std::domain_error("coupled_parameters: k must be at least 2");
  return GameParameters{k, coupling_log2_n(k), p};
}

GameParameters parameters_for_n(std::uint64_t n, int k, int p) {
  if (k < 2) throw std::domain_error("parameters_for_n: k must be at least 2");
  if (n < static_cast<std::uint64_t>(k))
    throw std::domain_error("parameters_for_n: n must be at least k");
  return GameParameters{k, std::log2(static_cast<double>(n)), p};
}

int k_of_n(std::uint64_t n) {
  if (n < 32) throw std::domain_error("k_of_n: n must be at least 32");
  double lg_n = std::log2(static_cast<double>(n));
  int k = 1;
  while (coupling_log2_n(k + 1) <= lg_n) ++k;
  double guaranteed = 2.0 * lg_n - 2.0 * std::log2(lg_n) - 12.0;
  if (static_cast<double>(k) < guaranteed)
    throw std::logic_error("k_of_n: scan fell below its guaranteed lower bound");
  return k;
}

Log2Real clique_family_potential(double log2_n, int k) {
  if (k < 1) throw std::domain_error("clique_family_potential: k must be positive");
  double per_class = log2_n - std::log2(static_cast<double>(k));
  return Log2Real::from_log2(k * per_class - k * (k - 1) / 2.0);
}

Log2Real reduced_board_size_bound(double log2_n, int k) {
  if (k < 2) throw std::domain_error("reduced_board_size_bound: k must be at least 2");
  double per_class = log2_n - std::log2(static_cast<double>(k));
  return Log2Real::from_log2(log2_binomial(k, 2) + 2.0 * per_class);
}

Log2Real sunflower_potential_bound(double log2_n, int k) {
  if (k < 3) throw std::domain_error("sunflower_potential_bound: k must be at least 3");
  double per_class = log2_n - std::log2(static_cast<double>(k));
  double pairs = k * (k - 1) / 2.0;
  return Log2Real::from_log2(log2_binomial(k, 3) + (4.0 * k - 9.0) * per_class - 4.0 * pairs +
                             9.0);
}

Log2Real overlap_factor(int j, int m, double log2_n, int k) {
  if (j < 1 || j > 3) throw std::domain_error("overlap_factor: j must be in {1,2,3}");
  if (m < 3 || m > k) throw std::domain_error("overlap_factor: m must be in [3, k]");
  double inv_per_class = std::log2(static_cast<double>(k)) - log2_n;
  return Log2Real::from_log2(log2_binomial(j * k, m - 3) + (m - 3) * inv_per_class +
                             (m * (m - 1) / 2.0 - 3.0));
}

Log2Real cluster_count_bound(const ClusterSignature& sig, double log2_n, int k) {
  if (k < 3) throw std::domain_error("cluster_count_bound: k must be at least 3");
  for (int m : {sig.m1, sig.m2, sig.m3})
    if (m < 3 || m > k) throw std::domain_error("cluster_count_bound: signature out of range");
  double per_class = log2_n - std::log2(static_cast<double>(k));
  double lg = log2_binomial(k, 3) + 4.0 * k * per_class;
  int j = 1;
  for (int m : {sig.m1, sig.m2, sig.m3}) {
    lg += log2_binomial(j * k, m - 3) - m * per_class;
    ++j;
  }
  return Log2Real::from_log2(lg);
}

std::int64_t cluster_min_size(const ClusterSignature& sig, int k) {
  if (k < 3) throw std::domain_error("cluster_min_size: k must be at least 3");
  std::int64_t size = 4LL * k * (k - 1) / 2;
  for (int m : {sig.m1, sig.m2, sig.m3}) {
    if (m < 3 || m > k) throw std::domain_error("cluster_min_size: signature out of range");
    size -= static_cast<std::int64_t>(m) * (m - 1) / 2;
  }
  return size;
}

std::string to_string(ClusterPotentialMode mode) {
  return mode == ClusterPotentialMode::CubeTimesSunflower ? "cube" : "triple-sum";
}

Log2Real cluster_family_potential_upper(double log2_n, int k, ClusterPotentialMode mode) {
  if (k < 3)
    throw std::domain_error("cluster_family_potential_upper: k must be at least 3");
  Log2Real f = sunflower_potential_bound(log2_n, k);
  if (mode == ClusterPotentialMode::CubeTimesSunflower)
    return f * Log2Real::from_log2(3.0 * std::log2(static_cast<double>(k)));
  Log2Real product = f;
  for (int j = 1; j <= 3; ++j) {
    Log2Real inner = Log2Real::zero();
    for (int m = 3; m <= k; ++m) inner += overlap_factor(j, m, log2_n, k);
    product = product * inner;
  }
  return product;
}

Log2Real win_certificate_ratio(double log2_n, int k, ClusterPotentialMode mode) {
  if (k < 3) throw std::domain_error("win_certificate_ratio: k must be at least 3");
  Log2Real clusters = cluster_family_potential_upper(log2_n, k, mode);
  Log2Real rhs = Log2Real::from_value(16.0) * reduced_board_size_bound(log2_n, k) *
                 (clusters.root(4) + Log2Real::from_value(0.25));
  return rhs / clique_family_potential(log2_n, k);
}

int overlap_factor_unit_threshold(int k_max) {
  if (k_max < 3) throw std::domain_error("overlap_factor_unit_threshold: k_max too small");
  int last_bad = 2;
  for (int k = 3; k <= k_max; ++k) {
    double lg_n = coupling_log2_n(k);
    for (int j = 1; j <= 3 && last_bad != k; ++j)
      for (int m = 3; m <= k; ++m)
        if (overlap_factor(j, m, lg_n, k).log2() > 1e-9) {
          last_bad = k;
          break;
        }
  }
  if (last_bad == k_max)
    throw std::runtime_error("overlap_factor_unit_threshold: no stable threshold below k_max");
  return last_bad + 1;
}

RatioScan win_certificate_scan(int k_max, ClusterPotentialMode mode) {
  if (k_max < 3) throw std::domain_error("win_certificate_scan: k_max too small");
  RatioScan scan;
  scan.k_max = k_max;
  double prev = 0.0;
  for (int k = 3; k <= k_max; ++k) {
    double lg = win_certificate_ratio(coupling_log2_n(k), k, mode).log2();
    if (!scan.k_star && lg < -1e-9) {
      scan.k_star = k;
      scan.strictly_decreasing_after = true;
    } else if (scan.k_star && lg >= prev) {
      scan.strictly_decreasing_after = false;
    }
    prev = lg;
  }
  return scan;
}

std::vector<ThresholdEntry> threshold_report(std::uint64_t n) {
  if (n < 4) throw std::domain_error("threshold_report: n must be at least 4");
  double lg = std::log2(static_cast<double>(n));
  double lglg = std::log2(lg);
  std::vector<ThresholdEntry> out;
  double clique = 2.0 * lg - 2.0 * lglg + 2.0 * std::log2(std::exp(1.0)) - 3.0;
  out.push_back({"clique_threshold",
                 "largest clique Maker can build on this board",
                 clique,
                 static_cast<int>(std::floor(clique)),
                 true});
  out.push_back({"tournament_lower",
                 "goal size up to which Maker builds any fixed tournament",
                 2.0 * lg - 2.0 * lglg - 12.0,
                 std::nullopt,
                 false});
  out.push_back({"orientation_lower",
                 "orientation game window, lower end (inherited from the tournament game)",
                 2.0 * lg - 2.0 * lglg - 12.0,
                 std::nullopt,
                 false});
  out.push_back({"orientation_upper",
                 "goal size from which OBreaker wins the orientation game",
                 4.0 * lg + 2.0,
                 std::nullopt,
                 false});
  out.push_back({"universal_lower",
                 "goal size up to which Maker builds every tournament at once",
                 0.5 * lg,
                 std::nullopt,
                 true});
  out.push_back({"universal_upper",
                 "ceiling for the universal goal size",
                 lg,
                 std::nullopt,
                 true});
  return out;
}

TournamentCountLower tournament_count_lower(int k) {
  if (k < 1) throw std::domain_error("tournament_count_lower: k must be positive");
  double pairs = k * (k - 1) / 2.0;
  double lg_fact = log2_factorial(k);
  double k_log_k = k * std::log2(static_cast<double>(k));
  return TournamentCountLower{Log2Real::from_log2(pairs - lg_fact),
                              Log2Real::from_log2(pairs - k_log_k)};
}

}  // namespace tg
