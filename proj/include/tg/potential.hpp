#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tg/game.hpp"
#include "tg/log2real.hpp"

namespace tg {

/// Classification of every winning set of an explicit family against a game
/// in progress: a set is dead once Breaker touches it (or, with the
/// reverse-kill rule of the ordered-pair reduction, once Maker claims the
/// reverse of one of its elements); needs counts the elements Maker still
/// lacks. Updates are incremental; note_claim is idempotent so a strategy
/// may apply its own picks eagerly and later sync from the transcript.
class AliveSetView {
 public:
  AliveSetView(const Board& board, const WinningFamily& family, bool reverse_kill = false);

  void note_claim(Player p, ElementId e);
  /// Applies transcript records not yet seen (cursor-tracked).
  void sync(const GameState& state);

  const Board& board() const { return *board_; }
  const WinningFamily& family() const { return *family_; }
  Cell mark(ElementId e) const { return marks_[e]; }
  bool alive(std::uint32_t set) const { return !dead_[set]; }
  int needs(std::uint32_t set) const { return needs_[set]; }
  std::size_t alive_count() const { return alive_count_; }
  std::size_t dead_count() const { return dead_.size() - alive_count_; }
  std::size_t max_set_size() const { return max_set_size_; }

  /// Sum of weight[needs(S)] over alive sets S containing e.
  double element_score(ElementId e, std::span<const double> weight_by_needs) const;

 private:
  void kill(std::uint32_t set);

  const Board* board_;
  const WinningFamily* family_;
  bool reverse_kill_;
  std::vector<Cell> marks_;
  std::vector<std::int32_t> needs_;
  std::vector<std::uint8_t> dead_;
  std::size_t alive_count_ = 0;
  std::size_t max_set_size_ = 0;
  std::size_t cursor_ = 0;
};

using CandidateFilter = std::function<bool(ElementId)>;

/// Breaker's potential rule: the unclaimed element (passing the filter)
/// maximizing the summed (1+b)^(-needs/a) weight of the alive sets through
/// it; ties break to the smallest id. Throws when no candidate exists.
ElementId es_breaker_move(const AliveSetView& view, int a, int b,
                          const CandidateFilter& filter = nullptr);

/// Maker potential heuristic: unclaimed element maximizing the summed
/// 2^(-needs) weight; smallest-id tie-break.
ElementId maker_potential_move(const AliveSetView& view);

/// T(H) = sum over sets of 2^(-|H|). Implicit families must expose an
/// analytic count and a uniform set size.
Log2Real potential_T(const WinningFamily& family);

/// Exact dyadic evaluation of potential_T for explicit families (arbitrary
/// precision, cross-validation oracle). Limited to 10^4 sets.
double potential_T_exact_log2(const WinningFamily& family);

struct EsCertificate {
  Log2Real sum;        // sum of (1+b)^(-|F|/a), or an upper bound for it
  Log2Real threshold;  // 1/(1+b)
  bool sum_is_upper_bound = false;
  bool satisfied = false;  // strict comparison with a 1e-9 log2 guard
};

/// Biased Erdos-Selfridge criterion: sum < 1/(1+b) certifies a Breaker win
/// in the (a:b) game. The comparison keeps a 1e-9 log2 slack, so boundary
/// cases report false (the sound direction for a certificate).
EsCertificate es_criterion(const WinningFamily& family, int a, int b);

struct AwwcResult {
  Log2Real lhs;  // T(F) / |X|
  Log2Real rhs;  // p + 4p * upper^(1/p)
  bool holds = false;
};

/// Weak-win criterion check: T(F)/|X| > p + 4p*(T(F_2^p))^(1/p). The caller
/// passes an upper bound for T(F_2^p), so a true result is sound.
AwwcResult awwc_check(Log2Real board_size, Log2Real t_family, int p, Log2Real t_clusters_upper);
AwwcResult awwc_check(std::size_t board_size, Log2Real t_family, int p,
                      Log2Real t_clusters_upper);

/// Round strategies built on the potential rules. Each keeps an incremental
/// AliveSetView synced from the observed transcript and starts over when
/// handed a fresh game, so one instance can play games back to back.
Strategy es_breaker_strategy();
Strategy maker_potential_strategy();

}  // namespace tg
