#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "tg/orientation.hpp"

namespace tg {

struct SolverLimits {
  std::size_t max_remaining = 24;    // unclaimed elements, claim games
  std::size_t max_unoriented = 15;   // undirected edges, orientation games
  /// Verification toggle: also search Maker half-rounds that stop early.
  /// Full claims are the modeling default (an extra element never hurts
  /// Maker); the toggle is restricted to boards of at most 10 elements.
  bool allow_maker_underclaim = false;
};

struct SolveResult {
  Outcome winner = Outcome::Incomplete;
  std::optional<Move> principal;     // mover's winning half-round (claim games)
  std::optional<Arc> principal_arc;  // mover's winning arc (orientation games)
  std::uint64_t nodes = 0;
  std::uint64_t table_hits = 0;
};

struct SolverRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact minimax with a transposition table, the ground-truth oracle at
/// desk scale. Positions expand one element at a time in ascending id
/// order, so node counts are reproducible. The table is private to the
/// instance and persists across calls while board and family stay the
/// same, so a playout of repeated queries shares work.
class Solver {
 public:
  explicit Solver(SolverLimits limits = {});

  /// Winner of the claim game from this position. Requires an explicit
  /// family and at most 64 board elements; refuses when more than
  /// limits.max_remaining elements are unclaimed.
  SolveResult solve_mb(const GameState& state);

  /// Winner of the orientation game: OMaker (reported as MakerWin) iff the
  /// final digraph contains the goal. Refuses when more than
  /// limits.max_unoriented edges are still undirected.
  SolveResult solve_orientation(const OrientationState& state, const Tournament& goal);

  const SolverLimits& limits() const { return limits_; }

 private:
  struct Key {
    std::uint64_t maker = 0;
    std::uint64_t breaker = 0;
    std::uint32_t meta = 0;
    bool operator==(const Key& o) const {
      return maker == o.maker && breaker == o.breaker && meta == o.meta;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.maker * 0x9e3779b97f4a7c15ull;
      h ^= (k.breaker + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
      h ^= (k.meta + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
      return static_cast<std::size_t>(h);
    }
  };

  SolverLimits limits_;
  std::unordered_map<Key, bool, KeyHash> table_;
  const void* table_owner_ = nullptr;
  std::uint64_t nodes_ = 0;
  std::uint64_t hits_ = 0;

  friend struct MbSearch;
  friend struct OrSearch;
};

/// Plays the solver's principal move whenever the position is winning for
/// the mover; in lost positions it falls back to the potential heuristic
/// of the respective side (deterministic, documented as a fallback).
Strategy optimal_mb_strategy(SolverLimits limits = {});

/// Same contract for orientation games; the lost-position fallback is the
/// lexicographically first open arc.
OrientationStrategy optimal_orientation_strategy(const Tournament& goal,
                                                 SolverLimits limits = {});

}  // namespace tg
