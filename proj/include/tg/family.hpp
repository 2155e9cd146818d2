#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tg/board.hpp"
#include "tg/log2real.hpp"

namespace tg {

enum class Player : std::uint8_t { Maker, Breaker };

inline Player opponent(Player p) {
  return p == Player::Maker ? Player::Breaker : Player::Maker;
}

/// Per-element ownership mark. Write-once over a game.
enum class Cell : std::uint8_t { Unclaimed, Maker, Breaker };

/// Interface behind implicit winning families (families far too large to
/// enumerate, like the transversal-clique family of the reduced board).
/// The enumerator and the membership test must agree on every set.
class ImplicitFamily {
 public:
  virtual ~ImplicitFamily() = default;

  /// Number of winning sets, or an upper bound (see count_is_upper_bound).
  virtual Log2Real count() const = 0;
  virtual bool count_is_upper_bound() const { return false; }

  /// All winning sets have this size, when uniform.
  virtual std::optional<std::size_t> uniform_set_size() const = 0;

  /// Does Maker's current holding contain a full winning set?
  virtual bool maker_has_win(const Board& board, std::span<const Cell> marks) const = 0;

  /// Enumerate all sets (sorted element ids); only small families support it.
  virtual void enumerate(const Board& board,
                         const std::function<void(std::span<const ElementId>)>& emit) const;

  /// Membership test for a sorted id set.
  virtual bool is_member(const Board& board, std::span<const ElementId> set) const;

  virtual std::string describe() const = 0;
};

/// A hypergraph of winning element-sets: explicit (a list of sets) or
/// implicit (callbacks). Explicit sets are stored sorted and deduplicated,
/// with a per-element membership index for incremental bookkeeping.
class WinningFamily {
 public:
  WinningFamily() = default;

  /// Explicit family; validates every set against the board.
  static WinningFamily explicit_sets(const Board& board,
                                     std::vector<std::vector<ElementId>> sets);
  static WinningFamily implicit(std::shared_ptr<const ImplicitFamily> impl);

  bool is_explicit() const { return impl_ == nullptr; }
  const std::vector<std::vector<ElementId>>& sets() const { return sets_; }
  std::size_t set_count() const { return sets_.size(); }
  const ImplicitFamily* impl() const { return impl_.get(); }

  /// Sets containing a given element (explicit families).
  const std::vector<std::uint32_t>& sets_of(ElementId e) const { return element_index_[e]; }

  std::optional<std::size_t> uniform_set_size() const;

  bool maker_has_win(const Board& board, std::span<const Cell> marks) const;

  /// Expands an implicit family into an explicit one (small boards only).
  static WinningFamily materialize(const Board& board, const WinningFamily& family);

 private:
  std::vector<std::vector<ElementId>> sets_;
  std::vector<std::vector<std::uint32_t>> element_index_;
  std::shared_ptr<const ImplicitFamily> impl_;
};

}  // namespace tg
