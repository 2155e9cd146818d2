#include "tg/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace tg {

void ImplicitFamily::enumerate(const Board&,
                               const std::function<void(std::span<const ElementId>)>&) const {
  throw std::runtime_error("implicit family does not support enumeration: " + describe());
}

bool ImplicitFamily::is_member(const Board&, std::span<const ElementId>) const {
  throw std::runtime_error("implicit family does not support membership tests: " + describe());
}

WinningFamily WinningFamily::explicit_sets(const Board& board,
                                           std::vector<std::vector<ElementId>> sets) {
  WinningFamily f;
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (ElementId e : s)
      if (e >= board.size())
        throw std::invalid_argument("WinningFamily: set element outside the board");
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  f.sets_ = std::move(sets);
  f.element_index_.resize(board.size());
  for (std::uint32_t i = 0; i < f.sets_.size(); ++i)
    for (ElementId e : f.sets_[i]) f.element_index_[e].push_back(i);
  return f;
}

WinningFamily WinningFamily::implicit(std::shared_ptr<const ImplicitFamily> impl) {
  if (!impl) throw std::invalid_argument("WinningFamily: null implicit family");
  WinningFamily f;
  f.impl_ = std::move(impl);
  return f;
}

std::optional<std::size_t> WinningFamily::uniform_set_size() const {
  if (impl_) return impl_->uniform_set_size();
  if (sets_.empty()) return std::nullopt;
  std::size_t sz = sets_[0].size();
  for (const auto& s : sets_)
    if (s.size() != sz) return std::nullopt;
  return sz;
}

WinningFamily WinningFamily::materialize(const Board& board, const WinningFamily& family) {
  if (family.is_explicit()) return family;
  std::vector<std::vector<ElementId>> sets;
  family.impl()->enumerate(board, [&](std::span<const ElementId> s) {
    sets.emplace_back(s.begin(), s.end());
  });
  return explicit_sets(board, std::move(sets));
}

bool WinningFamily::maker_has_win(const Board& board, std::span<const Cell> marks) const {
  if (impl_) return impl_->maker_has_win(board, marks);
  for (const auto& s : sets_) {
    bool all = true;  // an empty winning set is vacuously Maker's
    for (ElementId e : s)
      if (marks[e] != Cell::Maker) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace tg
