#include "tg/board.hpp"

#include <stdexcept>

namespace tg {

std::string to_string(BoardKind kind) {
  switch (kind) {
    case BoardKind::CompleteGraphEdges: return "complete-graph-edges";
    case BoardKind::OrderedPairs: return "ordered-pairs";
    case BoardKind::ReducedKPartite: return "reduced-k-partite";
  }
  return "?";
}

BoardKind board_kind_from_string(const std::string& s) {
  if (s == "complete-graph-edges") return BoardKind::CompleteGraphEdges;
  if (s == "ordered-pairs") return BoardKind::OrderedPairs;
  if (s == "reduced-k-partite") return BoardKind::ReducedKPartite;
  throw std::invalid_argument("unknown board kind: " + s);
}

Partition::Partition(int n, int k) : n_(n), k_(k) {
  if (k < 1 || n < k) throw std::invalid_argument("Partition: need n >= k >= 1");
  class_of_.resize(n);
  members_.resize(k);
  int base = n / k;
  int extra = n % k;
  std::uint32_t v = 0;
  for (int c = 0; c < k; ++c) {
    int sz = base + (c < extra ? 1 : 0);
    for (int i = 0; i < sz; ++i, ++v) {
      class_of_[v] = c;
      members_[c].push_back(v);
    }
  }
}

namespace {

constexpr std::size_t kMaxElements = 50'000'000;

inline std::size_t tri_index(int n, std::uint32_t u, std::uint32_t v) {
  // row-major upper triangle, u < v
  return static_cast<std::size_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

}  // namespace

Board Board::complete_graph(int n) {
  if (n < 1) throw std::invalid_argument("Board: n must be positive");
  Board b;
  b.kind_ = BoardKind::CompleteGraphEdges;
  b.n_ = n;
  std::size_t m = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (m > kMaxElements) throw std::invalid_argument("Board: too large");
  b.elements_.reserve(m);
  b.pair_index_.assign(m, -1);
  for (std::uint32_t u = 0; u + 1 < static_cast<std::uint32_t>(n); ++u)
    for (std::uint32_t v = u + 1; v < static_cast<std::uint32_t>(n); ++v) {
      b.pair_index_[tri_index(n, u, v)] = static_cast<std::int32_t>(b.elements_.size());
      b.elements_.push_back({u, v});
    }
  return b;
}

Board Board::ordered_pairs(int n) {
  if (n < 2) throw std::invalid_argument("Board: ordered pairs need n >= 2");
  Board b;
  b.kind_ = BoardKind::OrderedPairs;
  b.n_ = n;
  std::size_t m = static_cast<std::size_t>(n) * (n - 1);
  if (m > kMaxElements) throw std::invalid_argument("Board: too large");
  b.elements_.reserve(m);
  for (std::uint32_t u = 0; u < static_cast<std::uint32_t>(n); ++u)
    for (std::uint32_t v = 0; v < static_cast<std::uint32_t>(n); ++v)
      if (u != v) b.elements_.push_back({u, v});
  return b;
}

Board Board::reduced_k_partite(int n, int k) {
  return reduced_k_partite(Partition(n, k));
}

Board Board::reduced_k_partite(Partition partition) {
  if (partition.k() < 2) throw std::invalid_argument("Board: reduced board needs k >= 2");
  Board b;
  b.kind_ = BoardKind::ReducedKPartite;
  b.n_ = partition.n();
  b.k_ = partition.k();
  int n = b.n_;
  std::size_t tri = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (tri > kMaxElements) throw std::invalid_argument("Board: too large");
  b.pair_index_.assign(tri, -1);
  for (std::uint32_t u = 0; u + 1 < static_cast<std::uint32_t>(n); ++u)
    for (std::uint32_t v = u + 1; v < static_cast<std::uint32_t>(n); ++v)
      if (partition.class_of(u) != partition.class_of(v)) {
        b.pair_index_[tri_index(n, u, v)] = static_cast<std::int32_t>(b.elements_.size());
        b.elements_.push_back({u, v});
      }
  b.partition_ = std::move(partition);
  return b;
}

ElementId Board::id_of(std::uint32_t u, std::uint32_t v) const {
  if (u >= static_cast<std::uint32_t>(n_) || v >= static_cast<std::uint32_t>(n_) || u == v)
    throw std::out_of_range("Board::id_of: bad vertex pair");
  if (kind_ == BoardKind::OrderedPairs)
    return static_cast<ElementId>(u * (n_ - 1) + (v > u ? v - 1 : v));
  if (u > v) std::swap(u, v);
  std::int32_t id = pair_index_[tri_index(n_, u, v)];
  if (id < 0) throw std::out_of_range("Board::id_of: pair not on board");
  return static_cast<ElementId>(id);
}

bool Board::has_pair(std::uint32_t u, std::uint32_t v) const {
  if (u >= static_cast<std::uint32_t>(n_) || v >= static_cast<std::uint32_t>(n_) || u == v)
    return false;
  if (kind_ == BoardKind::OrderedPairs) return true;
  if (u > v) std::swap(u, v);
  return pair_index_[tri_index(n_, u, v)] >= 0;
}

ElementId Board::reverse_id(ElementId id) const {
  if (kind_ != BoardKind::OrderedPairs)
    throw std::logic_error("Board::reverse_id: ordered-pairs board only");
  Arc a = elements_[id];
  return id_of(a.to, a.from);
}

}  // namespace tg
