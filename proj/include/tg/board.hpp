#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace tg {

/// Index of a board element, dense in [0, board.size()).
using ElementId = std::uint32_t;

/// Ordered vertex pair; for undirected boards the stored order is u < v.
struct Arc {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

enum class BoardKind { CompleteGraphEdges, OrderedPairs, ReducedKPartite };

std::string to_string(BoardKind kind);
BoardKind board_kind_from_string(const std::string& s);

/// Balanced partition of vertices 0..n-1 into k contiguous classes.
/// The first (n mod k) classes get the extra vertex, so class sizes
/// differ by at most one. class_of is the inverse map.
class Partition {
 public:
  Partition() = default;
  Partition(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  int class_of(std::uint32_t v) const { return class_of_[v]; }
  int class_size(int c) const { return static_cast<int>(members_[c].size()); }
  const std::vector<std::uint32_t>& members(int c) const { return members_[c]; }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<int> class_of_;
  std::vector<std::vector<std::uint32_t>> members_;
};

/// One of the three game boards:
///   CompleteGraphEdges(n)  unordered pairs {u,v}, lexicographic ids
///   OrderedPairs(n)        ordered pairs (u,v), u != v, lexicographic
///   ReducedKPartite(n,k)   cross pairs between distinct partition classes,
///                          in lexicographic order of the underlying {u,v}
/// Element numbering is fixed by construction so transcripts replay.
class Board {
 public:
  static Board complete_graph(int n);
  static Board ordered_pairs(int n);
  static Board reduced_k_partite(int n, int k);
  static Board reduced_k_partite(Partition partition);

  BoardKind kind() const { return kind_; }
  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return elements_.size(); }
  const Partition& partition() const { return partition_; }

  /// Decodes an element id to its vertex pair (u < v for undirected kinds).
  Arc element(ElementId id) const { return elements_[id]; }

  /// Inverse of element(); throws std::out_of_range if the pair is not on
  /// the board (e.g. a within-class pair of the reduced board).
  ElementId id_of(std::uint32_t u, std::uint32_t v) const;
  bool has_pair(std::uint32_t u, std::uint32_t v) const;

  /// OrderedPairs only: the id of (v,u) given the id of (u,v).
  ElementId reverse_id(ElementId id) const;

 private:
  Board() = default;

  BoardKind kind_ = BoardKind::CompleteGraphEdges;
  int n_ = 0;
  int k_ = 0;
  Partition partition_;
  std::vector<Arc> elements_;
  // triangular {u<v} index -> element id, or -1 (undirected kinds)
  std::vector<std::int32_t> pair_index_;
};

}  // namespace tg
