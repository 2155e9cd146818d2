#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "tg/game.hpp"

namespace tg {

/// A fully oriented complete graph on up to 8 vertices. One bit per
/// unordered pair in triangular order; a set bit on pair (i,j), i < j,
/// means the arc runs i -> j.
class Tournament {
 public:
  static constexpr int kMaxVertices = 8;

  Tournament(int k, std::uint64_t bits);
  static Tournament transitive(int k);
  static Tournament cyclic_triangle();

  int k() const { return k_; }
  std::uint64_t bits() const { return bits_; }
  bool arc(int i, int j) const;
  int out_degree(int i) const;
  int in_degree(int i) const { return k_ - 1 - out_degree(i); }

  /// Minimum bit pattern over all vertex relabelings; equal patterns
  /// characterize isomorphic tournaments.
  std::uint64_t canonical_bits() const;
  Tournament canonical() const { return Tournament(k_, canonical_bits()); }

  bool operator==(const Tournament& o) const { return k_ == o.k_ && bits_ == o.bits_; }

 private:
  int k_;
  std::uint64_t bits_;
};

/// Text form: first line the vertex count, then one "i j" line per pair
/// for the arc i -> j (0-indexed). The reader rejects duplicate, missing,
/// or out-of-range pairs.
Tournament read_tournament(std::istream& in);
Tournament parse_tournament_text(const std::string& text);
std::string format_tournament(const Tournament& t);

/// One representative per isomorphism class, in ascending bit order.
/// Supported for k <= 6.
std::vector<Tournament> enumerate_tournaments(int k);

/// Directed graph with bitset adjacency, used for containment checks on
/// played-out boards.
class Digraph {
 public:
  explicit Digraph(int n);
  int n() const { return n_; }
  void add_arc(int u, int v);
  bool has_arc(int u, int v) const;
  int out_degree(int v) const { return out_deg_[v]; }
  int in_degree(int v) const { return in_deg_[v]; }
  std::size_t arc_count() const { return arcs_; }
  std::size_t words() const { return words_; }
  const std::uint64_t* out_row(int v) const { return out_.data() + v * words_; }

 private:
  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> out_;
  std::vector<std::uint64_t> in_;
  std::vector<int> out_deg_;
  std::vector<int> in_deg_;
  std::size_t arcs_ = 0;
};

/// Arcs Maker attached to her claims; throws if a Maker record carries none.
Digraph maker_digraph(const GameState& state);
/// Every oriented claim by either player.
Digraph final_digraph(const GameState& state);

/// True iff some injective vertex map sends every goal arc to an arc of d.
/// Host candidates are tried in descending total-degree order (ties by
/// index) so searches are reproducible.
bool contains_copy(const Digraph& d, const Tournament& goal);

/// True iff d holds a transitive tournament on k vertices: a chain where
/// every earlier member points at every later one. Each candidate set is
/// met once, through its unique topological order, so no cap on k beyond
/// the board size.
bool contains_transitive(const Digraph& d, int k);

/// Winning sets are the edge sets of cliques with one vertex per partition
/// class: analytic count (product of class sizes), uniform size C(k,2),
/// membership, enumeration, and a backtracking Maker-containment check.
WinningFamily transversal_clique_family(const Partition& partition);

/// Lifts a strategy for the reduced clique game to the tournament game:
/// each claimed cross pair {v_i, v_j} is oriented the way the goal directs
/// the corresponding classes. Claims inside one class abort the playout.
Strategy maker_tournament_wrapper(const Tournament& goal, const Partition& partition,
                                  Strategy inner);

/// Lifts any clique strategy on the full board: every claimed edge is
/// oriented from its lower vertex to its higher one, so a completed clique
/// yields the transitive tournament. Other goals get no guarantee.
Strategy transitive_strategy_wrapper(Strategy inner);

}  // namespace tg
