#include "tg/tournament.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tg {

namespace {

int pair_count(int k) { return k * (k - 1) / 2; }

int pair_index(int k, int i, int j) {
  return i * (2 * k - i - 1) / 2 + (j - i - 1);
}

}  // namespace

Tournament::Tournament(int k, std::uint64_t bits) : k_(k), bits_(bits) {
  if (k < 1 || k > kMaxVertices)
    throw std::domain_error("Tournament: vertex count must be in [1, 8]");
  int pairs = pair_count(k);
  if (pairs < 64 && bits >> pairs)
    throw std::invalid_argument("Tournament: orientation bits out of range");
}

Tournament Tournament::transitive(int k) {
  int pairs = pair_count(k);
  std::uint64_t bits = pairs == 0 ? 0 : ~std::uint64_t{0} >> (64 - pairs);
  return Tournament(k, bits);
}

Tournament Tournament::cyclic_triangle() {
  // arcs 0->1, 1->2, 2->0
  return Tournament(3, 0b101);
}

bool Tournament::arc(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= k_ || j >= k_)
    throw std::out_of_range("Tournament::arc: bad vertex pair");
  if (i < j) return (bits_ >> pair_index(k_, i, j)) & 1;
  return !((bits_ >> pair_index(k_, j, i)) & 1);
}

int Tournament::out_degree(int i) const {
  int d = 0;
  for (int j = 0; j < k_; ++j)
    if (j != i && arc(i, j)) ++d;
  return d;
}

namespace {

std::uint64_t permuted_bits(const Tournament& t, const std::vector<int>& p) {
  int k = t.k();
  std::uint64_t out = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (t.arc(p[a], p[b])) out |= std::uint64_t{1} << pair_index(k, a, b);
  return out;
}

}  // namespace

std::uint64_t Tournament::canonical_bits() const {
  std::vector<int> p(k_);
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t best = permuted_bits(*this, p);
  while (std::next_permutation(p.begin(), p.end()))
    best = std::min(best, permuted_bits(*this, p));
  return best;
}

Tournament read_tournament(std::istream& in) {
  int k = 0;
  if (!(in >> k)) throw std::invalid_argument("tournament text: missing vertex count");
  if (k < 1 || k > Tournament::kMaxVertices)
    throw std::invalid_argument("tournament text: vertex count must be in [1, 8]");
  int pairs = pair_count(k);
  std::vector<char> seen(pairs, 0);
  std::uint64_t bits = 0;
  for (int r = 0; r < pairs; ++r) {
    int i = 0, j = 0;
    if (!(in >> i >> j)) throw std::invalid_argument("tournament text: missing arc lines");
    if (i == j || i < 0 || j < 0 || i >= k || j >= k)
      throw std::invalid_argument("tournament text: bad arc endpoints");
    int lo = std::min(i, j), hi = std::max(i, j);
    int idx = pair_index(k, lo, hi);
    if (seen[idx]) throw std::invalid_argument("tournament text: duplicate pair");
    seen[idx] = 1;
    if (i < j) bits |= std::uint64_t{1} << idx;
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("tournament text: trailing content");
  return Tournament(k, bits);
}

Tournament parse_tournament_text(const std::string& text) {
  std::istringstream in(text);
  return read_tournament(in);
}

std::string format_tournament(const Tournament& t) {
  std::ostringstream out;
  out << t.k() << "\n";
  for (int i = 0; i < t.k(); ++i)
    for (int j = i + 1; j < t.k(); ++j) {
      if (t.arc(i, j))
        out << i << " " << j << "\n";
      else
        out << j << " " << i << "\n";
    }
  return out.str();
}

std::vector<Tournament> enumerate_tournaments(int k) {
  if (k < 1 || k > 6)
    throw std::domain_error("enumerate_tournaments: supported for k in [1, 6]");
  int pairs = pair_count(k);
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<char> visited(std::uint64_t{1} << pairs, 0);
  std::vector<Tournament> reps;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    if (visited[mask]) continue;
    Tournament t(k, mask);
    // mask is the least unvisited member, hence the orbit minimum
    reps.push_back(t);
    for (const auto& perm : perms) visited[permuted_bits(t, perm)] = 1;
  }
  return reps;
}

Digraph::Digraph(int n) : n_(n) {
  if (n < 1) throw std::domain_error("Digraph: vertex count must be positive");
  if (n > 8192) throw std::domain_error("Digraph: vertex count above the 8192 support limit");
  words_ = (static_cast<std::size_t>(n) + 63) / 64;
  out_.assign(words_ * n, 0);
  in_.assign(words_ * n, 0);
  out_deg_.assign(n, 0);
  in_deg_.assign(n, 0);
}

void Digraph::add_arc(int u, int v) {
  if (u == v) throw std::invalid_argument("Digraph: self-loop");
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("Digraph: bad vertex");
  std::uint64_t& word = out_[u * words_ + v / 64];
  std::uint64_t bit = std::uint64_t{1} << (v % 64);
  if (word & bit) return;
  word |= bit;
  in_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
  ++out_deg_[u];
  ++in_deg_[v];
  ++arcs_;
}

bool Digraph::has_arc(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return (out_[u * words_ + v / 64] >> (v % 64)) & 1;
}

namespace {

Digraph digraph_from_records(const GameState& state, bool maker_only) {
  Digraph d(state.board().n());
  for (const auto& rec : state.history().records) {
    if (maker_only && rec.player != Player::Maker) continue;
    if (rec.arcs.empty()) {
      if (rec.elements.empty()) continue;
      if (maker_only || rec.player == Player::Maker)
        throw std::logic_error("digraph extraction: claims carry no orientation");
      continue;
    }
    for (const Arc& a : rec.arcs)
      d.add_arc(static_cast<int>(a.from), static_cast<int>(a.to));
  }
  return d;
}

}  // namespace

Digraph maker_digraph(const GameState& state) { return digraph_from_records(state, true); }

Digraph final_digraph(const GameState& state) { return digraph_from_records(state, false); }

bool contains_copy(const Digraph& d, const Tournament& goal) {
  int k = goal.k();
  int n = d.n();
  if (k > n) return false;
  std::vector<int> hosts(n);
  std::iota(hosts.begin(), hosts.end(), 0);
  std::stable_sort(hosts.begin(), hosts.end(), [&](int a, int b) {
    return d.out_degree(a) + d.in_degree(a) > d.out_degree(b) + d.in_degree(b);
  });
  std::vector<int> goal_out(k), goal_in(k);
  for (int i = 0; i < k; ++i) {
    goal_out[i] = goal.out_degree(i);
    goal_in[i] = goal.in_degree(i);
  }
  std::vector<int> placed(k, -1);
  std::vector<char> used(n, 0);
  auto dfs = [&](auto&& self, int t) -> bool {
    if (t == k) return true;
    for (int h : hosts) {
      if (used[h]) continue;
      if (d.out_degree(h) < goal_out[t] || d.in_degree(h) < goal_in[t]) continue;
      bool ok = true;
      for (int s = 0; s < t && ok; ++s)
        ok = goal.arc(s, t) ? d.has_arc(placed[s], h) : d.has_arc(h, placed[s]);
      if (!ok) continue;
      placed[t] = h;
      used[h] = 1;
      if (self(self, t + 1)) return true;
      used[h] = 0;
      placed[t] = -1;
    }
    return false;
  };
  return dfs(dfs, 0);
}

bool contains_transitive(const Digraph& d, int k) {
  if (k <= 0) return true;
  int n = d.n();
  if (k > n) return false;
  if (k == 1) return true;
  std::size_t w = d.words();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return d.out_degree(a) > d.out_degree(b); });
  std::vector<std::uint64_t> levels(static_cast<std::size_t>(k + 1) * w, 0);
  std::uint64_t* root = levels.data();
  for (int v = 0; v < n; ++v) root[v / 64] |= std::uint64_t{1} << (v % 64);
  auto dfs = [&](auto&& self, const std::uint64_t* cand, int depth) -> bool {
    if (depth == k) return true;
    int avail = 0;
    for (std::size_t i = 0; i < w; ++i) avail += std::popcount(cand[i]);
    if (avail < k - depth) return false;
    std::uint64_t* next = levels.data() + static_cast<std::size_t>(depth + 1) * w;
    for (int v : order) {
      if (!((cand[v / 64] >> (v % 64)) & 1)) continue;
      const std::uint64_t* row = d.out_row(v);
      for (std::size_t i = 0; i < w; ++i) next[i] = cand[i] & row[i];
      if (self(self, next, depth + 1)) return true;
    }
    return false;
  };
  return dfs(dfs, root, 0);
}

namespace {

class TransversalCliqueFamily : public ImplicitFamily {
 public:
  explicit TransversalCliqueFamily(Partition part) : part_(std::move(part)) {
    if (part_.k() < 2)
      throw std::domain_error("transversal_clique_family: needs at least 2 classes");
  }

  Log2Real count() const override {
    double lg = 0.0;
    for (int c = 0; c < part_.k(); ++c)
      lg += std::log2(static_cast<double>(part_.class_size(c)));
    return Log2Real::from_log2(lg);
  }

  std::optional<std::size_t> uniform_set_size() const override {
    int k = part_.k();
    return static_cast<std::size_t>(k) * (k - 1) / 2;
  }

  bool maker_has_win(const Board& board, std::span<const Cell> marks) const override {
    check_board(board);
    int n = part_.n();
    std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
    std::vector<std::uint64_t> adj(words * n, 0);
    for (ElementId e = 0; e < board.size(); ++e) {
      if (marks[e] != Cell::Maker) continue;
      Arc a = board.element(e);
      adj[a.from * words + a.to / 64] |= std::uint64_t{1} << (a.to % 64);
      adj[a.to * words + a.from / 64] |= std::uint64_t{1} << (a.from % 64);
    }
    std::vector<std::uint64_t> common(words * part_.k(), 0);
    auto dfs = [&](auto&& self, int c) -> bool {
      if (c == part_.k()) return true;
      for (std::uint32_t v : part_.members(c)) {
        if (c > 0) {
          const std::uint64_t* cm = &common[static_cast<std::size_t>(c - 1) * words];
          if (!((cm[v / 64] >> (v % 64)) & 1)) continue;
        }
        std::uint64_t* next = &common[static_cast<std::size_t>(c) * words];
        const std::uint64_t* row = &adj[v * words];
        if (c == 0) {
          std::copy(row, row + words, next);
        } else {
          const std::uint64_t* cm = &common[static_cast<std::size_t>(c - 1) * words];
          for (std::size_t w = 0; w < words; ++w) next[w] = cm[w] & row[w];
        }
        if (self(self, c + 1)) return true;
      }
      return false;
    };
    return dfs(dfs, 0);
  }

  void enumerate(const Board& board,
                 const std::function<void(std::span<const ElementId>)>& emit) const override {
    check_board(board);
    if (count().log2() > 24.0)
      throw std::runtime_error("transversal clique family too large to enumerate");
    std::vector<std::uint32_t> chosen(part_.k());
    std::vector<ElementId> set;
    auto dfs = [&](auto&& self, int c) -> void {
      if (c == part_.k()) {
        set.clear();
        for (int i = 0; i < c; ++i)
          for (int j = i + 1; j < c; ++j) set.push_back(board.id_of(chosen[i], chosen[j]));
        std::sort(set.begin(), set.end());
        emit(set);
        return;
      }
      for (std::uint32_t v : part_.members(c)) {
        chosen[c] = v;
        self(self, c + 1);
      }
    };
    dfs(dfs, 0);
  }

  bool is_member(const Board& board, std::span<const ElementId> set) const override {
    check_board(board);
    int k = part_.k();
    if (set.size() != static_cast<std::size_t>(k) * (k - 1) / 2) return false;
    std::vector<std::uint32_t> by_class(k, UINT32_MAX);
    for (ElementId e : set) {
      if (e >= board.size()) return false;
      Arc a = board.element(e);
      for (std::uint32_t v : {a.from, a.to}) {
        int c = part_.class_of(v);
        if (by_class[c] != UINT32_MAX && by_class[c] != v) return false;
        by_class[c] = v;
      }
    }
    std::vector<ElementId> expect;
    for (int i = 0; i < k; ++i) {
      if (by_class[i] == UINT32_MAX) return false;
      for (int j = i + 1; j < k; ++j) expect.push_back(board.id_of(by_class[i], by_class[j]));
    }
    std::sort(expect.begin(), expect.end());
    return std::equal(expect.begin(), expect.end(), set.begin(), set.end());
  }

  std::string describe() const override {
    return "transversal cliques (n=" + std::to_string(part_.n()) +
           ", k=" + std::to_string(part_.k()) + ")";
  }

 private:
  void check_board(const Board& board) const {
    if (board.kind() != BoardKind::ReducedKPartite || board.n() != part_.n() ||
        board.k() != part_.k())
      throw std::invalid_argument("transversal clique family used with a mismatched board");
  }

  Partition part_;
};

}  // namespace

WinningFamily transversal_clique_family(const Partition& partition) {
  return WinningFamily::implicit(std::make_shared<TransversalCliqueFamily>(partition));
}

Strategy maker_tournament_wrapper(const Tournament& goal, const Partition& partition,
                                  Strategy inner) {
  if (goal.k() != partition.k())
    throw std::invalid_argument("tournament wrapper: goal size differs from class count");
  return [goal, partition, inner = std::move(inner)](const GameState& state, Rng& rng) -> Move {
    Move m = inner(state, rng);
    m.arcs.clear();
    for (ElementId e : m.elements) {
      Arc pair = state.board().element(e);
      int ci = partition.class_of(pair.from);
      int cj = partition.class_of(pair.to);
      if (ci == cj)
        throw std::logic_error("tournament wrapper: inner strategy claimed a pair inside class " +
                               std::to_string(ci));
      m.arcs.push_back(goal.arc(ci, cj) ? pair : Arc{pair.to, pair.from});
    }
    return m;
  };
}

Strategy transitive_strategy_wrapper(Strategy inner) {
  return [inner = std::move(inner)](const GameState& state, Rng& rng) -> Move {
    Move m = inner(state, rng);
    m.arcs.clear();
    for (ElementId e : m.elements) {
      Arc pair = state.board().element(e);
      m.arcs.push_back(pair.from < pair.to ? pair : Arc{pair.to, pair.from});
    }
    return m;
  };
}

}  // namespace tg
