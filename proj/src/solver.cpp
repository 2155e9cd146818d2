#include "tg/solver.hpp"

#include <algorithm>
#include <bit>

namespace tg {

Solver::Solver(SolverLimits limits) : limits_(limits) {}

namespace {

std::uint64_t arc_bit(int u, int v) { return std::uint64_t{1} << (u * 8 + v); }

/// Containment test on an 8x8 adjacency mask.
bool contains_small(std::uint64_t adj, int n, const Tournament& goal) {
  int k = goal.k();
  if (k > n) return false;
  std::array<int, 8> placed{};
  std::uint8_t used = 0;
  auto dfs = [&](auto&& self, int t) -> bool {
    if (t == k) return true;
    for (int h = 0; h < n; ++h) {
      if (used & (1u << h)) continue;
      bool ok = true;
      for (int s = 0; s < t && ok; ++s)
        ok = goal.arc(s, t) ? (adj >> (placed[s] * 8 + h)) & 1 : (adj >> (h * 8 + placed[s])) & 1;
      if (!ok) continue;
      placed[t] = h;
      used |= 1u << h;
      if (self(self, t + 1)) return true;
      used &= ~(1u << h);
    }
    return false;
  };
  return dfs(dfs, 0);
}

}  // namespace

struct MbSearch {
  Solver& s;
  std::vector<std::uint64_t> set_masks;
  std::uint64_t full = 0;
  int a = 1, b = 1;
  bool underclaim = false;

  bool covered(std::uint64_t maker) const {
    for (std::uint64_t m : set_masks)
      if ((m & maker) == m) return true;
    return false;
  }

  bool any_alive(std::uint64_t breaker) const {
    for (std::uint64_t m : set_masks)
      if ((m & breaker) == 0) return true;
    return false;
  }

  bool win(std::uint64_t maker, std::uint64_t breaker, bool maker_mv, int steps,
           bool claimed_any) {
    ++s.nodes_;
    if (covered(maker)) return true;
    std::uint64_t open = full & ~(maker | breaker);
    if (!any_alive(breaker)) return false;
    if (!open) return false;
    while (steps == 0) {
      maker_mv = !maker_mv;
      steps = std::min<int>(maker_mv ? a : b, std::popcount(open));
      claimed_any = false;
    }
    Solver::Key key{maker, breaker,
                    static_cast<std::uint32_t>((maker_mv ? 1u : 0u) |
                                               (static_cast<std::uint32_t>(steps) << 1) |
                                               (claimed_any ? 1u << 8 : 0u))};
    auto it = s.table_.find(key);
    if (it != s.table_.end()) {
      ++s.hits_;
      return it->second;
    }
    bool result = !maker_mv;
    std::uint64_t rest = open;
    while (rest) {
      std::uint64_t bit = rest & (~rest + 1);
      rest ^= bit;
      bool v = maker_mv ? win(maker | bit, breaker, true, steps - 1, true)
                        : win(maker, breaker | bit, false, steps - 1, true);
      if (v == maker_mv) {
        result = maker_mv;
        break;
      }
    }
    if (result != maker_mv && underclaim && maker_mv && claimed_any) {
      if (win(maker, breaker, true, 0, false)) result = true;
    }
    s.table_.emplace(key, result);
    return result;
  }
};

SolveResult Solver::solve_mb(const GameState& state) {
  if (!state.family().is_explicit())
    throw std::invalid_argument("solve_mb: requires an explicit family");
  if (state.board().size() > 64)
    throw SolverRefusal("solve_mb: boards above 64 elements are not supported");
  if (state.unclaimed_count() > limits_.max_remaining)
    throw SolverRefusal("solve_mb: " + std::to_string(state.unclaimed_count()) +
                        " unclaimed elements exceed the limit of " +
                        std::to_string(limits_.max_remaining));
  if (limits_.allow_maker_underclaim && state.board().size() > 10)
    throw SolverRefusal("solve_mb: the underclaim toggle is limited to 10-element boards");

  const void* owner = static_cast<const void*>(&state.family());
  if (owner != table_owner_) {
    table_.clear();
    table_owner_ = owner;
  }
  nodes_ = 0;
  hits_ = 0;

  MbSearch search{*this};
  std::size_t size = state.board().size();
  search.full = size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
  search.a = state.bias_a();
  search.b = state.bias_b();
  search.underclaim = limits_.allow_maker_underclaim;
  for (const auto& set : state.family().sets()) {
    std::uint64_t m = 0;
    for (ElementId e : set) m |= std::uint64_t{1} << e;
    search.set_masks.push_back(m);
  }
  std::uint64_t maker = 0, breaker = 0;
  for (ElementId e = 0; e < size; ++e) {
    if (state.mark(e) == Cell::Maker) maker |= std::uint64_t{1} << e;
    if (state.mark(e) == Cell::Breaker) breaker |= std::uint64_t{1} << e;
  }

  SolveResult result;
  bool maker_mv = state.turn() == Player::Maker;
  int steps = static_cast<int>(
      std::min<std::size_t>(maker_mv ? search.a : search.b, state.unclaimed_count()));
  bool maker_wins = search.win(maker, breaker, maker_mv, steps, false);
  result.winner = maker_wins ? Outcome::MakerWin : Outcome::BreakerWin;
  result.nodes = nodes_;
  result.table_hits = hits_;

  if (maker_wins == maker_mv && state.unclaimed_count() > 0) {
    Move mv;
    std::uint64_t m = maker, br = breaker;
    for (int s = steps; s > 0; --s) {
      std::uint64_t rest = search.full & ~(m | br);
      bool committed = false;
      while (rest) {
        std::uint64_t bit = rest & (~rest + 1);
        rest ^= bit;
        bool v = maker_mv ? search.win(m | bit, br, true, s - 1, true)
                          : search.win(m, br | bit, false, s - 1, true);
        if (v == maker_mv) {
          mv.elements.push_back(static_cast<ElementId>(std::countr_zero(bit)));
          (maker_mv ? m : br) |= bit;
          committed = true;
          break;
        }
      }
      if (!committed) {
        if (search.underclaim && maker_mv && !mv.elements.empty() &&
            search.win(m, br, true, 0, false))
          break;
        throw std::logic_error("solve_mb: no winning continuation found for a won position");
      }
    }
    result.principal = std::move(mv);
  }
  return result;
}

struct OrSearch {
  Solver& s;
  const Tournament* goal = nullptr;
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // all pairs u < v, lexicographic

  std::uint64_t both_bits(int idx) const {
    auto [u, v] = edges[idx];
    return arc_bit(u, v) | arc_bit(v, u);
  }

  bool omaker_wins(std::uint64_t estate, std::uint64_t adj, std::uint64_t open_both,
                   int open_count, bool omaker_mv) {
    ++s.nodes_;
    if (contains_small(adj, n, *goal)) return true;
    if (!contains_small(adj | open_both, n, *goal)) return false;
    if (open_count == 0) return false;
    Solver::Key key{estate, 0, 0};
    auto it = s.table_.find(key);
    if (it != s.table_.end()) {
      ++s.hits_;
      return it->second;
    }
    bool result = !omaker_mv;
    for (std::size_t idx = 0; idx < edges.size() && result != omaker_mv; ++idx) {
      if ((estate >> (2 * idx)) & 3) continue;
      auto [u, v] = edges[idx];
      for (int dir = 0; dir < 2; ++dir) {
        std::uint64_t bit = dir == 0 ? arc_bit(u, v) : arc_bit(v, u);
        std::uint64_t child = estate | (std::uint64_t(dir + 1) << (2 * idx));
        bool w = omaker_wins(child, adj | bit, open_both & ~both_bits(static_cast<int>(idx)),
                             open_count - 1, !omaker_mv);
        if (w == omaker_mv) {
          result = omaker_mv;
          break;
        }
      }
    }
    s.table_.emplace(key, result);
    return result;
  }
};

SolveResult Solver::solve_orientation(const OrientationState& state, const Tournament& goal) {
  if (state.n() > 8)
    throw SolverRefusal("solve_orientation: boards above 8 vertices are not supported");
  std::size_t open = state.edge_count() - state.oriented_count();
  if (open > limits_.max_unoriented)
    throw SolverRefusal("solve_orientation: " + std::to_string(open) +
                        " unoriented edges exceed the limit of " +
                        std::to_string(limits_.max_unoriented));

  // table keyed by absolute edge configuration; owner is (n, goal)
  std::uint64_t owner_tag =
      (static_cast<std::uint64_t>(state.n()) << 56) ^
      (static_cast<std::uint64_t>(goal.k()) << 48) ^ goal.bits() ^ 0x6f72u;
  const void* owner = reinterpret_cast<const void*>(owner_tag);
  if (owner != table_owner_) {
    table_.clear();
    table_owner_ = owner;
  }
  nodes_ = 0;
  hits_ = 0;

  OrSearch search{*this, &goal, state.n()};
  for (int u = 0; u < state.n(); ++u)
    for (int v = u + 1; v < state.n(); ++v) search.edges.emplace_back(u, v);

  std::uint64_t estate = 0, adj = 0, open_both = 0;
  for (std::size_t idx = 0; idx < search.edges.size(); ++idx) {
    auto [u, v] = search.edges[idx];
    auto dir = state.direction(u, v);
    if (!dir) {
      open_both |= search.both_bits(static_cast<int>(idx));
      continue;
    }
    bool fwd = dir->from == static_cast<std::uint32_t>(u);
    estate |= std::uint64_t(fwd ? 1 : 2) << (2 * idx);
    adj |= arc_bit(static_cast<int>(dir->from), static_cast<int>(dir->to));
  }

  SolveResult result;
  bool omaker_mv = state.turn() == Player::Maker;
  bool omaker_wins = search.omaker_wins(estate, adj, open_both, static_cast<int>(open), omaker_mv);
  result.winner = omaker_wins ? Outcome::MakerWin : Outcome::BreakerWin;
  result.nodes = nodes_;
  result.table_hits = hits_;

  if (omaker_wins == omaker_mv && open > 0) {
    for (std::size_t idx = 0; idx < search.edges.size() && !result.principal_arc; ++idx) {
      if ((estate >> (2 * idx)) & 3) continue;
      auto [u, v] = search.edges[idx];
      for (int dir = 0; dir < 2; ++dir) {
        std::uint64_t bit = dir == 0 ? arc_bit(u, v) : arc_bit(v, u);
        std::uint64_t child = estate | (std::uint64_t(dir + 1) << (2 * idx));
        bool w = search.omaker_wins(child, adj | bit,
                                    open_both & ~search.both_bits(static_cast<int>(idx)),
                                    static_cast<int>(open) - 1, !omaker_mv);
        if (w == omaker_mv) {
          std::uint32_t from = dir == 0 ? u : v;
          std::uint32_t to = dir == 0 ? v : u;
          result.principal_arc = Arc{from, to};
          break;
        }
      }
    }
    if (!result.principal_arc)
      throw std::logic_error("solve_orientation: no winning arc found for a won position");
  }
  return result;
}

Strategy optimal_mb_strategy(SolverLimits limits) {
  auto solver = std::make_shared<Solver>(limits);
  return [solver](const GameState& state, Rng&) -> Move {
    SolveResult r = solver->solve_mb(state);
    if (r.principal) return *r.principal;
    AliveSetView view(state.board(), state.family());
    view.sync(state);
    bool maker = state.turn() == Player::Maker;
    std::size_t take = std::min<std::size_t>(maker ? state.bias_a() : state.bias_b(),
                                             state.unclaimed_count());
    Move m;
    for (std::size_t i = 0; i < take; ++i) {
      ElementId e = maker ? maker_potential_move(view)
                          : es_breaker_move(view, state.bias_a(), state.bias_b());
      view.note_claim(state.turn(), e);
      m.elements.push_back(e);
    }
    return m;
  };
}

OrientationStrategy optimal_orientation_strategy(const Tournament& goal, SolverLimits limits) {
  auto solver = std::make_shared<Solver>(limits);
  return [solver, goal](const OrientationState& state, Rng&) -> Arc {
    SolveResult r = solver->solve_orientation(state, goal);
    if (r.principal_arc) return *r.principal_arc;
    for (int u = 0; u < state.n(); ++u)
      for (int v = u + 1; v < state.n(); ++v)
        if (!state.oriented(u, v))
          return Arc{static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)};
    throw std::logic_error("optimal orientation strategy: no open edge");
  };
}

}  // namespace tg
