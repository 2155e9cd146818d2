#include "tg/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tg/rng.hpp"

namespace tg {

namespace {

std::size_t tri_index(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::size_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

}  // namespace

OrientationState::OrientationState(int n) : n_(n) {
  if (n < 2) throw std::domain_error("OrientationState: need at least 2 vertices");
  if (n > 2048) throw std::domain_error("OrientationState: vertex count above the 2048 limit");
  dir_.assign(edge_count(), 0);
}

bool OrientationState::oriented(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::out_of_range("OrientationState::oriented: bad edge");
  return dir_[tri_index(n_, u, v)] != 0;
}

std::optional<Arc> OrientationState::direction(int u, int v) const {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::out_of_range("OrientationState::direction: bad edge");
  int lo = std::min(u, v), hi = std::max(u, v);
  std::int8_t d = dir_[tri_index(n_, lo, hi)];
  if (d == 0) return std::nullopt;
  if (d > 0) return Arc{static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
  return Arc{static_cast<std::uint32_t>(hi), static_cast<std::uint32_t>(lo)};
}

ApplyResult OrientationState::apply(Player player, Arc arc) {
  if (player != turn_) return ApplyResult::OutOfTurn;
  if (arc.from == arc.to || arc.from >= static_cast<std::uint32_t>(n_) ||
      arc.to >= static_cast<std::uint32_t>(n_))
    return ApplyResult::OutOfBoard;
  std::size_t idx = tri_index(n_, static_cast<int>(arc.from), static_cast<int>(arc.to));
  if (dir_[idx] != 0) return ApplyResult::AlreadyClaimed;
  dir_[idx] = arc.from < arc.to ? 1 : -1;
  log_.push_back({player, arc});
  turn_ = opponent(turn_);
  return ApplyResult::Ok;
}

OrientationState or_apply(const OrientationState& state, Player player, Arc arc) {
  OrientationState next = state;
  ApplyResult r = next.apply(player, arc);
  if (r != ApplyResult::Ok)
    throw std::invalid_argument("or_apply: move rejected (" + to_string(r) + ")");
  return next;
}

Digraph OrientationState::digraph() const {
  Digraph d(n_);
  for (const auto& entry : log_)
    d.add_arc(static_cast<int>(entry.arc.from), static_cast<int>(entry.arc.to));
  return d;
}

namespace {

class GoalCopyFamily : public ImplicitFamily {
 public:
  GoalCopyFamily(Tournament goal, int n) : goal_(std::move(goal)), n_(n) {}

  Log2Real count() const override {
    return Log2Real::from_log2(goal_.k() * std::log2(static_cast<double>(n_)));
  }
  bool count_is_upper_bound() const override { return true; }

  std::optional<std::size_t> uniform_set_size() const override {
    int k = goal_.k();
    return static_cast<std::size_t>(k) * (k - 1) / 2;
  }

  bool maker_has_win(const Board& board, std::span<const Cell> marks) const override {
    Digraph d(board.n());
    for (ElementId e = 0; e < board.size(); ++e) {
      if (marks[e] != Cell::Maker) continue;
      Arc a = board.element(e);
      d.add_arc(static_cast<int>(a.from), static_cast<int>(a.to));
    }
    return contains_copy(d, goal_);
  }

  bool is_member(const Board& board, std::span<const ElementId> set) const override {
    int k = goal_.k();
    if (set.size() != static_cast<std::size_t>(k) * (k - 1) / 2) return false;
    std::vector<std::uint32_t> verts;
    for (ElementId e : set) {
      if (e >= board.size()) return false;
      Arc a = board.element(e);
      verts.push_back(a.from);
      verts.push_back(a.to);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.size() != static_cast<std::size_t>(k)) return false;
    std::uint64_t bits = 0;
    int idx = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j, ++idx) {
        bool fwd = std::find(set.begin(), set.end(), board.id_of(verts[i], verts[j])) != set.end();
        bool bwd = std::find(set.begin(), set.end(), board.id_of(verts[j], verts[i])) != set.end();
        if (fwd == bwd) return false;
        if (fwd) bits |= std::uint64_t{1} << idx;
      }
    return Tournament(k, bits).canonical_bits() == goal_.canonical_bits();
  }

  std::string describe() const override {
    return "copies of a " + std::to_string(goal_.k()) + "-vertex goal on " + std::to_string(n_) +
           " vertices (counted by the injective upper bound)";
  }

 private:
  Tournament goal_;
  int n_;
};

}  // namespace

WinningFamily build_goal_copy_family(const Tournament& goal, const Board& board) {
  if (board.kind() != BoardKind::OrderedPairs)
    throw std::invalid_argument("build_goal_copy_family: needs the ordered-pair board");
  int n = board.n();
  int k = goal.k();
  if (k > n) return WinningFamily::explicit_sets(board, {});
  if (k * std::log2(static_cast<double>(n)) > std::log2(1e7))
    return WinningFamily::implicit(std::make_shared<GoalCopyFamily>(goal, n));
  std::vector<std::vector<ElementId>> sets;
  std::vector<std::uint32_t> map(k);
  std::vector<char> used(n, 0);
  auto dfs = [&](auto&& self, int t) -> void {
    if (t == k) {
      std::vector<ElementId> set;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          set.push_back(goal.arc(i, j) ? board.id_of(map[i], map[j])
                                       : board.id_of(map[j], map[i]));
      sets.push_back(std::move(set));
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      map[t] = static_cast<std::uint32_t>(v);
      self(self, t + 1);
      used[v] = 0;
    }
  };
  dfs(dfs, 0);
  return WinningFamily::explicit_sets(board, std::move(sets));
}

namespace {

GameState make_h_game(const Tournament& goal, int n) {
  auto board = std::make_shared<Board>(Board::ordered_pairs(n));
  auto family = std::make_shared<WinningFamily>(build_goal_copy_family(goal, *board));
  if (!family->is_explicit())
    throw std::runtime_error(
        "ObreakerSimulation: board too large for an explicit goal family");
  return GameState(std::move(board), std::move(family), 2, 1);
}

ElementId default_core(const AliveSetView& view, const CandidateFilter& filter) {
  return es_breaker_move(view, 2, 1, filter);
}

}  // namespace

ObreakerSimulation::ObreakerSimulation(const Tournament& goal, int n, HBreakerCore core)
    : goal_(goal),
      core_(core ? std::move(core) : HBreakerCore(default_core)),
      or_(n),
      h_(make_h_game(goal, n)),
      view_(h_.board(), h_.family(), true) {}

std::optional<Arc> ObreakerSimulation::respond(Arc omaker_arc) {
  ElementId e = h_.board().id_of(omaker_arc.from, omaker_arc.to);
  ApplyResult r = or_.apply(Player::Maker, omaker_arc);
  if (r != ApplyResult::Ok)
    throw std::invalid_argument("ObreakerSimulation: illegal OMaker arc (" + to_string(r) + ")");
  view_.note_claim(Player::Maker, e);
  if (or_.finished()) {
    if (h_.apply_move(Player::Maker, Move::single(e)) != ApplyResult::Ok)
      invariant_failure("auxiliary game rejected the closing Maker claim");
    check_round(omaker_arc, std::nullopt);
    full_invariant_sweep();
    return std::nullopt;
  }
  const Board& board = h_.board();
  auto filter = [&](ElementId c) {
    Arc a = board.element(c);
    return !or_.oriented(static_cast<int>(a.from), static_cast<int>(a.to));
  };
  ElementId c = core_(view_, filter);
  Arc picked = board.element(c);
  if (!filter(c)) invariant_failure("core chose a pair on an oriented edge");
  Arc resp{picked.to, picked.from};
  if (or_.apply(Player::Breaker, resp) != ApplyResult::Ok)
    invariant_failure("orientation board rejected the reply arc");
  ElementId rev = board.reverse_id(c);
  view_.note_claim(Player::Breaker, c);
  view_.note_claim(Player::Maker, rev);
  if (h_.apply_move(Player::Maker, Move{{e, rev}, {}}) != ApplyResult::Ok)
    invariant_failure("auxiliary game rejected the Maker round");
  if (h_.apply_move(Player::Breaker, Move::single(c)) != ApplyResult::Ok)
    invariant_failure("auxiliary game rejected the Breaker claim");
  check_round(omaker_arc, resp);
  if (or_.n() <= 8 || or_.finished()) full_invariant_sweep();
  return resp;
}

void ObreakerSimulation::check_round(Arc maker_arc, std::optional<Arc> response) {
  const Board& board = h_.board();
  ElementId e = board.id_of(maker_arc.from, maker_arc.to);
  if (h_.mark(e) != Cell::Maker)
    invariant_failure("OMaker's arc is not Maker-owned in the auxiliary game");
  if (h_.mark(board.reverse_id(e)) == Cell::Maker)
    invariant_failure("reverse of OMaker's arc is Maker-owned");
  if (response) {
    ElementId ans = board.id_of(response->from, response->to);
    ElementId killed = board.reverse_id(ans);
    if (h_.mark(killed) != Cell::Breaker)
      invariant_failure("core's claim is not Breaker-owned");
    if (h_.mark(ans) != Cell::Maker)
      invariant_failure("reply arc is not Maker-owned (invariant i)");
  }
}

void ObreakerSimulation::full_invariant_sweep() {
  const Board& board = h_.board();
  int n = or_.n();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      ElementId e = board.id_of(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
      auto dir = or_.direction(u, v);
      bool arc_uv = dir && dir->from == static_cast<std::uint32_t>(u);
      bool maker_owns = h_.mark(e) == Cell::Maker;
      if (arc_uv != maker_owns) invariant_failure("arc set differs from Maker's holding (invariant ii)");
      if (h_.mark(e) == Cell::Breaker && h_.mark(board.reverse_id(e)) != Cell::Maker)
        invariant_failure("Breaker element without Maker-owned reverse (invariant i)");
    }
}

void ObreakerSimulation::invariant_failure(const std::string& what) const {
  throw std::logic_error("orientation simulation invariant violated: " + what + "\n" +
                         dual_trace(or_, h_));
}

OrientationStrategy obreaker_from_breaker(const Tournament& goal, HBreakerCore core) {
  struct Holder {
    std::optional<ObreakerSimulation> sim;
    int n = 0;
    std::size_t cursor = 0;
    std::optional<Arc> last;
  };
  auto holder = std::make_shared<Holder>();
  return [goal, core, holder](const OrientationState& state, Rng&) -> Arc {
    // a shrunken log or a different board size means a new game started
    if (!holder->sim || state.n() != holder->n || state.log().size() < holder->cursor) {
      holder->sim.emplace(goal, state.n(), core);
      holder->n = state.n();
      holder->cursor = 0;
      holder->last.reset();
    }
    std::optional<Arc> resp;
    const auto& log = state.log();
    for (; holder->cursor < log.size(); ++holder->cursor) {
      const auto& entry = log[holder->cursor];
      if (entry.player == Player::Maker) {
        resp = holder->sim->respond(entry.arc);
      } else if (!holder->last || !(entry.arc == *holder->last)) {
        throw std::logic_error("orientation driver applied an arc the simulation never chose");
      }
    }
    if (!resp)
      throw std::logic_error("OBreaker strategy called without a new OMaker arc to answer");
    holder->last = resp;
    return *resp;
  };
}

OrientationStrategy random_orientation_strategy() {
  return [](const OrientationState& state, Rng& rng) -> Arc {
    std::vector<Arc> open;
    int n = state.n();
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (!state.oriented(u, v))
          open.push_back(Arc{static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
    if (open.empty()) throw std::logic_error("random orientation strategy: no open edge");
    Arc a = open[bounded(rng, open.size())];
    return coin(rng) ? a : Arc{a.to, a.from};
  };
}

OrientationState play_orientation(int n, const OrientationStrategy& omaker,
                                  const OrientationStrategy& obreaker, std::uint64_t seed) {
  OrientationState state(n);
  Rng rng(seed);
  while (!state.finished()) {
    Arc arc = omaker(state, rng);
    if (state.apply(Player::Maker, arc) != ApplyResult::Ok)
      throw std::logic_error("play_orientation: OMaker returned an illegal arc");
    if (state.finished()) break;
    arc = obreaker(state, rng);
    if (state.apply(Player::Breaker, arc) != ApplyResult::Ok)
      throw std::logic_error("play_orientation: OBreaker returned an illegal arc");
  }
  return state;
}

ObreakerCertificate obreaker_certificate(std::uint64_t n, int k) {
  if (n < 2 || k < 1) throw std::domain_error("obreaker_certificate: need n >= 2, k >= 1");
  ObreakerCertificate cert;
  cert.log2_bound =
      k * std::log2(static_cast<double>(n)) - k * (k - 1) / 4.0;
  if (static_cast<std::uint64_t>(k) > n) {
    cert.vacuous = true;
    cert.holds = true;
    return cert;
  }
  cert.holds = cert.log2_bound <= -1.0;
  return cert;
}

std::string dual_trace(const OrientationState& or_state, const GameState& h_state) {
  std::ostringstream out;
  out << "orientation moves:\n";
  std::size_t i = 0;
  for (const auto& entry : or_state.log()) {
    out << "  " << i++ << ": " << (entry.player == Player::Maker ? "OMaker " : "OBreaker ")
        << entry.arc.from << "->" << entry.arc.to << "\n";
  }
  out << "auxiliary game rounds:\n";
  const Board& board = h_state.board();
  for (const auto& rec : h_state.history().records) {
    out << "  round " << rec.round << " " << (rec.player == Player::Maker ? "M:" : "B:");
    for (ElementId e : rec.elements) {
      Arc a = board.element(e);
      out << " (" << a.from << "," << a.to << ")";
    }
    out << "\n";
  }
  return out.str();
}

Transcript orientation_transcript(const OrientationState& state) {
  Transcript t;
  t.board_kind = BoardKind::CompleteGraphEdges;
  t.n = state.n();
  Board board = Board::complete_graph(state.n());
  int i = 0;
  for (const auto& entry : state.log()) {
    MoveRecord rec;
    rec.round = i / 2 + 1;
    rec.player = entry.player;
    rec.elements = {board.id_of(entry.arc.from, entry.arc.to)};
    rec.arcs = {entry.arc};
    t.records.push_back(std::move(rec));
    ++i;
  }
  return t;
}

OrientationState orientation_from_transcript(const Transcript& t) {
  OrientationState state(t.n);
  for (const auto& rec : t.records) {
    if (rec.elements.size() != 1 || rec.arcs.size() != 1)
      throw std::invalid_argument("orientation transcript: each record orients one edge");
    if (state.apply(rec.player, rec.arcs[0]) != ApplyResult::Ok)
      throw std::invalid_argument("orientation transcript: illegal move sequence");
  }
  return state;
}

}  // namespace tg
