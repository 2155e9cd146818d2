#include "tg/game.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace tg {

std::string to_string(Player p) { return p == Player::Maker ? "M" : "B"; }

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::MakerWin: return "MakerWin";
    case Outcome::BreakerWin: return "BreakerWin";
    case Outcome::Incomplete: return "Incomplete";
  }
  return "?";
}

std::string to_string(ApplyResult r) {
  switch (r) {
    case ApplyResult::Ok: return "ok";
    case ApplyResult::OutOfTurn: return "out of turn";
    case ApplyResult::AlreadyClaimed: return "element already claimed";
    case ApplyResult::DuplicateElement: return "duplicate element in move";
    case ApplyResult::Overclaim: return "more elements than the bias allows";
    case ApplyResult::Underclaim: return "Breaker must claim exactly b elements";
    case ApplyResult::OrientationMismatch: return "orientation list does not match elements";
    case ApplyResult::OutOfBoard: return "element outside the board";
  }
  return "?";
}

GameState::GameState(std::shared_ptr<const Board> board,
                     std::shared_ptr<const WinningFamily> family, int a, int b)
    : board_(std::move(board)), family_(std::move(family)), a_(a), b_(b) {
  if (!board_) throw std::invalid_argument("GameState: null board");
  if (!family_) throw std::invalid_argument("GameState: null family");
  if (a < 1 || b < 1) throw std::invalid_argument("GameState: bias must be at least (1:1)");
  marks_.assign(board_->size(), Cell::Unclaimed);
  unclaimed_ = board_->size();
  if (family_->is_explicit()) {
    maker_hits_.assign(family_->set_count(), 0);
    for (std::size_t i = 0; i < family_->set_count(); ++i)
      if (family_->sets()[i].empty()) maker_won_ = true;
  }
  history_.board_kind = board_->kind();
  history_.n = board_->n();
  history_.k = board_->k();
  history_.bias_a = a_;
  history_.bias_b = b_;
}

ApplyResult GameState::apply_move(Player player, const Move& move) {
  if (player != turn_) return ApplyResult::OutOfTurn;
  if (!move.arcs.empty() && move.arcs.size() != move.elements.size())
    return ApplyResult::OrientationMismatch;
  for (std::size_t i = 0; i < move.elements.size(); ++i) {
    ElementId e = move.elements[i];
    if (e >= board_->size()) return ApplyResult::OutOfBoard;
    if (marks_[e] != Cell::Unclaimed) return ApplyResult::AlreadyClaimed;
    for (std::size_t j = i + 1; j < move.elements.size(); ++j)
      if (move.elements[j] == e) return ApplyResult::DuplicateElement;
    if (!move.arcs.empty()) {
      Arc claimed = board_->element(e);
      Arc given = move.arcs[i];
      bool same_pair = (claimed.from == given.from && claimed.to == given.to) ||
                       (claimed.from == given.to && claimed.to == given.from);
      if (!same_pair) return ApplyResult::OrientationMismatch;
    }
  }
  std::size_t allot = static_cast<std::size_t>(player == Player::Maker ? a_ : b_);
  if (move.elements.size() > allot) return ApplyResult::Overclaim;
  if (player == Player::Breaker && move.elements.size() < std::min(allot, unclaimed_))
    return ApplyResult::Underclaim;

  Cell cell = player == Player::Maker ? Cell::Maker : Cell::Breaker;
  for (ElementId e : move.elements) {
    marks_[e] = cell;
    --unclaimed_;
    if (player == Player::Maker)
      ++maker_count_;
    else
      ++breaker_count_;
    if (family_->is_explicit() && player == Player::Maker)
      for (std::uint32_t s : family_->sets_of(e))
        if (++maker_hits_[s] == family_->sets()[s].size()) maker_won_ = true;
  }
  history_.records.push_back({round_, player, move.elements, move.arcs});
  if (player == Player::Breaker) ++round_;
  turn_ = opponent(turn_);
  return ApplyResult::Ok;
}

bool GameState::maker_wins() const {
  if (family_->is_explicit()) return maker_won_;
  return family_->maker_has_win(*board_, marks_);
}

Outcome GameState::outcome() const {
  if (maker_wins()) return Outcome::MakerWin;
  return finished() ? Outcome::BreakerWin : Outcome::Incomplete;
}

GameState new_game(std::shared_ptr<const Board> board,
                   std::shared_ptr<const WinningFamily> family, int a, int b) {
  return GameState(std::move(board), std::move(family), a, b);
}

GameState play_out(GameState state, const Strategy& maker, const Strategy& breaker,
                   std::uint64_t seed) {
  state.history().seed = seed;
  Rng rng(seed);
  bool explicit_family = state.family().is_explicit();
  while (!state.finished()) {
    if (explicit_family && state.maker_wins()) break;
    Player p = state.turn();
    Move move = (p == Player::Maker ? maker : breaker)(state, rng);
    ApplyResult r = state.apply_move(p, move);
    if (r != ApplyResult::Ok)
      throw PlayoutError("playout aborted: " + to_string(p) + " returned an illegal move (" +
                             to_string(r) + ") in round " + std::to_string(state.round()),
                         MoveRecord{state.round(), p, move.elements, move.arcs});
  }
  state.history().outcome = state.outcome();
  return state;
}

GameState replay(const Transcript& t, std::shared_ptr<const Board> board,
                 std::shared_ptr<const WinningFamily> family) {
  GameState state(std::move(board), std::move(family), t.bias_a, t.bias_b);
  state.history().seed = t.seed;
  for (const auto& rec : t.records) {
    if (rec.round != state.round())
      throw PlayoutError("replay: round number mismatch at round " + std::to_string(state.round()),
                         rec);
    ApplyResult r = state.apply_move(rec.player, Move{rec.elements, rec.arcs});
    if (r != ApplyResult::Ok)
      throw PlayoutError("replay: illegal record (" + to_string(r) + ")", rec);
  }
  state.history().outcome = state.outcome();
  return state;
}

Strategy random_strategy() {
  // Pool of unclaimed ids kept in sync with the observed state via the
  // transcript cursor; swap-removal keeps the whole playout linear.
  struct Pool {
    std::vector<ElementId> ids;
    std::vector<std::uint32_t> pos;
    std::vector<std::uint8_t> gone;
    std::size_t cursor = 0;
    bool init = false;

    void sync(const GameState& s) {
      if (!init) {
        ids.resize(s.board().size());
        pos.resize(s.board().size());
        gone.assign(s.board().size(), 0);
        for (std::uint32_t i = 0; i < ids.size(); ++i) ids[i] = i, pos[i] = i;
        init = true;
      }
      const auto& recs = s.history().records;
      for (; cursor < recs.size(); ++cursor)
        for (ElementId e : recs[cursor].elements) remove(e);
    }
    void remove(ElementId e) {
      if (gone[e]) return;  // already removed when we picked it ourselves
      gone[e] = 1;
      std::uint32_t p = pos[e];
      ElementId last = ids.back();
      ids[p] = last;
      pos[last] = p;
      ids.pop_back();
    }
    ElementId sample(Rng& rng) {
      std::uint32_t p = static_cast<std::uint32_t>(bounded(rng, ids.size()));
      return ids[p];
    }
  };
  auto pool = std::make_shared<Pool>();
  return [pool](const GameState& s, Rng& rng) {
    pool->sync(s);
    std::size_t allot = static_cast<std::size_t>(s.turn() == Player::Maker ? s.bias_a()
                                                                           : s.bias_b());
    allot = std::min(allot, pool->ids.size());
    Move m;
    for (std::size_t i = 0; i < allot; ++i) {
      ElementId e = pool->sample(rng);
      pool->remove(e);  // resynced from the transcript, so mark locally claimed
      m.elements.push_back(e);
    }
    return m;
  };
}

}  // namespace tg
