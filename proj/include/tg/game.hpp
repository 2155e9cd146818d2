#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tg/board.hpp"
#include "tg/family.hpp"
#include "tg/rng.hpp"

namespace tg {

enum class Outcome : std::uint8_t { MakerWin, BreakerWin, Incomplete };

std::string to_string(Player p);
std::string to_string(Outcome o);

/// One half-round: all elements a player claims in their turn, with an
/// optional orientation per element (oriented game variants only).
struct Move {
  std::vector<ElementId> elements;
  std::vector<Arc> arcs;  // parallel to elements when present

  static Move single(ElementId e) { return Move{{e}, {}}; }
};

struct MoveRecord {
  int round = 0;
  Player player = Player::Maker;
  std::vector<ElementId> elements;
  std::vector<Arc> arcs;
};

/// Replayable, seed-deterministic record of a full game.
struct Transcript {
  BoardKind board_kind = BoardKind::CompleteGraphEdges;
  int n = 0;
  int k = 0;
  int bias_a = 1;
  int bias_b = 1;
  std::uint64_t seed = 0;
  std::vector<MoveRecord> records;
  Outcome outcome = Outcome::Incomplete;
};

enum class ApplyResult : std::uint8_t {
  Ok,
  OutOfTurn,
  AlreadyClaimed,
  DuplicateElement,
  Overclaim,
  Underclaim,       // Breaker claiming fewer than b while more remain
  OrientationMismatch,  // arcs given but not matching elements
  OutOfBoard,
};

std::string to_string(ApplyResult r);

/// Biased (a:b) Maker-Breaker game state. Maker moves first; each
/// apply_move is a player's full allotment for the round, after which the
/// turn flips. Maker may underclaim (including a pass); Breaker must claim
/// exactly b elements while that many remain. Ownership marks are
/// write-once and an illegal move leaves the state untouched.
class GameState {
 public:
  GameState(std::shared_ptr<const Board> board, std::shared_ptr<const WinningFamily> family,
            int a, int b);

  const Board& board() const { return *board_; }
  const std::shared_ptr<const Board>& board_ptr() const { return board_; }
  const WinningFamily& family() const { return *family_; }
  const std::shared_ptr<const WinningFamily>& family_ptr() const { return family_; }

  int bias_a() const { return a_; }
  int bias_b() const { return b_; }
  Player turn() const { return turn_; }
  int round() const { return round_; }
  Cell mark(ElementId e) const { return marks_[e]; }
  const std::vector<Cell>& marks() const { return marks_; }
  std::size_t unclaimed_count() const { return unclaimed_; }
  std::size_t maker_count() const { return maker_count_; }
  std::size_t breaker_count() const { return breaker_count_; }
  bool finished() const { return unclaimed_ == 0; }

  const Transcript& history() const { return history_; }
  Transcript& history() { return history_; }

  ApplyResult apply_move(Player player, const Move& move);

  /// True iff some winning set is fully Maker-owned. Explicit families are
  /// tracked incrementally per move; implicit families are evaluated on call.
  bool maker_wins() const;

  /// Outcome with the game's end convention: winning is judged on the final
  /// position, so a finished game without a Maker win is Breaker's.
  Outcome outcome() const;

 private:
  std::shared_ptr<const Board> board_;
  std::shared_ptr<const WinningFamily> family_;
  int a_ = 1;
  int b_ = 1;
  Player turn_ = Player::Maker;
  int round_ = 1;
  std::vector<Cell> marks_;
  std::size_t unclaimed_ = 0;
  std::size_t maker_count_ = 0;
  std::size_t breaker_count_ = 0;
  // incremental win tracking (explicit families)
  std::vector<std::uint32_t> maker_hits_;  // per set: #elements Maker owns
  bool maker_won_ = false;
  Transcript history_;
};

using Strategy = std::function<Move(const GameState&, Rng&)>;

/// Thrown when a strategy hands the driver an illegal move; identifies the
/// offending half-round.
struct PlayoutError : std::runtime_error {
  PlayoutError(std::string msg, MoveRecord rec)
      : std::runtime_error(std::move(msg)), record(std::move(rec)) {}
  MoveRecord record;
};

/// Drives a game until every element is claimed or Maker has won (explicit
/// families only get the early stop; implicit families are judged at the
/// end). Identical inputs and seed give bit-identical transcripts.
GameState play_out(GameState state, const Strategy& maker, const Strategy& breaker,
                   std::uint64_t seed);

/// new_game per the construction contract: empty ownership, Maker to move.
GameState new_game(std::shared_ptr<const Board> board,
                   std::shared_ptr<const WinningFamily> family, int a, int b);

/// Reapplies a transcript from the empty state; throws PlayoutError on the
/// first illegal record. The family may be empty when only ownership is
/// being reconstructed.
GameState replay(const Transcript& t, std::shared_ptr<const Board> board,
                 std::shared_ptr<const WinningFamily> family);

/// Claims min(allotment, remaining) uniformly random unclaimed elements.
Strategy random_strategy();

}  // namespace tg
