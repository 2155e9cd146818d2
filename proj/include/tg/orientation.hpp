#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tg/potential.hpp"
#include "tg/tournament.hpp"

namespace tg {

/// Edge-orientation game position on K_n: players alternately direct a
/// previously undirected edge, OMaker first, and every arc belongs to the
/// final digraph. Player::Maker stands for OMaker.
class OrientationState {
 public:
  explicit OrientationState(int n);

  int n() const { return n_; }
  Player turn() const { return turn_; }
  bool oriented(int u, int v) const;
  /// Direction of an oriented edge, if any.
  std::optional<Arc> direction(int u, int v) const;
  std::size_t oriented_count() const { return log_.size(); }
  std::size_t edge_count() const { return static_cast<std::size_t>(n_) * (n_ - 1) / 2; }
  bool finished() const { return oriented_count() == edge_count(); }

  ApplyResult apply(Player player, Arc arc);

  struct MoveEntry {
    Player player;
    Arc arc;
  };
  const std::vector<MoveEntry>& log() const { return log_; }

  Digraph digraph() const;

 private:
  int n_;
  Player turn_ = Player::Maker;
  std::vector<std::int8_t> dir_;  // per unordered pair: 0 none, +1 low->high, -1 high->low
  std::vector<MoveEntry> log_;
};

/// Copy-throwing form of OrientationState::apply.
OrientationState or_apply(const OrientationState& state, Player player, Arc arc);

using OrientationStrategy = std::function<Arc(const OrientationState&, Rng&)>;

/// Winning sets over the ordered-pair board: one set of k(k-1)/2 directed
/// pairs per injective copy of the goal. Enumerates explicitly while
/// n^k <= 10^7; beyond that the family is implicit with the n^k counting
/// upper bound.
WinningFamily build_goal_copy_family(const Tournament& goal, const Board& board);

/// Chooses a Breaker claim on the auxiliary (2:1) game given the current
/// alive-set view, restricted to candidate elements passing the filter.
using HBreakerCore = std::function<ElementId(const AliveSetView&, const CandidateFilter&)>;

/// Runs the auxiliary (2:1) game on ordered pairs alongside an orientation
/// game. Every OMaker arc becomes a Maker claim; the core then picks a
/// directed pair on a still-undirected edge, Breaker claims it, and OBreaker
/// answers with the reverse arc (also fed to Maker). The coupling invariants
/// are asserted after every move: a violation throws with a dual-game trace.
class ObreakerSimulation {
 public:
  ObreakerSimulation(const Tournament& goal, int n, HBreakerCore core = nullptr);

  /// Feeds OMaker's arc and returns OBreaker's answer, or nothing when the
  /// arc exhausted the board.
  std::optional<Arc> respond(Arc omaker_arc);

  const OrientationState& or_state() const { return or_; }
  const GameState& h_state() const { return h_; }
  const AliveSetView& view() const { return view_; }
  const Tournament& goal() const { return goal_; }

 private:
  void check_round(Arc maker_arc, std::optional<Arc> response);
  void full_invariant_sweep();
  void invariant_failure(const std::string& what) const;

  Tournament goal_;
  HBreakerCore core_;
  OrientationState or_;
  GameState h_;
  AliveSetView view_;
};

/// OBreaker strategy backed by an ObreakerSimulation (default core: the
/// (2:1) potential rule with smallest-id ties).
OrientationStrategy obreaker_from_breaker(const Tournament& goal, HBreakerCore core = nullptr);

/// Uniformly random unoriented edge, uniformly random direction.
OrientationStrategy random_orientation_strategy();

/// Alternating playout until every edge is oriented.
OrientationState play_orientation(int n, const OrientationStrategy& omaker,
                                  const OrientationStrategy& obreaker, std::uint64_t seed);

struct ObreakerCertificate {
  bool holds = false;
  bool vacuous = false;    // goal larger than the board
  double log2_bound = 0.0;  // k*log2(n) - k(k-1)/4
};

/// Evaluates n^k * 2^(-k(k-1)/4) <= 1/2, the sufficient condition for the
/// simulated OBreaker to win against every goal on k vertices.
ObreakerCertificate obreaker_certificate(std::uint64_t n, int k);

/// Side-by-side dump of an orientation game and its simulated twin, used in
/// invariant-violation reports.
std::string dual_trace(const OrientationState& or_state, const GameState& h_state);

/// Transcript bridge: orientation playouts serialize as rounds of single
/// oriented claims over the complete-graph board.
Transcript orientation_transcript(const OrientationState& state);
OrientationState orientation_from_transcript(const Transcript& t);

}  // namespace tg
