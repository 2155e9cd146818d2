#include <doctest.h>

#include <set>

#include "tg/orientation.hpp"
#include "tg/transcript_io.hpp"

using namespace tg;

TEST_CASE("orientation state enforces the move rules") {
  OrientationState s(4);
  CHECK(s.turn() == Player::Maker);
  CHECK(s.edge_count() == 6);
  CHECK(s.apply(Player::Breaker, Arc{0, 1}) == ApplyResult::OutOfTurn);
  CHECK(s.apply(Player::Maker, Arc{0, 0}) == ApplyResult::OutOfBoard);
  CHECK(s.apply(Player::Maker, Arc{0, 9}) == ApplyResult::OutOfBoard);
  CHECK(s.apply(Player::Maker, Arc{2, 0}) == ApplyResult::Ok);
  CHECK(s.apply(Player::Breaker, Arc{0, 2}) == ApplyResult::AlreadyClaimed);
  CHECK(s.apply(Player::Breaker, Arc{2, 0}) == ApplyResult::AlreadyClaimed);
  CHECK(s.apply(Player::Breaker, Arc{1, 3}) == ApplyResult::Ok);
  CHECK(s.oriented(0, 2));
  CHECK_FALSE(s.oriented(0, 1));
  REQUIRE(s.direction(1, 3).has_value());
  CHECK(s.direction(1, 3)->from == 1);
  CHECK(s.direction(0, 1) == std::nullopt);
  CHECK_THROWS_AS(s.oriented(1, 1), std::out_of_range);
  CHECK_THROWS_AS(s.direction(0, 4), std::out_of_range);
  CHECK(s.oriented_count() == 2);
  CHECK_FALSE(s.finished());
  CHECK_THROWS_AS(OrientationState(1), std::domain_error);

  OrientationState after = or_apply(s, Player::Maker, Arc{3, 0});
  CHECK(s.oriented_count() == 2);
  CHECK(after.oriented_count() == 3);
  CHECK_THROWS_AS(or_apply(s, Player::Maker, Arc{2, 0}), std::invalid_argument);

  Digraph d = after.digraph();
  CHECK(d.has_arc(2, 0));
  CHECK(d.has_arc(1, 3));
  CHECK(d.has_arc(3, 0));
  CHECK(d.arc_count() == 3);
}

TEST_CASE("random playouts are seed deterministic and fill the board") {
  for (std::uint64_t seed : {0ull, 7ull, 123456ull}) {
    OrientationState a = play_orientation(5, random_orientation_strategy(),
                                          random_orientation_strategy(), seed);
    OrientationState b = play_orientation(5, random_orientation_strategy(),
                                          random_orientation_strategy(), seed);
    CHECK(a.finished());
    REQUIRE(a.log().size() == b.log().size());
    for (std::size_t i = 0; i < a.log().size(); ++i) {
      CHECK(a.log()[i].player == b.log()[i].player);
      CHECK(a.log()[i].arc.from == b.log()[i].arc.from);
      CHECK(a.log()[i].arc.to == b.log()[i].arc.to);
    }
  }
  OrientationState a = play_orientation(5, random_orientation_strategy(),
                                        random_orientation_strategy(), 1);
  OrientationState b = play_orientation(5, random_orientation_strategy(),
                                        random_orientation_strategy(), 2);
  bool differ = false;
  for (std::size_t i = 0; i < a.log().size(); ++i)
    differ = differ || a.log()[i].arc.from != b.log()[i].arc.from ||
             a.log()[i].arc.to != b.log()[i].arc.to;
  CHECK(differ);
}

TEST_CASE("goal copy family enumerates the injective copies") {
  Board board = Board::ordered_pairs(4);
  WinningFamily trans = build_goal_copy_family(Tournament::transitive(3), board);
  REQUIRE(trans.is_explicit());
  CHECK(trans.set_count() == 24);  // 4*3*2 injections, rigid goal
  WinningFamily cyc = build_goal_copy_family(Tournament::cyclic_triangle(), board);
  REQUIRE(cyc.is_explicit());
  CHECK(cyc.set_count() == 8);  // 24 injections over the 3 rotations
  std::set<std::vector<ElementId>> dedup(cyc.sets().begin(), cyc.sets().end());
  CHECK(dedup.size() == 8);
  for (const auto& s : cyc.sets()) CHECK(s.size() == 3);

  // a concrete copy: arcs 0->1, 1->2, 2->0
  std::vector<ElementId> copy = {board.id_of(0, 1), board.id_of(1, 2), board.id_of(2, 0)};
  std::sort(copy.begin(), copy.end());
  CHECK(std::find(cyc.sets().begin(), cyc.sets().end(), copy) != cyc.sets().end());
}

TEST_CASE("goal copy family switches to implicit on big boards") {
  Board board = Board::ordered_pairs(300);  // 300^3 > 10^7
  WinningFamily fam = build_goal_copy_family(Tournament::cyclic_triangle(), board);
  REQUIRE_FALSE(fam.is_explicit());
  const ImplicitFamily* impl = fam.impl();
  CHECK(impl->count_is_upper_bound());
  CHECK(impl->count().log2() == doctest::Approx(3 * std::log2(300.0)));
  CHECK(impl->uniform_set_size().value() == 3);

  std::vector<ElementId> copy = {board.id_of(0, 1), board.id_of(1, 2), board.id_of(2, 0)};
  std::sort(copy.begin(), copy.end());
  CHECK(impl->is_member(board, copy));
  std::vector<ElementId> not_cyclic = {board.id_of(0, 1), board.id_of(1, 2),
                                       board.id_of(0, 2)};
  std::sort(not_cyclic.begin(), not_cyclic.end());
  CHECK_FALSE(impl->is_member(board, not_cyclic));

  std::vector<Cell> marks(board.size(), Cell::Unclaimed);
  for (ElementId e : copy) marks[e] = Cell::Maker;
  CHECK(fam.maker_has_win(board, marks));
  marks[copy[0]] = Cell::Breaker;
  CHECK_FALSE(fam.maker_has_win(board, marks));
}

TEST_CASE("simulated answer to a triangle threat is the in-degree block") {
  // ordered_pairs(3) ids: (0,1)=0 (0,2)=1 (1,0)=2 (1,2)=3 (2,0)=4 (2,1)=5
  Board board = Board::ordered_pairs(3);
  REQUIRE(board.id_of(1, 2) == 3);
  REQUIRE(board.id_of(2, 1) == 5);

  ObreakerSimulation sim(Tournament::cyclic_triangle(), 3);
  std::optional<Arc> resp = sim.respond(Arc{0, 1});
  REQUIRE(resp.has_value());
  CHECK(resp->from == 2);
  CHECK(resp->to == 1);

  const GameState& h = sim.h_state();
  CHECK(h.mark(0) == Cell::Maker);   // the fed arc 0->1
  CHECK(h.mark(5) == Cell::Maker);   // the reverse of the blocked pair
  CHECK(h.mark(3) == Cell::Breaker); // the block itself
  CHECK(sim.or_state().oriented_count() == 2);

  // last open edge: whatever OMaker does the board is exhausted
  CHECK(sim.respond(Arc{2, 0}) == std::nullopt);
  CHECK(sim.or_state().finished());
  CHECK_FALSE(contains_copy(sim.or_state().digraph(), sim.goal()));
  CHECK_THROWS_AS(sim.respond(Arc{0, 1}), std::invalid_argument);
}

TEST_CASE("simulation invariants hold against random play") {
  for (const Tournament& goal :
       {Tournament::transitive(3), Tournament::cyclic_triangle()}) {
    for (int n = 3; n <= 5; ++n) {
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        OrientationState fin = play_orientation(n, random_orientation_strategy(),
                                                obreaker_from_breaker(goal), seed);
        CHECK(fin.finished());
      }
    }
  }
}

TEST_CASE("simulation backed strategy plays games back to back") {
  Tournament goal = Tournament::cyclic_triangle();
  OrientationStrategy reused = obreaker_from_breaker(goal);
  for (int n : {3, 4, 3, 5}) {
    OrientationState a = play_orientation(n, random_orientation_strategy(), reused, 11);
    OrientationState b = play_orientation(n, random_orientation_strategy(),
                                          obreaker_from_breaker(goal), 11);
    CHECK(transcript_to_string(orientation_transcript(a)) ==
          transcript_to_string(orientation_transcript(b)));
  }
}

TEST_CASE("certificate arithmetic") {
  ObreakerCertificate c = obreaker_certificate(256, 34);
  CHECK(c.log2_bound == doctest::Approx(-8.5).epsilon(1e-12));
  CHECK(c.holds);
  CHECK_FALSE(c.vacuous);

  ObreakerCertificate small = obreaker_certificate(4, 3);
  CHECK(small.log2_bound == doctest::Approx(4.5));
  CHECK_FALSE(small.holds);

  ObreakerCertificate vac = obreaker_certificate(8, 34);
  CHECK(vac.vacuous);
  CHECK(vac.holds);
  CHECK_THROWS_AS(obreaker_certificate(1, 3), std::domain_error);
}

TEST_CASE("orientation games serialize through the transcript form") {
  OrientationState fin = play_orientation(4, random_orientation_strategy(),
                                          random_orientation_strategy(), 99);
  Transcript t = orientation_transcript(fin);
  std::string text = transcript_to_string(t);
  Transcript back = transcript_from_string(text);
  OrientationState replay = orientation_from_transcript(back);
  CHECK(replay.finished());
  REQUIRE(replay.log().size() == fin.log().size());
  for (std::size_t i = 0; i < fin.log().size(); ++i) {
    CHECK(replay.log()[i].arc.from == fin.log()[i].arc.from);
    CHECK(replay.log()[i].arc.to == fin.log()[i].arc.to);
  }

  Transcript bad = back;
  bad.records[0].arcs.clear();
  CHECK_THROWS_AS(orientation_from_transcript(bad), std::invalid_argument);
}

TEST_CASE("dual trace mentions both games") {
  ObreakerSimulation sim(Tournament::cyclic_triangle(), 4);
  sim.respond(Arc{0, 1});
  std::string trace = dual_trace(sim.or_state(), sim.h_state());
  CHECK(trace.find("orientation moves") != std::string::npos);
  CHECK(trace.find("OMaker") != std::string::npos);
}
