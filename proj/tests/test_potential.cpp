#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "tg/potential.hpp"
#include "tg/tournament.hpp"
#include "tg/transcript_io.hpp"

using namespace tg;

namespace {

std::shared_ptr<const Board> make_board(Board b) { return std::make_shared<Board>(std::move(b)); }

WinningFamily random_family(const Board& board, std::mt19937_64& rng, int sets, int lo, int hi) {
  std::uniform_int_distribution<int> size_dist(lo, hi);
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(board.size() - 1));
  std::vector<std::vector<ElementId>> out;
  while (static_cast<int>(out.size()) < sets) {
    std::vector<ElementId> s;
    int want = size_dist(rng);
    while (static_cast<int>(s.size()) < want) {
      ElementId e = pick(rng);
      if (std::find(s.begin(), s.end(), e) == s.end()) s.push_back(e);
    }
    std::sort(s.begin(), s.end());
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  return WinningFamily::explicit_sets(board, std::move(out));
}

}  // namespace

TEST_CASE("potential sum agrees with plain doubles and the exact evaluator") {
  std::mt19937_64 rng(3);
  Board board = Board::complete_graph(8);
  for (int rep = 0; rep < 40; ++rep) {
    WinningFamily fam = random_family(board, rng, 2 + rep % 5, 2, 6);
    double direct = 0.0;
    for (const auto& s : fam.sets()) direct += std::exp2(-static_cast<double>(s.size()));
    Log2Real t = potential_T(fam);
    CHECK(t.log2() == doctest::Approx(std::log2(direct)).epsilon(1e-12));
    CHECK(potential_T_exact_log2(fam) == doctest::Approx(std::log2(direct)).epsilon(1e-12));
  }
}

TEST_CASE("potential of an implicit family uses count times uniform weight") {
  Board board = Board::reduced_k_partite(9, 3);
  WinningFamily fam = transversal_clique_family(board.partition());
  CHECK_FALSE(fam.is_explicit());
  // 27 cliques, 3 edges each
  CHECK(potential_T(fam).log2() == doctest::Approx(std::log2(27.0) - 3.0).epsilon(1e-12));
  WinningFamily mat = WinningFamily::materialize(board, fam);
  CHECK(mat.set_count() == 27);
  CHECK(potential_T(mat).log2() == doctest::Approx(potential_T(fam).log2()).epsilon(1e-12));
}

TEST_CASE("alive set view tracks needs and deaths") {
  Board board = Board::complete_graph(5);
  WinningFamily fam =
      WinningFamily::explicit_sets(board, {{0, 1, 2}, {2, 3}, {1, 3}});
  AliveSetView view(board, fam);
  CHECK(view.alive_count() == 3);
  CHECK(view.needs(0) == 3);
  CHECK(view.max_set_size() == 3);

  // sets are stored sorted: 0={0,1,2}, 1={1,3}, 2={2,3}
  view.note_claim(Player::Maker, 2);
  CHECK(view.needs(0) == 2);
  CHECK(view.needs(1) == 2);
  CHECK(view.needs(2) == 1);
  CHECK(view.alive_count() == 3);

  view.note_claim(Player::Breaker, 1);
  CHECK_FALSE(view.alive(0));
  CHECK_FALSE(view.alive(1));
  CHECK(view.alive(2));
  CHECK(view.alive_count() == 1);
  CHECK(view.dead_count() == 2);

  // idempotent re-notes are fine, conflicting ownership is a defect
  view.note_claim(Player::Maker, 2);
  CHECK_THROWS_AS(view.note_claim(Player::Breaker, 2), std::logic_error);
}

TEST_CASE("reverse kill rule on the ordered board") {
  Board board = Board::ordered_pairs(3);
  WinningFamily fam = WinningFamily::explicit_sets(
      board, {{board.id_of(0, 1), board.id_of(1, 2)}, {board.id_of(1, 0), board.id_of(2, 0)}});
  AliveSetView view(board, fam, true);
  view.note_claim(Player::Maker, board.id_of(0, 1));
  CHECK(view.alive(0));
  CHECK_FALSE(view.alive(1));  // contains the reverse (1,0)
  CHECK(view.alive_count() == 1);

  CHECK_THROWS_AS(AliveSetView(Board::complete_graph(3), fam, true), std::invalid_argument);
}

TEST_CASE("synced view equals eagerly noted view") {
  auto board = make_board(Board::complete_graph(6));
  std::mt19937_64 rng(17);
  auto fam = std::make_shared<WinningFamily>(random_family(*board, rng, 6, 2, 5));
  GameState g = play_out(new_game(board, fam, 2, 1), random_strategy(), random_strategy(), 5);

  AliveSetView synced(*board, *fam);
  synced.sync(g);
  AliveSetView noted(*board, *fam);
  for (const auto& rec : g.history().records)
    for (ElementId e : rec.elements) noted.note_claim(rec.player, e);

  for (std::uint32_t s = 0; s < fam->set_count(); ++s) {
    CHECK(synced.alive(s) == noted.alive(s));
    if (synced.alive(s)) CHECK(synced.needs(s) == noted.needs(s));
  }
}

TEST_CASE("breaker potential move picks the heaviest element") {
  Board board = Board::complete_graph(4);
  WinningFamily fam = WinningFamily::explicit_sets(board, {{0, 1}, {1, 2}, {3, 4, 5}});
  AliveSetView view(board, fam);
  // weights 2^-needs: element 1 carries 2*(1/4), anything else at most 1/4 + 1/8
  CHECK(es_breaker_move(view, 1, 1) == 1);

  WinningFamily tie = WinningFamily::explicit_sets(board, {{0, 1}, {2, 3}});
  AliveSetView tie_view(board, tie);
  CHECK(es_breaker_move(tie_view, 1, 1) == 0);

  // filter restricts the candidates
  CHECK(es_breaker_move(view, 1, 1, [](ElementId e) { return e >= 2; }) == 2);
}

TEST_CASE("maker potential move aims at the nearest completion") {
  Board board = Board::complete_graph(4);
  WinningFamily fam = WinningFamily::explicit_sets(board, {{0, 1}, {2, 3, 4}});
  AliveSetView view(board, fam);
  view.note_claim(Player::Maker, 0);
  CHECK(maker_potential_move(view) == 1);
}

TEST_CASE("es criterion with exact hand sums") {
  Board board = Board::complete_graph(5);
  // three sets of size 3: sum = 3/8 < 1/2
  WinningFamily good =
      WinningFamily::explicit_sets(board, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
  EsCertificate c = es_criterion(good, 1, 1);
  CHECK(c.satisfied);
  CHECK(c.sum.log2() == doctest::Approx(std::log2(3.0 / 8.0)).epsilon(1e-12));
  CHECK(c.threshold.log2() == doctest::Approx(-1.0));

  // four sets of size 3: sum = 1/2 exactly; the boundary must not certify
  WinningFamily boundary =
      WinningFamily::explicit_sets(board, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 4, 8}});
  CHECK_FALSE(es_criterion(boundary, 1, 1).satisfied);

  // (2:1): sum = 3 * 2^(-3/2) = 1.06 > 1/2
  EsCertificate fast = es_criterion(good, 2, 1);
  CHECK(fast.threshold.log2() == doctest::Approx(-1.0));
  CHECK(fast.sum.log2() ==
        doctest::Approx(std::log2(3.0 * std::exp2(-1.5))).epsilon(1e-12));
  CHECK_FALSE(fast.satisfied);

  // (1:2): sum = 3 * 3^(-3) = 1/9 < 1/3
  EsCertificate slow = es_criterion(good, 1, 2);
  CHECK(slow.threshold.log2() == doctest::Approx(std::log2(1.0 / 3.0)));
  CHECK(slow.sum.log2() == doctest::Approx(std::log2(1.0 / 9.0)).epsilon(1e-12));
  CHECK(slow.satisfied);
}

TEST_CASE("es criterion on an implicit family uses the count upper bound") {
  Board board = Board::reduced_k_partite(8, 4);
  WinningFamily fam = transversal_clique_family(board.partition());
  EsCertificate c = es_criterion(fam, 1, 1);
  // 16 cliques of 6 edges: 16/64 = 1/4 < 1/2
  CHECK(c.sum.log2() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(c.satisfied);
}

TEST_CASE("awwc check on frozen values") {
  // lhs = 2^20/2^10 = 2^10; rhs = 4 + 16 * (2^16)^(1/4) = 260
  AwwcResult r = awwc_check(Log2Real::from_log2(10.0), Log2Real::from_log2(20.0), 4,
                            Log2Real::from_log2(16.0));
  CHECK(r.lhs.log2() == doctest::Approx(10.0));
  CHECK(r.rhs.log2() == doctest::Approx(std::log2(260.0)).epsilon(1e-12));
  CHECK(r.holds);

  AwwcResult flipped = awwc_check(Log2Real::from_log2(20.0), Log2Real::from_log2(20.0), 4,
                                  Log2Real::from_log2(16.0));
  CHECK_FALSE(flipped.holds);
  CHECK_THROWS_AS(awwc_check(std::size_t{16}, Log2Real::one(), 1, Log2Real::one()),
                  std::domain_error);

  AwwcResult sized = awwc_check(std::size_t{1024}, Log2Real::from_log2(20.0), 4,
                                Log2Real::from_log2(16.0));
  CHECK(sized.holds);
}

TEST_CASE("potential breaker beats potential maker when the criterion holds") {
  auto board = make_board(Board::complete_graph(5));
  auto fam = std::make_shared<WinningFamily>(
      WinningFamily::explicit_sets(*board, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}));
  REQUIRE(es_criterion(*fam, 1, 1).satisfied);
  GameState g = play_out(new_game(board, fam, 1, 1), maker_potential_strategy(),
                         es_breaker_strategy(), 0);
  CHECK(g.outcome() == Outcome::BreakerWin);
}

TEST_CASE("potential strategies play games back to back") {
  auto board = make_board(Board::complete_graph(5));
  auto fam = std::make_shared<WinningFamily>(
      WinningFamily::explicit_sets(*board, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}}));
  Strategy maker = maker_potential_strategy();
  Strategy breaker = es_breaker_strategy();
  for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}}) {
    GameState reused = play_out(new_game(board, fam, a, b), maker, breaker, 0);
    GameState fresh = play_out(new_game(board, fam, a, b), maker_potential_strategy(),
                               es_breaker_strategy(), 0);
    CHECK(reused.outcome() == fresh.outcome());
    CHECK(transcript_to_string(reused.history()) == transcript_to_string(fresh.history()));
  }
}
