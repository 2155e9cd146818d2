#include "tg/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace tg {

AliveSetView::AliveSetView(const Board& board, const WinningFamily& family, bool reverse_kill)
    : board_(&board),
      family_(&family),
      reverse_kill_(reverse_kill),
      marks_(board.size(), Cell::Unclaimed) {
  if (!family.is_explicit())
    throw std::invalid_argument("AliveSetView requires an explicit family");
  if (reverse_kill_ && board.kind() != BoardKind::OrderedPairs)
    throw std::invalid_argument("reverse-kill tracking requires an ordered-pair board");
  needs_.reserve(family.set_count());
  for (const auto& s : family.sets()) {
    needs_.push_back(static_cast<std::int32_t>(s.size()));
    max_set_size_ = std::max(max_set_size_, s.size());
  }
  dead_.assign(family.set_count(), 0);
  alive_count_ = family.set_count();
}

void AliveSetView::kill(std::uint32_t set) {
  if (!dead_[set]) {
    dead_[set] = 1;
    --alive_count_;
  }
}

void AliveSetView::note_claim(Player p, ElementId e) {
  Cell want = p == Player::Maker ? Cell::Maker : Cell::Breaker;
  if (marks_[e] != Cell::Unclaimed) {
    if (marks_[e] != want) throw std::logic_error("note_claim: conflicting ownership");
    return;
  }
  marks_[e] = want;
  if (p == Player::Maker) {
    for (std::uint32_t s : family_->sets_of(e)) --needs_[s];
    if (reverse_kill_) {
      // the reverse pair can never be claimed once this one is, so every
      // set still waiting on it is lost for Maker
      for (std::uint32_t s : family_->sets_of(board_->reverse_id(e))) kill(s);
    }
  } else {
    for (std::uint32_t s : family_->sets_of(e)) kill(s);
  }
}

void AliveSetView::sync(const GameState& state) {
  const auto& recs = state.history().records;
  for (; cursor_ < recs.size(); ++cursor_)
    for (ElementId e : recs[cursor_].elements) note_claim(recs[cursor_].player, e);
}

double AliveSetView::element_score(ElementId e, std::span<const double> weight_by_needs) const {
  double sum = 0.0;
  for (std::uint32_t s : family_->sets_of(e))
    if (!dead_[s]) sum += weight_by_needs[static_cast<std::size_t>(needs_[s])];
  return sum;
}

namespace {

std::vector<double> needs_weights(std::size_t max_needs, double log2_step) {
  std::vector<double> w(max_needs + 1);
  for (std::size_t i = 0; i <= max_needs; ++i)
    w[i] = std::exp2(-log2_step * static_cast<double>(i));
  return w;
}

ElementId best_unclaimed(const AliveSetView& view, const std::vector<double>& weights,
                         const CandidateFilter& filter, const char* who) {
  bool found = false;
  ElementId best = 0;
  double best_score = 0.0;
  for (ElementId e = 0; e < view.board().size(); ++e) {
    if (view.mark(e) != Cell::Unclaimed) continue;
    if (filter && !filter(e)) continue;
    double score = view.element_score(e, weights);
    if (!found || score > best_score) {
      found = true;
      best = e;
      best_score = score;
    }
  }
  if (!found) throw std::runtime_error(std::string(who) + ": no candidate element");
  return best;
}

}  // namespace

ElementId es_breaker_move(const AliveSetView& view, int a, int b, const CandidateFilter& filter) {
  if (a < 1 || b < 1) throw std::invalid_argument("es_breaker_move: bias parts must be positive");
  double step = std::log2(1.0 + b) / a;
  return best_unclaimed(view, needs_weights(view.max_set_size(), step), filter,
                        "es_breaker_move");
}

ElementId maker_potential_move(const AliveSetView& view) {
  return best_unclaimed(view, needs_weights(view.max_set_size(), 1.0), nullptr,
                        "maker_potential_move");
}

Log2Real potential_T(const WinningFamily& family) {
  if (family.is_explicit()) {
    Log2Real sum = Log2Real::zero();
    for (const auto& s : family.sets())
      sum += Log2Real::from_log2(-static_cast<double>(s.size()));
    return sum;
  }
  auto size = family.uniform_set_size();
  if (!size)
    throw std::runtime_error("potential_T: implicit family without a uniform set size");
  return family.impl()->count() * Log2Real::from_log2(-static_cast<double>(*size));
}

double potential_T_exact_log2(const WinningFamily& family) {
  if (!family.is_explicit())
    throw std::invalid_argument("potential_T_exact_log2: explicit families only");
  if (family.set_count() > 10000)
    throw std::invalid_argument("potential_T_exact_log2: family too large");
  if (family.set_count() == 0) return -std::numeric_limits<double>::infinity();
  std::size_t smax = 0;
  for (const auto& s : family.sets()) smax = std::max(smax, s.size());
  boost::multiprecision::cpp_int num = 0;
  for (const auto& s : family.sets())
    num += boost::multiprecision::cpp_int(1) << (smax - s.size());
  // T = num / 2^smax; take the top bits of num for a double-accurate log
  auto bits = boost::multiprecision::msb(num);
  unsigned shift = bits > 52 ? static_cast<unsigned>(bits - 52) : 0u;
  double top = static_cast<double>(boost::multiprecision::cpp_int(num >> shift));
  return std::log2(top) + static_cast<double>(shift) - static_cast<double>(smax);
}

EsCertificate es_criterion(const WinningFamily& family, int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("es_criterion: bias parts must be positive");
  double step = std::log2(1.0 + b) / a;
  EsCertificate cert;
  cert.threshold = Log2Real::from_log2(-std::log2(1.0 + b));
  if (family.is_explicit()) {
    Log2Real sum = Log2Real::zero();
    for (const auto& s : family.sets())
      sum += Log2Real::from_log2(-step * static_cast<double>(s.size()));
    cert.sum = sum;
  } else {
    auto size = family.uniform_set_size();
    if (!size)
      throw std::runtime_error("es_criterion: implicit family without a uniform set size");
    cert.sum = family.impl()->count() * Log2Real::from_log2(-step * static_cast<double>(*size));
    cert.sum_is_upper_bound = family.impl()->count_is_upper_bound();
  }
  // strict inequality with slack so rounding can never promote a boundary
  // case into a certificate
  cert.satisfied =
      cert.sum.is_zero() || cert.sum.log2() < cert.threshold.log2() - 1e-9;
  return cert;
}

AwwcResult awwc_check(Log2Real board_size, Log2Real t_family, int p, Log2Real t_clusters_upper) {
  if (p < 2) throw std::domain_error("awwc_check: p must be at least 2");
  if (board_size.is_zero()) throw std::invalid_argument("awwc_check: empty board");
  AwwcResult r;
  r.lhs = t_family / board_size;
  r.rhs = Log2Real::from_value(static_cast<double>(p)) +
          Log2Real::from_value(4.0 * p) * t_clusters_upper.root(p);
  r.holds = !r.lhs.is_zero() && r.lhs.log2() > r.rhs.log2() + 1e-9;
  return r;
}

AwwcResult awwc_check(std::size_t board_size, Log2Real t_family, int p,
                      Log2Real t_clusters_upper) {
  return awwc_check(Log2Real::from_value(static_cast<double>(board_size)), t_family, p,
                    t_clusters_upper);
}

namespace {

struct TrackedView {
  std::unique_ptr<AliveSetView> view;
  std::size_t consumed = 0;

  AliveSetView& get(const GameState& state) {
    // a shrunken transcript or a different board means a new game started
    std::size_t seen = state.history().records.size();
    if (!view || &view->board() != &state.board() || &view->family() != &state.family() ||
        seen < consumed)
      view = std::make_unique<AliveSetView>(state.board(), state.family());
    view->sync(state);
    consumed = seen;
    return *view;
  }
};

}  // namespace

Strategy es_breaker_strategy() {
  auto tracked = std::make_shared<TrackedView>();
  return [tracked](const GameState& state, Rng&) -> Move {
    AliveSetView& view = tracked->get(state);
    Move m;
    std::size_t take = std::min<std::size_t>(state.bias_b(), state.unclaimed_count());
    for (std::size_t i = 0; i < take; ++i) {
      ElementId e = es_breaker_move(view, state.bias_a(), state.bias_b());
      view.note_claim(Player::Breaker, e);
      m.elements.push_back(e);
    }
    return m;
  };
}

Strategy maker_potential_strategy() {
  auto tracked = std::make_shared<TrackedView>();
  return [tracked](const GameState& state, Rng&) -> Move {
    AliveSetView& view = tracked->get(state);
    Move m;
    std::size_t take = std::min<std::size_t>(state.bias_a(), state.unclaimed_count());
    for (std::size_t i = 0; i < take; ++i) {
      ElementId e = maker_potential_move(view);
      view.note_claim(Player::Maker, e);
      m.elements.push_back(e);
    }
    return m;
  };
}

}  // namespace tg
