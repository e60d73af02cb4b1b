#include "thickpat/game.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "thickpat/thickness.hpp"

namespace thickpat {

namespace {

bool is_zero(const Real& r) { return r.is_exact() && r.exact() == 0; }

std::string real_key(const Real& r) { return r.is_exact() ? to_string(r.exact()) : r.enclose(128).str(30); }

// x <= y for x exact and y a real; Undecided counts as true with a note.
Legality leq(const Rational& x, const Real& y, const std::string& rule) {
  const Ordering3 o = compare(Real(x), y);
  if (o == Ordering3::Greater) return Legality{false, rule, ""};
  return Legality{true, "", o == Ordering3::Undecided ? "tight" : ""};
}

Real times(const Real& a, const Rational& r) {
  if (a.is_exact()) return Real(Rational(a.exact() * r));
  return Real::computed([a, r](mpfr_prec_t p) { return a.enclose(p) * Enclosure(r, p); }, "alpha*rho");
}

Ball map_ball(const Ball& b, const Rational& lambda, const Rational& t) {
  return Ball{lambda * b.center + t, abs(lambda) * b.radius};
}

Interval map_interval(const Interval& iv, const Rational& lambda, const Rational& t) {
  const Rational a = lambda * iv.lo + t, b = lambda * iv.hi + t;
  return lambda > 0 ? Interval(a, b) : Interval(b, a);
}

Rational uniform01(std::mt19937_64& rng) {
  constexpr unsigned long kDen = 1UL << 20;
  std::uniform_int_distribution<unsigned long> dist(0, kDen);
  Rational u(dist(rng), kDen);
  u.canonicalize();
  return u;
}

// Gaps sorted by position with their smaller flank; lookups for a ball.
struct GapIndex {
  std::vector<GapRecord> by_position;
  std::vector<std::size_t> by_flank;  // indices, min flank descending

  explicit GapIndex(std::vector<GapRecord> recs) : by_position(std::move(recs)) {
    std::sort(by_position.begin(), by_position.end(),
              [](const GapRecord& a, const GapRecord& b) { return a.gap.lo < b.gap.lo; });
    by_flank.resize(by_position.size());
    for (std::size_t i = 0; i < by_flank.size(); ++i) by_flank[i] = i;
    std::stable_sort(by_flank.begin(), by_flank.end(), [&](std::size_t a, std::size_t b) {
      return by_position[a].min_flank() > by_position[b].min_flank();
    });
  }

  // [first, last) of gaps whose open interval meets the closed interval iv
  std::pair<std::size_t, std::size_t> meeting(const Interval& iv) const {
    auto first = std::partition_point(by_position.begin(), by_position.end(),
                                      [&](const GapRecord& g) { return g.gap.hi <= iv.lo; });
    auto last = std::partition_point(first, by_position.end(), [&](const GapRecord& g) { return g.gap.lo < iv.hi; });
    return {static_cast<std::size_t>(first - by_position.begin()), static_cast<std::size_t>(last - by_position.begin())};
  }

  std::size_t flank_at_least(const Rational& size) const {
    auto it = std::partition_point(by_flank.begin(), by_flank.end(),
                                   [&](std::size_t i) { return by_position[i].min_flank() >= size; });
    return static_cast<std::size_t>(it - by_flank.begin());
  }

  // Longest gap (ties: leftmost) meeting iv with min flank >= |iv|.
  const GapRecord* qualifying(const Interval& iv) const {
    const Rational size = iv.length();
    auto [a, b] = meeting(iv);
    const std::size_t nf = flank_at_least(size);
    const GapRecord* best = nullptr;
    auto consider = [&](const GapRecord& g) {
      if (!iv.meets_open(g.gap.lo, g.gap.hi) || g.min_flank() < size) return;
      if (!best || g.gap_length() > best->gap_length() ||
          (g.gap_length() == best->gap_length() && g.gap.lo < best->gap.lo))
        best = &g;
    };
    if (b - a <= nf) {
      for (std::size_t i = a; i < b; ++i) consider(by_position[i]);
    } else {
      for (std::size_t i = 0; i < nf; ++i) consider(by_position[by_flank[i]]);
    }
    return best;
  }
};

bool already_erased(const GameTranscript& tr, const Ball& b) {
  for (const auto& turn : tr.turns)
    for (const auto& e : turn.alice.erased)
      if (e == b) return true;
  return false;
}

GameTranscript classify(GameTranscript tr, const std::optional<TargetCover>& cover) {
  const Interval fin = *tr.final_interval;
  if (tr.erased.contains(fin))
    tr.outcome = Outcome::ErasedOutcome;
  else if (cover && cover->covers(fin, tr.erased))
    tr.outcome = Outcome::OutcomeInTargetCover;
  else
    tr.outcome = Outcome::Undetermined;
  return tr;
}

}  // namespace

void GameParams::validate() const {
  if (compare(alpha, Real(Rational(0))) != Ordering3::Greater) throw std::invalid_argument("alpha must be > 0");
  if (!(beta > 0 && beta < 1)) throw std::invalid_argument("beta must lie in (0,1)");
  if (compare(c, Real(Rational(0))) == Ordering3::Less) throw std::invalid_argument("c must be >= 0");
  if (!(rho > 0)) throw std::invalid_argument("rho must be > 0");
}

std::string GameParams::str() const {
  return "(alpha = " + alpha.str() + ", beta = " + to_string(beta) + ", c = " + c.str() + ", rho = " + to_string(rho) +
         ")";
}

std::string outcome_label(Outcome o) {
  switch (o) {
    case Outcome::ErasedOutcome:
      return "erased";
    case Outcome::OutcomeInTargetCover:
      return "in-target-cover";
    case Outcome::Undetermined:
      return "undetermined";
  }
  return "?";
}

Outcome parse_outcome(const std::string& s) {
  for (auto o : {Outcome::ErasedOutcome, Outcome::OutcomeInTargetCover, Outcome::Undetermined})
    if (outcome_label(o) == s) return o;
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

bool same_transcript(const GameTranscript& a, const GameTranscript& b) {
  return real_key(a.params.alpha) == real_key(b.params.alpha) && a.params.beta == b.params.beta &&
         real_key(a.params.c) == real_key(b.params.c) && a.params.rho == b.params.rho && a.turns == b.turns &&
         a.erased == b.erased && a.outcome == b.outcome && a.final_interval == b.final_interval &&
         a.stop_radius == b.stop_radius && a.violation == b.violation && a.notes == b.notes;
}

Legality validate_bob_move(const GameTranscript& t, const Ball& move) {
  if (!(move.radius > 0)) return {false, "radius positive", ""};
  const Ball* prev = t.last_bob();
  if (!prev) {
    if (move.radius < t.params.rho) return {false, "initial radius", ""};
    return {};
  }
  if (move.radius < t.params.beta * prev->radius) return {false, "radius decay", ""};
  if (abs(Rational(move.center - prev->center)) + move.radius > prev->radius) return {false, "nesting", ""};
  return {};
}

Legality validate_alice_move(const GameParams& params, const Rational& bob_radius, const AliceMove& move) {
  if (move.erased.empty()) return {};
  for (const auto& b : move.erased)
    if (b.radius < 0) return {false, "radius nonnegative", ""};
  const Real budget = times(params.alpha, bob_radius);
  if (is_zero(params.c)) {
    if (move.erased.size() > 1) return {false, "single ball when c = 0", ""};
    return leq(move.erased[0].radius, budget, "erasure radius");
  }
  if (move.erased.size() == 1) return leq(move.erased[0].radius, budget, "erasure budget");
  const Rational& r0 = move.erased[0].radius;
  const bool equal_radii =
      std::all_of(move.erased.begin(), move.erased.end(), [&](const Ball& b) { return b.radius == r0; });
  if (equal_radii && r0 == 0) return {};
  if (equal_radii && params.c.is_exact() && params.alpha.is_exact()) {
    // k r^{p/q} <= a^{p/q}  <=>  k^q r^p <= a^p
    const Rational& c = params.c.exact();
    if (c.get_num().fits_slong_p() && c.get_den().fits_slong_p() && c.get_num() < 4096 && c.get_den() < 4096) {
      const long p = c.get_num().get_si(), q = c.get_den().get_si();
      const Rational a = params.alpha.exact() * bob_radius;
      const Rational lhs = pow(Rational(static_cast<long>(move.erased.size())), q) * pow(r0, p);
      if (lhs <= pow(a, p)) return {};
      return {false, "erasure budget", ""};
    }
  }
  for (mpfr_prec_t prec = kDefaultPrecision; prec <= kMaxPrecision; prec *= 2) {
    const Enclosure c = params.c.enclose(prec);
    Enclosure lhs(Rational(0), prec);
    for (const auto& b : move.erased)
      if (b.radius > 0) lhs = lhs + pow(Enclosure(b.radius, prec), c);
    const Enclosure rhs = pow(budget.enclose(prec), c);
    if (lhs.certainly_leq(rhs)) return {};
    if (rhs.certainly_less(lhs)) return {false, "erasure budget", ""};
  }
  return {true, "", "tight"};
}

bool TargetCover::covers(const Interval& b, const IntervalUnion& erased) const {
  std::vector<Interval> pieces;
  const IntervalUnion hit = erased.intersect(b);
  for (const auto& e : hit.parts()) pieces.push_back(e);
  if (b.lo < hull.lo) pieces.emplace_back(b.lo, min(b.hi, hull.lo));
  if (b.hi > hull.hi) pieces.emplace_back(max(b.lo, hull.hi), b.hi);
  if (b.hi >= hull.lo && b.lo <= hull.hi) {
    Rational cursor = max(b.lo, hull.lo);
    const Rational end = min(b.hi, hull.hi);
    auto first = std::partition_point(gaps.begin(), gaps.end(), [&](const OpenInterval& g) { return g.hi <= b.lo; });
    for (auto it = first; it != gaps.end() && it->lo < b.hi; ++it) {
      if (cursor <= it->lo) pieces.emplace_back(cursor, min(it->lo, end));
      cursor = it->hi;
    }
    if (cursor <= end) pieces.emplace_back(cursor, end);
  }
  return IntervalUnion::from_intervals(std::move(pieces)).contains(b);
}

TargetCover TargetCover::affine(const Rational& lambda, const Rational& t) const {
  if (lambda == 0) throw std::invalid_argument("similarity with lambda = 0");
  TargetCover out{map_interval(hull, lambda, t), {}};
  for (const auto& g : gaps) {
    const Interval m = map_interval(Interval(g.lo, g.hi), lambda, t);
    out.gaps.push_back({m.lo, m.hi});
  }
  if (lambda < 0) std::reverse(out.gaps.begin(), out.gaps.end());
  return out;
}

int gap_depth_for(const SetDescriptor& d, const Rational& beta, const Rational& stop) {
  if (d.is_explicit()) return 0;
  const Rational lam = d.max_ratio();
  Rational len = d.hull().length();
  int depth = 0;
  while (!(len < beta * stop)) {
    len *= lam;
    if (++depth > 24) throw std::invalid_argument("stop radius too small for the gap table (depth > 24)");
  }
  return depth;
}

TargetCover target_cover(const SetDescriptor& d, const Rational& stop, const Rational& beta) {
  TargetCover out{d.hull(), {}};
  for (const auto& r : gaps(d, gap_depth_for(d, beta, stop)))
    if (r.min_flank() >= 2 * stop) out.gaps.push_back(r.gap);
  std::sort(out.gaps.begin(), out.gaps.end(), [](const OpenInterval& a, const OpenInterval& b) { return a.lo < b.lo; });
  return out;
}

GameParams cantor_params(const SetDescriptor& d, const Rational& beta) {
  const ThicknessValue t = thickness(d, 1);
  if (t.value.is_infinite() || !(t.value.value() > 0))
    throw std::invalid_argument("strategy needs finite positive thickness");
  return GameParams{Real(Rational(1 / (t.value.value() * beta))), beta, Real(Rational(0)), Rational(beta / 2)};
}

AliceStrategy alice_cantor_strategy(const SetDescriptor& d, const GameParams& params, const Rational& stop) {
  params.validate();
  if (!(d.hull().lo == 0 && d.hull().hi == 1)) throw std::invalid_argument("descriptor not normalized");
  const ThicknessValue t = thickness(d, 1);
  if (!t.value.is_infinite() && t.value.value() == 0) throw std::invalid_argument("strategy needs thickness > 0");
  auto index = std::make_shared<const GapIndex>(gaps(d, gap_depth_for(d, params.beta, stop)));
  AliceStrategy s;
  s.params = params;
  s.name = "cantor-gap";
  s.respond = [index, params](const GameTranscript& tr, const Ball& b) {
    const GapRecord* g = index->qualifying(b.interval());
    if (!g) return AliceMove{};
    AliceMove m{{Ball::of(Interval(g->gap.lo, g->gap.hi))}};
    if (already_erased(tr, m.erased[0])) return AliceMove{};
    if (!validate_alice_move(params, b.radius, m).ok) return AliceMove{};
    return m;
  };
  return s;
}

AliceStrategy widen_params(const AliceStrategy& s, const GameParams& wider) {
  wider.validate();
  auto smaller = [](const Real& a, const Real& b) { return compare(a, b) == Ordering3::Less; };
  if (smaller(wider.alpha, s.params.alpha) || wider.beta < s.params.beta || smaller(wider.c, s.params.c) ||
      wider.rho < s.params.rho)
    throw std::invalid_argument("widen_params: every parameter must be >= the original");
  AliceStrategy out = s;
  out.params = wider;
  out.name = s.name + "+widened";
  return out;
}

GameTranscript conjugate_transcript(const GameTranscript& tr, const Rational& lambda, const Rational& t) {
  if (lambda == 0) throw std::invalid_argument("similarity with lambda = 0");
  GameTranscript out = tr;
  out.params.rho = abs(lambda) * tr.params.rho;
  for (auto& turn : out.turns) {
    turn.bob = map_ball(turn.bob, lambda, t);
    for (auto& e : turn.alice.erased) e = map_ball(e, lambda, t);
  }
  out.erased = tr.erased.affine(lambda, t);
  if (tr.final_interval) out.final_interval = map_interval(*tr.final_interval, lambda, t);
  out.stop_radius = abs(lambda) * tr.stop_radius;
  return out;
}

AliceStrategy transport_similarity(const AliceStrategy& s, const Rational& lambda, const Rational& t) {
  if (lambda == 0) throw std::invalid_argument("similarity with lambda = 0");
  AliceStrategy out = s;
  out.params.rho = abs(lambda) * s.params.rho;
  out.name = s.name + "+similarity";
  const Rational inv = 1 / lambda, shift = -t / lambda;
  auto base = s.respond;
  out.respond = [base, lambda, t, inv, shift](const GameTranscript& tr, const Ball& b) {
    AliceMove m = base(conjugate_transcript(tr, inv, shift), map_ball(b, inv, shift));
    for (auto& e : m.erased) e = map_ball(e, lambda, t);
    return m;
  };
  return out;
}

AliceStrategy transport_bilip(const AliceStrategy& s, const MonotoneMap& f) {
  if (!is_zero(s.params.c)) throw std::invalid_argument("bi-Lipschitz transport needs a c = 0 strategy");
  const Rational ratio = f.c2() / f.c1();
  AliceStrategy out;
  out.params.alpha = times(s.params.alpha, ratio);
  out.params.beta = ratio * s.params.beta;
  out.params.c = Real(Rational(0));
  out.params.rho = f.c2() * s.params.rho;
  out.params.validate();
  out.name = s.name + "+bilip";
  auto base = s.respond;
  const GameParams base_params = s.params;
  auto pull = [f](const Ball& b) -> std::optional<Ball> {
    auto iv = f.preimage(b.interval());
    if (!iv) return std::nullopt;
    return Ball::of(*iv);
  };
  out.respond = [base, base_params, f, pull](const GameTranscript& tr, const Ball& b) {
    auto pb = pull(b);
    if (!pb) return AliceMove{};
    GameTranscript back;
    back.params = base_params;
    back.stop_radius = tr.stop_radius;
    for (const auto& turn : tr.turns) {
      auto bb = pull(turn.bob);
      if (!bb) continue;
      Turn bt{*bb, {}, turn.alice_check};
      for (const auto& e : turn.alice.erased)
        if (auto eb = pull(e)) bt.alice.erased.push_back(*eb);
      back.turns.push_back(std::move(bt));
    }
    AliceMove m = base(back, *pb);
    for (auto& e : m.erased) e = Ball::of(f.image(e.interval()));
    return m;
  };
  return out;
}

AliceStrategy combine_intersection(const std::vector<AliceStrategy>& parts) {
  if (parts.empty()) throw std::invalid_argument("combine_intersection needs at least one strategy");
  if (parts.size() == 1) return parts.front();
  const GameParams& p0 = parts.front().params;
  if (is_zero(p0.c)) throw std::invalid_argument("combine_intersection needs c > 0");
  for (const auto& s : parts) {
    if (s.params.beta != p0.beta || s.params.rho != p0.rho) throw std::invalid_argument("mismatched beta or rho");
    const Ordering3 o = compare(s.params.c, p0.c);
    if (o == Ordering3::Less || o == Ordering3::Greater) throw std::invalid_argument("mismatched c");
  }
  std::vector<Real> alphas;
  for (const auto& s : parts) alphas.push_back(s.params.alpha);
  const Real c = p0.c;
  AliceStrategy out;
  out.params = p0;
  out.params.alpha = Real::computed(
      [alphas, c](mpfr_prec_t p) {
        const Enclosure ce = c.enclose(p);
        Enclosure sum(Rational(0), p);
        for (const auto& a : alphas) sum = sum + pow(a.enclose(p), ce);
        return pow(sum, Enclosure(Rational(1), p) / ce);
      },
      "(sum alpha_j^c)^(1/c)");
  out.name = "intersection of " + std::to_string(parts.size());
  std::vector<std::function<AliceMove(const GameTranscript&, const Ball&)>> fns;
  for (const auto& s : parts) fns.push_back(s.respond);
  out.respond = [fns](const GameTranscript& tr, const Ball& b) {
    AliceMove m;
    for (const auto& f : fns) {
      AliceMove part = f(tr, b);
      m.erased.insert(m.erased.end(), part.erased.begin(), part.erased.end());
    }
    return m;
  };
  return out;
}

BobStrategy bob_midpoint_zoom(Rational target, Rational first_center, Rational first_radius, Rational ratio) {
  BobStrategy b;
  b.name = "midpoint-zoom";
  b.next = [=](const GameTranscript& tr) -> std::optional<Ball> {
    const Ball* prev = tr.last_bob();
    if (!prev) return Ball{first_center, first_radius};
    const Rational r = ratio * prev->radius;
    const Rational slack = prev->radius - r;
    Rational step = target - prev->center;
    if (step > slack) step = slack;
    if (step < -slack) step = -slack;
    return Ball{prev->center + step, r};
  };
  return b;
}

BobStrategy bob_gap_seeker(const SetDescriptor& d, int depth, Rational first_center, Rational first_radius,
                           Rational ratio) {
  auto index = std::make_shared<const GapIndex>(gaps(d, depth));
  BobStrategy b;
  b.name = "gap-seeker";
  b.next = [=](const GameTranscript& tr) -> std::optional<Ball> {
    const Ball* prev = tr.last_bob();
    if (!prev) return Ball{first_center, first_radius};
    const Interval iv = prev->interval();
    auto [lo, hi] = index->meeting(iv);
    Rational target = prev->center;
    const GapRecord* best = nullptr;
    for (std::size_t i = lo; i < hi; ++i) {
      const auto& g = index->by_position[i];
      if (!best || g.gap_length() > best->gap_length()) best = &g;
    }
    if (best) target = (best->gap.lo + best->gap.hi) / 2;
    const Rational r = ratio * prev->radius;
    const Rational slack = prev->radius - r;
    Rational step = target - prev->center;
    if (step > slack) step = slack;
    if (step < -slack) step = -slack;
    return Ball{prev->center + step, r};
  };
  return b;
}

BobStrategy bob_uniform_random(std::uint64_t seed, const GameParams& params, Rational lo, Rational hi,
                               Rational max_ratio) {
  if (max_ratio < params.beta || !(max_ratio < 1)) throw std::invalid_argument("max_ratio must lie in [beta, 1)");
  auto rng = std::make_shared<std::mt19937_64>(seed);
  const Rational beta = params.beta, rho = params.rho;
  BobStrategy b;
  b.name = "uniform-random";
  b.next = [=](const GameTranscript& tr) -> std::optional<Ball> {
    const Ball* prev = tr.last_bob();
    if (!prev) return Ball{lo + (hi - lo) * uniform01(*rng), rho};
    const Rational q = beta + (max_ratio - beta) * uniform01(*rng);
    const Rational r = q * prev->radius;
    const Rational slack = prev->radius - r;
    return Ball{prev->center + slack * (2 * uniform01(*rng) - 1), r};
  };
  return b;
}

BobStrategy bob_scripted(std::vector<Ball> moves) {
  BobStrategy b;
  b.name = "scripted";
  auto shared = std::make_shared<const std::vector<Ball>>(std::move(moves));
  b.next = [shared](const GameTranscript& tr) -> std::optional<Ball> {
    if (tr.turns.size() >= shared->size()) return std::nullopt;
    return (*shared)[tr.turns.size()];
  };
  return b;
}

BobStrategy transport_bob(const BobStrategy& b, const Rational& lambda, const Rational& t) {
  if (lambda == 0) throw std::invalid_argument("similarity with lambda = 0");
  const Rational inv = 1 / lambda, shift = -t / lambda;
  BobStrategy out;
  out.name = b.name + "+similarity";
  auto base = b.next;
  out.next = [=](const GameTranscript& tr) -> std::optional<Ball> {
    auto m = base(conjugate_transcript(tr, inv, shift));
    if (!m) return std::nullopt;
    return map_ball(*m, lambda, t);
  };
  return out;
}

GameTranscript play(const BobStrategy& bob, const AliceStrategy& alice, const Rational& stop,
                    const std::optional<TargetCover>& cover, int max_turns) {
  if (!(stop > 0)) throw std::invalid_argument("stop radius must be positive");
  GameTranscript tr;
  tr.params = alice.params;
  tr.stop_radius = stop;
  tr.notes.push_back("finite horizon: lim rho_m = 0 is replaced by the stop radius");
  for (int turn = 0; turn < max_turns; ++turn) {
    auto mv = bob.next(tr);
    if (!mv) {
      tr.notes.push_back("bob stopped");
      return tr;
    }
    const Legality bl = validate_bob_move(tr, *mv);
    if (!bl.ok) {
      tr.violation = "bob: " + bl.rule;
      tr.notes.push_back("rejected bob move B(" + to_string(mv->center) + ", " + to_string(mv->radius) + ")");
      return tr;
    }
    AliceMove am = alice.respond(tr, *mv);
    const Legality al = validate_alice_move(tr.params, mv->radius, am);
    std::vector<Interval> ivs;
    for (const auto& e : am.erased) ivs.push_back(e.interval());
    tr.turns.push_back(Turn{*mv, std::move(am), al});
    if (!al.ok) {
      tr.violation = "alice: " + al.rule;
      return tr;
    }
    if (!ivs.empty()) tr.erased = tr.erased.unite(IntervalUnion::from_intervals(std::move(ivs)));
    if (mv->radius < stop) {
      tr.final_interval = mv->interval();
      return classify(std::move(tr), cover);
    }
  }
  tr.notes.push_back("turn limit reached");
  return tr;
}

std::vector<GameTranscript> play_batch(const std::function<BobStrategy(std::uint64_t)>& make_bob,
                                       const AliceStrategy& alice, const Rational& stop,
                                       const std::optional<TargetCover>& cover, std::size_t count,
                                       std::uint64_t seed0) {
  std::vector<GameTranscript> out(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) out[i] = play(make_bob(seed0 + static_cast<std::uint64_t>(i)), alice, stop, cover);
  return out;
}

std::vector<GameTranscript> play_batch_serial(const std::function<BobStrategy(std::uint64_t)>& make_bob,
                                              const AliceStrategy& alice, const Rational& stop,
                                              const std::optional<TargetCover>& cover, std::size_t count,
                                              std::uint64_t seed0) {
  std::vector<GameTranscript> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(play(make_bob(seed0 + i), alice, stop, cover));
  return out;
}

bool has_repeated_erasure(const GameTranscript& t) {
  std::set<std::pair<Rational, Rational>> seen;
  for (const auto& turn : t.turns)
    for (const auto& e : turn.alice.erased)
      if (!seen.insert({e.center, e.radius}).second) return true;
  return false;
}

BatchSummary summarize(const std::vector<GameTranscript>& ts) {
  BatchSummary s;
  s.plays = ts.size();
  for (const auto& t : ts) {
    if (!t.violation.empty()) ++s.violations;
    if (has_repeated_erasure(t)) ++s.repeated_erasures;
    switch (t.outcome) {
      case Outcome::ErasedOutcome:
        ++s.erased;
        break;
      case Outcome::OutcomeInTargetCover:
        ++s.in_cover;
        break;
      case Outcome::Undetermined:
        ++s.undetermined;
        break;
    }
  }
  return s;
}

}  // namespace thickpat
