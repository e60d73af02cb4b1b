// One PASS/FAIL line per acceptance criterion.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "thickpat/appendix.hpp"
#include "thickpat/bounds.hpp"
#include "thickpat/game.hpp"
#include "thickpat/patterns.hpp"
#include "thickpat/thickness.hpp"

using namespace thickpat;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

using Check = std::function<Result()>;

std::string num(double x, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

Result c1_closed_form() {
  long checked = 0;
  for (const Rational eps : {make_rational(1, 3), make_rational(1, 5), make_rational(1, 2), make_rational(3, 5)}) {
    const Rational expect = (1 - eps) / (2 * eps);
    const auto d = SetDescriptor::middle_epsilon(eps);
    for (int n = 1; n <= 6; ++n) {
      const ExtRational t = thickness_gap(gaps(d, n));
      if (!(t == ExtRational(expect)))
        return {false, "eps " + to_string(eps) + " depth " + std::to_string(n) + " gave " + t.str()};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " (eps, depth) pairs equal (1-eps)/(2eps)"};
}

Result c2_oracle_equivalence() {
  std::mt19937_64 rng(20261019);
  int agree = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const int k = 1 + static_cast<int>(rng() % 12);
    std::set<long> picks;
    while (static_cast<int>(picks.size()) < 2 * k) picks.insert(1 + static_cast<long>(rng() % 999));
    std::vector<long> v(picks.begin(), picks.end());
    std::vector<OpenInterval> gs;
    for (int i = 0; i < k; ++i)
      gs.push_back(OpenInterval{make_rational(v[2 * i], 1000), make_rational(v[2 * i + 1], 1000)});
    const auto d = SetDescriptor::explicit_gaps(Interval(Rational(0), Rational(1)), gs);
    const ExtRational a = thickness_chunk(d, 0).value;
    const ExtRational b = thickness_gap(gaps(d, 0));
    if (!(a == b)) return {false, "instance " + std::to_string(inst) + ": chunk " + a.str() + " vs gap " + b.str()};
    ++agree;
  }
  return {true, std::to_string(agree) + "/200 instances agree exactly"};
}

Result c3_dimension_bound() {
  const Enclosure h = hausdorff_lower(Rational(1));
  const bool in_range = h.lower() >= make_rational(6309, 10000) && h.upper() <= make_rational(6310, 10000);
  const double ref = std::log(2.0) / std::log(3.0);
  const bool matches = std::abs(h.mid() - ref) < 1e-12;
  bool monotone = true;
  Enclosure prev = hausdorff_lower(make_rational(1, 10));
  for (int i = 2; i <= 100; ++i) {
    const Enclosure cur = hausdorff_lower(make_rational(i, 10));
    if (cur.upper() < prev.lower()) monotone = false;
    prev = cur;
  }
  return {in_range && matches && monotone, "hausdorff_lower(1) = " + num(h.mid(), 10) +
                                               ", log2/log3 = " + num(ref, 10) +
                                               (monotone ? ", monotone on 100 points" : ", NOT monotone")};
}

Result c4_capacity() {
  const Rational big(Integer("1000000000000000"));
  const CapacityResult r = ap_capacity(Real(big));
  if (!r.N) return {false, "capacity at 1e15 undetermined"};
  const double k = std::log(4.0) / (4 * std::exp(1.0) * 720.0 * 720.0);
  const double ratio = r.N->get_d() * std::log(1e15) / 1e15;
  const double rel = std::abs(ratio - k) / k;
  bool monotone = true, bilip_equal = true;
  std::optional<Integer> prev;
  int points = 0;
  for (int e = 4; e <= 64; ++e) {
    const Rational tau(Integer(static_cast<long>(std::llround(std::pow(10.0, e / 4.0)))));
    const CapacityResult c = ap_capacity(Real(tau));
    if (!c.N) return {false, "capacity undetermined at " + to_string(tau)};
    if (prev && *c.N < *prev) monotone = false;
    prev = c.N;
    if (tau > 11) {
      const auto b = bilip_capacity(Real(tau), Rational(1), Rational(1), make_rational(1, 4));
      const auto p = ap_capacity_proof(Real(tau));
      if (!(b.proof.N && p.N && *b.proof.N == *p.N && b.proof.pre_floor_lo == p.pre_floor_lo &&
            b.proof.pre_floor_hi == p.pre_floor_hi))
        bilip_equal = false;
    }
    ++points;
  }
  return {rel < 0.01 && monotone && bilip_equal,
          "N(1e15) = " + r.N->get_str() + ", relative error " + num(rel, 3) + "; " + std::to_string(points) +
              "-point grid " + (monotone ? "nondecreasing" : "NOT monotone") +
              (bilip_equal ? ", bilip matches the proof formula" : ", bilip MISMATCH")};
}

Result c5_certificates() {
  const auto third = SetDescriptor::middle_epsilon(make_rational(1, 3));
  const Certificate a = ap_search(third, 4, make_rational(1, 3), 3);
  const bool present = a.verdict == Verdict::PresentAtDepth && a.witness && *a.witness == 0 && a.in_set;
  const Certificate b = ap_search(third, 3, make_rational(1, 2), 1);
  const bool absent = b.verdict == Verdict::CertifiedAbsentAtDepth && b.depth == 1;
  return {present && absent, "(0,1/3,2/3,1): " + verdict_label(a.verdict) + (a.in_set ? " in set" : "") +
                                 "; m=3 delta=1/2: " + verdict_label(b.verdict) + " at depth " +
                                 std::to_string(b.depth)};
}

Result c6_longest_ap() {
  const std::vector<Rational> eps = {make_rational(1, 3), make_rational(1, 5), make_rational(1, 9)};
  std::vector<int> m;
  std::vector<double> lo, hi;
  bool budget_hit = false;
  for (const auto& e : eps) {
    const LongestAp r = longest_ap(SetDescriptor::middle_epsilon(e), 6, 64, 100000);
    m.push_back(r.m);
    budget_hit = budget_hit || r.exhausted;
    const auto [l, h] = bfs_ap_envelope(e);
    lo.push_back(l.mid());
    hi.push_back(to_double(h));
  }
  const bool nondecreasing = m[0] <= m[1] && m[1] <= m[2];
  // Constants fitted on the first two values; the third is held out.
  const double c_lo = std::min(m[0] / lo[0], m[1] / lo[1]);
  const double c_hi = std::max(m[0] / hi[0], m[1] / hi[1]);
  bool inside = true;
  for (std::size_t i = 0; i < eps.size(); ++i)
    if (m[i] < c_lo * lo[i] - 1e-9 || m[i] > c_hi * hi[i] + 1e-9) inside = false;
  std::string detail = "m = " + std::to_string(m[0]) + ", " + std::to_string(m[1]) + ", " + std::to_string(m[2]) +
                       "; c_lo = " + num(c_lo, 4) + ", c_hi = " + num(c_hi, 4) +
                       "; held-out 1/9: " + num(c_lo * lo[2], 4) + " <= " + std::to_string(m[2]) +
                       " <= " + num(c_hi * hi[2], 4);
  if (budget_hit) detail += "; budget hit";
  return {nondecreasing && inside && !budget_hit, detail};
}

Result c7_gap_lemma() {
  const auto fifth = SetDescriptor::middle_epsilon(make_rational(1, 5));
  const auto third = SetDescriptor::middle_epsilon(make_rational(1, 3));
  const GapLemmaResult a = gap_lemma_check(fifth, translate(fifth, make_rational(2, 5)), 10);
  const bool hold =
      a.status == GapLemmaResult::Status::HypothesesHold && a.witness && a.witness->present() && a.witness->depth <= 10;
  const GapLemmaResult b = gap_lemma_check(third, translate(third, make_rational(2, 5)), 10);
  const bool fail = b.status == GapLemmaResult::Status::HypothesesFail;
  std::mt19937_64 rng(7);
  const std::vector<Rational> epss = {make_rational(1, 5), make_rational(1, 7), make_rational(1, 9),
                                      make_rational(1, 4)};
  int cases = 0, alarms = 0, without_witness = 0;
  while (cases < 50) {
    const auto d1 = SetDescriptor::middle_epsilon(epss[rng() % epss.size()]);
    const Rational scale(1 + static_cast<long>(rng() % 4), 2);
    const Rational shift(static_cast<long>(rng() % 181) - 90, 97);
    const auto d2 = transform(SetDescriptor::middle_epsilon(epss[rng() % epss.size()]), AffineMap{scale, shift});
    if (hull_in_gap(d1.hull(), d2) || hull_in_gap(d2.hull(), d1)) continue;
    const GapLemmaResult r = gap_lemma_check(d1, d2, 8);
    if (r.status != GapLemmaResult::Status::HypothesesHold) continue;
    ++cases;
    if (r.alarm) ++alarms;
    if (!(r.witness && r.witness->present())) ++without_witness;
  }
  return {hold && fail && alarms == 0 && without_witness == 0,
          "offset 2/5: " + gap_lemma_status_label(a.status) +
              (a.witness ? " witness depth " + std::to_string(a.witness->depth) : "") +
              "; 1/3 copies: " + gap_lemma_status_label(b.status) + "; random: " + std::to_string(cases) + " cases, " +
              std::to_string(alarms) + " alarms"};
}

Result c8_sumset() {
  const auto third = SetDescriptor::middle_epsilon(make_rational(1, 3));
  const IntervalUnion full = IntervalUnion::from_intervals({Interval(Rational(0), Rational(2))});
  for (int n = 0; n <= 8; ++n)
    if (!(sumset_cover({third, third}, n) == full))
      return {false, "depth " + std::to_string(n) + " cover is not [0,2]"};
  const AstelsResult a = astels_sumset({ExtRational(Rational(1)), ExtRational(Rational(1))});
  return {a.contains_interval, "covers equal [0,2] for n <= 8; astels: " + a.str()};
}

Result c9_game() {
  const auto fifth = SetDescriptor::middle_epsilon(make_rational(1, 5));
  const Rational beta(1, 5), stop(1, 1000000);
  const GameParams p = cantor_params(fifth, beta);
  const AliceStrategy alice = alice_cantor_strategy(fifth, p, stop);
  const TargetCover cover = target_cover(fifth, stop, beta);
  const auto ts = play_batch([&](std::uint64_t s) { return bob_uniform_random(s, p, Rational(0), Rational(1)); }, alice,
                             stop, cover, 1000, 1);
  const BatchSummary s = summarize(ts);
  return {s.plays == 1000 && s.undetermined == 0 && s.violations == 0 && s.repeated_erasures == 0,
          std::to_string(s.plays) + " plays: " + std::to_string(s.erased) + " erased, " + std::to_string(s.in_cover) +
              " in target cover, " + std::to_string(s.undetermined) + " undetermined, " + std::to_string(s.violations) +
              " violations, " + std::to_string(s.repeated_erasures) + " repeated erasures"};
}

Result c10_combinators() {
  // tau(M_{1/25}) = 12, beta = 1/4, so tau beta = 3 and c = 1 - 1/log 3.
  const auto d = SetDescriptor::middle_epsilon(make_rational(1, 25));
  // Stop radius 1e-4: at 1e-6 the gap table of M_{1/25} has 2^21 entries.
  const Rational beta(1, 4), stop(1, 10000);
  const GameParams base = cantor_params(d, beta);
  const Real c = Real::computed(
      [](mpfr_prec_t prec) {
        const Enclosure one(Rational(1), prec);
        return one - one / log(Enclosure(Rational(3), prec));
      },
      "1 - 1/log 3");
  const AliceStrategy alice = alice_cantor_strategy(d, base, stop);
  std::vector<AliceStrategy> parts;
  for (int j = 0; j < 5; ++j)
    parts.push_back(widen_params(transport_similarity(alice, Rational(1), make_rational(j, 5)),
                                 GameParams{base.alpha, beta, c, base.rho}));
  const AliceStrategy comb = combine_intersection(parts);
  int illegal = 0, tight = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto tr =
        play(bob_uniform_random(seed, comb.params, Rational(0), make_rational(9, 5)), comb, stop, std::nullopt);
    if (!tr.violation.empty()) ++illegal;
    for (const auto& t : tr.turns)
      if (t.alice_check.note == "tight") ++tight;
  }
  const TargetCover cover = target_cover(d, stop, beta);
  int mismatches = 0, compared = 0;
  for (auto [lam, t] : {std::pair{Rational(3), Rational(-2)}, std::pair{make_rational(-1, 7), make_rational(5, 3)}}) {
    const AliceStrategy moved_alice = transport_similarity(alice, lam, t);
    const TargetCover moved_cover = cover.affine(lam, t);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto tr = play(bob_uniform_random(seed, base, Rational(0), Rational(1)), alice, stop, cover);
      const auto moved = play(transport_bob(bob_uniform_random(seed, base, Rational(0), Rational(1)), lam, t),
                              moved_alice, abs(lam) * stop, moved_cover);
      if (!same_transcript(conjugate_transcript(tr, lam, t), moved)) ++mismatches;
      ++compared;
    }
  }
  return {illegal == 0 && mismatches == 0, "combined alpha = " + comb.params.alpha.str() + "; 100 plays, " +
                                               std::to_string(illegal) + " illegal, " + std::to_string(tight) +
                                               " tight; " + std::to_string(compared) + " conjugated plays, " +
                                               std::to_string(mismatches) + " mismatches"};
}

Result c11_appendix_lemmas() {
  long counterexamples = 0, children_short = 0, chain_fail = 0, chains = 0, nodes = 0;
  std::string shortfalls;
  for (const Rational beta : {make_rational(1, 4), make_rational(1, 5)}) {
    for (int N : {2, 3}) {
      const NestingSweep s = sweep_nesting_lemma(beta, N, 20);
      counterexamples += s.counterexamples + s.geometric_failures;
      ConstructionParams p;
      p.beta = beta;
      p.N = N;
      p.alpha = Real(make_rational(1, 10000000000000L));
      p.c = Real(make_rational(1, 2));
      const bool condition = p.constant_condition().value_or(false);
      const Rational a = p.alpha.exact();
      AliceOracle centered = [&p, a](const GridBall& g) -> std::vector<Ball> {
        return {Ball{g.center, a * p.rho_at(g.level)}};
      };
      std::vector<GridBall> enumerated;
      for (long z = -20; z <= 20; ++z) enumerated.push_back(grid_ball(0, Grid::D, z, p));
      for (const auto& k : children(grid_ball(0, Grid::D, 0, p), p)) enumerated.push_back(k);
      long worst = -1;
      CountingInstance sample;
      for (const auto& b : enumerated) {
        const CountingInstance ci = counting_chain(b, centered, p);
        ++nodes;
        if (!ci.children_ok) {
          ++children_short;
          worst = ci.children;
          sample = ci;
        }
        if (condition) {
          ++chains;
          if (!ci.good_ok) ++chain_fail;
        }
      }
      if (worst >= 0)
        shortfalls += " beta=" + to_string(beta) + " N=" + std::to_string(N) + " has " + std::to_string(worst) +
                      " children < " + std::to_string(sample.obs_bound) + ";";
    }
  }
  std::string detail = std::to_string(counterexamples) + " nesting counterexamples; " + std::to_string(nodes) +
                       " nodes, " + std::to_string(children_short) + " below the children bound;" + shortfalls + " " +
                       std::to_string(chains) + " counting chains under the constant condition, " +
                       std::to_string(chain_fail) + " failures";
  return {counterexamples == 0 && children_short == 0 && chain_fail == 0 && chains > 0, detail};
}

Result c12_appendix_dimension() {
  ConstructionParams p;
  p.beta = make_rational(1, 4);
  p.N = 2;
  p.J = 5;
  const FractalTree t = build_fractal(p, no_erasure_oracle());
  const DimensionEstimate e = dimension_estimate(t);
  const double ref = std::log(3.0) / std::log(16.0);
  return {std::abs(e.box_slope - ref) <= 0.05,
          "box slope " + num(e.box_slope) + " vs log3/log16 = " + num(ref) + " (M = " + std::to_string(t.M) + ")"};
}

struct Criterion {
  int id;
  double limit_seconds;
  Check run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {{1, 1, c1_closed_form},
                                      {2, 30, c2_oracle_equivalence},
                                      {3, 1, c3_dimension_bound},
                                      {4, 5, c4_capacity},
                                      {5, 1, c5_certificates},
                                      {6, 300, c6_longest_ap},
                                      {7, 60, c7_gap_lemma},
                                      {8, 10, c8_sumset},
                                      {9, 120, c9_game},
                                      {10, 120, c10_combinators},
                                      {11, 120, c11_appendix_lemmas},
                                      {12, 30, c12_appendix_dimension}};
  bool ok = true;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Result o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << ": " << o.detail << " (" << num(secs, 3)
              << " s)" << std::endl;
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
