#include "thickpat/patterns.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "thickpat/enclosure.hpp"

namespace thickpat {

namespace {

std::string join(const std::vector<Rational>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + to_string(xs[i]);
  return s;
}

bool all_members(const SetDescriptor& d, const Rational& x, const std::vector<Rational>& shifts) {
  for (const auto& s : shifts)
    if (membership(d, x + s).status != MemberStatus::InSet) return false;
  return true;
}

// Scan covers over depths 0..depth; stop at the first empty intersection.
Certificate scan_shifts(const SetDescriptor& d, const std::vector<Rational>& shifts, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (shifts.empty()) throw std::invalid_argument("pattern needs at least one point");
  Certificate cert;
  for (int n = 0; n <= depth; ++n) {
    const IntervalUnion cover = refine(d, n);
    IntervalUnion acc = cover.translate(-shifts.front());
    for (std::size_t i = 1; i < shifts.size() && !acc.empty(); ++i) acc = acc.intersect(cover.translate(-shifts[i]));
    if (acc.empty()) {
      cert.verdict = Verdict::CertifiedAbsentAtDepth;
      cert.depth = n;
      cert.provenance.push_back("refine 0.." + std::to_string(n) + "; intersect translates");
      return cert;
    }
    if (n == depth) {
      cert.verdict = Verdict::PresentAtDepth;
      cert.depth = n;
      cert.witness = acc.leftmost();
      cert.in_set = all_members(d, *cert.witness, shifts);
      cert.witness_set = std::move(acc);
      cert.provenance.push_back("refine 0.." + std::to_string(n) + "; intersect translates; leftmost witness");
      if (cert.in_set) cert.provenance.push_back("membership of every pattern point in C");
    }
  }
  return cert;
}

Rational longest_part(const IntervalUnion& u) {
  Rational best = 0;
  for (const auto& p : u.parts())
    if (best < p.length()) best = p.length();
  return best;
}

// Longest run x, x+delta, ... inside cover, capped at m_max.
std::pair<int, Rational> run_length(const IntervalUnion& cover, const Rational& delta, int m_max) {
  IntervalUnion acc = cover;
  int m = 1;
  for (int k = 1; k < m_max; ++k) {
    IntervalUnion next = acc.intersect(cover.translate(Rational(-k * delta)));
    if (next.empty()) break;
    acc = std::move(next);
    m = k + 1;
  }
  return {m, acc.leftmost()};
}

struct ApCandidate {
  int m = 0;
  Rational delta, witness;
  bool better_than(const ApCandidate& o) const { return m != o.m ? m > o.m : delta < o.delta; }
};

LongestAp longest_ap_impl(const SetDescriptor& d, int depth, int m_max, std::size_t budget, bool parallel) {
  if (m_max < 2) throw std::invalid_argument("m_max must be >= 2");
  LongestAp out;
  const IntervalUnion cover = refine(d, depth);
  out.min_delta = longest_part(cover);
  std::vector<Rational> grid = endpoint_difference_grid(d, depth, m_max - 1, std::numeric_limits<std::size_t>::max());
  grid.erase(std::remove_if(grid.begin(), grid.end(), [&](const Rational& g) { return g < out.min_delta; }),
             grid.end());
  if (grid.size() > budget) {
    grid.resize(budget);
    out.exhausted = true;
  }
  out.candidates = grid.size();
  const long n = static_cast<long>(grid.size());
  ApCandidate best;
  if (parallel) {
#pragma omp parallel
    {
      ApCandidate local;
#pragma omp for schedule(dynamic, 16) nowait
      for (long i = 0; i < n; ++i) {
        auto [m, w] = run_length(cover, grid[i], m_max);
        ApCandidate c{m, grid[i], w};
        if (local.m == 0 || c.better_than(local)) local = c;
      }
#pragma omp critical(thickpat_longest_ap)
      if (local.m != 0 && (best.m == 0 || local.better_than(best))) best = local;
    }
  } else {
    for (long i = 0; i < n; ++i) {
      auto [m, w] = run_length(cover, grid[i], m_max);
      ApCandidate c{m, grid[i], w};
      if (best.m == 0 || c.better_than(best)) best = c;
    }
  }
  if (best.m > 0) {
    out.m = best.m;
    out.delta = best.delta;
    out.witness = best.witness;
  } else {
    out.m = cover.empty() ? 0 : 1;
  }
  out.verdict = out.exhausted ? Verdict::Inconclusive : Verdict::PresentAtDepth;
  return out;
}

HomothetyResult homothety_impl(const SetDescriptor& d, const std::vector<Rational>& points,
                               const std::vector<Rational>& lambdas, int depth, bool parallel) {
  if (lambdas.empty()) throw std::invalid_argument("empty lambda grid");
  for (const auto& l : lambdas)
    if (!(l > 0)) throw std::invalid_argument("lambda must be positive");
  HomothetyResult out;
  out.per_lambda.resize(lambdas.size());
  const long n = static_cast<long>(lambdas.size());
  auto cell = [&](long i) {
    std::vector<Rational> shifts;
    for (const auto& b : points) shifts.push_back(lambdas[i] * b);
    Certificate c = scan_shifts(d, shifts, depth);
    c.parameters["lambda"] = to_string(lambdas[i]);
    c.parameters["points"] = join(points);
    out.per_lambda[i] = std::move(c);
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) cell(i);
  } else {
    for (long i = 0; i < n; ++i) cell(i);
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    if (out.per_lambda[i].present() && (!out.smallest_present || lambdas[i] < *out.smallest_present))
      out.smallest_present = lambdas[i];
  return out;
}

}  // namespace

std::string verdict_label(Verdict v) {
  switch (v) {
    case Verdict::PresentAtDepth:
      return "present-at-depth";
    case Verdict::CertifiedAbsentAtDepth:
      return "certified-absent";
    case Verdict::PresentCandidate:
      return "present-candidate";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict parse_verdict(const std::string& s) {
  for (auto v : {Verdict::PresentAtDepth, Verdict::CertifiedAbsentAtDepth, Verdict::PresentCandidate,
                 Verdict::Inconclusive})
    if (verdict_label(v) == s) return v;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

Certificate shift_search(const SetDescriptor& d, const std::vector<Rational>& shifts, int depth) {
  Certificate c = scan_shifts(d, shifts, depth);
  c.parameters["shifts"] = join(shifts);
  return c;
}

Certificate ap_search(const SetDescriptor& d, int m, const Rational& delta, int depth) {
  if (m < 2) throw std::invalid_argument("progression length m must be >= 2");
  if (!(delta > 0)) throw std::invalid_argument("progression gap must be positive");
  std::vector<Rational> shifts;
  for (int k = 0; k < m; ++k) shifts.push_back(k * delta);
  Certificate c = scan_shifts(d, shifts, depth);
  c.parameters["m"] = std::to_string(m);
  c.parameters["delta"] = to_string(delta);
  return c;
}

std::vector<Certificate> ap_search_grid_serial(const SetDescriptor& d, int m, const std::vector<Rational>& deltas,
                                               int depth) {
  std::vector<Certificate> out;
  for (const auto& g : deltas) out.push_back(ap_search(d, m, g, depth));
  return out;
}

std::vector<Certificate> ap_search_grid(const SetDescriptor& d, int m, const std::vector<Rational>& deltas,
                                        int depth) {
  std::vector<Certificate> out(deltas.size());
  const long n = static_cast<long>(deltas.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) out[i] = ap_search(d, m, deltas[i], depth);
  return out;
}

Certificate translate_search(const SetDescriptor& d, const std::vector<Rational>& points, int depth) {
  Certificate c = scan_shifts(d, points, depth);
  c.parameters["points"] = join(points);
  return c;
}

HomothetyResult homothety_search(const SetDescriptor& d, const std::vector<Rational>& points,
                                 const std::vector<Rational>& lambdas, int depth) {
  return homothety_impl(d, points, lambdas, depth, true);
}

HomothetyResult homothety_search_serial(const SetDescriptor& d, const std::vector<Rational>& points,
                                        const std::vector<Rational>& lambdas, int depth) {
  return homothety_impl(d, points, lambdas, depth, false);
}

std::vector<Rational> endpoint_difference_grid(const SetDescriptor& d, int depth, int kmax, std::size_t budget,
                                               bool* truncated) {
  if (kmax < 1) throw std::invalid_argument("kmax must be >= 1");
  const auto pts = construction_endpoints(d, depth);
  std::set<Rational> diffs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Rational g = pts[j] - pts[i];
      for (int k = 1; k <= kmax; ++k) diffs.insert(g / k);
    }
  std::vector<Rational> out(diffs.begin(), diffs.end());
  if (truncated) *truncated = out.size() > budget;
  if (out.size() > budget) out.resize(budget);
  return out;
}

LongestAp longest_ap(const SetDescriptor& d, int depth, int m_max, std::size_t budget) {
  return longest_ap_impl(d, depth, m_max, budget, true);
}

LongestAp longest_ap_serial(const SetDescriptor& d, int depth, int m_max, std::size_t budget) {
  return longest_ap_impl(d, depth, m_max, budget, false);
}

bool hull_in_gap(const Interval& a, const SetDescriptor& b) {
  if (a.length() == 0) {
    const auto m = membership(b, a.lo);
    return m.status == MemberStatus::NotInSet;
  }
  if (b.is_explicit()) {
    const auto* e = std::get_if<ExplicitGaps>(&b.shape());
    return refine(b, static_cast<int>(e->gaps.size())).intersect(a).empty();
  }
  const auto ifs = b.as_ifs();
  Interval cur = b.hull();
  // descend into the single construction interval that could contain a
  while (true) {
    if (a.hi < cur.lo || cur.hi < a.lo) return true;
    if (a.contains(cur.lo) || a.contains(cur.hi)) return false;
    const Rational len = cur.length();
    std::optional<Interval> inside;
    for (std::size_t i = 0; i < ifs.ratios.size(); ++i) {
      Interval child(cur.lo + len * ifs.offsets[i], cur.lo + len * (ifs.offsets[i] + ifs.ratios[i]));
      if (child.contains(a)) {
        inside = child;
        break;
      }
      if (child.intersects(a)) return false;
    }
    if (!inside) return true;
    cur = *inside;
  }
}

std::string gap_lemma_status_label(GapLemmaResult::Status s) {
  switch (s) {
    case GapLemmaResult::Status::HypothesesHold:
      return "hypotheses-hold";
    case GapLemmaResult::Status::HypothesesFail:
      return "hypotheses-fail";
    case GapLemmaResult::Status::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

GapLemmaResult gap_lemma_check(const SetDescriptor& d1, const SetDescriptor& d2, int depth) {
  if (d1.hull().length() == 0 || d2.hull().length() == 0) throw std::invalid_argument("degenerate set");
  GapLemmaResult out;
  const int tdepth = std::max(depth, 1);
  out.tau1 = thickness(d1, tdepth);
  out.tau2 = thickness(d2, tdepth);
  const auto& t1 = out.tau1.value;
  const auto& t2 = out.tau2.value;
  bool product_ok;
  if (t1 == ExtRational(Rational(0)) || t2 == ExtRational(Rational(0)))
    product_ok = false;
  else if (t1.is_infinite() || t2.is_infinite())
    product_ok = true;
  else
    product_ok = t1.value() * t2.value() > 1;
  if (!product_ok) {
    out.status = GapLemmaResult::Status::HypothesesFail;
    out.reason = "product not > 1";
    return out;
  }
  if (hull_in_gap(d2.hull(), d1) || hull_in_gap(d1.hull(), d2)) {
    out.status = GapLemmaResult::Status::HypothesesFail;
    out.reason = "lies in a gap";
    return out;
  }
  auto sound = [](ThicknessKind k) { return k == ThicknessKind::Exact || k == ThicknessKind::LowerBound; };
  const bool sound_kinds = sound(out.tau1.kind) && sound(out.tau2.kind);
  for (int n = 0; n <= depth; ++n) {
    IntervalUnion x = refine(d1, n).intersect(refine(d2, n));
    if (x.empty()) {
      if (sound_kinds) {
        out.status = GapLemmaResult::Status::HypothesesHold;
        out.alarm = true;
        out.reason = "internal-consistency alarm: covers disjoint at depth " + std::to_string(n);
      } else {
        out.status = GapLemmaResult::Status::Inconclusive;
        out.reason = "thickness checked on truncations; covers disjoint at depth " + std::to_string(n);
      }
      Certificate c;
      c.verdict = Verdict::CertifiedAbsentAtDepth;
      c.depth = n;
      out.witness = c;
      return out;
    }
    if (n == depth) {
      Certificate c;
      c.verdict = Verdict::PresentAtDepth;
      c.depth = n;
      c.witness = x.leftmost();
      c.in_set = membership(d1, *c.witness).status == MemberStatus::InSet &&
                 membership(d2, *c.witness).status == MemberStatus::InSet;
      c.witness_set = std::move(x);
      c.provenance.push_back("intersect refine(d1, n) and refine(d2, n) for n = 0.." + std::to_string(n));
      out.witness = std::move(c);
    }
  }
  out.status = sound_kinds ? GapLemmaResult::Status::HypothesesHold : GapLemmaResult::Status::Inconclusive;
  out.reason = sound_kinds ? "product > 1 and neither hull lies in a gap"
                           : "hypotheses hold for the depth truncations only";
  return out;
}

Certificate pattern_search_general(const SetDescriptor& d, const std::vector<MonotoneMap>& maps,
                                   const std::optional<Interval>& window, int depth) {
  if (maps.empty()) throw std::invalid_argument("pattern needs at least one map");
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  const bool affine_only = std::all_of(maps.begin(), maps.end(), [](const MonotoneMap& f) { return f.is_affine(); });
  Certificate cert;
  cert.parameters["maps"] = std::to_string(maps.size());
  IntervalUnion base;
  if (window) {
    if (!(window->lo < window->hi)) throw std::invalid_argument("window must have positive length");
    for (const auto& f : maps) {
      if (!f.is_affine()) {
        const auto& dom = f.as_smooth().domain;
        if (!dom.contains(*window)) throw std::invalid_argument("hypothesis violated: window leaves a map's domain");
      }
      if (!d.hull().contains(f.image(*window)))
        throw std::invalid_argument("hypothesis violated: f(I) not inside the hull for f = " + f.str());
    }
    base = IntervalUnion(*window);
    cert.parameters["window"] = window->str();
  } else {
    base = IntervalUnion(d.hull());
    bool first = true;
    for (const auto& f : maps) {
      IntervalUnion pre = f.preimage(IntervalUnion(d.hull()));
      base = first ? pre : base.intersect(pre);
      first = false;
    }
  }
  for (int n = 0; n <= depth; ++n) {
    const IntervalUnion cover = refine(d, n);
    IntervalUnion acc = base;
    for (std::size_t i = 0; i < maps.size() && !acc.empty(); ++i) acc = acc.intersect(maps[i].preimage(cover));
    if (acc.empty()) {
      cert.verdict = Verdict::CertifiedAbsentAtDepth;
      cert.depth = n;
      cert.provenance.push_back(std::string(affine_only ? "exact" : "outward-rounded") + " preimages at depth " +
                                std::to_string(n));
      return cert;
    }
    if (n == depth) {
      cert.verdict = affine_only ? Verdict::PresentAtDepth : Verdict::PresentCandidate;
      cert.depth = n;
      cert.witness = acc.leftmost();
      if (affine_only) {
        cert.in_set = true;
        for (const auto& f : maps)
          if (membership(d, f.image_point(*cert.witness).lo).status != MemberStatus::InSet) cert.in_set = false;
      }
      cert.witness_set = std::move(acc);
      cert.provenance.push_back(std::string(affine_only ? "exact" : "outward-rounded") +
                                " preimages of refine(d, n), n = 0.." + std::to_string(n));
    }
  }
  return cert;
}

QuadraticSetup quadratic_pattern_setup(const std::vector<Rational>& xs, const std::vector<Rational>& ys,
                                       const Rational& b) {
  QuadraticSetup out;
  if (xs.empty() || xs.size() != ys.size()) throw std::invalid_argument("need equally many x_i and y_i (>= 1)");
  for (const auto& y : ys)
    if (y < 0) {
      out.rejection = "precondition: y_i >= 0 fails for y_i = " + to_string(y);
      return out;
    }
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!(b > xs[i] && b > ys[i])) {
      out.rejection = "precondition: b > max{x_i, y_i} fails at i = " + std::to_string(i + 1);
      return out;
    }
  constexpr mpfr_prec_t p = 128;
  std::size_t arg_lo = 0, arg_hi = 0;
  Rational lo, hi;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Enclosure l = sqrt(Enclosure(Rational(b - ys[i]), p)) + Enclosure(xs[i], p);
    const Enclosure r = sqrt(Enclosure(Rational(b + 1 - ys[i]), p)) + Enclosure(xs[i], p);
    if (i == 0 || l.upper() > lo) lo = l.upper(), arg_lo = i;
    if (i == 0 || r.lower() < hi) hi = r.lower(), arg_hi = i;
  }
  if (!(lo < hi)) {
    out.rejection = "inequality fails: max_i sqrt(b - y_i) + x_i (attained at i = " + std::to_string(arg_lo + 1) +
                    ") is not below min_j sqrt(b + 1 - y_j) + x_j (attained at j = " + std::to_string(arg_hi + 1) + ")";
    return out;
  }
  out.window = Interval(lo, hi);
  const Rational ymax = *std::max_element(ys.begin(), ys.end());
  out.c1 = 2 * sqrt(Enclosure(Rational(b - ymax), p)).lower();
  out.c2 = 2 * sqrt(Enclosure(Rational(b + 1), p)).upper();
  for (std::size_t i = 0; i < xs.size(); ++i) out.maps.push_back(MonotoneMap::quadratic(xs[i], ys[i], out.window));
  out.accepted = true;
  return out;
}

IntervalUnion sumset_cover_serial(const std::vector<SetDescriptor>& ds, int depth) {
  if (ds.size() < 2) throw std::invalid_argument("sumset needs at least two sets");
  IntervalUnion acc = refine(ds.front(), depth);
  for (std::size_t i = 1; i < ds.size(); ++i) acc = minkowski_sum(acc, refine(ds[i], depth));
  return acc;
}

IntervalUnion sumset_cover(const std::vector<SetDescriptor>& ds, int depth) {
  if (ds.size() < 2) throw std::invalid_argument("sumset needs at least two sets");
  IntervalUnion acc = refine(ds.front(), depth);
  for (std::size_t i = 1; i < ds.size(); ++i) acc = minkowski_sum_parallel(acc, refine(ds[i], depth));
  return acc;
}

}  // namespace thickpat
