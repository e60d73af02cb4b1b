#include "thickpat/appendix.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace thickpat {

namespace {

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("lattice index out of range: " + z.get_str());
  return z.get_si();
}

std::string grid_name(Grid g) { return g == Grid::D ? "D" : "E"; }

std::string describe(const GridBall& b) {
  std::ostringstream os;
  os << grid_name(b.grid) << "_" << b.level << "[" << b.z << "] = B(" << to_string(b.center) << ", "
     << to_string(b.radius) << ")";
  return os.str();
}

bool inside(const Rational& c, const Rational& r, const Rational& C, const Rational& R) {
  return abs(Rational(c - C)) + r <= R;
}

/// lhs <= rhs, doubling precision; nullopt when still undecided at kMaxPrecision.
template <class F>
std::optional<bool> decide_leq(F f) {
  for (mpfr_prec_t prec = kDefaultPrecision; prec <= kMaxPrecision; prec *= 2) {
    auto [lhs, rhs] = f(prec);
    if (lhs.certainly_leq(rhs)) return true;
    if (rhs.certainly_less(lhs)) return false;
  }
  return std::nullopt;
}

std::optional<long> exact_integer(const Real& c) {
  if (!c.is_exact() || c.exact().get_den() != 1) return std::nullopt;
  const Integer& n = c.exact().get_num();
  if (n < 0 || !n.fits_slong_p()) return std::nullopt;
  return n.get_si();
}

/// r^c with 0^c = 0 for c > 0 and 0^0 = 1.
Enclosure power_c(const Rational& r, const Real& c, mpfr_prec_t prec) {
  if (auto k = exact_integer(c)) return Enclosure(pow(r, *k), prec);
  if (r == 0) return Enclosure(Rational(0), prec);
  return pow(Enclosure(r, prec), c.enclose(prec));
}

struct PhiTerms {
  std::vector<Rational> radii;
};

PhiTerms phi_terms(int j, const GridBall& b, const AliceOracle& oracle, const ConstructionParams& p) {
  PhiTerms t;
  if (j > b.level) throw std::invalid_argument("potential level exceeds the ball level");
  const Interval iv = b.interval();
  GridBall anc = b;
  // Walk down from level j-1 to 0; pi_n for n >= b.level is never needed.
  std::vector<GridBall> chain;
  for (int n = b.level - 1; n >= 0; --n) {
    anc = project(anc, p);
    if (n < j) chain.push_back(anc);
  }
  for (const auto& a : chain) {
    for (const auto& e : oracle(a)) {
      if (e.interval().intersects(iv)) t.radii.push_back(e.radius);
    }
  }
  return t;
}

PhiValue evaluate_phi(const PhiTerms& t, const Real& c, mpfr_prec_t prec) {
  PhiValue v;
  v.contributions = static_cast<int>(t.radii.size());
  if (auto k = exact_integer(c)) {
    Rational s = 0;
    for (const auto& r : t.radii) s += pow(r, *k);
    v.exact = s;
    v.value = Enclosure(s, prec);
    return v;
  }
  Enclosure s(Rational(0), prec);
  bool all_zero = true;
  for (const auto& r : t.radii) {
    if (r != 0) all_zero = false;
    s = s + power_c(r, c, prec);
  }
  if (all_zero) v.exact = Rational(0);
  v.value = s;
  return v;
}

bool is_good(const GridBall& kid, const AliceOracle& oracle, const ConstructionParams& p, double* phi_mid) {
  const PhiTerms t = phi_terms(kid.level, kid, oracle, p);
  const Rational thr_base = p.gamma * p.rho_at(kid.level);
  if (auto k = exact_integer(p.c)) {
    const PhiValue v = evaluate_phi(t, p.c, kDefaultPrecision);
    if (phi_mid) *phi_mid = to_double(*v.exact);
    return *v.exact <= pow(thr_base, *k);
  }
  const PhiValue v0 = evaluate_phi(t, p.c, kDefaultPrecision);
  if (phi_mid) *phi_mid = v0.value.mid();
  if (v0.exact && *v0.exact == 0) return true;
  auto r = decide_leq([&](mpfr_prec_t prec) {
    return std::pair{evaluate_phi(t, p.c, prec).value, power_c(thr_base, p.c, prec)};
  });
  // An undecided comparison is an exact tie, which the filter admits.
  return r.value_or(true);
}

std::vector<TreeNode> expand(const TreeNode& node, long index, const AliceOracle& oracle,
                             const ConstructionParams& p, long M, std::string* error, long* total,
                             long* good_out) {
  const auto kids = children(node.ball, p);
  *total = static_cast<long>(kids.size());
  std::vector<TreeNode> out;
  long good = 0;
  std::vector<std::pair<GridBall, double>> accepted;
  for (const auto& k : kids) {
    double phi = 0;
    if (is_good(k, oracle, p, &phi)) {
      ++good;
      accepted.emplace_back(k, phi);
    }
  }
  *good_out = good;
  if (good < M) {
    std::ostringstream os;
    os << "good-children shortfall at " << describe(node.ball) << ": " << good << " good of " << kids.size()
       << ", need " << M;
    *error = os.str();
    return out;
  }
  for (long i = 0; i < M; ++i) {
    TreeNode t;
    t.level = node.level + 1;
    t.parent = index;
    t.ball = accepted[static_cast<std::size_t>(i)].first;
    t.phi = accepted[static_cast<std::size_t>(i)].second;
    out.push_back(std::move(t));
  }
  return out;
}

TreeNode root_node(const ConstructionParams& p) {
  TreeNode r;
  r.level = 0;
  r.ball = grid_ball(0, Grid::D, 0, p);
  return r;
}

IntervalUnion cover_of(const std::vector<TreeNode>& level) {
  std::vector<Interval> ivs;
  ivs.reserve(level.size());
  for (const auto& n : level) ivs.push_back(n.ball.interval());
  return IntervalUnion::from_intervals(ivs);
}

FractalTree build_impl(const ConstructionParams& p, const AliceOracle& oracle, bool parallel) {
  p.validate();
  FractalTree tree;
  tree.params = p;
  tree.M = p.M();
  tree.levels.push_back({root_node(p)});
  tree.covers.push_back(cover_of(tree.levels[0]));
  for (int j = 0; j < p.J; ++j) {
    auto& cur = tree.levels.back();
    const long n = static_cast<long>(cur.size());
    std::vector<std::vector<TreeNode>> parts(cur.size());
    std::vector<std::string> errors(cur.size());
    std::vector<long> totals(cur.size()), goods(cur.size());
    auto work = [&](long i) {
      try {
        parts[i] = expand(cur[i], i, oracle, p, tree.M, &errors[i], &totals[i], &goods[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long i = 0; i < n; ++i) work(i);
    } else {
      for (long i = 0; i < n; ++i) work(i);
    }
    for (long i = 0; i < n; ++i) {
      if (!errors[i].empty()) throw std::runtime_error(errors[i]);
    }
    std::vector<TreeNode> next;
    for (long i = 0; i < n; ++i) {
      cur[i].children_total = totals[i];
      cur[i].children_good = goods[i];
      for (auto& t : parts[i]) next.push_back(std::move(t));
    }
    tree.covers.push_back(cover_of(next));
    tree.levels.push_back(std::move(next));
  }
  return tree;
}

double slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double den = n * sxx - sx * sx;
  return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

}  // namespace

void ConstructionParams::validate() const {
  if (!(beta > 0 && beta < 1)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (beta > Rational(3, 4)) throw std::invalid_argument("beta must be at most 3/4 for the E lattice");
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  if (J < 0) throw std::invalid_argument("J must be nonnegative");
  if (rho <= 0) throw std::invalid_argument("rho must be positive");
  if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
  if (compare(alpha, Real(Rational(0))) != Ordering3::Greater) throw std::invalid_argument("alpha must be positive");
  const auto oc = compare(c, Real(Rational(0)));
  if (oc == Ordering3::Less || oc == Ordering3::Undecided) throw std::invalid_argument("c must be nonnegative");
}

std::optional<Integer> ConstructionParams::canonical_N() const {
  if (alpha.is_exact()) return floor(Rational(1 / (720 * alpha.exact())));
  for (mpfr_prec_t prec = kDefaultPrecision; prec <= kMaxPrecision; prec *= 2) {
    const Enclosure v = Enclosure(Rational(1), prec) / (Enclosure(Rational(720), prec) * alpha.enclose(prec));
    if (auto f = v.determined_floor()) return f;
  }
  return std::nullopt;
}

long ConstructionParams::M() const { return to_long(ceil(Rational(pow(beta, -N) / 6))); }

std::optional<bool> ConstructionParams::constant_condition() const {
  return decide_leq([&](mpfr_prec_t prec) {
    const Enclosure one(Rational(1), prec);
    const Enclosure lhs = pow(alpha.enclose(prec), c.enclose(prec));
    const Enclosure rhs = (one - pow(Enclosure(beta, prec), one - c.enclose(prec))) /
                          Enclosure(Rational(720 * 720), prec);
    return std::pair{lhs, rhs};
  });
}

GridBall grid_ball(int level, Grid grid, long z, const ConstructionParams& p) {
  if (level < 0) throw std::invalid_argument("negative level");
  GridBall b;
  b.level = level;
  b.grid = grid;
  b.z = z;
  b.radius = p.rho_at(level);
  b.center = (grid == Grid::D ? Rational(3 * b.radius) : Rational(b.radius / 2)) * z + p.x0;
  return b;
}

GridBall project(const GridBall& b, const ConstructionParams& p) {
  const int n = b.level - 1;
  if (n < 0) throw std::invalid_argument("level-0 ball has no projection");
  const Rational rn = p.rho_at(n);
  const Rational off = b.center - p.x0;
  if (n % p.N == 0) {
    const Integer z0 = floor(Rational(off / (3 * rn) + Rational(1, 2)));
    for (long dz : {0L, -1L, 1L}) {
      const GridBall d = grid_ball(n, Grid::D, to_long(z0) + dz, p);
      if (inside(b.center, b.radius, d.center, d.radius)) return d;
    }
  }
  const Rational u = off / (rn / 2);
  const long lo = to_long(floor(u));
  const long hi = to_long(ceil(u));
  GridBall best = grid_ball(n, Grid::E, lo, p);
  if (hi != lo) {
    const GridBall alt = grid_ball(n, Grid::E, hi, p);
    if (abs(Rational(alt.center - b.center)) < abs(Rational(best.center - b.center))) best = alt;
  }
  if (!inside(b.center, b.radius, best.center, best.radius))
    throw std::logic_error("no containing E ball for " + describe(b));
  return best;
}

GridBall project_to(const GridBall& b, int m, const ConstructionParams& p) {
  if (m > b.level) throw std::invalid_argument("projection target above the ball level");
  GridBall cur = b;
  while (cur.level > m) cur = project(cur, p);
  return cur;
}

AliceOracle no_erasure_oracle() {
  return [](const GridBall&) { return std::vector<Ball>{}; };
}

AliceOracle strategy_oracle(const AliceStrategy& s) {
  return [s](const GridBall& b) {
    GameTranscript tr;
    tr.params = s.params;
    return s.respond(tr, b.ball()).erased;
  };
}

PhiValue potential_phi(int j, const GridBall& b, const AliceOracle& oracle, const ConstructionParams& p) {
  return evaluate_phi(phi_terms(j, b, oracle, p), p.c, kDefaultPrecision);
}

std::vector<GridBall> children(const GridBall& b, const ConstructionParams& p) {
  if (b.level % p.N != 0) throw std::invalid_argument("children are defined for balls at levels jN");
  const int L = b.level + p.N;
  const Rational r = p.rho_at(L);
  const Rational half = b.radius / 2;
  std::vector<GridBall> out;
  if (half < r) return out;
  const Rational slack = half - r;
  const long zlo = to_long(ceil(Rational((b.center - slack - p.x0) / (3 * r))));
  const long zhi = to_long(floor(Rational((b.center + slack - p.x0) / (3 * r))));
  for (long z = zlo; z <= zhi; ++z) out.push_back(grid_ball(L, Grid::D, z, p));
  return out;
}

std::vector<GridBall> filter_good(const std::vector<GridBall>& kids, const AliceOracle& oracle,
                                  const ConstructionParams& p) {
  std::vector<GridBall> out;
  for (const auto& k : kids) {
    if (is_good(k, oracle, p, nullptr)) out.push_back(k);
  }
  return out;
}

NestingResult verify_nesting_lemma(long z, long z2, int k, int N, const Rational& beta) {
  if (k < 1 || k >= N) throw std::invalid_argument("intermediate level must satisfy 1 <= k <= N-1");
  NestingResult res;
  const Rational bN = pow(beta, N);
  if (3 * abs(Rational(bN * z2 - z)) > Rational(1, 2) - bN) return res;
  const Rational bNk = pow(beta, N - k);
  const Rational bmk = pow(beta, -k);
  const Rational c1 = 6 * z2 * bNk;
  const Rational w1 = 1 - 2 * bNk;
  const Rational c2 = 6 * z * bmk;
  const Rational w2 = 2 * (bmk - 1);
  res.i1_lo = c1 - w1;
  res.i1_hi = c1 + w1;
  res.i2_lo = c2 - w2;
  res.i2_hi = c2 + w2;
  const Rational lo = max(res.i1_lo, res.i2_lo);
  const Rational hi = min(res.i1_hi, res.i2_hi);
  const Integer zc = ceil(lo);
  if (Rational(zc) > hi) {
    res.status = NestingResult::Status::Counterexample;
    return res;
  }
  res.status = NestingResult::Status::Witness;
  res.z_prime = to_long(zc);
  // Normalized lattice: rho = 1, x0 = 0, B at level 0.
  const Rational bk = pow(beta, k);
  const Rational cB = 3 * Rational(z);
  const Rational cP = bk / 2 * res.z_prime;
  const Rational cC = 3 * bN * z2;
  res.geometric_ok = inside(cP, bk, cB, 1) && inside(cC, bN, cP, bk / 2);
  return res;
}

NestingSweep sweep_nesting_lemma(const Rational& beta, int N, long zmax) {
  NestingSweep s;
  const Rational bN = pow(beta, N);
  const Rational w = (Rational(1, 2) - bN) / 3;
  bool first = true;
  for (long z = -zmax; z <= zmax; ++z) {
    const long lo = to_long(ceil(Rational((z - w) / bN)));
    const long hi = to_long(floor(Rational((z + w) / bN)));
    for (long z2 = lo; z2 <= hi; ++z2) {
      for (int k = 1; k < N; ++k) {
        const auto r = verify_nesting_lemma(z, z2, k, N, beta);
        if (r.status == NestingResult::Status::Inadmissible) continue;
        ++s.checked;
        const Rational l1 = r.i1_hi - r.i1_lo;
        const Rational l2 = r.i2_hi - r.i2_lo;
        if (first || l1 < s.min_i1_length) s.min_i1_length = l1;
        if (first || l2 < s.min_i2_length) s.min_i2_length = l2;
        first = false;
        std::ostringstream os;
        os << "z=" << z << " z''=" << z2 << " k=" << k;
        if (r.status == NestingResult::Status::Counterexample) {
          ++s.counterexamples;
          s.reports.push_back("counterexample " + os.str());
        } else if (!r.geometric_ok) {
          ++s.geometric_failures;
          s.reports.push_back("geometry " + os.str());
        }
      }
    }
  }
  return s;
}

ProjectionSweep sweep_projection(const ConstructionParams& p, long zmax) {
  p.validate();
  ProjectionSweep s;
  for (int j = 0; j <= 1; ++j) {
    const int L = j * p.N;
    for (long zb = -zmax; zb <= zmax; ++zb) {
      const GridBall B = grid_ball(L, Grid::D, zb, p);
      const Rational half = B.radius / 2;
      for (int n = L + 1; n <= L + p.N; ++n) {
        const Rational rn = p.rho_at(n);
        if (half < rn) continue;
        const Rational step = rn / 2;
        const long lo = to_long(ceil(Rational((B.center - (half - rn) - p.x0) / step)));
        const long hi = to_long(floor(Rational((B.center + (half - rn) - p.x0) / step)));
        for (long z = lo; z <= hi; ++z) {
          ++s.checked;
          GridBall cur = grid_ball(n, Grid::E, z, p);
          const GridBall start = cur;
          bool contained = true;
          while (cur.level > L) {
            const GridBall up = project(cur, p);
            if (!inside(cur.center, cur.radius, up.center, up.radius)) contained = false;
            cur = up;
          }
          if (!contained) {
            ++s.containment_failures;
            s.reports.push_back("containment " + describe(start));
          }
          if (!(cur == B)) {
            ++s.failures;
            s.reports.push_back("projection of " + describe(start) + " is " + describe(cur) + ", expected " +
                                describe(B));
          }
        }
      }
    }
  }
  return s;
}

CountingInstance counting_chain(const GridBall& b, const AliceOracle& oracle, const ConstructionParams& p) {
  CountingInstance ci;
  const auto kids = children(b, p);
  const auto good = filter_good(kids, oracle, p);
  const Rational inv = pow(p.beta, -p.N);
  ci.children = static_cast<long>(kids.size());
  ci.good = static_cast<long>(good.size());
  ci.bad = ci.children - ci.good;
  ci.obs_bound = to_long(ceil(Rational(inv * Rational(7, 24))));
  ci.prop_bound = to_long(floor(Rational(inv / 12)));
  ci.lemma_bound = to_long(ceil(Rational(inv / 6)));
  ci.children_ok = ci.children >= ci.obs_bound;
  ci.bad_ok = ci.bad <= ci.prop_bound;
  ci.good_ok = ci.good >= ci.lemma_bound;
  return ci;
}

FractalTree build_fractal(const ConstructionParams& p, const AliceOracle& oracle) {
  return build_impl(p, oracle, true);
}

FractalTree build_fractal_serial(const ConstructionParams& p, const AliceOracle& oracle) {
  return build_impl(p, oracle, false);
}

DimensionEstimate dimension_estimate(const FractalTree& tree) {
  const auto& p = tree.params;
  DimensionEstimate d;
  const int J = static_cast<int>(tree.levels.size()) - 1;
  const double lb = -std::log(to_double(p.beta));
  d.theoretical = std::log(static_cast<double>(tree.M)) / (p.N * lb);
  if (J < 0) return d;
  const IntervalUnion& fine = tree.covers[static_cast<std::size_t>(J)];
  const Rational origin = p.x0 - p.rho;
  std::vector<std::pair<double, double>> box_pts, node_pts;
  for (int j = 0; j <= J; ++j) {
    const Rational s = 2 * p.rho_at(j * p.N);
    std::set<Integer> cells;
    for (const auto& iv : fine.parts()) {
      const Integer a = floor(Rational((iv.lo - origin) / s));
      const Integer b = floor(Rational((iv.hi - origin) / s));
      for (Integer k = a; k <= b; ++k) cells.insert(k);
    }
    d.box_counts.emplace_back(s, static_cast<long>(cells.size()));
    const double x = -std::log(to_double(s));
    if (j >= 1) box_pts.emplace_back(x, std::log(static_cast<double>(cells.size())));
    node_pts.emplace_back(x, std::log(static_cast<double>(tree.levels[static_cast<std::size_t>(j)].size())));
  }
  d.box_slope = slope(box_pts);
  d.node_slope = slope(node_pts);
  if (p.constant_condition().value_or(false))
    d.dim_bound = 1 - 1440 * p.alpha.approx() * std::log(6.0) / lb;
  return d;
}

ConstantsCheck check_constants(const Real& alpha, const Rational& beta, const Real& c) {
  ConstantsCheck r;
  ConstructionParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.c = c;
  r.N = p.canonical_N();
  if (!r.N) return r;
  const Rational Nq(*r.N);
  const Rational gamma(1, 72);
  r.item1 = decide_leq([&](mpfr_prec_t prec) {
              return std::pair{Enclosure(Rational(5 * Nq), prec) * alpha.enclose(prec),
                               Enclosure(Rational(1, 144), prec)};
            }).value_or(false);
  r.item2 = decide_leq([&](mpfr_prec_t prec) {
              const Enclosure one(Rational(1), prec);
              const Enclosure ce = c.enclose(prec);
              const Enclosure geo = one / (one - pow(Enclosure(beta, prec), one - ce));
              const Enclosure lhs = Enclosure(Rational(5), prec) * pow(alpha.enclose(prec), ce) /
                                    pow(Enclosure(gamma, prec), ce) * geo;
              return std::pair{lhs, Enclosure(Rational(1, 144), prec)};
            }).value_or(false);
  r.item3 = decide_leq([&](mpfr_prec_t prec) {
              const Enclosure one(Rational(1), prec);
              const Enclosure e = Enclosure(Nq, prec) * (one - c.enclose(prec));
              return std::pair{pow(Enclosure(beta, prec), e), Enclosure(Rational(1, 72), prec)};
            }).value_or(false);
  const auto dim = decide_leq([&](mpfr_prec_t prec) {
    const Enclosure lb = -log(Enclosure(beta, prec));
    const Enclosure t = Enclosure(Rational(1440), prec) * alpha.enclose(prec) * log(Enclosure(Rational(6), prec)) / lb;
    return std::pair{t, Enclosure(Rational(1), prec)};
  });
  r.dim_positive = dim.value_or(false);
  return r;
}

bool check_potential_inequality(const Rational& x, const Rational& y, const Real& c, const Rational& gamma) {
  if (x <= 0 || y <= 0 || gamma <= 0) throw std::invalid_argument("x, y and gamma must be positive");
  if (c.is_exact() && (c.exact() == 0 || c.exact() == 1)) {
    if (c.exact() == 0) return x + 2 * y <= 3 * max(x, y);
    const Rational m = min(Rational(1), Rational(x / (gamma * y)));
    return m * (x + 2 * y) <= 3 * x * max(Rational(1), Rational(1 / gamma));
  }
  auto r = decide_leq([&](mpfr_prec_t prec) {
    const Enclosure one(Rational(1), prec);
    const Enclosure ce = c.enclose(prec);
    const Enclosure X(x, prec), Y(y, prec), G(gamma, prec);
    const Enclosure lhs = min(one, pow(X / (G * Y), ce)) * (X + Enclosure(Rational(2), prec) * Y);
    const Enclosure rhs = Enclosure(Rational(3), prec) * pow(X, ce) * max(pow(X, one - ce), pow(Y, one - ce) / pow(G, ce));
    return std::pair{lhs, rhs};
  });
  // Undecided only at an exact tie, where the inequality holds.
  return r.value_or(true);
}

}  // namespace thickpat
