#include "thickpat/bounds.hpp"

#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace thickpat {

namespace {

const Rational k720sq(720 * 720);

CapacityResult floor_of(const std::function<Enclosure(mpfr_prec_t)>& expr, mpfr_prec_t start, std::string variant) {
  CapacityResult out;
  out.variant = std::move(variant);
  for (mpfr_prec_t p = start; p <= kMaxPrecision; p *= 2) {
    const Enclosure v = expr(p);
    out.pre_floor_lo = v.lower();
    out.pre_floor_hi = v.upper();
    out.precision = p;
    if (auto f = v.determined_floor()) {
      out.N = *f < 0 ? Integer(0) : *f;
      return out;
    }
  }
  return out;
}

Enclosure q(const Rational& r, mpfr_prec_t p) { return Enclosure(r, p); }

}  // namespace

std::string CapacityResult::str() const {
  std::string s = "N = " + (N ? N->get_str() : std::string("indeterminate"));
  s += " [" + variant + "; pre-floor in [" + std::to_string(to_double(pre_floor_lo)) + ", " +
       std::to_string(to_double(pre_floor_hi)) + "]]";
  return s;
}

CapacityResult ap_capacity(const Real& tau, mpfr_prec_t start) {
  if (compare(tau, Real(Rational(1))) != Ordering3::Greater) throw std::domain_error("formula domain: need tau > 1");
  auto r = floor_of(
      [&](mpfr_prec_t p) {
        const Enclosure t = tau.enclose(p);
        return log(q(4, p)) / (q(4, p) * Enclosure::e(p) * q(k720sq, p)) * t / log(t);
      },
      start, "ap-capacity");
  r.inputs["tau"] = tau.str();
  return r;
}

CapacityResult ap_capacity_proof(const Real& tau, mpfr_prec_t start) {
  if (compare(tau, Real(Rational(4))) != Ordering3::Greater) throw std::domain_error("formula domain: need tau > 4");
  auto r = floor_of(
      [&](mpfr_prec_t p) {
        const Enclosure t = tau.enclose(p);
        const Enclosure quarter = q(Rational(1, 4), p);
        return t / (q(k720sq, p) * q(4, p) * Enclosure::e(p)) *
               (q(1, p) - pow(quarter, q(1, p) / log(t / q(4, p))));
      },
      start, "ap-capacity-proof");
  r.inputs["tau"] = tau.str();
  return r;
}

BilipCapacity bilip_capacity(const Real& tau, const Rational& A, const Rational& D, const Rational& m,
                             mpfr_prec_t start) {
  if (A < 1) throw std::invalid_argument("bi-Lipschitz constant A must be >= 1");
  if (!(D > 0) || !(m > 0)) throw std::invalid_argument("D and m must be positive");
  BilipCapacity out;
  out.beta = min(Rational(m / D), Rational(1 / (4 * A)));
  out.beta_tilde = A * out.beta;
  const Rational beta = out.beta;
  const Real tau_beta = Real::computed([tau, beta](mpfr_prec_t p) { return tau.enclose(p) * Enclosure(beta, p); },
                                       "tau*beta");
  if (compare(tau_beta, Real::computed([](mpfr_prec_t p) { return Enclosure::e(p); }, "e")) != Ordering3::Greater)
    throw std::domain_error("capacity formula undefined: need tau*beta > e");
  auto formula = [&](const Rational& last) {
    return [&, last](mpfr_prec_t p) {
      const Enclosure tb = tau.enclose(p) * q(beta, p);
      const Enclosure inv_log = q(1, p) / log(tb);
      const Enclosure c = q(1, p) - inv_log;
      return tb / (q(k720sq, p) * Enclosure::e(p) * pow(q(A, p), c)) * (q(1, p) - pow(q(last, p), inv_log));
    };
  };
  out.proof = floor_of(formula(out.beta_tilde), start, "bilip-proof (beta~)");
  out.statement = floor_of(formula(out.beta), start, "bilip-statement (beta)");
  for (auto* r : {&out.proof, &out.statement}) {
    r->inputs = {{"tau", tau.str()}, {"A", to_string(A)}, {"D", to_string(D)}, {"m", to_string(m)},
                 {"beta", to_string(out.beta)}, {"beta_tilde", to_string(out.beta_tilde)}};
  }
  return out;
}

Enclosure hausdorff_lower(const Rational& tau, mpfr_prec_t prec) {
  if (!(tau > 0)) throw std::domain_error("tau must be positive");
  return log(q(2, prec)) / log(q(Rational(2 + 1 / tau), prec));
}

std::string AstelsResult::str() const {
  if (contains_interval) return "contains an interval (s = " + to_string(s) + ")";
  return "thickness >= " + bound->str() + " (s = " + to_string(s) + ")";
}

AstelsResult astels_sumset(const std::vector<ExtRational>& taus) {
  AstelsResult out;
  out.s = 0;
  for (const auto& t : taus) {
    if (t.is_infinite())
      out.s += 1;
    else {
      if (t.value() < 0) throw std::invalid_argument("thickness must be >= 0");
      out.s += t.value() / (t.value() + 1);
    }
  }
  out.contains_interval = out.s >= 1;
  if (!out.contains_interval) out.bound = ExtRational(Rational(out.s / (1 - out.s)));
  return out;
}

std::pair<Enclosure, Rational> bfs_ap_envelope(const Rational& eps, mpfr_prec_t prec) {
  if (!(eps > 0 && eps < 1)) throw std::domain_error("epsilon must lie in (0,1)");
  const Rational inv = 1 / eps;
  return {q(inv, prec) / log(q(inv, prec)), inv};
}

std::pair<Rational, Rational> capacity_threshold(long target, const Rational& tol) {
  auto reaches = [&](const Rational& t) {
    const auto r = ap_capacity(Real(t));
    if (!r.N) throw std::runtime_error("capacity floor undetermined during bisection");
    return *r.N >= target;
  };
  Rational lo = 2, hi = 4;
  while (!reaches(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    if (reaches(mid))
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

mpfr_prec_t precision_from_env() {
  if (const char* v = std::getenv("THICKPAT_PRECISION")) {
    const long p = std::strtol(v, nullptr, 10);
    if (p >= 53 && p <= kMaxPrecision) return static_cast<mpfr_prec_t>(p);
  }
  return kDefaultPrecision;
}

}  // namespace thickpat
