#include "thickpat/monotone_map.hpp"

#include <stdexcept>

namespace thickpat {

Interval sqrt_enclosure(const Rational& q, mpfr_prec_t prec) {
  if (q < 0) throw std::domain_error("sqrt of a negative rational");
  const Enclosure s = sqrt(Enclosure(q, prec));
  return Interval(s.lower(), s.upper());
}

MonotoneMap MonotoneMap::affine(Rational a, Rational b) {
  if (a == 0) throw std::invalid_argument("affine map with zero slope is not monotone");
  return MonotoneMap(AffineSpec{std::move(a), std::move(b)});
}

MonotoneMap MonotoneMap::smooth(SmoothSpec spec, int samples) {
  if (!(spec.c1 > 0)) throw std::invalid_argument("monotone map needs c1 > 0");
  if (spec.c2 < spec.c1) throw std::invalid_argument("monotone map needs c1 <= c2");
  if (!(spec.domain.lo < spec.domain.hi)) throw std::invalid_argument("monotone map needs a nondegenerate domain");
  if (!spec.forward || !spec.inverse) throw std::invalid_argument("monotone map needs forward and inverse evaluators");
  for (int i = 0; i <= samples; ++i) {
    const Rational x = spec.domain.lo + spec.domain.length() * make_rational(i, samples);
    const Interval y = spec.forward(x);
    // inverse of an enclosure of f(x) must bracket x
    const Interval back_lo = spec.inverse(spec.increasing ? y.lo : y.hi);
    const Interval back_hi = spec.inverse(spec.increasing ? y.hi : y.lo);
    if (!(back_lo.lo <= x && x <= back_hi.hi))
      throw std::invalid_argument("inverse evaluator inconsistent with forward map at x = " + to_string(x));
  }
  const Interval a = spec.forward(spec.domain.lo), b = spec.forward(spec.domain.hi);
  if (spec.increasing ? !(a.hi < b.lo) : !(b.hi < a.lo))
    throw std::invalid_argument("map is not monotone in the declared direction");
  return MonotoneMap(std::move(spec));
}

MonotoneMap MonotoneMap::quadratic(Rational x0, Rational y0, Interval domain) {
  if (!(domain.lo > x0)) throw std::invalid_argument("quadratic map needs its domain right of the vertex");
  SmoothSpec s;
  s.forward = [x0, y0](const Rational& x) {
    const Rational v = (x - x0) * (x - x0) + y0;
    return Interval(v, v);
  };
  s.inverse = [x0, y0](const Rational& y) {
    if (y < y0) throw std::domain_error("value below the vertex of the quadratic");
    const Interval r = sqrt_enclosure(y - y0);
    return Interval(r.lo + x0, r.hi + x0);
  };
  s.c1 = 2 * (domain.lo - x0);
  s.c2 = 2 * (domain.hi - x0);
  s.domain = std::move(domain);
  s.increasing = true;
  s.label = "(x - " + to_string(x0) + ")^2 + " + to_string(y0);
  return smooth(std::move(s));
}

MonotoneMap MonotoneMap::piecewise_linear(std::vector<Rational> xs, std::vector<Rational> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("piecewise-linear map needs >= 2 knots");
  Rational lo_slope, hi_slope;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i - 1] < xs[i]) || !(ys[i - 1] < ys[i]))
      throw std::invalid_argument("piecewise-linear knots must be strictly increasing");
    const Rational s = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
    if (i == 1 || s < lo_slope) lo_slope = s;
    if (i == 1 || s > hi_slope) hi_slope = s;
  }
  auto eval = [](const std::vector<Rational>& from, const std::vector<Rational>& to, const Rational& x) {
    std::size_t i = 1;
    while (i + 1 < from.size() && from[i] < x) ++i;
    const Rational v = to[i - 1] + (to[i] - to[i - 1]) * (x - from[i - 1]) / (from[i] - from[i - 1]);
    return Interval(v, v);
  };
  SmoothSpec s;
  s.domain = Interval(xs.front(), xs.back());
  s.forward = [=](const Rational& x) { return eval(xs, ys, x); };
  s.inverse = [=](const Rational& y) { return eval(ys, xs, y); };
  s.c1 = lo_slope;
  s.c2 = hi_slope;
  s.label = "piecewise-linear";
  return smooth(std::move(s));
}

bool MonotoneMap::increasing() const { return is_affine() ? as_affine().a > 0 : as_smooth().increasing; }
Rational MonotoneMap::c1() const { return is_affine() ? abs(as_affine().a) : as_smooth().c1; }
Rational MonotoneMap::c2() const { return is_affine() ? abs(as_affine().a) : as_smooth().c2; }

std::string MonotoneMap::str() const {
  if (is_affine()) return to_string(as_affine().a) + " x + " + to_string(as_affine().b);
  return as_smooth().label;
}

Interval MonotoneMap::image_point(const Rational& x) const {
  if (is_affine()) {
    const Rational v = as_affine().a * x + as_affine().b;
    return Interval(v, v);
  }
  return as_smooth().forward(x);
}

Interval MonotoneMap::image(const Interval& iv) const {
  const Interval a = image_point(iv.lo), b = image_point(iv.hi);
  return increasing() ? Interval(a.lo, b.hi) : Interval(b.lo, a.hi);
}

Interval MonotoneMap::inverse_point(const Rational& y) const {
  if (is_affine()) {
    const Rational v = (y - as_affine().b) / as_affine().a;
    return Interval(v, v);
  }
  return as_smooth().inverse(y);
}

std::optional<Interval> MonotoneMap::preimage(const Interval& iv) const {
  if (is_affine()) {
    const Interval a = inverse_point(iv.lo), b = inverse_point(iv.hi);
    return increasing() ? Interval(a.lo, b.hi) : Interval(b.lo, a.hi);
  }
  const auto& s = as_smooth();
  const Interval f_lo = s.forward(s.domain.lo), f_hi = s.forward(s.domain.hi);
  // range of f over the domain, as an outer enclosure
  const Interval range = s.increasing ? Interval(f_lo.lo, f_hi.hi) : Interval(f_hi.lo, f_lo.hi);
  if (iv.hi < range.lo || range.hi < iv.lo) return std::nullopt;
  const Rational y_lo = max(iv.lo, range.lo), y_hi = min(iv.hi, range.hi);
  // inverse of a boundary inside the uncertain edge of the range can leave the domain; clip
  auto inv = [&](const Rational& y) {
    const Interval r = s.inverse(y);
    return Interval(max(s.domain.lo, min(r.lo, s.domain.hi)), max(s.domain.lo, min(r.hi, s.domain.hi)));
  };
  Rational lo, hi;
  if (s.increasing) {
    lo = y_lo <= f_lo.hi ? s.domain.lo : inv(y_lo).lo;
    hi = y_hi >= f_hi.lo ? s.domain.hi : inv(y_hi).hi;
  } else {
    lo = y_hi >= f_hi.lo ? s.domain.lo : inv(y_hi).lo;
    hi = y_lo <= f_lo.hi ? s.domain.hi : inv(y_lo).hi;
  }
  if (hi < lo) return std::nullopt;
  return Interval(lo, hi);
}

IntervalUnion MonotoneMap::preimage(const IntervalUnion& u) const {
  if (is_affine()) {
    const auto& a = as_affine();
    return u.affine(1 / Rational(a.a), Rational(-a.b / a.a));
  }
  std::vector<Interval> parts;
  for (const auto& iv : u.parts())
    if (auto p = preimage(iv)) parts.push_back(*p);
  return IntervalUnion::from_intervals(std::move(parts));
}

}  // namespace thickpat
