#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "thickpat/enclosure.hpp"
#include "thickpat/interval_union.hpp"

namespace thickpat {

/// x -> a x + b with a != 0.
struct AffineSpec {
  Rational a{1};
  Rational b{0};
};

/// Strictly monotone map known through rational enclosures. `forward(x)` and
/// `inverse(y)` return closed intervals guaranteed to contain the true value.
struct SmoothSpec {
  std::function<Interval(const Rational&)> forward;
  std::function<Interval(const Rational&)> inverse;
  Interval domain;
  Rational c1;  ///< lower bound on |f'| over the domain
  Rational c2;  ///< upper bound on |f'| over the domain
  bool increasing = true;
  std::string label;
};

class MonotoneMap {
 public:
  static MonotoneMap affine(Rational a, Rational b);
  /// Validates the spec: c1 > 0, c1 <= c2, nondegenerate domain, and
  /// inverse(forward(x)) consistent with x at `samples` evenly spaced points.
  static MonotoneMap smooth(SmoothSpec spec, int samples = 16);
  /// P(x) = (x - x0)^2 + y0 on a domain where x > x0 (increasing).
  static MonotoneMap quadratic(Rational x0, Rational y0, Interval domain);
  /// Increasing piecewise-linear map through the given knots (strictly increasing xs and ys).
  static MonotoneMap piecewise_linear(std::vector<Rational> xs, std::vector<Rational> ys);

  bool is_affine() const { return std::holds_alternative<AffineSpec>(spec_); }
  const AffineSpec& as_affine() const { return std::get<AffineSpec>(spec_); }
  const SmoothSpec& as_smooth() const { return std::get<SmoothSpec>(spec_); }
  bool increasing() const;
  /// Bi-Lipschitz constants (c1, c2); for affine maps both are |a|.
  Rational c1() const;
  Rational c2() const;
  std::string str() const;

  /// Enclosure of f(x); a point for affine maps.
  Interval image_point(const Rational& x) const;
  /// Enclosure of f(iv).
  Interval image(const Interval& iv) const;
  /// Enclosure of f^{-1}(y).
  Interval inverse_point(const Rational& y) const;
  /// Enclosure of f^{-1}(iv), clipped to the domain for smooth maps.
  std::optional<Interval> preimage(const Interval& iv) const;
  /// f^{-1}(U): exact for affine maps; outward-rounded superset for smooth maps.
  IntervalUnion preimage(const IntervalUnion& u) const;

 private:
  explicit MonotoneMap(std::variant<AffineSpec, SmoothSpec> s) : spec_(std::move(s)) {}
  std::variant<AffineSpec, SmoothSpec> spec_;
};

/// Rational enclosure [lo, hi] of sqrt(q) at the given precision.
Interval sqrt_enclosure(const Rational& q, mpfr_prec_t prec = 128);

}  // namespace thickpat
