#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thickpat/rational.hpp"

namespace thickpat {

/// Closed interval [lo, hi], lo <= hi. Points (lo == hi) are valid.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational a, Rational b);

  Rational length() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  /// Meets the open interval (a, b).
  bool meets_open(const Rational& a, const Rational& b) const { return lo < b && hi > a; }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
  std::string str() const;
};

/// Open interval (lo, hi) of the complement, lo < hi.
struct OpenInterval {
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
  friend bool operator==(const OpenInterval& a, const OpenInterval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// Finite union of disjoint closed intervals in canonical form: sorted, and
/// consecutive parts separated by a gap of positive length.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(Interval single);
  /// Accepts any list of intervals; overlapping or touching pieces are merged.
  static IntervalUnion from_intervals(std::vector<Interval> parts);
  /// Caller guarantees the parts are already canonical (checked in debug builds).
  static IntervalUnion from_canonical(std::vector<Interval> parts);

  std::span<const Interval> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  Interval hull() const;
  Rational measure() const;
  /// Leftmost point; requires !empty().
  const Rational& leftmost() const;

  bool contains(const Rational& x) const;
  bool contains(const Interval& iv) const;
  bool contains(const IntervalUnion& other) const;
  /// Index of the part containing x, if any.
  std::optional<std::size_t> locate(const Rational& x) const;

  /// Open complementary intervals between consecutive parts.
  std::vector<OpenInterval> gaps() const;

  IntervalUnion intersect(const IntervalUnion& other) const;
  IntervalUnion intersect(const Interval& window) const;
  IntervalUnion unite(const IntervalUnion& other) const;
  IntervalUnion translate(const Rational& shift) const;
  /// x -> factor * x; a negative factor reverses order.
  IntervalUnion scale(const Rational& factor) const;
  /// x -> factor * x + shift.
  IntervalUnion affine(const Rational& factor, const Rational& shift) const;

  friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) { return a.parts_ == b.parts_; }
  std::string str() const;

 private:
  std::vector<Interval> parts_;
};

/// {a + b : a in lhs, b in rhs}; exact union of all pairwise interval sums.
IntervalUnion minkowski_sum(const IntervalUnion& lhs, const IntervalUnion& rhs);
/// Same result; pair sums are produced in parallel chunks.
IntervalUnion minkowski_sum_parallel(const IntervalUnion& lhs, const IntervalUnion& rhs);

}  // namespace thickpat
