#pragma once

#include <string>
#include <variant>
#include <vector>

#include "thickpat/interval_union.hpp"
#include "thickpat/rational.hpp"

namespace thickpat {

/// Finite list of removed open gaps inside the hull.
struct ExplicitGaps {
  std::vector<OpenInterval> gaps;
};

/// Self-similar set; child i occupies [t + L*offset_i, t + L*(offset_i + ratio_i)]
/// of the hull [t, t+L]. Children are ordered, disjoint and span the hull.
struct SelfSimilarIFS {
  std::vector<Rational> ratios;
  std::vector<Rational> offsets;
};

/// Middle-epsilon Cantor set over the hull.
struct MiddleEpsilon {
  Rational epsilon;
};

using SetShape = std::variant<ExplicitGaps, SelfSimilarIFS, MiddleEpsilon>;

/// x -> scale * x + shift.
struct AffineMap {
  Rational scale{1};
  Rational shift{0};
  Rational operator()(const Rational& x) const { return scale * x + shift; }
  AffineMap inverse() const;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// Declarative description of a compact subset of the line. Immutable once
/// built; the factories validate every structural invariant.
class SetDescriptor {
 public:
  static SetDescriptor explicit_gaps(Interval hull, std::vector<OpenInterval> gaps);
  static SetDescriptor ifs(Interval hull, std::vector<Rational> ratios, std::vector<Rational> offsets);
  static SetDescriptor middle_epsilon(Rational epsilon, Interval hull = Interval(Rational(0), Rational(1)));

  const Interval& hull() const { return hull_; }
  const SetShape& shape() const { return shape_; }
  bool is_explicit() const { return std::holds_alternative<ExplicitGaps>(shape_); }
  bool is_self_similar() const { return !is_explicit(); }
  std::string kind_name() const;

  /// IFS form; middle-epsilon expands to {lambda x, lambda x + 1 - lambda}. Throws for ExplicitGaps.
  SelfSimilarIFS as_ifs() const;
  /// Largest child ratio (self-similar only).
  Rational max_ratio() const;
  /// Relative gaps h_{i,i+1} between consecutive children (self-similar only).
  std::vector<Rational> child_gaps() const;

  /// Every deeper gap repeats a depth-1 gap record up to scale: all first-level
  /// gaps are at least max_ratio times the largest one, so the removal order is
  /// level by level and each deeper record is a scaled copy.
  bool depth_one_ratios_scale_invariant() const;

  friend bool operator==(const SetDescriptor& a, const SetDescriptor& b);

 private:
  SetDescriptor(Interval hull, SetShape shape) : hull_(std::move(hull)), shape_(std::move(shape)) {}
  Interval hull_;
  SetShape shape_;
};

bool operator==(const ExplicitGaps& a, const ExplicitGaps& b);
bool operator==(const SelfSimilarIFS& a, const SelfSimilarIFS& b);
bool operator==(const MiddleEpsilon& a, const MiddleEpsilon& b);

struct NormalizedSet {
  SetDescriptor set;
  AffineMap to_unit;  ///< maps the original hull onto [0, 1]
};

/// Transports the descriptor onto hull [0,1]. Throws "degenerate set" for a point hull.
NormalizedSet normalize(const SetDescriptor& d);

/// Image of the set under x -> map.scale * x + map.shift (scale > 0).
SetDescriptor transform(const SetDescriptor& d, const AffineMap& map);
SetDescriptor translate(const SetDescriptor& d, const Rational& shift);

/// Depth-n construction cover C_n. For explicit gaps, C_n removes the first n gaps
/// in decreasing-length order (ties: ascending left endpoint).
IntervalUnion refine(const SetDescriptor& d, int depth);

/// Removed gap G with the closed flanks L, R left behind in the interval it was removed from.
struct GapRecord {
  OpenInterval gap;
  Interval left;
  Interval right;

  Rational gap_length() const { return gap.length(); }
  Rational min_flank() const { return min(left.length(), right.length()); }
};

/// Gap records of a finite interval union inside its hull, ordered by decreasing
/// length with ties broken by ascending left endpoint.
std::vector<GapRecord> gap_records(const IntervalUnion& cover);

/// Gap records of refine(d, depth). Explicit descriptors ignore depth and report
/// every gap of their finite structure.
std::vector<GapRecord> gaps(const SetDescriptor& d, int depth);

/// Left and right endpoints of every interval of refine(d, depth), sorted, unique.
std::vector<Rational> construction_endpoints(const SetDescriptor& d, int depth);

enum class MemberStatus { InSet, NotInSet, Unknown };

struct Membership {
  MemberStatus status = MemberStatus::Unknown;
  std::string reason;  ///< "endpoint", "periodic", "explicit", "gap", "outside hull", "budget"
};

/// Exact membership of a rational point in the compact set itself (not a cover).
/// Self-similar sets follow the point's inverse orbit: reaching a hull endpoint or
/// revisiting a point proves membership; landing in a gap disproves it.
Membership membership(const SetDescriptor& d, const Rational& x, int max_steps = 256);

}  // namespace thickpat
