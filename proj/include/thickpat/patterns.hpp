#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thickpat/monotone_map.hpp"
#include "thickpat/set_descriptor.hpp"
#include "thickpat/thickness.hpp"

namespace thickpat {

enum class Verdict { PresentAtDepth, CertifiedAbsentAtDepth, PresentCandidate, Inconclusive };

std::string verdict_label(Verdict v);
Verdict parse_verdict(const std::string& s);

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  int depth = 0;                     ///< depth of the deciding cover (minimal depth for absence)
  std::optional<Rational> witness;   ///< leftmost point of the witness set
  IntervalUnion witness_set;         ///< parameter set at `depth` (empty for absence)
  bool in_set = false;               ///< every pattern point at the witness is proven to lie in C itself
  std::map<std::string, std::string> parameters;
  std::vector<std::string> provenance;

  bool present() const { return verdict == Verdict::PresentAtDepth || verdict == Verdict::PresentCandidate; }
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Points x with x + s in C_n for every shift s, scanned over depths 0..depth.
/// Absence is reported at the smallest depth where the intersection empties.
Certificate shift_search(const SetDescriptor& d, const std::vector<Rational>& shifts, int depth);

/// x, x + delta, ..., x + (m-1) delta. Errors when m < 2 or delta <= 0.
Certificate ap_search(const SetDescriptor& d, int m, const Rational& delta, int depth);
std::vector<Certificate> ap_search_grid(const SetDescriptor& d, int m, const std::vector<Rational>& deltas, int depth);
std::vector<Certificate> ap_search_grid_serial(const SetDescriptor& d, int m, const std::vector<Rational>& deltas,
                                               int depth);

/// x + x_i for all points x_i.
Certificate translate_search(const SetDescriptor& d, const std::vector<Rational>& points, int depth);

struct HomothetyResult {
  std::vector<Certificate> per_lambda;  ///< same order as the grid
  std::optional<Rational> smallest_present;
};
/// lambda A + x over the lambda grid. Errors on an empty grid or nonpositive lambda.
HomothetyResult homothety_search(const SetDescriptor& d, const std::vector<Rational>& points,
                                 const std::vector<Rational>& lambdas, int depth);
HomothetyResult homothety_search_serial(const SetDescriptor& d, const std::vector<Rational>& points,
                                        const std::vector<Rational>& lambdas, int depth);

/// Sorted distinct positive values (e - e') / k over construction endpoints of
/// depth <= depth and 1 <= k <= kmax, keeping at most `budget` (smallest first).
/// `truncated` reports whether the cap bit.
std::vector<Rational> endpoint_difference_grid(const SetDescriptor& d, int depth, int kmax, std::size_t budget,
                                               bool* truncated = nullptr);

struct LongestAp {
  int m = 0;                  ///< longest progression length with a presence certificate
  std::optional<Rational> delta;
  std::optional<Rational> witness;
  std::size_t candidates = 0; ///< number of gaps tried
  Rational min_delta;         ///< resolution floor applied to the candidate gaps
  bool exhausted = false;     ///< candidate set was truncated by the budget
  Verdict verdict = Verdict::PresentAtDepth;
};

/// Longest progression present in C_depth, over candidate gaps from the endpoint
/// difference grid that are at least the longest construction interval at that
/// depth (shorter gaps fit inside a single interval and say nothing about C).
LongestAp longest_ap(const SetDescriptor& d, int depth, int m_max, std::size_t budget);
LongestAp longest_ap_serial(const SetDescriptor& d, int depth, int m_max, std::size_t budget);

/// True when hull(a) contains no point of the set b (so it lies in one
/// complementary component of b).
bool hull_in_gap(const Interval& a, const SetDescriptor& b);

struct GapLemmaResult {
  enum class Status { HypothesesHold, HypothesesFail, Inconclusive } status = Status::Inconclusive;
  std::string reason;
  ThicknessValue tau1, tau2;
  std::optional<Certificate> witness;
  bool alarm = false;  ///< hypotheses hold with sound thickness kinds, yet the cover intersection is empty
};
std::string gap_lemma_status_label(GapLemmaResult::Status s);

GapLemmaResult gap_lemma_check(const SetDescriptor& d1, const SetDescriptor& d2, int depth);

/// t in I with f_i(t) in C for all i. When `window` is absent, I is the set of t
/// with every f_i(t) in the hull. Errors "hypothesis violated" when a supplied
/// window is not mapped into the hull by every f_i.
Certificate pattern_search_general(const SetDescriptor& d, const std::vector<MonotoneMap>& maps,
                                   const std::optional<Interval>& window, int depth);

struct QuadraticSetup {
  bool accepted = false;
  std::string rejection;
  Interval window;  ///< rounded inward
  Rational c1;      ///< rounded down
  Rational c2;      ///< rounded up
  std::vector<MonotoneMap> maps;
};
/// P_i(t) = (t - x_i)^2 + y_i mapped into [b, b+1].
QuadraticSetup quadratic_pattern_setup(const std::vector<Rational>& xs, const std::vector<Rational>& ys,
                                       const Rational& b);

/// Minkowski sum of the depth-n covers (>= 2 descriptors).
IntervalUnion sumset_cover(const std::vector<SetDescriptor>& ds, int depth);
IntervalUnion sumset_cover_serial(const std::vector<SetDescriptor>& ds, int depth);

}  // namespace thickpat
