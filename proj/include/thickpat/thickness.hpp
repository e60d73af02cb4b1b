#pragma once

#include <string>
#include <vector>

#include "thickpat/set_descriptor.hpp"

namespace thickpat {

enum class ThicknessKind { Exact, LowerBound, DepthTruncation };

std::string kind_label(ThicknessKind k);

struct ThicknessValue {
  ExtRational value;
  ThicknessKind kind = ThicknessKind::Exact;
  int depth = -1;    ///< depth of the cover used, -1 when none
  std::string note;  ///< e.g. "self-similar" when a truncation value is exact by self-similarity

  /// "1 (exact, self-similar)" style rendering.
  std::string str() const;
};

/// inf over records of min(|L|, |R|) / |G|; +inf for no records. Throws "not a gap" on |G| = 0.
ExtRational thickness_gap(const std::vector<GapRecord>& records);

/// Thickness of the descriptor through its gap records at the given depth, with
/// the kind label: explicit sets are exact; self-similar sets are exact when every
/// deeper gap repeats a depth-1 ratio, otherwise the depth-n truncation.
ThicknessValue thickness(const SetDescriptor& d, int depth);

/// Chunk definition by brute force over contiguous runs of parts of refine(d, depth).
/// Throws "set is connected at this depth" when the cover has a single part.
ThicknessValue thickness_chunk(const SetDescriptor& d, int depth);
ThicknessValue thickness_chunk_serial(const SetDescriptor& d, int depth);
/// Same brute force on an arbitrary cover.
ExtRational chunk_thickness_of(const IntervalUnion& cover);
ExtRational chunk_thickness_of_serial(const IntervalUnion& cover);

/// min over children of lambda_i / (smallest adjacent relative gap); lower bound.
ThicknessValue thickness_ifs_lower(const SelfSimilarIFS& ifs);

/// Thickness of a finite cover restricted to a window (0 if the window cuts out a
/// single point, +inf if it leaves one interval).
ExtRational window_thickness(const IntervalUnion& cover, const Interval& window);

/// max over centers and radii of the thickness of C_depth ∩ [x - r, x + r];
/// empty windows are skipped, and all-empty gives 0.
ThicknessValue local_thickness(const SetDescriptor& d, const std::vector<Rational>& centers,
                               const std::vector<Rational>& radii, int depth);

/// Max thickness over user-supplied compact windows of C_depth.
ThicknessValue tilde_thickness(const SetDescriptor& d, const std::vector<Interval>& windows, int depth);

}  // namespace thickpat
