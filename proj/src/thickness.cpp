#include "thickpat/thickness.hpp"

#include <stdexcept>

#include <omp.h>

namespace thickpat {

namespace {

// Ratio of chunk parts[i..j] in a cover with k parts; nullopt for the whole cover.
std::optional<Rational> chunk_ratio(std::span<const Interval> parts, std::size_t i, std::size_t j) {
  const std::size_t k = parts.size();
  if (i == 0 && j + 1 == k) return std::nullopt;
  const Rational diam = parts[j].hi - parts[i].lo;
  Rational dist;
  if (i == 0)
    dist = parts[j + 1].lo - parts[j].hi;
  else if (j + 1 == k)
    dist = parts[i].lo - parts[i - 1].hi;
  else
    dist = min(parts[i].lo - parts[i - 1].hi, parts[j + 1].lo - parts[j].hi);
  return Rational(diam / dist);
}

void require_chunks(const IntervalUnion& cover) {
  if (cover.size() < 2) throw std::invalid_argument("set is connected at this depth");
}

}  // namespace

std::string kind_label(ThicknessKind k) {
  switch (k) {
    case ThicknessKind::Exact:
      return "exact";
    case ThicknessKind::LowerBound:
      return "lower-bound";
    case ThicknessKind::DepthTruncation:
      return "depth-n-truncation";
  }
  return "?";
}

std::string ThicknessValue::str() const {
  std::string s = value.str() + " (" + kind_label(kind);
  if (!note.empty()) s += ", " + note;
  if (kind == ThicknessKind::DepthTruncation) s += ", depth " + std::to_string(depth);
  return s + ")";
}

ExtRational thickness_gap(const std::vector<GapRecord>& records) {
  ExtRational best = ExtRational::infinity();
  for (const auto& r : records) {
    const Rational g = r.gap_length();
    if (g <= 0) throw std::invalid_argument("not a gap");
    const ExtRational ratio(Rational(r.min_flank() / g));
    if (ratio < best) best = ratio;
  }
  return best;
}

ThicknessValue thickness(const SetDescriptor& d, int depth) {
  ThicknessValue out;
  out.depth = depth;
  if (d.hull().length() == 0) {
    out.value = Rational(0);
    out.note = "singleton";
    return out;
  }
  if (d.is_explicit()) {
    out.value = thickness_gap(gaps(d, depth));
    out.kind = ThicknessKind::Exact;
    out.depth = -1;
    return out;
  }
  if (depth < 1) throw std::invalid_argument("self-similar thickness needs depth >= 1");
  out.value = thickness_gap(gaps(d, depth));
  if (d.depth_one_ratios_scale_invariant()) {
    out.kind = ThicknessKind::Exact;
    out.note = "self-similar";
  } else {
    out.kind = ThicknessKind::DepthTruncation;
  }
  return out;
}

ExtRational chunk_thickness_of_serial(const IntervalUnion& cover) {
  require_chunks(cover);
  const auto parts = cover.parts();
  ExtRational best = ExtRational::infinity();
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i; j < parts.size(); ++j)
      if (auto r = chunk_ratio(parts, i, j); r && ExtRational(*r) < best) best = *r;
  return best;
}

ExtRational chunk_thickness_of(const IntervalUnion& cover) {
  require_chunks(cover);
  const auto parts = cover.parts();
  const long k = static_cast<long>(parts.size());
  ExtRational best = ExtRational::infinity();
#pragma omp parallel
  {
    ExtRational local = ExtRational::infinity();
#pragma omp for schedule(dynamic, 8) nowait
    for (long i = 0; i < k; ++i)
      for (long j = i; j < k; ++j)
        if (auto r = chunk_ratio(parts, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            r && ExtRational(*r) < local)
          local = *r;
#pragma omp critical(thickpat_chunk_min)
    if (local < best) best = local;
  }
  return best;
}

namespace {

// Explicit sets use their full finite structure, as gaps() does.
IntervalUnion chunk_cover(const SetDescriptor& d, int depth) {
  if (const auto* e = std::get_if<ExplicitGaps>(&d.shape())) return refine(d, static_cast<int>(e->gaps.size()));
  return refine(d, depth);
}

}  // namespace

ThicknessValue thickness_chunk(const SetDescriptor& d, int depth) {
  ThicknessValue out{chunk_thickness_of(chunk_cover(d, depth)), ThicknessKind::DepthTruncation, depth, ""};
  if (d.is_explicit()) out.kind = ThicknessKind::Exact;
  return out;
}

ThicknessValue thickness_chunk_serial(const SetDescriptor& d, int depth) {
  ThicknessValue out{chunk_thickness_of_serial(chunk_cover(d, depth)), ThicknessKind::DepthTruncation, depth, ""};
  if (d.is_explicit()) out.kind = ThicknessKind::Exact;
  return out;
}

ThicknessValue thickness_ifs_lower(const SelfSimilarIFS& ifs) {
  // validation (disjoint, ordered children) is the descriptor factory's job
  SetDescriptor::ifs(Interval(Rational(0), Rational(1)), ifs.ratios, ifs.offsets);
  const std::size_t k = ifs.ratios.size();
  std::vector<Rational> h(k - 1);
  for (std::size_t i = 1; i < k; ++i) h[i - 1] = ifs.offsets[i] - ifs.offsets[i - 1] - ifs.ratios[i - 1];
  Rational best;
  for (std::size_t i = 0; i < k; ++i) {
    Rational nearest;
    if (i == 0)
      nearest = h.front();
    else if (i + 1 == k)
      nearest = h.back();
    else
      nearest = min(h[i - 1], h[i]);
    const Rational r = ifs.ratios[i] / nearest;
    if (i == 0 || r < best) best = r;
  }
  return ThicknessValue{best, ThicknessKind::LowerBound, -1, ""};
}

ExtRational window_thickness(const IntervalUnion& cover, const Interval& window) {
  const IntervalUnion piece = cover.intersect(window);
  if (piece.empty()) throw std::invalid_argument("empty window");
  if (piece.size() == 1 && piece.parts()[0].length() == 0) return Rational(0);
  return thickness_gap(gap_records(piece));
}

ThicknessValue local_thickness(const SetDescriptor& d, const std::vector<Rational>& centers,
                               const std::vector<Rational>& radii, int depth) {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw std::invalid_argument("radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw std::invalid_argument("radii must be strictly decreasing");
  }
  const IntervalUnion cover = refine(d, depth);
  ExtRational best(Rational(0));
  for (const auto& x : centers)
    for (const auto& r : radii) {
      const Interval window(x - r, x + r);
      if (cover.intersect(window).empty()) continue;
      const ExtRational t = window_thickness(cover, window);
      if (best < t) best = t;
    }
  return ThicknessValue{best, ThicknessKind::LowerBound, depth, "finite window scan"};
}

ThicknessValue tilde_thickness(const SetDescriptor& d, const std::vector<Interval>& windows, int depth) {
  const IntervalUnion cover = refine(d, depth);
  ExtRational best(Rational(0));
  for (const auto& w : windows) {
    if (cover.intersect(w).empty()) continue;
    const ExtRational t = window_thickness(cover, w);
    if (best < t) best = t;
  }
  return ThicknessValue{best, ThicknessKind::LowerBound, depth, "max over supplied windows"};
}

}  // namespace thickpat
