#include "thickpat/set_descriptor.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace thickpat {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw std::invalid_argument("invalid descriptor: " + what); }

bool gap_order(const OpenInterval& a, const OpenInterval& b) {
  const Rational la = a.length(), lb = b.length();
  if (la != lb) return la > lb;
  return a.lo < b.lo;
}

void scaled_children_step(const std::vector<Interval>& level, const SelfSimilarIFS& ifs, std::vector<Interval>& out) {
  out.clear();
  out.reserve(level.size() * ifs.ratios.size());
  for (const auto& iv : level) {
    const Rational len = iv.length();
    for (std::size_t i = 0; i < ifs.ratios.size(); ++i) {
      Rational lo = iv.lo + len * ifs.offsets[i];
      Rational hi = lo + len * ifs.ratios[i];
      out.emplace_back(std::move(lo), std::move(hi));
    }
  }
}

}  // namespace

AffineMap AffineMap::inverse() const {
  if (scale == 0) throw std::domain_error("affine map is not invertible");
  return AffineMap{Rational(1 / scale), Rational(-shift / scale)};
}

SetDescriptor SetDescriptor::explicit_gaps(Interval hull, std::vector<OpenInterval> gaps) {
  std::vector<OpenInterval> by_position = gaps;
  std::sort(by_position.begin(), by_position.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < by_position.size(); ++i) {
    const auto& g = by_position[i];
    if (!(g.lo < g.hi)) invalid("gap (" + to_string(g.lo) + ", " + to_string(g.hi) + ") is empty");
    if (g.lo < hull.lo || hull.hi < g.hi)
      invalid("gap (" + to_string(g.lo) + ", " + to_string(g.hi) + ") leaves the hull " + hull.str());
    if (i > 0 && g.lo < by_position[i - 1].hi) invalid("gaps overlap");
  }
  std::sort(gaps.begin(), gaps.end(), gap_order);
  return SetDescriptor(std::move(hull), ExplicitGaps{std::move(gaps)});
}

SetDescriptor SetDescriptor::ifs(Interval hull, std::vector<Rational> ratios, std::vector<Rational> offsets) {
  if (ratios.size() != offsets.size()) invalid("ratios and offsets differ in length");
  if (ratios.size() < 2) invalid("an IFS needs at least two maps");
  for (const auto& r : ratios)
    if (!(r > 0 && r < 1)) invalid("contraction ratio " + to_string(r) + " not in (0,1)");
  if (offsets.front() != 0) invalid("first child must start at the hull's left end");
  if (offsets.back() + ratios.back() != 1) invalid("last child must end at the hull's right end");
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (!(offsets[i - 1] + ratios[i - 1] < offsets[i])) invalid("children overlap or are out of order");
  if (!(hull.lo < hull.hi)) invalid("self-similar set needs a nondegenerate hull");
  return SetDescriptor(std::move(hull), SelfSimilarIFS{std::move(ratios), std::move(offsets)});
}

SetDescriptor SetDescriptor::middle_epsilon(Rational epsilon, Interval hull) {
  if (!(epsilon > 0 && epsilon < 1)) invalid("epsilon " + to_string(epsilon) + " not in (0,1)");
  if (!(hull.lo < hull.hi)) invalid("middle-epsilon set needs a nondegenerate hull");
  return SetDescriptor(std::move(hull), MiddleEpsilon{std::move(epsilon)});
}

std::string SetDescriptor::kind_name() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExplicitGaps>) return "gaps";
        else if constexpr (std::is_same_v<T, SelfSimilarIFS>) return "ifs";
        else return "middle";
      },
      shape_);
}

SelfSimilarIFS SetDescriptor::as_ifs() const {
  if (const auto* s = std::get_if<SelfSimilarIFS>(&shape_)) return *s;
  if (const auto* m = std::get_if<MiddleEpsilon>(&shape_)) {
    Rational lambda = (1 - m->epsilon) / 2;
    return SelfSimilarIFS{{lambda, lambda}, {Rational(0), Rational(1 - lambda)}};
  }
  throw std::logic_error("explicit-gap descriptor has no IFS form");
}

Rational SetDescriptor::max_ratio() const {
  auto ifs = as_ifs();
  return *std::max_element(ifs.ratios.begin(), ifs.ratios.end());
}

std::vector<Rational> SetDescriptor::child_gaps() const {
  auto ifs = as_ifs();
  std::vector<Rational> h;
  for (std::size_t i = 1; i < ifs.ratios.size(); ++i) h.push_back(ifs.offsets[i] - ifs.offsets[i - 1] - ifs.ratios[i - 1]);
  return h;
}

bool SetDescriptor::depth_one_ratios_scale_invariant() const {
  if (is_explicit()) return false;
  auto h = child_gaps();
  auto [lo, hi] = std::minmax_element(h.begin(), h.end());
  return *lo >= max_ratio() * *hi;
}

bool operator==(const ExplicitGaps& a, const ExplicitGaps& b) { return a.gaps == b.gaps; }
bool operator==(const SelfSimilarIFS& a, const SelfSimilarIFS& b) {
  return a.ratios == b.ratios && a.offsets == b.offsets;
}
bool operator==(const MiddleEpsilon& a, const MiddleEpsilon& b) { return a.epsilon == b.epsilon; }
bool operator==(const SetDescriptor& a, const SetDescriptor& b) { return a.hull_ == b.hull_ && a.shape_ == b.shape_; }

NormalizedSet normalize(const SetDescriptor& d) {
  const Rational len = d.hull().length();
  if (len == 0) throw std::invalid_argument("degenerate set");
  AffineMap to_unit{Rational(1 / len), Rational(-d.hull().lo / len)};
  return {transform(d, to_unit), to_unit};
}

SetDescriptor transform(const SetDescriptor& d, const AffineMap& map) {
  if (!(map.scale > 0)) throw std::invalid_argument("descriptor transforms need a positive scale");
  Interval hull(map(d.hull().lo), map(d.hull().hi));
  return std::visit(
      [&](const auto& s) -> SetDescriptor {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExplicitGaps>) {
          std::vector<OpenInterval> moved;
          for (const auto& g : s.gaps) moved.push_back({map(g.lo), map(g.hi)});
          return SetDescriptor::explicit_gaps(hull, std::move(moved));
        } else if constexpr (std::is_same_v<T, SelfSimilarIFS>) {
          return SetDescriptor::ifs(hull, s.ratios, s.offsets);
        } else {
          return SetDescriptor::middle_epsilon(s.epsilon, hull);
        }
      },
      d.shape());
}

SetDescriptor translate(const SetDescriptor& d, const Rational& shift) { return transform(d, AffineMap{Rational(1), shift}); }

IntervalUnion refine(const SetDescriptor& d, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (const auto* e = std::get_if<ExplicitGaps>(&d.shape())) {
    // gaps are stored in removal order
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(depth), e->gaps.size());
    std::vector<OpenInterval> removed(e->gaps.begin(), e->gaps.begin() + static_cast<long>(take));
    std::sort(removed.begin(), removed.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    std::vector<Interval> parts;
    Rational cursor = d.hull().lo;
    for (const auto& g : removed) {
      parts.emplace_back(cursor, g.lo);
      cursor = g.hi;
    }
    parts.emplace_back(cursor, d.hull().hi);
    return IntervalUnion::from_canonical(std::move(parts));
  }
  const auto ifs = d.as_ifs();
  std::vector<Interval> level{d.hull()}, next;
  for (int n = 0; n < depth; ++n) {
    scaled_children_step(level, ifs, next);
    level.swap(next);
  }
  return IntervalUnion::from_canonical(std::move(level));
}

std::vector<GapRecord> gap_records(const IntervalUnion& cover) {
  const auto parts = cover.parts();
  const auto open = cover.gaps();
  std::vector<std::size_t> order(open.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gap_order(open[a], open[b]); });

  // Gap k sits between parts k and k+1. The interval it is removed from runs from
  // the nearest already-removed gap on each side (or the hull ends).
  std::set<std::size_t> removed;
  std::vector<GapRecord> out;
  out.reserve(open.size());
  for (std::size_t k : order) {
    auto right_it = removed.upper_bound(k);
    const Rational& left_end = right_it == removed.begin() ? parts.front().lo : open[*std::prev(right_it)].hi;
    const Rational& right_end = right_it == removed.end() ? parts.back().hi : open[*right_it].lo;
    out.push_back(GapRecord{open[k], Interval(left_end, open[k].lo), Interval(open[k].hi, right_end)});
    removed.insert(k);
  }
  return out;
}

std::vector<GapRecord> gaps(const SetDescriptor& d, int depth) {
  if (const auto* e = std::get_if<ExplicitGaps>(&d.shape()))
    return gap_records(refine(d, static_cast<int>(e->gaps.size())));
  return gap_records(refine(d, depth));
}

std::vector<Rational> construction_endpoints(const SetDescriptor& d, int depth) {
  std::vector<Rational> pts;
  const IntervalUnion cover = refine(d, depth);
  for (const auto& iv : cover.parts()) {
    pts.push_back(iv.lo);
    if (iv.hi != iv.lo) pts.push_back(iv.hi);
  }
  return pts;  // parts are sorted and disjoint, so this is sorted and unique
}

Membership membership(const SetDescriptor& d, const Rational& x, int max_steps) {
  if (!d.hull().contains(x)) return {MemberStatus::NotInSet, "outside hull"};
  if (const auto* e = std::get_if<ExplicitGaps>(&d.shape())) {
    for (const auto& g : e->gaps)
      if (g.lo < x && x < g.hi) return {MemberStatus::NotInSet, "gap"};
    return {MemberStatus::InSet, "explicit"};
  }
  const auto ifs = d.as_ifs();
  Rational y = (x - d.hull().lo) / d.hull().length();
  std::set<Rational> seen;
  for (int step = 0; step < max_steps; ++step) {
    if (y == 0 || y == 1) return {MemberStatus::InSet, "endpoint"};
    if (!seen.insert(y).second) return {MemberStatus::InSet, "periodic"};
    std::size_t child = ifs.ratios.size();
    for (std::size_t i = 0; i < ifs.ratios.size(); ++i)
      if (ifs.offsets[i] <= y && y <= ifs.offsets[i] + ifs.ratios[i]) {
        child = i;
        break;
      }
    if (child == ifs.ratios.size()) return {MemberStatus::NotInSet, "gap"};
    y = (y - ifs.offsets[child]) / ifs.ratios[child];
  }
  return {MemberStatus::Unknown, "budget"};
}

}  // namespace thickpat
