#include "thickpat/interval_union.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include <omp.h>

namespace thickpat {

Interval::Interval(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {
  if (hi < lo) throw std::invalid_argument("interval with hi < lo: [" + to_string(lo) + ", " + to_string(hi) + "]");
}

std::string Interval::str() const { return "[" + to_string(lo) + ", " + to_string(hi) + "]"; }

IntervalUnion::IntervalUnion(Interval single) { parts_.push_back(std::move(single)); }

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  IntervalUnion out;
  for (auto& iv : parts) {
    if (!out.parts_.empty() && iv.lo <= out.parts_.back().hi) {
      if (out.parts_.back().hi < iv.hi) out.parts_.back().hi = std::move(iv.hi);
    } else {
      out.parts_.push_back(std::move(iv));
    }
  }
  return out;
}

IntervalUnion IntervalUnion::from_canonical(std::vector<Interval> parts) {
#ifndef NDEBUG
  for (std::size_t i = 1; i < parts.size(); ++i) assert(parts[i - 1].hi < parts[i].lo);
#endif
  IntervalUnion out;
  out.parts_ = std::move(parts);
  return out;
}

Interval IntervalUnion::hull() const {
  if (parts_.empty()) throw std::logic_error("hull of empty union");
  return Interval(parts_.front().lo, parts_.back().hi);
}

Rational IntervalUnion::measure() const {
  Rational total = 0;
  for (const auto& p : parts_) total += p.length();
  return total;
}

const Rational& IntervalUnion::leftmost() const {
  if (parts_.empty()) throw std::logic_error("leftmost point of empty union");
  return parts_.front().lo;
}

std::optional<std::size_t> IntervalUnion::locate(const Rational& x) const {
  // first part with hi >= x
  auto it = std::lower_bound(parts_.begin(), parts_.end(), x,
                             [](const Interval& iv, const Rational& v) { return iv.hi < v; });
  if (it == parts_.end() || x < it->lo) return std::nullopt;
  return static_cast<std::size_t>(it - parts_.begin());
}

bool IntervalUnion::contains(const Rational& x) const { return locate(x).has_value(); }

bool IntervalUnion::contains(const Interval& iv) const {
  auto idx = locate(iv.lo);
  return idx && iv.hi <= parts_[*idx].hi;
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
  std::size_t j = 0;
  for (const auto& iv : other.parts_) {
    while (j < parts_.size() && parts_[j].hi < iv.lo) ++j;
    if (j == parts_.size() || !parts_[j].contains(iv)) return false;
  }
  return true;
}

std::vector<OpenInterval> IntervalUnion::gaps() const {
  std::vector<OpenInterval> out;
  for (std::size_t i = 1; i < parts_.size(); ++i) out.push_back({parts_[i - 1].hi, parts_[i].lo});
  return out;
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  IntervalUnion out;
  std::size_t i = 0, j = 0;
  const auto& a = parts_;
  const auto& b = other.parts_;
  while (i < a.size() && j < b.size()) {
    const Rational& lo = max(a[i].lo, b[j].lo);
    const Rational& hi = min(a[i].hi, b[j].hi);
    if (lo <= hi) out.parts_.emplace_back(lo, hi);
    if (a[i].hi < b[j].hi)
      ++i;
    else
      ++j;
  }
  return out;
}

IntervalUnion IntervalUnion::intersect(const Interval& window) const { return intersect(IntervalUnion(window)); }

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  std::vector<Interval> all(parts_.begin(), parts_.end());
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return from_intervals(std::move(all));
}

IntervalUnion IntervalUnion::translate(const Rational& shift) const {
  IntervalUnion out;
  out.parts_.reserve(parts_.size());
  for (const auto& p : parts_) out.parts_.emplace_back(p.lo + shift, p.hi + shift);
  return out;
}

IntervalUnion IntervalUnion::scale(const Rational& factor) const { return affine(factor, Rational(0)); }

IntervalUnion IntervalUnion::affine(const Rational& factor, const Rational& shift) const {
  if (factor == 0) {
    if (parts_.empty()) return {};
    return IntervalUnion(Interval(shift, shift));
  }
  IntervalUnion out;
  out.parts_.reserve(parts_.size());
  if (factor > 0) {
    for (const auto& p : parts_) out.parts_.emplace_back(factor * p.lo + shift, factor * p.hi + shift);
  } else {
    for (auto it = parts_.rbegin(); it != parts_.rend(); ++it)
      out.parts_.emplace_back(factor * it->hi + shift, factor * it->lo + shift);
  }
  return out;
}

std::string IntervalUnion::str() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += " U ";
    s += parts_[i].str();
  }
  return s;
}

IntervalUnion minkowski_sum(const IntervalUnion& lhs, const IntervalUnion& rhs) {
  std::vector<Interval> sums;
  sums.reserve(lhs.size() * rhs.size());
  for (const auto& a : lhs.parts())
    for (const auto& b : rhs.parts()) sums.emplace_back(a.lo + b.lo, a.hi + b.hi);
  return IntervalUnion::from_intervals(std::move(sums));
}

IntervalUnion minkowski_sum_parallel(const IntervalUnion& lhs, const IntervalUnion& rhs) {
  const auto a = lhs.parts();
  const auto b = rhs.parts();
  const long n = static_cast<long>(a.size());
  // One canonical union per row, merged pairwise afterwards.
  std::vector<IntervalUnion> rows(a.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    std::vector<Interval> row;
    row.reserve(b.size());
    for (const auto& iv : b) row.emplace_back(a[i].lo + iv.lo, a[i].hi + iv.hi);
    rows[i] = IntervalUnion::from_intervals(std::move(row));
  }
  while (rows.size() > 1) {
    const long half = static_cast<long>(rows.size() / 2);
    std::vector<IntervalUnion> next((rows.size() + 1) / 2);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < half; ++i) next[i] = rows[2 * i].unite(rows[2 * i + 1]);
    if (rows.size() % 2) next.back() = std::move(rows.back());
    rows = std::move(next);
  }
  return rows.empty() ? IntervalUnion{} : std::move(rows.front());
}

}  // namespace thickpat
