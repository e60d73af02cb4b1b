#pragma once

// Reference computations written independently of the library code paths.

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "thickpat/rational.hpp"

namespace oracle {

using thickpat::Rational;
using Seg = std::pair<Rational, Rational>;

/// Middle-eps construction intervals at depth n, by direct splitting.
inline std::vector<Seg> middle_cover(const Rational& eps, int depth, Seg hull = {Rational(0), Rational(1)}) {
  std::vector<Seg> cur{hull};
  for (int n = 0; n < depth; ++n) {
    std::vector<Seg> next;
    for (const auto& [a, b] : cur) {
      const Rational side = (b - a) * (1 - eps) / 2;
      next.emplace_back(a, a + side);
      next.emplace_back(b - side, b);
    }
    cur = std::move(next);
  }
  return cur;
}

/// Merge closed segments that overlap or touch.
inline std::vector<Seg> merge(std::vector<Seg> v) {
  std::sort(v.begin(), v.end());
  std::vector<Seg> out;
  for (auto& s : v) {
    if (!out.empty() && s.first <= out.back().second)
      out.back().second = std::max(out.back().second, s.second);
    else
      out.push_back(s);
  }
  return out;
}

inline std::vector<Seg> intersect(const std::vector<Seg>& a, const std::vector<Seg>& b) {
  std::vector<Seg> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      const Rational lo = std::max(x.first, y.first), hi = std::min(x.second, y.second);
      if (lo <= hi) out.emplace_back(lo, hi);
    }
  return merge(out);
}

inline std::vector<Seg> shift(const std::vector<Seg>& a, const Rational& s) {
  std::vector<Seg> out;
  for (const auto& [lo, hi] : a) out.emplace_back(lo + s, hi + s);
  return out;
}

/// Starting points x with x + k delta in the cover for k < m.
inline std::vector<Seg> ap_starts(const std::vector<Seg>& cover, int m, const Rational& delta) {
  std::vector<Seg> s = cover;
  for (int k = 1; k < m; ++k) s = intersect(s, shift(cover, -delta * k));
  return s;
}

inline std::vector<Seg> sumset(const std::vector<Seg>& a, const std::vector<Seg>& b) {
  std::vector<Seg> out;
  for (const auto& x : a)
    for (const auto& y : b) out.emplace_back(x.first + y.first, x.second + y.second);
  return merge(out);
}

/// Thickness by replaying the removals one gap at a time, longest first (ties:
/// left first), on an explicit list of components. Empty optional means infinity.
inline std::optional<Rational> gap_thickness(Seg hull, std::vector<Seg> gaps) {
  std::stable_sort(gaps.begin(), gaps.end(), [](const Seg& a, const Seg& b) {
    const Rational la = a.second - a.first, lb = b.second - b.first;
    return la != lb ? la > lb : a.first < b.first;
  });
  std::vector<Seg> comps{hull};
  std::optional<Rational> best;
  for (const auto& g : gaps) {
    for (std::size_t i = 0; i < comps.size(); ++i) {
      auto [a, b] = comps[i];
      if (a <= g.first && g.second <= b) {
        const Rational left = g.first - a, right = b - g.second;
        const Rational r = std::min(left, right) / (g.second - g.first);
        if (!best || r < *best) best = r;
        comps[i] = {a, g.first};
        comps.insert(comps.begin() + static_cast<long>(i) + 1, Seg{g.second, b});
        break;
      }
    }
  }
  return best;
}

/// Middle-third Cantor membership from base-3 digits; endpoints with a trailing
/// digit 1 followed by zeros are members.
inline bool in_middle_third(Rational x) {
  if (x < 0 || x > 1) return false;
  if (x == 1) return true;
  std::set<Rational> seen;
  while (seen.insert(x).second) {
    x *= 3;
    const Rational d(thickpat::floor(x));
    x -= d;
    if (d == 1) return x == 0;
    if (x == 0) return true;
  }
  return true;  // periodic expansion with digits 0 and 2 only
}

inline double capacity(double tau) {
  return std::floor(std::log(4.0) / (4 * std::exp(1.0) * 720.0 * 720.0) * tau / std::log(tau));
}

inline double capacity_proof(double tau) {
  return std::floor(tau / (720.0 * 720.0 * 4 * std::exp(1.0)) * (1 - std::pow(0.25, 1 / std::log(tau / 4))));
}

/// Number of integers z with |3 r z - center| + r <= R / 2 when the child lattice is aligned with the parent center.
inline long aligned_children(const Rational& inv_beta_pow_N) {
  // |z| <= (inv/2 - 1) / 3
  const Rational bound = (inv_beta_pow_N / 2 - 1) / 3;
  if (bound < 0) return 0;
  return 2 * thickpat::floor(bound).get_si() + 1;
}

}  // namespace oracle
