#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thickpat/enclosure.hpp"

namespace thickpat {

/// Floor of a transcendental expression, certified by an enclosure.
struct CapacityResult {
  std::optional<Integer> N;  ///< empty when the floor stayed undetermined at kMaxPrecision
  Rational pre_floor_lo;     ///< enclosure of the value before flooring
  Rational pre_floor_hi;
  mpfr_prec_t precision = 0;
  std::string variant;
  std::map<std::string, std::string> inputs;

  bool determined() const { return N.has_value(); }
  std::string str() const;
};

/// floor(log 4 / (4 e 720^2) * tau / log tau); tau > 1.
CapacityResult ap_capacity(const Real& tau, mpfr_prec_t start = kDefaultPrecision);
/// Un-simplified condition from the proof: floor(tau / (720^2 4 e) (1 - (1/4)^{1/log(tau/4)})); tau > 4.
CapacityResult ap_capacity_proof(const Real& tau, mpfr_prec_t start = kDefaultPrecision);

struct BilipCapacity {
  CapacityResult proof;      ///< beta~ = A beta in the last factor (canonical)
  CapacityResult statement;  ///< beta in the last factor, as displayed in the theorem
  Rational beta;
  Rational beta_tilde;
};

/// Both readings of the bi-Lipschitz capacity. Errors when A < 1, D <= 0, m <= 0, or tau beta <= e.
BilipCapacity bilip_capacity(const Real& tau, const Rational& A, const Rational& D, const Rational& m,
                             mpfr_prec_t start = kDefaultPrecision);

/// log 2 / log(2 + 1/tau); tau > 0.
Enclosure hausdorff_lower(const Rational& tau, mpfr_prec_t prec = kDefaultPrecision);

struct AstelsResult {
  Rational s;                       ///< sum of tau_i / (tau_i + 1), +inf counting as 1
  bool contains_interval = false;   ///< s >= 1
  std::optional<ExtRational> bound; ///< s / (1 - s) when s < 1
  std::string str() const;
};
AstelsResult astels_sumset(const std::vector<ExtRational>& taus);

/// Unit-constant envelope ((1/eps)/log(1/eps), 1/eps) for the longest progression in M_eps.
std::pair<Enclosure, Rational> bfs_ap_envelope(const Rational& eps, mpfr_prec_t prec = kDefaultPrecision);

/// Bracket [lo, hi] around the least tau with ap_capacity(tau) >= target, found by
/// bisection down to hi - lo <= tol.
std::pair<Rational, Rational> capacity_threshold(long target, const Rational& tol);

/// Starting precision from THICKPAT_PRECISION (>= 53), else kDefaultPrecision.
mpfr_prec_t precision_from_env();

}  // namespace thickpat
