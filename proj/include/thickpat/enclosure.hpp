#pragma once

#include <mpfr.h>

#include <memory>
#include <optional>
#include <string>

#include "thickpat/rational.hpp"

namespace thickpat {

inline constexpr mpfr_prec_t kDefaultPrecision = 80;
inline constexpr mpfr_prec_t kMaxPrecision = 4096;

/// Closed real interval [lo, hi] with MPFR endpoints. Every operation rounds the
/// lower endpoint down and the upper endpoint up, so the true value of any
/// expression evaluated with these operations stays inside the result.
class Enclosure {
 public:
  explicit Enclosure(mpfr_prec_t prec = kDefaultPrecision);
  Enclosure(const Rational& q, mpfr_prec_t prec);
  Enclosure(const Enclosure& other);
  Enclosure(Enclosure&& other) noexcept;
  Enclosure& operator=(const Enclosure& other);
  Enclosure& operator=(Enclosure&& other) noexcept;
  ~Enclosure();

  static Enclosure e(mpfr_prec_t prec);
  /// Hull of two rationals.
  static Enclosure between(const Rational& lo, const Rational& hi, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }
  /// Endpoints as exact rationals (binary floats convert exactly).
  Rational lower() const;
  Rational upper() const;
  double lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid() const;
  double width() const;
  /// Decimal rendering of both endpoints with the given significant digits.
  std::string str(int digits = 20) const;

  bool contains(const Rational& q) const;
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_less(const Enclosure& o) const { return mpfr_less_p(hi_, o.lo_); }
  bool certainly_leq(const Enclosure& o) const { return mpfr_lessequal_p(hi_, o.lo_); }
  /// floor(x) when both endpoints share the same floor.
  std::optional<Integer> determined_floor() const;

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b);
  Enclosure operator-() const;

  friend Enclosure log(const Enclosure& x);
  friend Enclosure exp(const Enclosure& x);
  friend Enclosure sqrt(const Enclosure& x);
  /// base^exponent for a positive base.
  friend Enclosure pow(const Enclosure& base, const Enclosure& exponent);
  friend Enclosure min(const Enclosure& a, const Enclosure& b);
  friend Enclosure max(const Enclosure& a, const Enclosure& b);

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

/// A real number known through enclosures at any requested precision; exact when rational.
class Real {
 public:
  Real() : exact_(Rational(0)) {}
  Real(Rational q) : exact_(std::move(q)) {}  // NOLINT(implicit)
  template <class F>
  static Real computed(F f, std::string label) {
    Real r;
    r.exact_.reset();
    r.fn_ = std::make_shared<Holder<F>>(std::move(f));
    r.label_ = std::move(label);
    return r;
  }

  bool is_exact() const { return exact_.has_value(); }
  const std::string& label() const { return label_; }
  const Rational& exact() const { return *exact_; }
  Enclosure enclose(mpfr_prec_t prec = kDefaultPrecision) const {
    return exact_ ? Enclosure(*exact_, prec) : fn_->eval(prec);
  }
  double approx() const { return exact_ ? to_double(*exact_) : enclose(128).mid(); }
  /// Text form: the exact rational, or the label with a decimal approximation.
  std::string str() const;

 private:
  struct HolderBase {
    virtual ~HolderBase() = default;
    virtual Enclosure eval(mpfr_prec_t prec) const = 0;
  };
  template <class F>
  struct Holder final : HolderBase {
    explicit Holder(F f) : f_(std::move(f)) {}
    Enclosure eval(mpfr_prec_t prec) const override { return f_(prec); }
    F f_;
  };
  std::optional<Rational> exact_;
  std::shared_ptr<const HolderBase> fn_;
  std::string label_;
};

enum class Ordering3 { Less, Equal, Greater, Undecided };

/// Compares two reals. Exact inputs compare exactly; otherwise the precision is
/// doubled until the enclosures separate, returning Undecided at kMaxPrecision.
Ordering3 compare(const Real& a, const Real& b, mpfr_prec_t start = kDefaultPrecision);

}  // namespace thickpat
