#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace thickpat {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", or a decimal such as "-0.125" / "1e-6" into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
double to_double(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Rational p/q with p, q machine integers; canonicalized.
inline Rational make_rational(long p, long q = 1) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// b^e for integer e (negative allowed, b != 0 then).
Rational pow(const Rational& b, long e);

/// Nonnegative rational or +infinity. Thickness lives here.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational v) : value_(std::move(v)) {}  // NOLINT(implicit)
  static ExtRational infinity() {
    ExtRational e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  const Rational& value() const {
    if (infinite_) throw std::logic_error("infinite value has no rational");
    return value_;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
  friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

  std::string str() const { return infinite_ ? std::string("inf") : to_string(value_); }
  static ExtRational parse(std::string_view text);

 private:
  Rational value_{0};
  bool infinite_ = false;
};

}  // namespace thickpat
