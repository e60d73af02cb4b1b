#include "thickpat/enclosure.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace thickpat {

namespace {

void set_q(mpfr_t out, const Rational& q, mpfr_rnd_t rnd) { mpfr_set_q(out, q.get_mpq_t(), rnd); }

Rational to_rational(const mpfr_t x) {
  if (!mpfr_number_p(x)) throw std::domain_error("non-finite enclosure endpoint");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

mpfr_prec_t joint(const Enclosure& a, const Enclosure& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Enclosure::Enclosure(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(const Rational& q, mpfr_prec_t prec) : Enclosure(prec) {
  set_q(lo_, q, MPFR_RNDD);
  set_q(hi_, q, MPFR_RNDU);
}

Enclosure::Enclosure(const Enclosure& other) : Enclosure(other.prec_) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure&& other) noexcept : Enclosure(other) {}

Enclosure& Enclosure::operator=(const Enclosure& other) {
  if (this != &other) {
    prec_ = other.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Enclosure& Enclosure::operator=(Enclosure&& other) noexcept {
  if (this != &other) {
    std::swap(prec_, other.prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }
  return *this;
}

Enclosure::~Enclosure() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Enclosure Enclosure::e(mpfr_prec_t prec) {
  Enclosure out(prec);
  mpfr_set_ui(out.lo_, 1, MPFR_RNDN);
  mpfr_set_ui(out.hi_, 1, MPFR_RNDN);
  mpfr_exp(out.lo_, out.lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, out.hi_, MPFR_RNDU);
  return out;
}

Enclosure Enclosure::between(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  if (hi < lo) throw std::invalid_argument("enclosure with hi < lo");
  Enclosure out(prec);
  set_q(out.lo_, lo, MPFR_RNDD);
  set_q(out.hi_, hi, MPFR_RNDU);
  return out;
}

Rational Enclosure::lower() const { return to_rational(lo_); }
Rational Enclosure::upper() const { return to_rational(hi_); }

double Enclosure::mid() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }

double Enclosure::width() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const double out = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return out;
}

std::string Enclosure::str(int digits) const {
  std::vector<char> a(static_cast<std::size_t>(digits) + 32), b(a.size());
  mpfr_snprintf(a.data(), a.size(), "%.*RDg", digits, lo_);
  mpfr_snprintf(b.data(), b.size(), "%.*RUg", digits, hi_);
  return std::string("[") + a.data() + ", " + b.data() + "]";
}

bool Enclosure::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

std::optional<Integer> Enclosure::determined_floor() const {
  if (!mpfr_number_p(lo_) || !mpfr_number_p(hi_)) return std::nullopt;
  Integer a, b;
  mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDD);
  mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
  if (a != b) return std::nullopt;
  return a;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  Enclosure out(joint(a, b));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  Enclosure out(joint(a, b));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Enclosure Enclosure::operator-() const {
  Enclosure out(prec_);
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  const mpfr_prec_t p = joint(a, b);
  Enclosure out(p);
  mpfr_t t;
  mpfr_init2(t, p);
  const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : xs)
    for (auto y : ys) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return out;
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw std::domain_error("division by an enclosure containing 0");
  const mpfr_prec_t p = joint(a, b);
  Enclosure recip(p);
  mpfr_ui_div(recip.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(recip.hi_, 1, b.lo_, MPFR_RNDU);
  return a * recip;
}

Enclosure log(const Enclosure& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw std::domain_error("log of a non-positive enclosure");
  Enclosure out(x.prec_);
  mpfr_log(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Enclosure exp(const Enclosure& x) {
  Enclosure out(x.prec_);
  mpfr_exp(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Enclosure sqrt(const Enclosure& x) {
  if (mpfr_sgn(x.lo_) < 0) throw std::domain_error("sqrt of a negative enclosure");
  Enclosure out(x.prec_);
  mpfr_sqrt(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Enclosure pow(const Enclosure& base, const Enclosure& exponent) { return exp(exponent * log(base)); }

Enclosure min(const Enclosure& a, const Enclosure& b) {
  Enclosure out(joint(a, b));
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Enclosure max(const Enclosure& a, const Enclosure& b) {
  Enclosure out(joint(a, b));
  mpfr_max(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

std::string Real::str() const {
  if (exact_) return to_string(*exact_);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", enclose(128).mid());
  return label_.empty() ? std::string(buf) : label_ + " ~ " + buf;
}

Ordering3 compare(const Real& a, const Real& b, mpfr_prec_t start) {
  if (a.is_exact() && b.is_exact()) {
    const int c = cmp(a.exact(), b.exact());
    return c < 0 ? Ordering3::Less : c > 0 ? Ordering3::Greater : Ordering3::Equal;
  }
  for (mpfr_prec_t p = start; p <= kMaxPrecision; p *= 2) {
    const Enclosure x = a.enclose(p), y = b.enclose(p);
    if (x.certainly_less(y)) return Ordering3::Less;
    if (y.certainly_less(x)) return Ordering3::Greater;
  }
  return Ordering3::Undecided;
}

}  // namespace thickpat
