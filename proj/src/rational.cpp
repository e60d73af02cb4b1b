#include "thickpat/rational.hpp"

#include <cctype>

namespace thickpat {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("bad rational: '" + std::string(whole) + "'");
  for (char ch : digits)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw std::invalid_argument("bad rational: '" + std::string(whole) + "'");
  return Integer(std::string(digits));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational out;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer p = parse_integer(text.substr(0, slash), whole);
    Integer q = parse_integer(text.substr(slash + 1), whole);
    if (q == 0) throw std::invalid_argument("bad rational (zero denominator): '" + std::string(whole) + "'");
    out = Rational(p, q);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view ex = text.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      Integer ev = parse_integer(ex, whole);
      if (mpz_cmpabs_ui(ev.get_mpz_t(), 100000) > 0) throw std::invalid_argument("exponent too large: '" + std::string(whole) + "'");
      exponent = eneg ? -ev.get_si() : ev.get_si();
      text = text.substr(0, e);
    }
    std::string_view int_part = text, frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      int_part = text.substr(0, dot);
      frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("bad rational: '" + std::string(whole) + "'");
    Integer num = int_part.empty() ? Integer(0) : parse_integer(int_part, whole);
    Integer den = 1;
    if (!frac_part.empty()) {
      Integer f = parse_integer(frac_part, whole);
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
      num = num * den + f;
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0)
      num *= scale;
    else
      den *= scale;
    out = Rational(num, den);
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational pow(const Rational& b, long e) {
  if (e == 0) return Rational(1);
  if (b == 0) {
    if (e < 0) throw std::domain_error("0 to a negative power");
    return Rational(0);
  }
  const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), k);
  Rational r = e > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

ExtRational ExtRational::parse(std::string_view text) {
  std::string_view t = trim(text);
  if (t == "inf" || t == "+inf" || t == "infinity") return infinity();
  return ExtRational(parse_rational(t));
}

}  // namespace thickpat
