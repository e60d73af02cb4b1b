#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "thickpat/bounds.hpp"

using namespace thickpat;

TEST_SUITE("bounds") {
  TEST_CASE("dimension lower bound") {
    const Enclosure h = hausdorff_lower(Rational(1));
    CHECK(h.lower_double() >= 0.6309);
    CHECK(h.upper_double() <= 0.6310);
    double prev = 0;
    for (int i = 1; i <= 50; ++i) {
      const Rational tau(i, 5);
      const double expect = std::log(2.0) / std::log(2.0 + 5.0 / i);
      const Enclosure e = hausdorff_lower(tau);
      CHECK(e.lower_double() <= expect + 1e-12);
      CHECK(e.upper_double() >= expect - 1e-12);
      CHECK(e.mid() > prev);
      prev = e.mid();
    }
    CHECK_THROWS(hausdorff_lower(Rational(0)));
  }

  TEST_CASE("capacity matches a double-precision evaluation away from integers") {
    for (double tau = 1e7; tau <= 1e13; tau *= 3.7) {
      const Rational t(static_cast<long>(tau));
      const CapacityResult r = ap_capacity(Real(t));
      REQUIRE(r.determined());
      const double pre = to_double(r.pre_floor_lo);
      if (std::abs(pre - std::round(pre)) > 1e-6) CHECK(r.N->get_d() == oracle::capacity(tau));
      const CapacityResult p = ap_capacity_proof(Real(t));
      REQUIRE(p.determined());
      const double pp = to_double(p.pre_floor_lo);
      if (std::abs(pp - std::round(pp)) > 1e-6) CHECK(p.N->get_d() == oracle::capacity_proof(tau));
    }
    CHECK(ap_capacity(Real(Rational(10))).N == Integer(0));
    CHECK_THROWS(ap_capacity(Real(Rational(1))));
    CHECK_THROWS(ap_capacity_proof(Real(Rational(4))));
  }

  TEST_CASE("bilipschitz capacity with identity constants reduces to the proof formula") {
    for (long t : {100000000L, 3000000000L, 70000000000L}) {
      const auto b = bilip_capacity(Real(Rational(t)), Rational(1), Rational(1), make_rational(1, 4));
      const auto p = ap_capacity_proof(Real(Rational(t)));
      CHECK(b.beta == make_rational(1, 4));
      CHECK(b.proof.N == p.N);
      CHECK(b.statement.N == p.N);
    }
    const auto b = bilip_capacity(Real(Rational(100000000)), Rational(2), Rational(1), make_rational(1, 4));
    CHECK(b.beta == make_rational(1, 8));
    CHECK(b.beta_tilde == make_rational(1, 4));
    CHECK_THROWS(bilip_capacity(Real(Rational(100)), make_rational(1, 2), Rational(1), make_rational(1, 4)));
    CHECK_THROWS_WITH(bilip_capacity(Real(Rational(8)), Rational(1), Rational(1), make_rational(1, 4)),
                      doctest::Contains("tau*beta > e"));
  }

  TEST_CASE("sumset thickness criterion") {
    const auto a = astels_sumset({ExtRational(Rational(1)), ExtRational(Rational(1))});
    CHECK(a.contains_interval);
    CHECK(a.s == 1);
    const auto b = astels_sumset({ExtRational(make_rational(1, 2)), ExtRational(make_rational(1, 2))});
    CHECK_FALSE(b.contains_interval);
    CHECK(b.s == make_rational(2, 3));
    const auto c = astels_sumset({ExtRational::infinity(), ExtRational(Rational(0))});
    CHECK(c.contains_interval);
  }

  TEST_CASE("threshold bracket") {
    const auto [lo, hi] = capacity_threshold(1, Rational(1000));
    CHECK(hi - lo <= 1000);
    CHECK(ap_capacity(Real(hi)).N >= Integer(1));
    CHECK(ap_capacity(Real(lo)).N == Integer(0));
  }

  TEST_CASE("progression envelope") {
    const auto [lo, hi] = bfs_ap_envelope(make_rational(1, 9));
    CHECK(hi == 9);
    CHECK(lo.mid() == doctest::Approx(9 / std::log(9.0)));
  }
}
