#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "thickpat/enclosure.hpp"
#include "thickpat/interval_union.hpp"
#include "thickpat/monotone_map.hpp"
#include "thickpat/set_descriptor.hpp"

using namespace thickpat;

namespace {

std::vector<oracle::Seg> segs(const IntervalUnion& u) {
  std::vector<oracle::Seg> out;
  for (const auto& iv : u.parts()) out.emplace_back(iv.lo, iv.hi);
  return out;
}

IntervalUnion from_segs(const std::vector<oracle::Seg>& v) {
  std::vector<Interval> ivs;
  for (const auto& [a, b] : v) ivs.emplace_back(a, b);
  return IntervalUnion::from_intervals(ivs);
}

}  // namespace

TEST_SUITE("set_model") {
  TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == make_rational(1, 2));
    CHECK(parse_rational("-0.125") == make_rational(-1, 8));
    CHECK(parse_rational("1e-6") == make_rational(1, 1000000));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(make_rational(4, 2)) == "2");
    CHECK(to_string(make_rational(-1, 3)) == "-1/3");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK(ExtRational::parse("inf").is_infinite());
    CHECK(ExtRational(Rational(5)) < ExtRational::infinity());
  }

  TEST_CASE("interval union merging and gaps") {
    const auto u =
        IntervalUnion::from_intervals({Interval(Rational(2), Rational(3)), Interval(Rational(0), Rational(1)),
                                       Interval(Rational(1), make_rational(3, 2))});
    REQUIRE(u.size() == 2);
    CHECK(u.parts()[0] == Interval(Rational(0), make_rational(3, 2)));
    const auto g = u.gaps();
    REQUIRE(g.size() == 1);
    CHECK(g[0].lo == make_rational(3, 2));
    CHECK(u.measure() == make_rational(5, 2));
    CHECK(u.contains(Rational(3)));
    CHECK_FALSE(u.contains(make_rational(7, 4)));
    CHECK(u.affine(Rational(-1), Rational(0)).hull() == Interval(Rational(-3), Rational(0)));
  }

  TEST_CASE("middle-epsilon covers match direct splitting") {
    for (const char* e : {"1/3", "1/5", "1/2", "3/5"}) {
      const Rational eps = parse_rational(e);
      const auto d = SetDescriptor::middle_epsilon(eps);
      for (int n = 0; n <= 6; ++n) CHECK(segs(refine(d, n)) == oracle::middle_cover(eps, n));
    }
    const auto shifted = SetDescriptor::middle_epsilon(make_rational(1, 3), Interval(Rational(2), Rational(5)));
    CHECK(segs(refine(shifted, 3)) == oracle::middle_cover(make_rational(1, 3), 3, {Rational(2), Rational(5)}));
  }

  TEST_CASE("minkowski sums match pairwise sums") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<oracle::Seg> a, b;
      for (int i = 0; i < 6; ++i) {
        const long x = static_cast<long>(rng() % 40), y = static_cast<long>(rng() % 40);
        a.emplace_back(make_rational(x, 8), Rational(x + static_cast<long>(rng() % 3), 8));
        b.emplace_back(make_rational(y, 8), Rational(y + static_cast<long>(rng() % 3), 8));
      }
      const auto ua = from_segs(a), ub = from_segs(b);
      const auto expect = oracle::sumset(oracle::merge(a), oracle::merge(b));
      CHECK(segs(minkowski_sum(ua, ub)) == expect);
      CHECK(minkowski_sum_parallel(ua, ub) == minkowski_sum(ua, ub));
    }
  }

  TEST_CASE("descriptor validation") {
    const Interval unit(Rational(0), Rational(1));
    CHECK_THROWS(SetDescriptor::middle_epsilon(Rational(0)));
    CHECK_THROWS(SetDescriptor::middle_epsilon(Rational(1)));
    CHECK_THROWS(SetDescriptor::explicit_gaps(unit, {{make_rational(1, 2), make_rational(3, 2)}}));
    CHECK_THROWS(SetDescriptor::explicit_gaps(
        unit, {{make_rational(1, 4), make_rational(1, 2)}, {make_rational(1, 3), make_rational(2, 3)}}));
    CHECK_THROWS(
        SetDescriptor::ifs(unit, {make_rational(1, 2), make_rational(1, 2)}, {Rational(0), make_rational(1, 4)}));
    CHECK_NOTHROW(
        SetDescriptor::ifs(unit, {make_rational(1, 3), make_rational(1, 3)}, {Rational(0), make_rational(2, 3)}));
  }

  TEST_CASE("explicit gaps refine in decreasing length") {
    const auto d = SetDescriptor::explicit_gaps(
        Interval(Rational(0), Rational(1)),
        {{make_rational(1, 10), make_rational(2, 10)}, {make_rational(1, 2), make_rational(8, 10)}});
    CHECK(refine(d, 1).size() == 2);
    CHECK(refine(d, 1).gaps()[0].lo == make_rational(1, 2));
    CHECK(refine(d, 2).size() == 3);
  }

  TEST_CASE("membership agrees with ternary digits") {
    const auto d = SetDescriptor::middle_epsilon(make_rational(1, 3));
    for (long q : {3L, 4L, 9L, 10L, 13L, 26L, 27L, 80L, 81L, 91L, 242L}) {
      for (long p = 0; p <= q; ++p) {
        const Rational x(p, q);
        const auto m = membership(d, Rational(x));
        REQUIRE(m.status != MemberStatus::Unknown);
        CHECK((m.status == MemberStatus::InSet) == oracle::in_middle_third(Rational(x)));
      }
    }
    CHECK(membership(d, make_rational(1, 4)).reason == "periodic");
    CHECK(membership(d, Rational(2)).status == MemberStatus::NotInSet);
  }

  TEST_CASE("normalize and transform") {
    const auto d = SetDescriptor::middle_epsilon(make_rational(1, 5), Interval(Rational(2), Rational(4)));
    const auto n = normalize(d);
    CHECK(n.set.hull() == Interval(Rational(0), Rational(1)));
    CHECK(transform(n.set, n.to_unit.inverse()) == d);
    CHECK(translate(SetDescriptor::middle_epsilon(make_rational(1, 3)), Rational(1)).hull().lo == 1);
    CHECK_THROWS(normalize(SetDescriptor::explicit_gaps(Interval(Rational(1), Rational(1)), {})));
  }

  TEST_CASE("enclosures and exact comparison") {
    const Enclosure r = log(Enclosure(Rational(2), 128)) / log(Enclosure(Rational(3), 128));
    CHECK(r.lower_double() <= 0.6309297535714574);
    CHECK(r.upper_double() >= 0.6309297535714574);
    CHECK(r.width() < 1e-30);
    CHECK(compare(Real(make_rational(1, 3)), Real(make_rational(1, 2))) == Ordering3::Less);
    const Real e = Real::computed([](mpfr_prec_t p) { return Enclosure::e(p); }, "e");
    CHECK(compare(e, Real(make_rational(2718, 1000))) == Ordering3::Greater);
    CHECK(compare(e, Real(make_rational(2719, 1000))) == Ordering3::Less);
    CHECK(compare(e, e) == Ordering3::Undecided);
  }

  TEST_CASE("monotone maps") {
    const auto f = MonotoneMap::affine(Rational(2), Rational(1));
    CHECK(f.image_point(make_rational(1, 2)) == Interval(Rational(2), Rational(2)));
    const auto pre = f.preimage(Interval(Rational(1), Rational(3)));
    REQUIRE(pre);
    CHECK(*pre == Interval(Rational(0), Rational(1)));
    const auto q = MonotoneMap::quadratic(Rational(0), Rational(0), Interval(Rational(1), Rational(2)));
    const auto qp = q.preimage(Interval(Rational(2), Rational(3)));
    REQUIRE(qp);
    // sqrt 2 and sqrt 3 lie inside the outward-rounded preimage
    CHECK(qp->lo * qp->lo <= 2);
    CHECK(qp->hi * qp->hi >= 3);
    CHECK(qp->hi - qp->lo < make_rational(1, 1000000) + make_rational(32, 100));
    CHECK_THROWS(MonotoneMap::piecewise_linear({Rational(0), Rational(1)}, {Rational(1), Rational(1)}));
  }
}
