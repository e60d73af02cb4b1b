#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "thickpat/patterns.hpp"

using namespace thickpat;

namespace {

std::vector<oracle::Seg> segs(const IntervalUnion& u) {
  std::vector<oracle::Seg> out;
  for (const auto& iv : u.parts()) out.emplace_back(iv.lo, iv.hi);
  return out;
}

const SetDescriptor third = SetDescriptor::middle_epsilon(make_rational(1, 3));

}  // namespace

TEST_SUITE("patterns") {
  TEST_CASE("four endpoints form a progression in the set") {
    const auto c = ap_search(third, 4, make_rational(1, 3), 4);
    CHECK(c.verdict == Verdict::PresentAtDepth);
    REQUIRE(c.witness);
    CHECK(*c.witness == 0);
    CHECK(c.in_set);
  }

  TEST_CASE("three points with gap one half are absent at depth one") {
    const auto c = ap_search(third, 3, make_rational(1, 2), 5);
    CHECK(c.verdict == Verdict::CertifiedAbsentAtDepth);
    CHECK(c.depth == 1);
    CHECK(c.witness_set.empty());
  }

  TEST_CASE("ap verdicts agree with brute-force intersection") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
      const Rational delta(1 + static_cast<long>(rng() % 80), 81);
      const int m = 2 + static_cast<int>(rng() % 3);
      const int depth = 1 + static_cast<int>(rng() % 4);
      const auto c = ap_search(third, m, delta, depth);
      const auto cover = oracle::middle_cover(make_rational(1, 3), depth);
      const auto starts = oracle::ap_starts(cover, m, delta);
      CHECK(c.present() == !starts.empty());
      if (c.present()) {
        REQUIRE(c.witness);
        CHECK(*c.witness == starts.front().first);
        CHECK(segs(c.witness_set) == starts);
      } else {
        // the reported depth is the first depth where the intersection empties
        CHECK(oracle::ap_starts(oracle::middle_cover(make_rational(1, 3), c.depth), m, delta).empty());
        if (c.depth > 0)
          CHECK_FALSE(oracle::ap_starts(oracle::middle_cover(make_rational(1, 3), c.depth - 1), m, delta).empty());
      }
    }
    CHECK_THROWS(ap_search(third, 1, make_rational(1, 3), 2));
    CHECK_THROWS(ap_search(third, 3, Rational(0), 2));
  }

  TEST_CASE("grid search serial and parallel agree") {
    std::vector<Rational> ds;
    for (int k = 1; k <= 40; ++k) ds.push_back(make_rational(k, 81));
    CHECK(ap_search_grid(third, 3, ds, 4) == ap_search_grid_serial(third, 3, ds, 4));
  }

  TEST_CASE("translates and homotheties") {
    const auto t = translate_search(third, {Rational(0), make_rational(1, 2)}, 6);
    CHECK(t.present());
    const auto h = homothety_search(third, {Rational(0), Rational(1), Rational(2)},
                                    {make_rational(1, 9), make_rational(1, 4), make_rational(1, 2)}, 4);
    const auto hs = homothety_search_serial(third, {Rational(0), Rational(1), Rational(2)},
                                            {make_rational(1, 9), make_rational(1, 4), make_rational(1, 2)}, 4);
    CHECK(h.per_lambda == hs.per_lambda);
    CHECK(h.smallest_present == hs.smallest_present);
    CHECK(h.per_lambda[2].verdict == Verdict::CertifiedAbsentAtDepth);
    CHECK_THROWS(homothety_search(third, {Rational(0)}, {}, 2));
  }

  TEST_CASE("longest progression kernels agree") {
    const auto d = SetDescriptor::middle_epsilon(make_rational(1, 5));
    const auto a = longest_ap(d, 3, 16, 100000);
    const auto b = longest_ap_serial(d, 3, 16, 100000);
    CHECK(a.m == b.m);
    CHECK(a.delta == b.delta);
    CHECK(a.witness == b.witness);
    CHECK(a.m >= 3);
    REQUIRE(a.delta);
    REQUIRE(a.witness);
    CHECK_FALSE(oracle::ap_starts(oracle::middle_cover(make_rational(1, 5), 3), a.m, *a.delta).empty());
    CHECK(oracle::ap_starts(oracle::middle_cover(make_rational(1, 5), 3), a.m, *a.delta).front().first == *a.witness);
  }

  TEST_CASE("gap lemma verdicts") {
    const auto fifth = SetDescriptor::middle_epsilon(make_rational(1, 5));
    const auto r = gap_lemma_check(fifth, translate(fifth, make_rational(2, 5)), 10);
    CHECK(r.status == GapLemmaResult::Status::HypothesesHold);
    REQUIRE(r.witness);
    CHECK(r.witness->present());
    CHECK_FALSE(r.alarm);
    const auto f = gap_lemma_check(third, translate(third, make_rational(2, 5)), 6);
    CHECK(f.status == GapLemmaResult::Status::HypothesesFail);
    CHECK(f.reason == "product not > 1");
    // a copy sitting inside the middle gap
    const auto small = transform(fifth, AffineMap{make_rational(1, 10), make_rational(9, 20)});
    const auto g = gap_lemma_check(fifth, small, 6);
    CHECK(g.status == GapLemmaResult::Status::HypothesesFail);
    CHECK(g.reason.find("lies in a gap") != std::string::npos);
  }

  TEST_CASE("not-in-gap predicate") {
    CHECK(hull_in_gap(Interval(make_rational(2, 5), make_rational(1, 2)), third));
    CHECK_FALSE(hull_in_gap(Interval(make_rational(1, 4), make_rational(1, 2)), third));
    CHECK(hull_in_gap(Interval(Rational(2), Rational(3)), third));
    CHECK_FALSE(hull_in_gap(Interval(make_rational(1, 4), make_rational(1, 4)), third));
  }

  TEST_CASE("sumset covers") {
    for (int n = 0; n <= 6; ++n) {
      const auto u = sumset_cover({third, third}, n);
      CHECK(u == IntervalUnion(Interval(Rational(0), Rational(2))));
      CHECK(sumset_cover_serial({third, third}, n) == u);
    }
    const auto tiny = SetDescriptor::middle_epsilon(make_rational(3, 5));
    const auto cover = oracle::middle_cover(make_rational(3, 5), 3);
    CHECK(segs(sumset_cover({tiny, tiny}, 3)) == oracle::sumset(cover, cover));
  }

  TEST_CASE("affine patterns through the general search") {
    std::vector<MonotoneMap> maps;
    for (int k = 0; k < 3; ++k) maps.push_back(MonotoneMap::affine(Rational(1), make_rational(k, 3)));
    const auto c = pattern_search_general(third, maps, std::nullopt, 3);
    CHECK(c.verdict == Verdict::PresentAtDepth);
    CHECK(c.witness == ap_search(third, 3, make_rational(1, 3), 3).witness);
    CHECK_THROWS_WITH(pattern_search_general(third, maps, Interval(Rational(0), Rational(1)), 3),
                      doctest::Contains("hypothesis violated"));
  }

  TEST_CASE("quadratic setup") {
    const auto q =
        quadratic_pattern_setup({Rational(0), make_rational(1, 10)}, {Rational(0), Rational(0)}, Rational(1));
    if (q.accepted) {
      CHECK(q.c1 > 0);
      CHECK(q.c1 <= q.c2);
      CHECK(q.maps.size() == 2);
      const auto c = pattern_search_general(
          SetDescriptor::middle_epsilon(make_rational(1, 5), Interval(Rational(1), Rational(2))), q.maps, q.window, 4);
      CHECK(c.verdict != Verdict::PresentAtDepth);
    } else {
      CHECK_FALSE(q.rejection.empty());
    }
  }
}
