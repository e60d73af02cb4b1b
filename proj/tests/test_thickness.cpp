#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "thickpat/thickness.hpp"

using namespace thickpat;

namespace {

SetDescriptor random_gaps(std::mt19937_64& rng, std::vector<oracle::Seg>* out) {
  const int k = 1 + static_cast<int>(rng() % 12);
  const long den = 200;
  std::set<long> cuts;
  while (static_cast<int>(cuts.size()) < 2 * k) cuts.insert(1 + static_cast<long>(rng() % (den - 1)));
  std::vector<long> c(cuts.begin(), cuts.end());
  std::vector<OpenInterval> gaps;
  for (int i = 0; i < k; ++i) {
    gaps.push_back({make_rational(c[2 * i], den), make_rational(c[2 * i + 1], den)});
    out->emplace_back(gaps.back().lo, gaps.back().hi);
  }
  return SetDescriptor::explicit_gaps(Interval(Rational(0), Rational(1)), gaps);
}

}  // namespace

TEST_SUITE("thickness") {
  TEST_CASE("middle-epsilon closed form") {
    for (const char* e : {"1/3", "1/5", "1/2", "3/5", "1/9"}) {
      const Rational eps = parse_rational(e);
      const auto d = SetDescriptor::middle_epsilon(eps);
      for (int n = 1; n <= 6; ++n) {
        const auto t = thickness(d, n);
        CHECK(t.value == ExtRational((1 - eps) / (2 * eps)));
        CHECK(t.kind == ThicknessKind::Exact);
        CHECK(t.note == "self-similar");
      }
    }
    CHECK(thickness(SetDescriptor::middle_epsilon(make_rational(1, 3)), 3).str() == "1 (exact, self-similar)");
  }

  TEST_CASE("gap records replay matches an independent removal") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<oracle::Seg> gs;
      const auto d = random_gaps(rng, &gs);
      const auto expect = oracle::gap_thickness({Rational(0), Rational(1)}, gs);
      const auto got = thickness(d, 0);
      REQUIRE(expect);
      CHECK(got.value == ExtRational(*expect));
      CHECK(got.kind == ThicknessKind::Exact);
      CHECK(thickness_chunk(d, 0).value == got.value);
      CHECK(thickness_chunk_serial(d, 0).value == got.value);
    }
  }

  TEST_CASE("degenerate sets") {
    const auto point = SetDescriptor::explicit_gaps(Interval(Rational(1), Rational(1)), {});
    CHECK(thickness(point, 0).value == ExtRational(Rational(0)));
    const auto seg = SetDescriptor::explicit_gaps(Interval(Rational(0), Rational(1)), {});
    CHECK(thickness(seg, 0).value.is_infinite());
    CHECK_THROWS_WITH(thickness_chunk(seg, 0), doctest::Contains("connected"));
    CHECK_THROWS(thickness(SetDescriptor::middle_epsilon(make_rational(1, 3)), 0));
  }

  TEST_CASE("asymmetric self-similar sets") {
    const Interval unit(Rational(0), Rational(1));
    // gaps 1/4 and 1/16 with the larger ratio 1/2
    const auto d = SetDescriptor::ifs(unit, {make_rational(1, 2), make_rational(1, 8), make_rational(1, 16)},
                                      {Rational(0), make_rational(3, 4), make_rational(15, 16)});
    const auto t3 = thickness(d, 3);
    CHECK(t3.kind == ThicknessKind::DepthTruncation);
    // the chunk brute force agrees on the same cover
    CHECK(thickness_chunk(d, 3).value == t3.value);
    const auto lower = thickness_ifs_lower(d.as_ifs());
    CHECK(lower.kind == ThicknessKind::LowerBound);
    CHECK(lower.value <= t3.value);

    const auto sym =
        SetDescriptor::ifs(unit, {make_rational(1, 4), make_rational(1, 4)}, {Rational(0), make_rational(3, 4)});
    CHECK(thickness(sym, 2).kind == ThicknessKind::Exact);
    CHECK(thickness(sym, 2).value == ExtRational(make_rational(1, 2)));
  }

  TEST_CASE("local thickness") {
    const auto d = SetDescriptor::middle_epsilon(make_rational(1, 3));
    const auto w = tilde_thickness(d, {Interval(Rational(0), make_rational(1, 3))}, 4);
    CHECK(w.value == ExtRational(Rational(1)));
    const auto cover = refine(d, 4);
    CHECK(window_thickness(cover, Interval(Rational(0), make_rational(1, 81))).is_infinite());
    const auto loc = local_thickness(d, {make_rational(1, 6)}, {make_rational(1, 6)}, 4);
    CHECK(loc.value == ExtRational(Rational(1)));
  }

  TEST_CASE("parallel and serial chunk kernels agree") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<oracle::Seg> gs;
      const auto d = random_gaps(rng, &gs);
      const auto cover = refine(d, 12);
      if (cover.size() < 2) continue;
      CHECK(chunk_thickness_of(cover) == chunk_thickness_of_serial(cover));
    }
  }
}
