#include <doctest.h>

#include <cmath>

#include "thickpat/game.hpp"

using namespace thickpat;

namespace {

const SetDescriptor fifth = SetDescriptor::middle_epsilon(make_rational(1, 5));

GameParams params(Rational alpha, Rational beta, Rational c, Rational rho) {
  return GameParams{Real(alpha), beta, Real(c), rho};
}

}  // namespace

TEST_SUITE("game") {
  TEST_CASE("bob legality") {
    GameTranscript tr;
    tr.params = params(make_rational(1, 10), make_rational(1, 4), Rational(0), Rational(1));
    CHECK(validate_bob_move(tr, Ball{Rational(0), make_rational(1, 2)}).rule == "initial radius");
    CHECK(validate_bob_move(tr, Ball{Rational(0), Rational(0)}).rule == "radius positive");
    tr.turns.push_back(Turn{Ball{Rational(0), Rational(1)}, {}, {}});
    CHECK(validate_bob_move(tr, Ball{Rational(0), make_rational(1, 5)}).rule == "radius decay");
    CHECK(validate_bob_move(tr, Ball{make_rational(9, 10), make_rational(1, 4)}).rule == "nesting");
    CHECK(validate_bob_move(tr, Ball{make_rational(3, 4), make_rational(1, 4)}).ok);
  }

  TEST_CASE("alice legality") {
    const auto p0 = params(make_rational(1, 10), make_rational(1, 4), Rational(0), Rational(1));
    CHECK(validate_alice_move(p0, Rational(1), AliceMove{{Ball{Rational(0), make_rational(1, 10)}}}).ok);
    CHECK(validate_alice_move(p0, Rational(1), AliceMove{{Ball{Rational(0), make_rational(1, 9)}}}).rule ==
          "erasure radius");
    CHECK(validate_alice_move(
              p0, Rational(1),
              AliceMove{{Ball{Rational(0), make_rational(1, 20)}, Ball{Rational(1), make_rational(1, 20)}}})
              .rule == "single ball when c = 0");
    // c = 1/2: two balls of radius r need 2 sqrt(r) <= sqrt(alpha rho)
    const auto ph = params(make_rational(1, 4), make_rational(1, 4), make_rational(1, 2), Rational(1));
    const AliceMove two{{Ball{Rational(0), make_rational(1, 16)}, Ball{Rational(1), make_rational(1, 16)}}};
    const auto l = validate_alice_move(ph, Rational(1), two);
    CHECK(l.ok);
    const AliceMove over{{Ball{Rational(0), make_rational(1, 15)}, Ball{Rational(1), make_rational(1, 16)}}};
    CHECK(validate_alice_move(ph, Rational(1), over).rule == "erasure budget");
    CHECK(validate_alice_move(ph, Rational(1), AliceMove{{Ball{Rational(0), Rational(-1)}}}).rule ==
          "radius nonnegative");
  }

  TEST_CASE("cantor strategy wins random plays") {
    const Rational beta(1, 5), stop(1, 100000);
    const auto p = cantor_params(fifth, beta);
    CHECK(p.alpha.exact() == make_rational(5, 2));
    CHECK(p.rho == make_rational(1, 10));
    const auto alice = alice_cantor_strategy(fifth, p, stop);
    const auto cover = target_cover(fifth, stop, beta);
    auto make = [&](std::uint64_t s) { return bob_uniform_random(s, p, Rational(0), Rational(1)); };
    const auto ts = play_batch(make, alice, stop, cover, 60, 100);
    const auto ss = play_batch_serial(make, alice, stop, cover, 60, 100);
    REQUIRE(ts.size() == ss.size());
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(same_transcript(ts[i], ss[i]));
    const auto sum = summarize(ts);
    CHECK(sum.undetermined == 0);
    CHECK(sum.violations == 0);
    CHECK(sum.repeated_erasures == 0);
    CHECK_THROWS(alice_cantor_strategy(translate(fifth, Rational(1)), p, stop));
  }

  TEST_CASE("gap seeker and zoom bobs are legal") {
    const Rational beta(1, 5), stop(1, 10000);
    const auto p = cantor_params(fifth, beta);
    const auto alice = alice_cantor_strategy(fifth, p, stop);
    const auto cover = target_cover(fifth, stop, beta);
    const auto t1 = play(bob_gap_seeker(fifth, 6, make_rational(1, 2), make_rational(1, 2), make_rational(1, 5)), alice,
                         stop, cover);
    CHECK(t1.violation.empty());
    CHECK(t1.outcome != Outcome::Undetermined);
    const auto t2 =
        play(bob_midpoint_zoom(make_rational(1, 4), make_rational(1, 2), make_rational(1, 2), make_rational(1, 3)),
             alice, stop, cover);
    CHECK(t2.violation.empty());
    CHECK(t2.outcome != Outcome::Undetermined);
  }

  TEST_CASE("similarity transport commutes with conjugation") {
    const Rational beta(1, 5), stop(1, 10000);
    const auto p = cantor_params(fifth, beta);
    const auto alice = alice_cantor_strategy(fifth, p, stop);
    const auto cover = target_cover(fifth, stop, beta);
    for (auto [lam, t] : {std::pair{Rational(3), Rational(-1)}, std::pair{make_rational(-1, 2), Rational(7)}}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        // copies share the generator state, so each play gets a fresh Bob
        const auto base = play(bob_uniform_random(seed, p, Rational(0), Rational(1)), alice, stop, cover);
        const auto moved = play(transport_bob(bob_uniform_random(seed, p, Rational(0), Rational(1)), lam, t),
                                transport_similarity(alice, lam, t), abs(lam) * stop, cover.affine(lam, t));
        CHECK(same_transcript(conjugate_transcript(base, lam, t), moved));
      }
    }
  }

  TEST_CASE("bilipschitz transport scales parameters") {
    const auto p = cantor_params(fifth, make_rational(1, 5));
    const auto alice = alice_cantor_strategy(fifth, p, make_rational(1, 1000));
    const auto f = MonotoneMap::piecewise_linear({Rational(0), make_rational(1, 2), Rational(1)},
                                                 {Rational(0), make_rational(1, 2), Rational(2)});
    const auto moved = transport_bilip(alice, f);
    // slopes 1 and 3
    CHECK(moved.params.beta == make_rational(3, 5));
    CHECK(moved.params.rho == make_rational(3, 10));
    CHECK(compare(moved.params.alpha, Real(make_rational(15, 2))) == Ordering3::Equal);
  }

  TEST_CASE("combined strategies respect the summed budget") {
    const Rational beta(1, 4), stop(1, 10000);
    const auto d = SetDescriptor::middle_epsilon(make_rational(1, 9));
    const auto base = cantor_params(d, beta);
    const Real c(make_rational(1, 2));
    std::vector<AliceStrategy> parts;
    for (int j = 0; j < 3; ++j) {
      const auto a = alice_cantor_strategy(d, base, stop);
      const auto moved = transport_similarity(a, Rational(1), make_rational(j, 7));
      parts.push_back(widen_params(moved, GameParams{base.alpha, beta, c, base.rho}));
    }
    const auto comb = combine_intersection(parts);
    // (3 alpha^(1/2))^2 = 9 alpha
    CHECK(compare(comb.params.alpha, Real(Rational(9) * base.alpha.exact())) != Ordering3::Less);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto tr =
          play(bob_uniform_random(seed, comb.params, Rational(0), make_rational(9, 7)), comb, stop, std::nullopt);
      CHECK(tr.violation.empty());
    }
    CHECK_THROWS(combine_intersection({alice_cantor_strategy(d, base, stop), alice_cantor_strategy(d, base, stop)}));
  }

  TEST_CASE("scripted play records an illegal bob move") {
    const auto p = cantor_params(fifth, make_rational(1, 5));
    const auto alice = alice_cantor_strategy(fifth, p, make_rational(1, 1000));
    const auto tr = play(
        bob_scripted({Ball{make_rational(1, 2), make_rational(1, 2)}, Ball{make_rational(1, 2), make_rational(1, 20)}}),
        alice, make_rational(1, 1000), std::nullopt);
    CHECK(tr.violation == "bob: radius decay");
  }
}
