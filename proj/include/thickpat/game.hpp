#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thickpat/enclosure.hpp"
#include "thickpat/interval_union.hpp"
#include "thickpat/monotone_map.hpp"
#include "thickpat/set_descriptor.hpp"

namespace thickpat {

/// (alpha, beta, c, rho). alpha and c may be computed reals (e.g. c = 1 - 1/log(tau beta)).
struct GameParams {
  Real alpha;
  Rational beta;
  Real c;
  Rational rho;

  /// Throws unless alpha > 0, 0 < beta < 1, c >= 0, rho > 0.
  void validate() const;
  std::string str() const;
};

/// Closed ball B(center, radius) on the line.
struct Ball {
  Rational center;
  Rational radius;
  Interval interval() const { return Interval(center - radius, center + radius); }
  static Ball of(const Interval& iv) { return Ball{iv.midpoint(), Rational(iv.length() / 2)}; }
  friend bool operator==(const Ball&, const Ball&) = default;
};

struct AliceMove {
  std::vector<Ball> erased;  ///< empty: pass
  friend bool operator==(const AliceMove&, const AliceMove&) = default;
};

struct Legality {
  bool ok = true;
  std::string rule;  ///< broken rule when !ok
  std::string note;  ///< "tight" when enclosures could not separate the two sides
  friend bool operator==(const Legality&, const Legality&) = default;
};

struct Turn {
  Ball bob;
  AliceMove alice;
  Legality alice_check;
  friend bool operator==(const Turn&, const Turn&) = default;
};

enum class Outcome { ErasedOutcome, OutcomeInTargetCover, Undetermined };
std::string outcome_label(Outcome o);
Outcome parse_outcome(const std::string& s);

struct GameTranscript {
  GameParams params;
  std::vector<Turn> turns;
  IntervalUnion erased;
  Outcome outcome = Outcome::Undetermined;
  std::optional<Interval> final_interval;
  Rational stop_radius;
  std::string violation;           ///< "bob: <rule>" or "alice: <rule>" when a move was illegal
  std::vector<std::string> notes;

  /// Bob's last ball, if any.
  const Ball* last_bob() const { return turns.empty() ? nullptr : &turns.back().bob; }
};

/// Exact equality of everything but the parameter reals, which compare by exact
/// value or by their rendered enclosure.
bool same_transcript(const GameTranscript& a, const GameTranscript& b);

Legality validate_bob_move(const GameTranscript& t, const Ball& move);
Legality validate_alice_move(const GameParams& params, const Rational& bob_radius, const AliceMove& move);

struct AliceStrategy {
  GameParams params;
  std::function<AliceMove(const GameTranscript&, const Ball&)> respond;
  std::string name;
};

struct BobStrategy {
  /// Next ball given the transcript so far; nullopt to stop early.
  std::function<std::optional<Ball>(const GameTranscript&)> next;
  std::string name;
};

/// Gaps that the finite-horizon classification treats as removed: every gap of
/// the set whose flanks are both at least 2 * stop. Outside the hull counts as covered.
struct TargetCover {
  Interval hull;
  std::vector<OpenInterval> gaps;  ///< sorted by position

  /// Final ball lies in erased ∪ (−inf, hull.lo) ∪ (hull minus gaps) ∪ (hull.hi, inf).
  bool covers(const Interval& b, const IntervalUnion& erased) const;
  TargetCover affine(const Rational& lambda, const Rational& t) const;
};

/// Gap depth for a self-similar set such that deeper construction intervals are shorter than beta * stop.
int gap_depth_for(const SetDescriptor& d, const Rational& beta, const Rational& stop);
TargetCover target_cover(const SetDescriptor& d, const Rational& stop, const Rational& beta);

/// Gap-erasing strategy on a set normalized to hull [0,1]: erase the unique
/// gap G meeting Bob's ball B with |B| <= min(|L|, |R|), as the ball with G's
/// midpoint and radius |G|/2, when legal and not erased before. Errors when the
/// hull is not [0,1] or the thickness is 0.
AliceStrategy alice_cantor_strategy(const SetDescriptor& d, const GameParams& params, const Rational& stop);
/// Params (1/(tau beta), beta, 0, beta/2) for the strategy above.
GameParams cantor_params(const SetDescriptor& d, const Rational& beta);

AliceStrategy widen_params(const AliceStrategy& s, const GameParams& wider);
/// Conjugate by x -> lambda x + t; params become (alpha, beta, c, |lambda| rho).
AliceStrategy transport_similarity(const AliceStrategy& s, const Rational& lambda, const Rational& t);
/// Strategy for f(S) from a c = 0 strategy for S; params (c2/c1 alpha, c2/c1 beta, 0, c2 rho).
AliceStrategy transport_bilip(const AliceStrategy& s, const MonotoneMap& f);
/// Union of the component erasures; alpha^c = sum alpha_j^c. Requires shared beta, c, rho and c > 0.
AliceStrategy combine_intersection(const std::vector<AliceStrategy>& parts);

BobStrategy bob_midpoint_zoom(Rational target, Rational first_center, Rational first_radius, Rational ratio);
/// Steers toward the longest gap of refine(d, depth) meeting the current ball, shrinking by `ratio`.
BobStrategy bob_gap_seeker(const SetDescriptor& d, int depth, Rational first_center, Rational first_radius,
                           Rational ratio);
/// Random legal play: first center uniform in [lo, hi], radius rho; ratio uniform in [beta, max_ratio].
/// Copies of the returned strategy share one generator.
BobStrategy bob_uniform_random(std::uint64_t seed, const GameParams& params, Rational lo, Rational hi,
                               Rational max_ratio = Rational(3, 4));
BobStrategy bob_scripted(std::vector<Ball> moves);
BobStrategy transport_bob(const BobStrategy& b, const Rational& lambda, const Rational& t);

/// Transcript image under x -> lambda x + t.
GameTranscript conjugate_transcript(const GameTranscript& tr, const Rational& lambda, const Rational& t);

/// Alternate validated moves until Bob's radius drops below `stop`.
GameTranscript play(const BobStrategy& bob, const AliceStrategy& alice, const Rational& stop,
                    const std::optional<TargetCover>& cover, int max_turns = 10000);

struct BatchSummary {
  std::size_t plays = 0;
  std::size_t erased = 0;
  std::size_t in_cover = 0;
  std::size_t undetermined = 0;
  std::size_t violations = 0;
  std::size_t repeated_erasures = 0;  ///< plays where a ball was erased twice
};

/// Play `count` games with Bob built from seeds seed0, seed0 + 1, ...
std::vector<GameTranscript> play_batch(const std::function<BobStrategy(std::uint64_t)>& make_bob,
                                       const AliceStrategy& alice, const Rational& stop,
                                       const std::optional<TargetCover>& cover, std::size_t count,
                                       std::uint64_t seed0);
std::vector<GameTranscript> play_batch_serial(const std::function<BobStrategy(std::uint64_t)>& make_bob,
                                              const AliceStrategy& alice, const Rational& stop,
                                              const std::optional<TargetCover>& cover, std::size_t count,
                                              std::uint64_t seed0);
BatchSummary summarize(const std::vector<GameTranscript>& ts);
bool has_repeated_erasure(const GameTranscript& t);

}  // namespace thickpat
