#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thickpat/enclosure.hpp"
#include "thickpat/game.hpp"
#include "thickpat/interval_union.hpp"

namespace thickpat {

struct ConstructionParams {
  Real alpha{Rational(1, 1000)};
  Rational beta{1, 4};
  Real c{Rational(1, 2)};
  Rational rho{1};
  Rational x0{0};
  int N = 2;
  Rational gamma{1, 72};
  int J = 3;

  void validate() const;
  /// rho_n = beta^n rho.
  Rational rho_at(int n) const { return pow(beta, n) * rho; }
  /// floor(1 / (720 alpha)); reported, not required.
  std::optional<Integer> canonical_N() const;
  /// M = ceil(beta^{-N} / 6).
  long M() const;
  /// alpha^c <= (1/720^2)(1 - beta^{1-c}), decided with enclosures (nullopt if undecided).
  std::optional<bool> constant_condition() const;
};

enum class Grid { E, D };

/// Ball of the level-n lattice: E centers (rho_n / 2) z + x0, D centers 3 rho_n z + x0, radius rho_n.
struct GridBall {
  int level = 0;
  Grid grid = Grid::E;
  long z = 0;
  Rational center;
  Rational radius;

  Ball ball() const { return Ball{center, radius}; }
  Interval interval() const { return Interval(center - radius, center + radius); }
  /// Index of the same ball in the E lattice.
  long e_index() const { return grid == Grid::D ? 6 * z : z; }
  friend bool operator==(const GridBall& a, const GridBall& b) { return a.level == b.level && a.center == b.center; }
};

GridBall grid_ball(int level, Grid grid, long z, const ConstructionParams& p);

/// Parent at level n of a level n+1 ball: the D ball containing it when n is a
/// multiple of N and one exists, else the most centered containing E ball (ties:
/// smaller center).
GridBall project(const GridBall& b, const ConstructionParams& p);
/// pi_m: iterate project down to level m.
GridBall project_to(const GridBall& b, int m, const ConstructionParams& p);

/// Alice's answer to Bob's ball at its level; a finite collection of balls.
using AliceOracle = std::function<std::vector<Ball>(const GridBall&)>;
AliceOracle no_erasure_oracle();
/// Wraps a game strategy: it answers each ball as if it were a first move.
AliceOracle strategy_oracle(const AliceStrategy& s);

/// phi_j(B) = sum over n < j of rho_A^c over Alice's answers A to pi_n(B) meeting B.
/// Exact when c is 0 or 1 (or every contributing radius is 0); otherwise an enclosure.
struct PhiValue {
  Enclosure value;
  std::optional<Rational> exact;
  int contributions = 0;
};
PhiValue potential_phi(int j, const GridBall& b, const AliceOracle& oracle, const ConstructionParams& p);

/// D balls of level (j+1)N inside (1/2)B, left to right; B is a D ball at level jN.
std::vector<GridBall> children(const GridBall& b, const ConstructionParams& p);

/// Children with phi_{(j+1)N} <= (gamma rho_{(j+1)N})^c.
std::vector<GridBall> filter_good(const std::vector<GridBall>& kids, const AliceOracle& oracle,
                                  const ConstructionParams& p);

struct NestingResult {
  enum class Status { Witness, Counterexample, Inadmissible } status = Status::Inadmissible;
  long z_prime = 0;
  Rational i1_lo, i1_hi, i2_lo, i2_hi;
  bool geometric_ok = false;  ///< the witness ball really satisfies B' ⊆ B and B'' ⊆ (1/2)B'
};
/// Integer z' in I_1 ∩ I_2 for the intermediate level k (1 <= k <= N-1).
NestingResult verify_nesting_lemma(long z, long z2, int k, int N, const Rational& beta);

struct NestingSweep {
  long checked = 0;
  long counterexamples = 0;
  long geometric_failures = 0;
  Rational min_i1_length, min_i2_length;
  std::vector<std::string> reports;
};
/// Every admissible (z, z'') with |z| <= zmax and k in 1..N-1.
NestingSweep sweep_nesting_lemma(const Rational& beta, int N, long zmax);

struct ProjectionSweep {
  long checked = 0;
  long failures = 0;           ///< pi_{jN}(B') != B for B' inside (1/2)B
  long containment_failures = 0;
  std::vector<std::string> reports;
};
/// Property: n > jN, B in D_{jN}, B' in E_n with B' ⊆ (1/2)B imply pi_{jN}(B') = B,
/// for j in {0, 1}, |z| <= zmax and n in jN+1 .. (j+1)N; also b ⊆ project(b).
ProjectionSweep sweep_projection(const ConstructionParams& p, long zmax);

struct CountingInstance {
  long children = 0;
  long bad = 0;
  long good = 0;
  long obs_bound = 0;   ///< ceil((7/24) beta^{-N})
  long prop_bound = 0;  ///< floor((1/12) beta^{-N})
  long lemma_bound = 0; ///< ceil((1/6) beta^{-N})
  bool children_ok = false;
  bool bad_ok = false;
  bool good_ok = false;
};
CountingInstance counting_chain(const GridBall& b, const AliceOracle& oracle, const ConstructionParams& p);

struct TreeNode {
  int level = 0;        ///< j; the ball lives at lattice level jN
  long parent = -1;     ///< index into the previous level
  GridBall ball;
  double phi = 0;       ///< midpoint of the phi enclosure
  long children_total = 0;
  long children_good = 0;
};

struct FractalTree {
  ConstructionParams params;
  long M = 0;
  std::vector<std::vector<TreeNode>> levels;
  std::vector<IntervalUnion> covers;
};

/// Levels 0..J, each node replaced by its leftmost M good children. Throws on a
/// good-children shortfall, naming the node.
FractalTree build_fractal(const ConstructionParams& p, const AliceOracle& oracle);
FractalTree build_fractal_serial(const ConstructionParams& p, const AliceOracle& oracle);

struct DimensionEstimate {
  double box_slope = 0;        ///< least-squares slope of log N(s) vs log(1/s), s = 2 rho_{jN}
  double node_slope = 0;       ///< same with node counts
  double theoretical = 0;      ///< log M / (N |log beta|)
  std::optional<double> dim_bound;  ///< 1 - 1440 alpha log 6 / |log beta| when the constant condition holds
  std::vector<std::pair<Rational, long>> box_counts;  ///< (scale, count) per level
};
DimensionEstimate dimension_estimate(const FractalTree& tree);

struct ConstantsCheck {
  std::optional<Integer> N;
  bool item1 = false;  ///< 5 N alpha <= 1/144
  bool item2 = false;  ///< 5 alpha^c gamma^{-c} sum_{k>=0} beta^{k(1-c)} <= 1/144
  bool item3 = false;  ///< beta^{N(1-c)} <= 1/72
  bool dim_positive = false;  ///< 1 - 1440 alpha log 6 / |log beta| > 0
};
/// The three constant inequalities behind the counting bound, with the canonical N and gamma = 1/72.
ConstantsCheck check_constants(const Real& alpha, const Rational& beta, const Real& c);

/// min{1, x^c / (gamma y)^c} (x + 2y) <= 3 x^c max{x^{1-c}, y^{1-c} / gamma^c}.
bool check_potential_inequality(const Rational& x, const Rational& y, const Real& c, const Rational& gamma);

}  // namespace thickpat
