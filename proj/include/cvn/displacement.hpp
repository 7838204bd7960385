#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cvn/free_group.hpp"
#include "cvn/lp.hpp"
#include "cvn/outer_space.hpp"
#include "cvn/rational.hpp"

namespace cvn {

/// For each candidate a of a simplex: num = edge crossings of the loop
/// realising phi(a), den = edge crossings of a. At lengths L the displacement
/// is max_a (num.L) / (den.L).
struct RatioSystem {
  struct Row {
    CyclicWord candidate;
    std::vector<int> num, den;
  };
  int edges = 0;
  std::vector<Row> rows;

  /// max_a num.L / den.L over rows with den.L > 0; nullopt when some row has
  /// den.L == 0 (the point lies outside the closed simplex's CV part).
  std::optional<Rational> evaluate(std::span<const Rational> lengths) const;
  /// Rows attaining `value` at L.
  std::vector<CyclicWord> active(std::span<const Rational> lengths, const Rational& value) const;
};

RatioSystem build_ratio_system(const SimplexRef& s, const AutoPair& phi);

/// Lambda(x, act(x, phi)); x must be open.
Rational displacement_at(const CVPoint& x, const AutoPair& phi);

struct MinimizationResult {
  Rational lower, upper;          // lower <= min <= upper
  std::vector<Rational> argmin;   // feasible at `upper`
  std::vector<CyclicWord> active;
  bool interior = false;          // some open-simplex point reaches `upper`
  int steps = 0;
};

/// Feasibility system {L >= 0, sum L = 1, num.L <= t den.L}. With
/// `with_margin` an extra last variable delta satisfies L_e >= delta.
lp::Problem ratio_problem(const RatioSystem& sys, const Rational& t, bool with_margin);

/// Bisection on t over exact feasibility problems, starting from [1, value at
/// the centre]. Stops once upper <= lower (1 + tol). Throws
/// std::invalid_argument when tol <= 0.
MinimizationResult min_displacement_on_simplex(const SimplexRef& s, const AutoPair& phi,
                                               const Rational& tol);
MinimizationResult minimize(const RatioSystem& sys, const Rational& tol);

struct FixedPolytope {
  lp::Problem problem;  // at t = 1
  bool feasible = false;
  Rational max_min_length;  // largest achievable minimum edge length
  bool interior = false;    // max_min_length > 0
  std::vector<Rational> point;  // a maximiser of the minimum edge length
};

FixedPolytope fixed_point_polytope(const SimplexRef& s, const AutoPair& phi);

/// Displacement at k+1 evenly spaced points of the segment from x to y,
/// which must share a graph. A sample whose ratio system has a vanishing
/// denominator is reported as nullopt.
std::vector<std::optional<Rational>> segment_profile(const CVPoint& x, const CVPoint& y,
                                                     const AutoPair& phi, int k);

}  // namespace cvn
