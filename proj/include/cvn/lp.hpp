#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cvn/rational.hpp"

// Exact rational linear programming over x >= 0. Two independent routes:
// Fourier-Motzkin elimination (feasibility plus a witness) and a two-phase
// simplex with Bland's rule (optimization).
namespace cvn::lp {

enum class Sense { le, eq, ge };

struct Constraint {
  std::vector<Rational> coef;
  Sense sense = Sense::le;
  Rational rhs;
};

/// Constraints over `variables` nonnegative unknowns.
struct Problem {
  int variables = 0;
  std::vector<Constraint> constraints;

  void add(std::vector<Rational> coef, Sense sense, Rational rhs) {
    constraints.push_back({std::move(coef), sense, std::move(rhs)});
  }
  bool satisfied_by(std::span<const Rational> x) const;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  std::vector<Rational> x;
  Rational value;
};

Solution maximize(const Problem& p, std::span<const Rational> objective);
Solution minimize(const Problem& p, std::span<const Rational> objective);

struct Elimination {
  enum class Outcome { feasible, infeasible, gave_up };
  Outcome outcome = Outcome::gave_up;
  std::vector<Rational> point;  // set when feasible
  std::size_t peak_rows = 0;
};

/// Fourier-Motzkin feasibility with back-substitution. Each variable is set
/// to the midpoint of its admissible interval when that interval is bounded.
/// Gives up once an intermediate system exceeds `max_rows` inequalities.
Elimination fourier_motzkin(const Problem& p, std::size_t max_rows = 20000);

/// Feasible point by elimination, falling back to simplex phase one.
std::optional<std::vector<Rational>> feasible_point(const Problem& p);

}  // namespace cvn::lp
