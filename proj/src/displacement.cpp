#include "cvn/displacement.hpp"

#include <stdexcept>

#include "cvn/lipschitz.hpp"

namespace cvn {

namespace {

Rational dot(const std::vector<int>& v, std::span<const Rational> lengths) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) s += v[i] * lengths[i];
  }
  return s;
}

// Value with rows of zero denominator ignored; nullopt if such a row has a
// positive numerator (infinite ratio).
std::optional<Rational> certified_value(const RatioSystem& sys, std::span<const Rational> lengths) {
  std::optional<Rational> best;
  for (const RatioSystem::Row& r : sys.rows) {
    const Rational d = dot(r.den, lengths);
    const Rational n = dot(r.num, lengths);
    if (d == 0) {
      if (n != 0) return std::nullopt;
      continue;
    }
    const Rational v = n / d;
    if (!best || v > *best) best = v;
  }
  return best;
}

}  // namespace

std::optional<Rational> RatioSystem::evaluate(std::span<const Rational> lengths) const {
  for (const Row& r : rows) {
    if (dot(r.den, lengths) == 0) return std::nullopt;
  }
  return certified_value(*this, lengths);
}

std::vector<CyclicWord> RatioSystem::active(std::span<const Rational> lengths,
                                            const Rational& value) const {
  std::vector<CyclicWord> out;
  for (const Row& r : rows) {
    const Rational d = dot(r.den, lengths);
    if (d != 0 && dot(r.num, lengths) == value * d) out.push_back(r.candidate);
  }
  return out;
}

RatioSystem build_ratio_system(const SimplexRef& s, const AutoPair& phi) {
  RatioSystem sys;
  sys.edges = s.graph.edge_count();
  for (const Candidate& c : candidate_loops(s)) {
    const EdgePath image = realise(s, phi.apply(c.word));
    sys.rows.push_back({c.word, crossings(s.graph, image), c.crossings});
  }
  return sys;
}

Rational displacement_at(const CVPoint& x, const AutoPair& phi) {
  if (!x.open()) throw std::domain_error("displacement_at: zero-length edge (infinite stretch risk)");
  return *build_ratio_system(x.marked, phi).evaluate(x.lengths);
}

lp::Problem ratio_problem(const RatioSystem& sys, const Rational& t, bool with_margin) {
  const int n = sys.edges;
  lp::Problem p;
  p.variables = n + (with_margin ? 1 : 0);
  const auto width = static_cast<std::size_t>(p.variables);
  std::vector<Rational> ones(width, 1);
  if (with_margin) ones.back() = 0;
  p.add(ones, lp::Sense::eq, 1);
  for (const RatioSystem::Row& r : sys.rows) {
    std::vector<Rational> coef(width, 0);
    for (int e = 0; e < n; ++e) {
      const auto i = static_cast<std::size_t>(e);
      coef[i] = r.num[i] - t * r.den[i];
    }
    p.add(std::move(coef), lp::Sense::le, 0);
  }
  if (with_margin) {
    for (int e = 0; e < n; ++e) {
      std::vector<Rational> coef(width, 0);
      coef[static_cast<std::size_t>(e)] = 1;
      coef.back() = -1;
      p.add(std::move(coef), lp::Sense::ge, 0);
    }
  }
  return p;
}

namespace {

// Maximizes the margin delta at t; returns the optimum (x with delta last).
lp::Solution widest(const RatioSystem& sys, const Rational& t) {
  const lp::Problem p = ratio_problem(sys, t, true);
  std::vector<Rational> objective(static_cast<std::size_t>(p.variables), 0);
  objective.back() = 1;
  return lp::maximize(p, objective);
}

}  // namespace

MinimizationResult minimize(const RatioSystem& sys, const Rational& tol) {
  if (tol <= 0) throw std::invalid_argument("min_displacement_on_simplex: tol must be positive");
  if (sys.rows.empty()) throw std::invalid_argument("min_displacement_on_simplex: no candidates");
  MinimizationResult r;
  r.argmin.assign(static_cast<std::size_t>(sys.edges), Rational(1, sys.edges));
  r.upper = *sys.evaluate(r.argmin);
  r.lower = 1;
  auto try_level = [&](const Rational& t) {
    ++r.steps;
    const auto point = lp::feasible_point(ratio_problem(sys, t, false));
    if (!point) return false;
    const std::optional<Rational> v = certified_value(sys, *point);
    if (!v || *v > t) throw std::logic_error("min_displacement_on_simplex: witness above level");
    r.upper = *v;
    r.argmin = *point;
    return true;
  };
  if (r.upper > 1) try_level(1);
  while (r.upper > r.lower * (1 + tol)) {
    // A short rational near the midpoint keeps the exact systems small.
    const Rational w = r.upper - r.lower;
    const Rational t = simplest_between(r.lower + w * 2 / 5, r.upper - w * 2 / 5);
    if (!try_level(t)) r.lower = t;
  }
  const lp::Solution w = widest(sys, r.upper);
  if (w.status == lp::Status::optimal && w.value > 0) {
    std::vector<Rational> point(w.x.begin(), w.x.end() - 1);
    const Rational v = *sys.evaluate(point);
    if (v <= r.upper) {
      r.upper = v;
      r.argmin = std::move(point);
    }
    r.interior = true;
  }
  if (r.lower > r.upper) r.lower = r.upper;
  r.active = sys.active(r.argmin, r.upper);
  return r;
}

MinimizationResult min_displacement_on_simplex(const SimplexRef& s, const AutoPair& phi,
                                               const Rational& tol) {
  return minimize(build_ratio_system(s, phi), tol);
}

FixedPolytope fixed_point_polytope(const SimplexRef& s, const AutoPair& phi) {
  const RatioSystem sys = build_ratio_system(s, phi);
  FixedPolytope f;
  f.problem = ratio_problem(sys, 1, false);
  const lp::Solution w = widest(sys, 1);
  f.feasible = w.status == lp::Status::optimal;
  if (f.feasible) {
    f.max_min_length = w.value;
    f.interior = w.value > 0;
    f.point.assign(w.x.begin(), w.x.end() - 1);
  }
  return f;
}

std::vector<std::optional<Rational>> segment_profile(const CVPoint& x, const CVPoint& y,
                                                     const AutoPair& phi, int k) {
  if (k < 1) throw std::invalid_argument("segment_profile: k must be positive");
  if (x.lengths.size() != y.lengths.size()) {
    throw std::invalid_argument("segment_profile: points lie in different simplices");
  }
  const RatioSystem sys = build_ratio_system(x.marked, phi);
  std::vector<std::optional<Rational>> out;
  for (int i = 0; i <= k; ++i) {
    Rational s(i, k);
    s.canonicalize();
    std::vector<Rational> l(x.lengths.size());
    for (std::size_t e = 0; e < l.size(); ++e) l[e] = (1 - s) * x.lengths[e] + s * y.lengths[e];
    out.push_back(sys.evaluate(l));
  }
  return out;
}

}  // namespace cvn
