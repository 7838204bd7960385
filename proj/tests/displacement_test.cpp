#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cvn/displacement.hpp"
#include "cvn/lipschitz.hpp"
#include "support.hpp"

using namespace cvn;
using cvn::testing::random_automorphism;
using cvn::testing::random_lengths;
using cvn::testing::random_simplex;

namespace {

AutoPair golden() {
  return AutoPair({Word::generator(2), parse_word("ab", 2)}, {parse_word("bA", 2), Word::generator(1)});
}

const RatioSystem::Row* row_for(const RatioSystem& sys, const std::string& word) {
  for (const auto& r : sys.rows) {
    if (to_string(r.candidate) == word) return &r;
  }
  return nullptr;
}

// Perron-Frobenius eigenvalue of the abelianised golden map by power iteration.
double power_iteration(const std::vector<std::vector<double>>& m) {
  std::vector<double> v(m.size(), 1.0);
  double lambda = 0;
  for (int it = 0; it < 200; ++it) {
    std::vector<double> w(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) w[i] += m[i][j] * v[j];
    }
    lambda = *std::max_element(w.begin(), w.end());
    for (double& x : w) x /= lambda;
    v = w;
  }
  return lambda;
}

}  // namespace

TEST_CASE("golden ratio system on the rose") {
  const RatioSystem sys = build_ratio_system(identity_rose(2), golden());
  REQUIRE(sys.rows.size() == 4);
  const auto* a = row_for(sys, "a");
  const auto* b = row_for(sys, "b");
  const auto* ab = row_for(sys, "a b");
  REQUIRE(a);
  REQUIRE(b);
  REQUIRE(ab);
  CHECK(a->num == std::vector<int>{0, 1});
  CHECK(a->den == std::vector<int>{1, 0});
  CHECK(b->num == std::vector<int>{1, 1});
  CHECK(b->den == std::vector<int>{0, 1});
  CHECK(ab->num == std::vector<int>{1, 2});
  CHECK(ab->den == std::vector<int>{1, 1});
  CHECK(*sys.evaluate(std::vector<Rational>{Rational(1, 2), Rational(1, 2)}) == 2);
  CHECK_FALSE(sys.evaluate(std::vector<Rational>{0, 1}).has_value());
}

TEST_CASE("golden minimum brackets the Perron-Frobenius eigenvalue") {
  const Rational tol(1, 1000000000);
  const MinimizationResult r = min_displacement_on_simplex(identity_rose(2), golden(), tol);
  // Exact: the golden ratio is the positive root of t^2 - t - 1.
  CHECK(r.lower * r.lower - r.lower - 1 <= 0);
  CHECK(r.upper * r.upper - r.upper - 1 >= 0);
  CHECK(r.upper <= r.lower * (1 + tol));
  const double pf = power_iteration({{0, 1}, {1, 1}});
  CHECK(std::abs(to_double(r.upper) - pf) < 1e-8);
  CHECK(r.interior);
  CHECK(r.argmin[0] > 0);
  CHECK(r.argmin[1] > 0);
  const CVPoint at{identity_rose(2), r.argmin};
  CHECK(displacement_at(at, golden()) <= r.upper);
}

TEST_CASE("ratio system matches the stretch of the translate") {
  std::mt19937_64 rng(50);
  for (int i = 0; i < 100; ++i) {
    const int rank = 2 + i % 2;
    const MarkedGraph m = random_simplex(rank, rng);
    const AutoPair phi = random_automorphism(rank, rng);
    const RatioSystem sys = build_ratio_system(m, phi);
    const CVPoint x{m, random_lengths(m.graph.edge_count(), rng)};
    const Rational d = displacement_at(x, phi);
    CHECK(*sys.evaluate(x.lengths) == d);
    CHECK(stretch(x, act(x, phi)).value == d);
    CHECK_FALSE(sys.active(x.lengths, d).empty());
  }
}

TEST_CASE("simplex minimum is below every sampled displacement") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 20; ++i) {
    const MarkedGraph m = random_simplex(2, rng);
    const AutoPair phi = random_automorphism(2, rng);
    const MinimizationResult r = min_displacement_on_simplex(m, phi, Rational(1, 1000));
    CHECK(r.lower <= r.upper);
    CHECK(r.lower >= 1);
    for (int j = 0; j < 10; ++j) {
      const CVPoint x{m, random_lengths(m.graph.edge_count(), rng)};
      CHECK(displacement_at(x, phi) >= r.lower);
    }
  }
  CHECK_THROWS_AS(min_displacement_on_simplex(identity_rose(2), golden(), 0), std::invalid_argument);
}

TEST_CASE("fixed-point polytope of a symmetric theta") {
  const MarkedGraph theta = tree_marking(make_theta(3), 0, {0});
  Isomorphism rot{{0, 1}, {forward(1), forward(2), forward(0)}};
  const FixedPolytope f = fixed_point_polytope(theta, induced_automorphism(theta, rot));
  CHECK(f.feasible);
  CHECK(f.interior);
  CHECK(f.max_min_length == Rational(1, 3));
  CHECK(f.problem.satisfied_by(f.point));
  const FixedPolytope g = fixed_point_polytope(identity_rose(2), golden());
  CHECK_FALSE(g.feasible);
}

TEST_CASE("displacement is quasi-convex along segments") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 30; ++i) {
    const MarkedGraph m = random_simplex(2, rng);
    const AutoPair phi = random_automorphism(2, rng);
    const CVPoint x{m, random_lengths(m.graph.edge_count(), rng)};
    const CVPoint y{m, random_lengths(m.graph.edge_count(), rng)};
    const auto profile = segment_profile(x, y, phi, 8);
    REQUIRE(profile.size() == 9);
    const Rational ends = std::max(*profile.front(), *profile.back());
    for (const auto& v : profile) CHECK(*v <= ends);
  }
}
