// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cvn/dicks_ventura.hpp"
#include "cvn/displacement.hpp"
#include "cvn/lipschitz.hpp"
#include "cvn/min_explorer.hpp"
#include "cvn/text_format.hpp"
#include "support.hpp"

using namespace cvn;
using cvn::testing::closed_systole;
using cvn::testing::random_automorphism;
using cvn::testing::random_point;

namespace {

// Orbit count of the golden census; fixed by the first full run.
constexpr std::size_t kGoldenOrbits = 3;

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

AutoPair golden() { return *builtin_auto("golden"); }

// phi = (1 + sqrt 5) / 2 is the positive root of t^2 - t - 1.
bool below_golden(const Rational& t) { return t * t - t - 1 <= 0; }
bool above_golden(const Rational& t) { return t * t - t - 1 >= 0; }

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  int pairs = 0;
  for (int rank : {2, 3}) {
    for (int i = 0; i < 60; ++i) {
      const CVPoint x = random_point(rank, rng, rank == 3);
      const CVPoint y = random_point(rank, rng);
      const Rational fast = stretch(x, y).value;
      const Rational slow = stretch_bruteforce(x, y, 12);
      o.require(fast == slow, "rank " + std::to_string(rank) + " pair " + std::to_string(i) + ": " +
                                  to_string(fast) + " vs " + to_string(slow));
      ++pairs;
    }
  }
  o.note << pairs << " pairs, loops of <= 12 edges";
  return o;
}

Outcome golden_displacement() {
  Outcome o;
  const MinimizationResult r = min_displacement_on_simplex(identity_rose(2), golden(), Rational(1, 1000000000));
  o.require(below_golden(r.lower) && above_golden(r.upper), "bracket misses (1+sqrt5)/2");
  o.require(r.upper - r.lower <= Rational(1, 1000000000), "bracket wider than 1e-9");
  const double x0 = (3 - std::sqrt(5.0)) / 2;
  o.require(std::abs(to_double(r.argmin[0]) - x0) <= 1e-6 && std::abs(to_double(r.argmin[1]) - (1 - x0)) <= 1e-6,
            "argmin away from ((3-sqrt5)/2, (sqrt5-1)/2)");
  o.note << "[" << to_double(r.lower) << ", " << to_double(r.upper) << "] width " << to_double(r.upper - r.lower);
  return o;
}

Outcome metric_axioms() {
  Outcome o;
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const int rank = 2 + i % 2;
    const CVPoint x = random_point(rank, rng), y = random_point(rank, rng), z = random_point(rank, rng);
    const Rational xy = stretch(x, y).value, yz = stretch(y, z).value, xz = stretch(x, z).value;
    o.require(xy >= 1, "Lambda < 1");
    o.require((xy == 1) == marked_graph_equal(x, y), "Lambda = 1 disagrees with marked equality");
    o.require(xz <= xy * yz, "triangle inequality");
    o.require(stretch(x, x).value == 1, "Lambda(x, x) != 1");
    // Same point presented through an inner automorphism.
    const CVPoint x2 = act(x, conjugation(Word::generator(1), rank));
    o.require(marked_graph_equal(x, x2) && stretch(x, x2).value == 1, "conjugate marking not equal");
    const AutoPair psi = random_automorphism(rank, rng);
    o.require(stretch(act(x, psi), act(y, psi)).value == xy, "action is not an isometry");
  }
  o.note << "100 random triples, ranks 2 and 3";
  return o;
}

Outcome thickness_bounds(const Census& census) {
  Outcome o;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const int rank = 2 + i % 2;
    const CVPoint t = random_point(rank, rng);
    const CVPoint c = centre(t.marked);
    o.require(systole(c) >= Rational(1, 3 * rank - 3), "centre thinner than 1/(3N-3)");
    const Rational eps = systole(t);
    const CVPoint s{t.marked, cvn::testing::random_lengths(t.marked.graph.edge_count(), rng)};
    o.require(stretch(t, s).value <= 2 / eps, "same-simplex stretch above 2/eps");
  }
  // 1 / ((3N-3) mu^(3N-2)) with N = 2, mu = 17/10.
  Rational mu(17, 10);
  const Rational eps1 = 1 / (3 * mu * mu * mu * mu);
  Rational thinnest = 1;
  for (const SimplexCensusEntry& e : census.entries) {
    const Rational s = closed_systole(e.point);
    o.require(s >= eps1, "census point thinner than eps1");
    thinnest = std::min(thinnest, s);
  }
  o.require(census.best < mu, "mu does not exceed the displacement");
  o.note << "census systole min " << to_double(thinnest) << " >= " << to_double(eps1);
  return o;
}

Outcome ball_inclusion() {
  Outcome o;
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const int rank = 2 + i % 2;
    const CVPoint x = random_point(rank, rng), t = random_point(rank, rng);
    const Rational lambda = stretch(x, t).value;
    for (const Rational& r : std::vector<Rational>{lambda, lambda * Rational(3, 2), Rational(5, 4)}) {
      if (!ball_membership(x, t, r, Ball::in)) continue;
      o.require(systole(x) >= systole(t) / r, "in-ball point thinner than systole(T)/r");
      ++checked;
    }
  }
  o.note << checked << " memberships checked";
  return o;
}

Outcome unique_fixed_point() {
  Outcome o;
  for (const FiniteOrderModel& m : {build_Xp(3), build_Xpq(2, 3)}) {
    const AutoPair& phi = m.induced;
    const int n = phi.rank();
    o.require(verify_unique_fixed_point(m).pass, m.name + " verification");
    const AutoPair s = sigma(m);
    o.require(marked_graph_equal(m.point, act(m.point, s)), m.name + " sigma moves T");
    o.require(compose(s, s) == AutoPair::identity(n), m.name + " sigma^2 != id");
    o.require(is_inner(compose(compose(s, phi), compose(phi, s).inverse())).has_value(),
              m.name + " sigma and phi do not commute");
    o.require(is_inner(power(phi, m.order)).has_value(), m.name + " phi^order not inner");
    const IsometryCount iso = unique_isometry_representative(m);
    o.require(iso.count == 1 && iso.representative == m.graph_map, m.name + " representative not unique");
    o.note << m.name << " ok (" << iso.isometries << " isometries); ";
  }
  o.require(power(build_Xp(3).induced, 3) == AutoPair::identity(2), "alpha_3^3 != id");
  return o;
}

Outcome cocompactness(const Census& small, const Census& doubled) {
  Outcome o;
  const AutoPair phi = golden();
  const Quotient q1 = quotient_by_power(small.entries, phi, 2 * static_cast<int>(small.entries.size()));
  const Quotient q2 = quotient_by_power(doubled.entries, phi, 2 * static_cast<int>(doubled.entries.size()));
  o.require(!small.partial && !doubled.partial, "census hit a limit");
  o.require(q1.representatives.size() == q2.representatives.size(), "orbit count changed when limits doubled");
  o.require(q1.representatives.size() == kGoldenOrbits, "orbit count differs from the recorded constant");
  // Without identification the search walks along the orbit; its quotient
  // must agree.
  ExploreLimits plain;
  plain.max_simplices = 40;
  const MinimizationResult seed = min_displacement_on_simplex(identity_rose(2), phi, Rational(1, 1000000000));
  const Census walk = explore_min_set({identity_rose(2), seed.argmin}, phi, Rational(1, 1000000), plain);
  const Quotient q3 = quotient_by_power(walk.entries, phi, 2 * static_cast<int>(walk.entries.size()));
  o.require(q3.representatives.size() == q1.representatives.size(), "plain search quotient differs");
  o.note << "census " << small.entries.size() << "/" << doubled.entries.size() << ", orbits "
         << q1.representatives.size() << "/" << q2.representatives.size() << ", plain walk of "
         << walk.entries.size() << " -> " << q3.representatives.size();
  return o;
}

// Face point lengths written in the coordinates of its coface.
std::vector<Rational> lift(const Census& c, const FaceLink& link) {
  const SimplexRef& big = c.entries[static_cast<std::size_t>(link.coface)].simplex;
  const CVPoint& face = c.entries[static_cast<std::size_t>(link.face)].point;
  const EdgeId forest[] = {link.edge};
  const Collapse col = collapse_forest(big.graph, forest);
  std::vector<Rational> out(static_cast<std::size_t>(big.graph.edge_count()), 0);
  for (EdgeId e = 0; e < big.graph.edge_count(); ++e) {
    const EdgeId img = col.edge_map[static_cast<std::size_t>(e)];
    if (img < 0) continue;
    out[static_cast<std::size_t>(e)] = face.lengths[static_cast<std::size_t>(edge_of(link.iso.apply(forward(img))))];
  }
  return out;
}

Outcome quasiconvexity(const Census& census) {
  Outcome o;
  const AutoPair phi = golden();
  const Rational bound = census.best * (1 + Rational(1, 1000000));
  int segments = 0;
  for (std::size_t i = 0; i < census.entries.size(); ++i) {
    const SimplexCensusEntry& e = census.entries[i];
    std::vector<std::vector<Rational>> points{e.point.lengths};
    for (const FaceLink& l : census.links) {
      if (l.coface != static_cast<int>(i)) continue;
      points.push_back(lift(census, l));
      const RatioSystem sys = build_ratio_system(e.simplex, phi);
      const auto at_face = sys.evaluate(points.back());
      o.require(at_face && *at_face == *build_ratio_system(census.entries[static_cast<std::size_t>(l.face)].simplex, phi)
                                                .evaluate(census.entries[static_cast<std::size_t>(l.face)].point.lengths),
                "lifted face point changes displacement");
    }
    for (std::size_t a = 0; a < points.size(); ++a) {
      for (std::size_t b = a + 1; b < points.size(); ++b) {
        for (const auto& v : segment_profile({e.simplex, points[a]}, {e.simplex, points[b]}, phi, 10)) {
          o.require(v.has_value() && *v <= bound, "segment leaves the Min-set");
        }
        ++segments;
      }
    }
  }
  o.require(segments > 0, "no pair of census points shares a closed simplex");
  o.note << segments << " segments, k = 10";
  return o;
}

Outcome negative_controls() {
  Outcome o;
  const FixedPointReport r = verify_unique_fixed_point(identity_model());
  const auto fail = r.first_failure();
  o.require(!r.pass && fail && fail->step == "simplex", "identity does not fail at the simplex step");
  const FiniteOrderModel x3 = build_Xp(3);
  const CVPoint off{x3.point.marked, {Rational(1, 2), Rational(1, 4), Rational(1, 4)}};
  const Rational d = displacement_at(off, x3.induced);
  o.require(d > 1, "alpha_3 displacement at a non-fixed point is 1");
  o.note << "identity fails at step 1; alpha_3 displacement off centre " << to_string(d);
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const std::string& title, const std::function<Outcome()>& run) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << n << "  " << title << "  (" << o.note.str()
              << "; " << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
    std::cout.unsetf(std::ios::fixed);
    failures += o.pass ? 0 : 1;
  };

  const AutoPair phi = golden();
  const MinimizationResult seed = min_displacement_on_simplex(identity_rose(2), phi, Rational(1, 1000000000));
  const CVPoint seed_point{identity_rose(2), seed.argmin};
  ExploreLimits limits;
  limits.modulo_phi = true;
  limits.max_simplices = 500;
  const Census census = explore_min_set(seed_point, phi, Rational(1, 1000000), limits);
  limits.max_simplices = 1000;
  limits.max_steps *= 2;
  const Census doubled = explore_min_set(seed_point, phi, Rational(1, 1000000), limits);

  report(1, "candidates agree with brute force", oracle_equivalence);
  report(2, "golden displacement bracket", golden_displacement);
  report(3, "metric axioms", metric_axioms);
  report(4, "thickness bounds", [&] { return thickness_bounds(census); });
  report(5, "in-ball thickness inclusion", ball_inclusion);
  report(6, "unique fixed point of X_3 and X_2,3", unique_fixed_point);
  report(7, "cocompactness exhibit for golden", [&] { return cocompactness(census, doubled); });
  report(8, "quasiconvexity on closed simplices", [&] { return quasiconvexity(census); });
  report(9, "negative controls", negative_controls);
  return failures == 0 ? 0 : 1;
}
