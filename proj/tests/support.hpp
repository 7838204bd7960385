#pragma once

// Random samples shared by the unit tests and the acceptance suite.

#include <random>
#include <vector>

#include "cvn/free_group.hpp"
#include "cvn/graph.hpp"
#include "cvn/outer_space.hpp"

namespace cvn::testing {

inline AutoPair random_automorphism(int rank, std::mt19937_64& rng, int max_moves = 5) {
  AutoPair phi = AutoPair::identity(rank);
  const int moves = std::uniform_int_distribution<int>(1, max_moves)(rng);
  for (int i = 0; i < moves; ++i) phi = compose(phi, random_elementary(rank, rng));
  return phi;
}

/// Random marked graph: blow-ups of the rose (trivalent when `trivalent`),
/// then a marking change by at most five elementary automorphisms.
inline MarkedGraph random_simplex(int rank, std::mt19937_64& rng, bool trivalent = false) {
  MarkedGraph m = identity_rose(rank);
  const int max_edges = 3 * rank - 3;
  std::bernoulli_distribution stop(0.25);
  while (m.graph.edge_count() < max_edges) {
    if (!trivalent && stop(rng)) break;
    const std::vector<BlowUp> ups = enumerate_blow_ups(m.graph);
    if (ups.empty()) break;
    m = blow_up(m, ups[std::uniform_int_distribution<std::size_t>(0, ups.size() - 1)(rng)]);
  }
  return act(m, random_automorphism(rank, rng));
}

/// Lengths w / sum(w) with positive integer weights summing to at most 20,
/// so every denominator is at most 20.
inline std::vector<Rational> random_lengths(int edges, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> weight(1, std::max(1, 20 / edges));
  std::vector<int> w(static_cast<std::size_t>(edges));
  int total = 0;
  for (int& v : w) total += v = weight(rng);
  std::vector<Rational> out;
  for (int v : w) {
    Rational r(v, total);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

inline CVPoint random_point(int rank, std::mt19937_64& rng, bool trivalent = false) {
  MarkedGraph m = random_simplex(rank, rng, trivalent);
  std::vector<Rational> l = random_lengths(m.graph.edge_count(), rng);
  return {std::move(m), std::move(l)};
}

/// Systole of a closed-simplex point: zero-length edges (a forest) are
/// collapsed first.
inline Rational closed_systole(const CVPoint& x) {
  std::vector<EdgeId> zero;
  for (EdgeId e = 0; e < x.marked.graph.edge_count(); ++e) {
    if (x.lengths[static_cast<std::size_t>(e)] == 0) zero.push_back(e);
  }
  if (zero.empty()) return systole(x);
  const MarkedCollapse c = collapse_forest(x.marked, zero);
  std::vector<Rational> l(static_cast<std::size_t>(c.marked.graph.edge_count()));
  for (EdgeId e = 0; e < x.marked.graph.edge_count(); ++e) {
    const EdgeId img = c.collapse.edge_map[static_cast<std::size_t>(e)];
    if (img >= 0) l[static_cast<std::size_t>(img)] = x.lengths[static_cast<std::size_t>(e)];
  }
  return systole({c.marked, l});
}

}  // namespace cvn::testing
