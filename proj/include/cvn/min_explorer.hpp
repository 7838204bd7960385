#pragma once

#include <string>
#include <vector>

#include "cvn/displacement.hpp"
#include "cvn/free_group.hpp"
#include "cvn/graph.hpp"
#include "cvn/outer_space.hpp"
#include "cvn/rational.hpp"

namespace cvn {

struct Neighbor {
  enum class Move { collapse, blow_up };
  Move move;
  MarkedGraph marked;
  /// collapse: the collapsed edge of the source; blow_up: the new edge.
  EdgeId edge;
  std::string label;
};

/// Faces by collapsing one non-loop edge, then cofaces from every blow-up.
std::vector<Neighbor> neighbors(const SimplexRef& s);

/// Hash of the sorted candidate classes. Equal simplices have equal keys;
/// callers confirm a key match with same_simplex.
std::string simplex_key(const SimplexRef& s);

struct SimplexCensusEntry {
  SimplexRef simplex;
  std::string key;
  MinimizationResult bracket;
  CVPoint point;  // argmin in the closed simplex
  std::vector<std::string> path;  // moves from the seed simplex
};

/// entries[face] is (up to the phi-action when exploring modulo phi) the
/// collapse of entries[coface] along `edge`; `iso` maps that collapsed graph
/// onto the graph of entries[face].
struct FaceLink {
  int coface;
  int face;
  EdgeId edge;
  Isomorphism iso;
};

struct ExploreLimits {
  int max_simplices = 500;
  int max_steps = 20000;  // simplices evaluated, retained or not
  /// Treat simplices in one <phi>-orbit as one, finding translates by
  /// applying phi^k, |k| <= k_max.
  bool modulo_phi = false;
  int k_max = 64;
};

struct Census {
  std::vector<SimplexCensusEntry> entries;
  std::vector<FaceLink> links;
  Rational best;       // least upper bound seen: the global displacement estimate
  bool partial = false;  // a limit stopped the search
  int steps = 0;
};

/// Breadth-first search from the seed's simplex through neighbors, keeping
/// simplices whose minimum lower bound is <= best (1 + tol). Each simplex is
/// minimised with tolerance tol / 1000.
Census explore_min_set(const CVPoint& seed, const AutoPair& phi, const Rational& tol,
                       const ExploreLimits& limits = {});

struct Quotient {
  std::vector<int> representatives;  // least key of each class
  std::vector<int> class_size;       // parallel to representatives
  std::vector<int> orbit_of;         // entry -> index into representatives
};

/// Classes of entries under simplex equality with act(., phi^k), 1 <= k <=
/// k_max. Powers stop early once every candidate of the image is longer than
/// the longest candidate of any entry.
Quotient quotient_by_power(const std::vector<SimplexCensusEntry>& entries, const AutoPair& phi,
                           int k_max);

}  // namespace cvn
