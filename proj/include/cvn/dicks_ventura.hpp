#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvn/free_group.hpp"
#include "cvn/graph.hpp"
#include "cvn/outer_space.hpp"

namespace cvn {

/// A finite-order graph automorphism of a marked metric graph together with
/// the outer automorphism it represents.
struct FiniteOrderModel {
  std::string name;
  CVPoint point;           // centre of the model simplex
  Isomorphism graph_map;   // automorphism of point.marked.graph
  AutoPair induced = AutoPair::identity(0);
  int order = 1;           // order of graph_map
  /// For p = 2 the subdivided graph, with its valence-2 vertices, and its map.
  std::optional<Graph> subdivided;
  std::optional<Isomorphism> subdivided_map;
};

bool is_prime(int n);

/// Order of a graph automorphism (as a permutation of oriented edges and
/// vertices).
int map_order(const Isomorphism& f);

/// X_p: two vertices, p edges v0 -> v1, tree {e0}, generators e_i e0-bar,
/// map e_i -> e_{i+1}. Throws std::invalid_argument unless p is an odd prime.
FiniteOrderModel build_Xp(int p);

/// X_pq: vertices v_0..v_{p-1} (ids 0..p-1) and w_0..w_{q-1} (ids p..p+q-1),
/// edge e_{i,j} = v_i -> w_j with id i q + j, map e_{i,j} -> e_{i+1,j+1}.
/// Tree: e_{0,j} for all j and e_{i,0} for i > 0; basepoint v_0. For p = 2
/// the vertices w_j have valence 2 and the model is the theta graph obtained
/// by collapsing the edges e_{0,j}; the map then sends each edge to the
/// inverse of the next. Throws unless p < q are primes.
FiniteOrderModel build_Xpq(int p, int q);

/// Identity automorphism on the X_3 point; a model with no uniqueness.
FiniteOrderModel identity_model(int p = 3);

/// Automorphism induced by the graph map inverting every edge. Throws
/// std::domain_error when the model graph has no such automorphism.
AutoPair sigma(const FiniteOrderModel& model);

struct FixedPointCheck {
  std::string step;     // "simplex", "coface", "face"
  std::string simplex;  // description of the simplex examined
  bool pass = false;
  std::string detail;
};

struct FixedPointReport {
  bool pass = false;
  std::vector<FixedPointCheck> checks;
  std::optional<FixedPointCheck> first_failure() const;
};

/// (1) the fixed polytope of the model simplex is exactly its centre;
/// (2) every phi-invariant coface has a fixed polytope with empty interior;
/// (3) no open face contains a fixed point.
FixedPointReport verify_unique_fixed_point(const FiniteOrderModel& model);

struct IsometryCount {
  int count = 0;
  std::optional<Isomorphism> representative;
  int isometries = 0;  // length-preserving automorphisms examined
};

/// Length-preserving graph automorphisms of the model point that induce
/// model.induced up to an inner automorphism.
IsometryCount unique_isometry_representative(const FiniteOrderModel& model);

}  // namespace cvn
