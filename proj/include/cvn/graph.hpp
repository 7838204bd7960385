#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvn/rational.hpp"

namespace cvn {

using VertexId = int;
using EdgeId = int;

/// Oriented edge: 2e traverses edge e from its origin to its terminus, 2e+1
/// backwards. An oriented edge also names the half-edge at its origin.
using OEdge = int;

constexpr OEdge forward(EdgeId e) { return 2 * e; }
constexpr OEdge backward(EdgeId e) { return 2 * e + 1; }
constexpr EdgeId edge_of(OEdge o) { return o >> 1; }
constexpr OEdge reversed(OEdge o) { return o ^ 1; }
constexpr bool is_backward(OEdge o) { return (o & 1) != 0; }

/// Finite connected graph with numbered vertices and edges. Each edge stores
/// (origin, terminus) of its forward orientation.
struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<VertexId, VertexId>> ends;
  /// Valence-2 vertices are tolerated only on graphs flagged as subdivided.
  bool subdivided = false;

  int edge_count() const { return static_cast<int>(ends.size()); }
  int rank() const { return edge_count() - vertex_count + 1; }
  VertexId origin(OEdge o) const {
    const auto& [a, b] = ends[static_cast<std::size_t>(edge_of(o))];
    return is_backward(o) ? b : a;
  }
  VertexId terminus(OEdge o) const { return origin(reversed(o)); }
  bool is_loop(EdgeId e) const {
    return ends[static_cast<std::size_t>(e)].first == ends[static_cast<std::size_t>(e)].second;
  }

  /// Half-edges at v in increasing order.
  std::vector<OEdge> half_edges(VertexId v) const;
  int valence(VertexId v) const;
  bool connected() const;

  /// Throws std::invalid_argument when an endpoint is out of range, the
  /// graph is disconnected, or a vertex has valence < 3 (valence 2 allowed
  /// when subdivided).
  void validate() const;

  friend bool operator==(const Graph&, const Graph&) = default;
};

Graph make_rose(int petals);
/// Two vertices joined by `edges` edges, all oriented 0 -> 1.
Graph make_theta(int edges);

/// Sequence of oriented edges with matching endpoints.
using EdgePath = std::vector<OEdge>;

bool is_path(const Graph& g, const EdgePath& p);
bool is_closed_path(const Graph& g, const EdgePath& p);
EdgePath reverse_path(const EdgePath& p);
/// Removes every backtrack e e-bar; endpoints are kept.
EdgePath tighten(const EdgePath& p);
/// Cyclic tightening of a closed path: also strips e ... e-bar at the ends.
EdgePath tighten_cyclic(const EdgePath& p);
/// Number of times each edge is crossed, in either direction.
std::vector<int> crossings(const Graph& g, const EdgePath& p);
Rational path_length(const EdgePath& p, std::span<const Rational> lengths);

/// Canonical form of a closed path up to rotation and reversal: the least
/// rotation of the oriented-edge sequence, compared against its reverse.
EdgePath canonical_loop(const EdgePath& loop);

struct CandidateLoop {
  enum class Kind { circle, figure_eight, barbell };
  EdgePath loop;  // canonical_loop form
  Kind kind;
};

std::string to_string(CandidateLoop::Kind k);

/// Embedded circles, figure eights and barbells of g, one representative per
/// loop up to rotation and reversal; ordered by canonical_loop.
std::vector<CandidateLoop> enumerate_candidates(const Graph& g);
std::vector<EdgePath> embedded_circles(const Graph& g);

/// A graph isomorphism g -> h: image of each vertex and of each forward edge.
struct Isomorphism {
  std::vector<VertexId> vertex_map;
  std::vector<OEdge> edge_map;

  OEdge apply(OEdge o) const {
    const OEdge img = edge_map[static_cast<std::size_t>(edge_of(o))];
    return is_backward(o) ? reversed(img) : img;
  }
  EdgePath apply(const EdgePath& p) const;
  friend bool operator==(const Isomorphism&, const Isomorphism&) = default;
};

/// All isomorphisms from g to h. When both length vectors are given only
/// length-preserving ones are returned.
std::vector<Isomorphism> isomorphisms(const Graph& g, const Graph& h,
                                      std::span<const Rational> g_lengths = {},
                                      std::span<const Rational> h_lengths = {});

Isomorphism inverse(const Isomorphism& iso);

bool is_forest(const Graph& g, std::span<const EdgeId> edges);

struct Collapse {
  Graph graph;
  std::vector<VertexId> vertex_map;  // old vertex -> new vertex
  std::vector<EdgeId> edge_map;      // old edge -> new edge, -1 when collapsed

  /// Image of a path: collapsed edges are dropped. The result is tightened.
  EdgePath push(const EdgePath& p) const;
};

/// Quotient by a forest. New vertex ids follow the least old id of each
/// class; surviving edges keep their relative order. Throws when `forest`
/// contains a cycle.
Collapse collapse_forest(const Graph& g, std::span<const EdgeId> forest);

struct BlowUp {
  VertexId vertex;
  std::vector<OEdge> side_a;  // half-edges staying at `vertex`; contains the least one
  std::vector<OEdge> side_b;  // half-edges moved to the new vertex
  Graph graph;
  EdgeId new_edge;  // from `vertex` to the new vertex (id vertex_count of g)
};

/// Every single-edge expansion at every vertex: unordered bipartitions of the
/// half-edges with both parts of size >= 2. Collapsing `new_edge` of each
/// result gives back g exactly (same ids).
std::vector<BlowUp> enumerate_blow_ups(const Graph& g);

/// Breadth-first spanning tree from the least vertex, edges in id order,
/// seeded with `required` (which must be a forest).
std::vector<EdgeId> spanning_tree(const Graph& g, std::span<const EdgeId> required = {});

std::string to_string(const Graph& g);

}  // namespace cvn
