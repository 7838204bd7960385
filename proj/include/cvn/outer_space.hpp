#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cvn/free_group.hpp"
#include "cvn/graph.hpp"
#include "cvn/rational.hpp"

namespace cvn {

/// Graph with a two-way marking by the rose R_N.
///
/// The forward direction realises generator x_{i+1} as the reduced closed
/// path fwd[i] at the basepoint. The backward direction uses a spanning tree:
/// every non-tree edge e closes a unique loop (tree path, e, tree path) whose
/// class in F_N is bwd[e]; bwd of a tree edge is the empty word. Reading a
/// path therefore means multiplying the bwd words of the non-tree edges it
/// crosses.
struct MarkedGraph {
  Graph graph;
  VertexId basepoint = 0;
  std::vector<EdgePath> fwd;
  std::vector<EdgeId> tree;  // sorted
  std::vector<Word> bwd;     // indexed by edge

  int rank() const { return static_cast<int>(fwd.size()); }
  bool in_tree(EdgeId e) const;
};

/// A marked graph read as a simplex of CV_N.
using SimplexRef = MarkedGraph;

/// Point of a closed simplex: lengths are nonnegative, sum to 1 and vanish
/// at most on a forest. Open-simplex points have all lengths positive.
struct CVPoint {
  MarkedGraph marked;
  std::vector<Rational> lengths;

  bool open() const;
};

/// Rose with petal i realising x_{i+1}.
MarkedGraph identity_rose(int rank);

/// Marking read off a spanning tree: the non-tree edges, in id order, give
/// the generators x_1, x_2, ... as (tree path, edge, tree path) loops.
MarkedGraph tree_marking(const Graph& g, VertexId basepoint, std::vector<EdgeId> tree);

/// Structural checks plus both round trips of the marking; returns a
/// description of the first failure.
std::optional<std::string> marking_error(const MarkedGraph& m);
bool verify_marking(const MarkedGraph& m);

/// Throws std::invalid_argument when m or the lengths are malformed.
void validate(const MarkedGraph& m);
void validate(const CVPoint& x);

EdgePath tree_path(const MarkedGraph& m, VertexId from, VertexId to);
/// Product of bwd words along a path (any endpoints).
Word read_path(const MarkedGraph& m, const EdgePath& p);
/// Conjugacy class of a closed path.
CyclicWord read_loop(const MarkedGraph& m, const EdgePath& loop);
/// Tightened based loop realising w.
EdgePath realise(const MarkedGraph& m, const Word& w);
/// Cyclically tightened loop realising the class c.
EdgePath realise(const MarkedGraph& m, const CyclicWord& c);

Rational translation_length(const CVPoint& x, const CyclicWord& c);

/// New spanning tree containing `required`; bwd words re-expressed.
MarkedGraph retree(const MarkedGraph& m, std::span<const EdgeId> required);

/// Right action h -> h phi: lengths of act(x, phi) satisfy
/// l_{act(x,phi)}([w]) = l_x([phi(w)]).
MarkedGraph act(const MarkedGraph& m, const AutoPair& phi);
CVPoint act(const CVPoint& x, const AutoPair& phi);

struct MarkedCollapse {
  MarkedGraph marked;
  Collapse collapse;
};
MarkedCollapse collapse_forest(const MarkedGraph& m, std::span<const EdgeId> forest);

/// Marked graph on b.graph whose collapse along b.new_edge is m.
MarkedGraph blow_up(const MarkedGraph& m, const BlowUp& b);

/// Outer automorphism represented by a graph automorphism f of m.graph,
/// i.e. the phi with f h ~ h phi. The inverse is induced by f^-1 with the
/// matching basepoint path, so the pair is exact.
AutoPair induced_automorphism(const MarkedGraph& m, const Isomorphism& f);

CVPoint centre(const SimplexRef& s);

/// Minimum length of an embedded circle. Throws std::domain_error on a point
/// with a zero-length edge.
Rational systole(const CVPoint& x);
bool is_thick(const CVPoint& x, const Rational& eps);

/// Isometry g: x -> y with g h_x ~ h_y (free homotopy), if one exists.
std::optional<Isomorphism> marked_isometry(const CVPoint& x, const CVPoint& y);
bool marked_graph_equal(const CVPoint& x, const CVPoint& y);
/// Same test without lengths: do m and n name the same open simplex?
std::optional<Isomorphism> simplex_isomorphism(const MarkedGraph& m, const MarkedGraph& n);
bool same_simplex(const MarkedGraph& m, const MarkedGraph& n);

}  // namespace cvn
