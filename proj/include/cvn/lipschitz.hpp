#pragma once

#include <vector>

#include "cvn/free_group.hpp"
#include "cvn/graph.hpp"
#include "cvn/outer_space.hpp"
#include "cvn/rational.hpp"

namespace cvn {

/// A candidate of a simplex: its conjugacy class (up to inversion), the
/// loop realising it, and how often that loop crosses each edge.
struct Candidate {
  CyclicWord word;  // unoriented()
  EdgePath loop;
  std::vector<int> crossings;
};

/// Candidates of the simplex, one per class up to inversion, sorted by word.
std::vector<Candidate> candidate_loops(const SimplexRef& s);
std::vector<CyclicWord> candidates_of(const SimplexRef& s);

struct StretchResult {
  Rational value;
  CyclicWord witness;  // least maximizing candidate
};

/// Lambda(x, y) = max over candidates a of x of l_y(a) / l_x(a). Throws
/// std::domain_error when x has a zero-length edge (the stretch could be
/// infinite) and std::invalid_argument on a rank mismatch.
StretchResult stretch(const CVPoint& x, const CVPoint& y);

/// Maximum of l_y / l_x over the classes carried by reduced closed edge
/// loops of x with at most `max_edges` edges. Every class of x-length at
/// most max_edges * (shortest edge) is reached, so this is a lower bound for
/// stretch(x, y) that becomes exact once max_edges covers the witness loop
/// (candidates cross at most 2(3N-3) edges). Test oracle only.
Rational stretch_bruteforce(const CVPoint& x, const CVPoint& y, int max_edges);

enum class Ball { symmetric, in, out };

/// symmetric: Lambda(x,T) Lambda(T,x) <= r; in: Lambda(x,T) <= r;
/// out: Lambda(T,x) <= r.
bool ball_membership(const CVPoint& x, const CVPoint& t, const Rational& r, Ball kind);

}  // namespace cvn
