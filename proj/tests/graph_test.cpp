#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cvn/graph.hpp"
#include "cvn/outer_space.hpp"
#include "support.hpp"

using namespace cvn;

namespace {

// Embedded circles counted as edge sets where every vertex has degree 0 or 2
// and the used edges are connected.
int count_circles_by_subsets(const Graph& g) {
  const int m = g.edge_count();
  int count = 0;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count), 0);
    std::vector<int> parent(static_cast<std::size_t>(g.vertex_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
      return v;
    };
    for (int e = 0; e < m; ++e) {
      if (!(mask >> e & 1)) continue;
      const auto [a, b] = g.ends[static_cast<std::size_t>(e)];
      ++degree[static_cast<std::size_t>(a)];
      ++degree[static_cast<std::size_t>(b)];
      parent[static_cast<std::size_t>(find(a))] = find(b);
    }
    bool ok = true;
    std::set<int> components;
    for (int v = 0; v < g.vertex_count; ++v) {
      const int d = degree[static_cast<std::size_t>(v)];
      if (d != 0 && d != 2) ok = false;
      if (d) components.insert(find(v));
    }
    if (ok && components.size() == 1) ++count;
  }
  return count;
}

Graph k4() {
  Graph g;
  g.vertex_count = 4;
  g.ends = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  return g;
}

Graph barbell() {
  Graph g;
  g.vertex_count = 2;
  g.ends = {{0, 0}, {0, 1}, {1, 1}};
  return g;
}

int count_kind(const std::vector<CandidateLoop>& c, CandidateLoop::Kind k) {
  return static_cast<int>(std::count_if(c.begin(), c.end(), [&](const auto& x) { return x.kind == k; }));
}

}  // namespace

TEST_CASE("basic shapes") {
  CHECK(make_rose(3).rank() == 3);
  CHECK(make_theta(3).rank() == 2);
  CHECK(k4().rank() == 3);
  CHECK(barbell().connected());
  CHECK(make_rose(2).valence(0) == 4);
  CHECK_NOTHROW(k4().validate());
}

TEST_CASE("tightening") {
  const EdgePath p{forward(0), forward(1), backward(1), backward(0), forward(2)};
  CHECK(tighten(p) == EdgePath{forward(2)});
  const EdgePath c{forward(1), forward(0), forward(2), backward(1)};
  CHECK(tighten_cyclic(c) == EdgePath{forward(0), forward(2)});
}

TEST_CASE("canonical loop is invariant under rotation and reversal") {
  const Graph g = k4();
  const EdgePath loop{forward(0), forward(3), backward(1)};
  const EdgePath canon = canonical_loop(loop);
  EdgePath rot = loop;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    CHECK(canonical_loop(rot) == canon);
    CHECK(canonical_loop(reverse_path(rot)) == canon);
  }
  CHECK(is_closed_path(g, canon));
}

TEST_CASE("embedded circles match subset enumeration") {
  CHECK(embedded_circles(k4()).size() == 7);
  std::mt19937_64 rng(10);
  for (int i = 0; i < 40; ++i) {
    const MarkedGraph m = cvn::testing::random_simplex(2 + i % 2, rng);
    CHECK(static_cast<int>(embedded_circles(m.graph).size()) == count_circles_by_subsets(m.graph));
  }
}

TEST_CASE("candidate loops by shape") {
  using K = CandidateLoop::Kind;
  const auto rose2 = enumerate_candidates(make_rose(2));
  CHECK(rose2.size() == 4);
  CHECK(count_kind(rose2, K::circle) == 2);
  CHECK(count_kind(rose2, K::figure_eight) == 2);

  const auto theta = enumerate_candidates(make_theta(3));
  CHECK(theta.size() == 3);
  CHECK(count_kind(theta, K::circle) == 3);

  const auto bb = enumerate_candidates(barbell());
  CHECK(bb.size() == 4);
  CHECK(count_kind(bb, K::barbell) == 2);

  CHECK(enumerate_candidates(make_rose(3)).size() == 9);
  for (const auto& c : enumerate_candidates(k4())) CHECK(is_closed_path(k4(), c.loop));
}

TEST_CASE("isomorphism counts") {
  CHECK(isomorphisms(make_rose(2), make_rose(2)).size() == 8);
  CHECK(isomorphisms(make_theta(3), make_theta(3)).size() == 12);
  CHECK(isomorphisms(k4(), k4()).size() == 24);
  CHECK(isomorphisms(make_rose(2), make_theta(3)).empty());
  const std::vector<Rational> l{Rational(1, 2), Rational(1, 3), Rational(1, 6)};
  CHECK(isomorphisms(make_theta(3), make_theta(3), l, l).size() == 2);
  for (const Isomorphism& f : isomorphisms(k4(), k4())) {
    const Isomorphism g = inverse(f);
    for (EdgeId e = 0; e < 6; ++e) CHECK(g.apply(f.apply(forward(e))) == forward(e));
  }
}

TEST_CASE("forests, collapses, spanning trees") {
  const Graph g = k4();
  const std::vector<EdgeId> star{0, 1, 2}, cyc{0, 3, 1};
  CHECK(is_forest(g, star));
  CHECK_FALSE(is_forest(g, cyc));
  const Collapse c = collapse_forest(g, star);
  CHECK(c.graph.vertex_count == 1);
  CHECK(c.graph.edge_count() == 3);
  CHECK(c.edge_map[0] == -1);
  const EdgePath tri{forward(0), forward(3), backward(1)};
  CHECK(c.push(tri).size() == 1);
  const std::vector<EdgeId> t = spanning_tree(g, std::vector<EdgeId>{5});
  CHECK(t.size() == 3);
  CHECK(is_forest(g, t));
  CHECK(std::find(t.begin(), t.end(), 5) != t.end());
}

TEST_CASE("blow-ups") {
  const auto ups = enumerate_blow_ups(make_rose(2));
  CHECK(ups.size() == 3);
  for (const BlowUp& b : ups) {
    CHECK(b.graph.rank() == 2);
    CHECK(b.graph.edge_count() == 3);
    const Collapse c = collapse_forest(b.graph, std::vector<EdgeId>{b.new_edge});
    CHECK_FALSE(isomorphisms(c.graph, make_rose(2)).empty());
  }
  CHECK(enumerate_blow_ups(make_theta(3)).empty());
}
