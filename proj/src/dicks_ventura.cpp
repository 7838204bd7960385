#include "cvn/dicks_ventura.hpp"

#include <stdexcept>

#include "cvn/displacement.hpp"
#include "cvn/lp.hpp"

namespace cvn {

namespace {

Isomorphism compose_maps(const Isomorphism& f, const Isomorphism& g) {
  Isomorphism h;
  for (VertexId v : g.vertex_map) h.vertex_map.push_back(f.vertex_map[static_cast<std::size_t>(v)]);
  for (OEdge o : g.edge_map) h.edge_map.push_back(f.apply(o));
  return h;
}

Isomorphism identity_map(const Graph& g) {
  Isomorphism id;
  for (VertexId v = 0; v < g.vertex_count; ++v) id.vertex_map.push_back(v);
  for (EdgeId e = 0; e < g.edge_count(); ++e) id.edge_map.push_back(forward(e));
  return id;
}

FiniteOrderModel finish(std::string name, MarkedGraph m, Isomorphism f) {
  FiniteOrderModel model;
  model.name = std::move(name);
  model.induced = induced_automorphism(m, f);
  model.order = map_order(f);
  model.graph_map = std::move(f);
  model.point = centre(m);
  return model;
}

// Edge e_{i,j} of X_pq.
EdgeId pq_edge(int q, int i, int j) { return i * q + j; }

Graph pq_graph(int p, int q) {
  Graph g;
  g.vertex_count = p + q;
  g.subdivided = p == 2;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < q; ++j) g.ends.emplace_back(i, p + j);
  }
  return g;
}

Isomorphism pq_map(int p, int q) {
  Isomorphism f;
  for (int i = 0; i < p; ++i) f.vertex_map.push_back((i + 1) % p);
  for (int j = 0; j < q; ++j) f.vertex_map.push_back(p + (j + 1) % q);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < q; ++j) f.edge_map.push_back(forward(pq_edge(q, (i + 1) % p, (j + 1) % q)));
  }
  return f;
}

std::string describe(const MarkedGraph& m) {
  std::string s = std::to_string(m.graph.vertex_count) + " vertices:";
  for (const auto& [a, b] : m.graph.ends) s += " " + std::to_string(a) + "-" + std::to_string(b);
  return s;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int map_order(const Isomorphism& f) {
  Graph shape;
  shape.vertex_count = static_cast<int>(f.vertex_map.size());
  shape.ends.resize(f.edge_map.size());
  const Isomorphism id = identity_map(shape);
  Isomorphism power = f;
  for (int k = 1; k <= 100000; ++k) {
    if (power == id) return k;
    power = compose_maps(f, power);
  }
  throw std::logic_error("map_order: order too large");
}

FiniteOrderModel build_Xp(int p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("build_Xp: p must be an odd prime");
  const Graph g = make_theta(p);
  MarkedGraph m = tree_marking(g, 0, {0});
  Isomorphism f = identity_map(g);
  for (int i = 0; i < p; ++i) f.edge_map[static_cast<std::size_t>(i)] = forward((i + 1) % p);
  return finish("X_" + std::to_string(p), std::move(m), std::move(f));
}

FiniteOrderModel build_Xpq(int p, int q) {
  if (!is_prime(p) || !is_prime(q) || p >= q) {
    throw std::invalid_argument("build_Xpq: need primes p < q");
  }
  const std::string name = "X_" + std::to_string(p) + "," + std::to_string(q);
  Graph g = pq_graph(p, q);
  Isomorphism f = pq_map(p, q);
  if (p != 2) {
    std::vector<EdgeId> tree;
    for (int j = 0; j < q; ++j) tree.push_back(pq_edge(q, 0, j));
    for (int i = 1; i < p; ++i) tree.push_back(pq_edge(q, i, 0));
    MarkedGraph m = tree_marking(g, 0, std::move(tree));
    return finish(name, std::move(m), std::move(f));
  }
  // The w_j are subdivision points. Collapsing the edges e_{0,j} leaves a
  // theta graph whose edge j is e_{1,j}, oriented from v_1 to the merged
  // vertex; the path e_{0,j} e_{1,j}-bar is the subdivided edge j reversed,
  // and the map sends it to the reverse of edge j+1.
  std::vector<EdgeId> star;
  for (int j = 0; j < q; ++j) star.push_back(pq_edge(q, 0, j));
  const Collapse c = collapse_forest(g, star);
  Graph theta = c.graph;
  theta.subdivided = false;
  const VertexId hub = c.vertex_map[0], far = c.vertex_map[1];
  Isomorphism h;
  h.vertex_map.assign(2, 0);
  h.vertex_map[static_cast<std::size_t>(hub)] = far;
  h.vertex_map[static_cast<std::size_t>(far)] = hub;
  h.edge_map.assign(static_cast<std::size_t>(q), 0);
  for (int j = 0; j < q; ++j) {
    const EdgeId here = c.edge_map[static_cast<std::size_t>(pq_edge(q, 1, j))];
    const EdgeId next = c.edge_map[static_cast<std::size_t>(pq_edge(q, 1, (j + 1) % q))];
    h.edge_map[static_cast<std::size_t>(here)] = backward(next);
  }
  MarkedGraph m = tree_marking(theta, hub, {c.edge_map[static_cast<std::size_t>(pq_edge(q, 1, 0))]});
  FiniteOrderModel model = finish(name, std::move(m), std::move(h));
  model.subdivided = std::move(g);
  model.subdivided_map = std::move(f);
  return model;
}

FiniteOrderModel identity_model(int p) {
  FiniteOrderModel model = build_Xp(p);
  model.name = "identity on X_" + std::to_string(p);
  model.graph_map = identity_map(model.point.marked.graph);
  model.induced = AutoPair::identity(model.point.marked.rank());
  model.order = 1;
  return model;
}

AutoPair sigma(const FiniteOrderModel& model) {
  const MarkedGraph& m = model.point.marked;
  const Graph& g = m.graph;
  Isomorphism f;
  f.vertex_map.assign(static_cast<std::size_t>(g.vertex_count), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    f.edge_map.push_back(backward(e));
    const auto [a, b] = g.ends[static_cast<std::size_t>(e)];
    for (auto [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
      VertexId& slot = f.vertex_map[static_cast<std::size_t>(from)];
      if (slot >= 0 && slot != to) {
        throw std::domain_error("sigma: " + model.name + " has no edge-inverting automorphism");
      }
      slot = to;
    }
  }
  return induced_automorphism(m, f);
}

std::optional<FixedPointCheck> FixedPointReport::first_failure() const {
  for (const FixedPointCheck& c : checks) {
    if (!c.pass) return c;
  }
  return std::nullopt;
}

FixedPointReport verify_unique_fixed_point(const FiniteOrderModel& model) {
  const AutoPair& phi = model.induced;
  const MarkedGraph& base = model.point.marked;
  FixedPointReport report;

  {
    // Every coordinate is pinned to 1/|E| on the fixed polytope.
    const RatioSystem sys = build_ratio_system(base, phi);
    const lp::Problem p = ratio_problem(sys, 1, false);
    const int n = sys.edges;
    const Rational c(1, n);
    FixedPointCheck check{"simplex", describe(base), true, ""};
    for (int k = 0; k < n && check.pass; ++k) {
      std::vector<Rational> obj(static_cast<std::size_t>(n), 0);
      obj[static_cast<std::size_t>(k)] = 1;
      const lp::Solution hi = lp::maximize(p, obj);
      const lp::Solution lo = lp::minimize(p, obj);
      if (hi.status != lp::Status::optimal || lo.status != lp::Status::optimal) {
        check.pass = false;
        check.detail = "no fixed point in the closed simplex";
      } else if (hi.value != c || lo.value != c) {
        check.pass = false;
        check.detail = "edge " + std::to_string(k) + " ranges over [" + to_string(lo.value) + ", " +
                       to_string(hi.value) + "] on the fixed polytope";
      }
    }
    if (check.pass) check.detail = "fixed polytope = {centre}, lengths " + to_string(c);
    report.checks.push_back(std::move(check));
  }

  int skipped = 0;
  for (const BlowUp& b : enumerate_blow_ups(base.graph)) {
    const MarkedGraph coface = blow_up(base, b);
    if (!same_simplex(act(coface, phi), coface)) {
      ++skipped;
      continue;
    }
    const FixedPolytope fp = fixed_point_polytope(coface, phi);
    report.checks.push_back({"coface", describe(coface), !fp.interior,
                             fp.interior ? "interior fixed point, min length " + to_string(fp.max_min_length)
                                         : "fixed polytope has empty interior"});
  }
  if (skipped > 0) {
    report.checks.push_back({"coface", "non-invariant cofaces", true,
                             std::to_string(skipped) + " skipped (not phi-invariant)"});
  }

  const Graph& g = base.graph;
  const int edges = g.edge_count();
  if (edges > 20) throw std::invalid_argument("verify_unique_fixed_point: graph too large for face enumeration");
  for (unsigned mask = 1; mask < (1u << edges); ++mask) {
    std::vector<EdgeId> forest;
    for (EdgeId e = 0; e < edges; ++e) {
      if (mask & (1u << e)) forest.push_back(e);
    }
    if (!is_forest(g, forest)) continue;
    const MarkedGraph face = collapse_forest(base, forest).marked;
    const FixedPolytope fp = fixed_point_polytope(face, phi);
    std::string name = "collapse {";
    for (std::size_t i = 0; i < forest.size(); ++i) name += (i ? "," : "") + std::string("e") + std::to_string(forest[i]);
    name += "}";
    report.checks.push_back({"face", name, !fp.interior,
                             fp.interior ? "open face contains a fixed point" : "no fixed point in the open face"});
  }

  report.pass = !report.first_failure().has_value();
  return report;
}

IsometryCount unique_isometry_representative(const FiniteOrderModel& model) {
  const CVPoint& x = model.point;
  const AutoPair back = model.induced.inverse();
  IsometryCount out;
  for (const Isomorphism& f : isomorphisms(x.marked.graph, x.marked.graph, x.lengths, x.lengths)) {
    ++out.isometries;
    const AutoPair psi = induced_automorphism(x.marked, f);
    if (is_inner(compose(psi, back))) {
      if (!out.representative) out.representative = f;
      ++out.count;
    }
  }
  return out;
}

}  // namespace cvn
