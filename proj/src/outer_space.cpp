#include "cvn/outer_space.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace cvn {

namespace {

// Path from `from` to `to` inside the edge set `tree`.
EdgePath path_in_tree(const Graph& g, std::span<const EdgeId> tree, VertexId from, VertexId to) {
  if (from == to) return {};
  std::vector<char> in_tree(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeId e : tree) in_tree[static_cast<std::size_t>(e)] = 1;
  std::vector<OEdge> via(static_cast<std::size_t>(g.vertex_count), -1);
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count), 0);
  std::queue<VertexId> q;
  q.push(from);
  seen[static_cast<std::size_t>(from)] = 1;
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop();
    if (u == to) break;
    for (OEdge o : g.half_edges(u)) {
      if (!in_tree[static_cast<std::size_t>(edge_of(o))]) continue;
      const VertexId t = g.terminus(o);
      if (seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = 1;
      via[static_cast<std::size_t>(t)] = o;
      q.push(t);
    }
  }
  if (!seen[static_cast<std::size_t>(to)]) throw std::logic_error("tree does not span");
  EdgePath p;
  for (VertexId v = to; v != from; v = g.origin(via[static_cast<std::size_t>(v)])) {
    p.push_back(via[static_cast<std::size_t>(v)]);
  }
  std::reverse(p.begin(), p.end());
  return p;
}

void append(EdgePath& out, const EdgePath& p) {
  for (OEdge o : p) {
    if (!out.empty() && out.back() == reversed(o)) {
      out.pop_back();
    } else {
      out.push_back(o);
    }
  }
}

}  // namespace

bool MarkedGraph::in_tree(EdgeId e) const { return std::binary_search(tree.begin(), tree.end(), e); }

bool CVPoint::open() const {
  return std::all_of(lengths.begin(), lengths.end(), [](const Rational& r) { return r > 0; });
}

MarkedGraph identity_rose(int rank) {
  MarkedGraph m;
  m.graph = make_rose(rank);
  for (int i = 0; i < rank; ++i) {
    m.fwd.push_back({forward(i)});
    m.bwd.push_back(Word::generator(i + 1));
  }
  return m;
}

MarkedGraph tree_marking(const Graph& g, VertexId basepoint, std::vector<EdgeId> tree) {
  std::sort(tree.begin(), tree.end());
  MarkedGraph m;
  m.graph = g;
  m.basepoint = basepoint;
  m.tree = std::move(tree);
  m.bwd.assign(static_cast<std::size_t>(g.edge_count()), Word());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (m.in_tree(e)) continue;
    EdgePath loop = path_in_tree(g, m.tree, basepoint, g.origin(forward(e)));
    loop.push_back(forward(e));
    const EdgePath back = path_in_tree(g, m.tree, g.terminus(forward(e)), basepoint);
    loop.insert(loop.end(), back.begin(), back.end());
    m.fwd.push_back(std::move(loop));
    m.bwd[static_cast<std::size_t>(e)] = Word::generator(m.rank());
  }
  validate(m);
  return m;
}

std::optional<std::string> marking_error(const MarkedGraph& m) {
  try {
    m.graph.validate();
  } catch (const std::invalid_argument& e) {
    return std::string(e.what());
  }
  const Graph& g = m.graph;
  if (m.rank() != g.rank()) {
    return "marking has " + std::to_string(m.rank()) + " generators but graph rank is " +
           std::to_string(g.rank());
  }
  if (m.basepoint < 0 || m.basepoint >= g.vertex_count) return "basepoint out of range";
  if (static_cast<int>(m.tree.size()) != g.vertex_count - 1 || !is_forest(g, m.tree) ||
      !std::is_sorted(m.tree.begin(), m.tree.end())) {
    return "tree is not a sorted spanning tree";
  }
  if (static_cast<int>(m.bwd.size()) != g.edge_count()) return "bwd list has wrong size";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (m.in_tree(e) && !m.bwd[static_cast<std::size_t>(e)].empty()) {
      return "tree edge " + std::to_string(e) + " has a nonempty bwd word";
    }
    for (Letter x : m.bwd[static_cast<std::size_t>(e)].letters()) {
      if (x == 0 || x > m.rank() || x < -m.rank()) return "bwd word out of alphabet";
    }
  }
  for (int i = 0; i < m.rank(); ++i) {
    const EdgePath& p = m.fwd[static_cast<std::size_t>(i)];
    if (p.empty() || !is_closed_path(g, p) || g.origin(p.front()) != m.basepoint || tighten(p) != p) {
      return "fwd loop of generator " + to_string(Word::generator(i + 1)) +
             " is not a reduced closed path at the basepoint";
    }
    if (read_path(m, p) != Word::generator(i + 1)) {
      return "generator " + to_string(Word::generator(i + 1)) + " reads back as " +
             to_string(read_path(m, p));
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (m.in_tree(e)) continue;
    EdgePath expected = tree_path(m, m.basepoint, g.origin(forward(e)));
    expected.push_back(forward(e));
    append(expected, tree_path(m, g.terminus(forward(e)), m.basepoint));
    if (realise(m, m.bwd[static_cast<std::size_t>(e)]) != tighten(expected)) {
      return "edge " + std::to_string(e) + " does not round-trip through its bwd word";
    }
  }
  return std::nullopt;
}

bool verify_marking(const MarkedGraph& m) { return !marking_error(m).has_value(); }

void validate(const MarkedGraph& m) {
  if (auto err = marking_error(m)) throw std::invalid_argument("marked graph: " + *err);
}

void validate(const CVPoint& x) {
  validate(x.marked);
  if (static_cast<int>(x.lengths.size()) != x.marked.graph.edge_count()) {
    throw std::invalid_argument("point: wrong number of lengths");
  }
  Rational total = 0;
  std::vector<EdgeId> zero;
  for (std::size_t e = 0; e < x.lengths.size(); ++e) {
    if (x.lengths[e] < 0) throw std::invalid_argument("point: negative length");
    if (x.lengths[e] == 0) zero.push_back(static_cast<EdgeId>(e));
    total += x.lengths[e];
  }
  if (total != 1) throw std::invalid_argument("point: lengths sum to " + to_string(total));
  if (!is_forest(x.marked.graph, zero)) {
    throw std::invalid_argument("point: zero-length edges contain a cycle");
  }
}

EdgePath tree_path(const MarkedGraph& m, VertexId from, VertexId to) {
  return path_in_tree(m.graph, m.tree, from, to);
}

Word read_path(const MarkedGraph& m, const EdgePath& p) {
  Word w;
  for (OEdge o : p) {
    const Word& b = m.bwd[static_cast<std::size_t>(edge_of(o))];
    if (b.empty()) continue;
    w = w * (is_backward(o) ? b.inverse() : b);
  }
  return w;
}

CyclicWord read_loop(const MarkedGraph& m, const EdgePath& loop) {
  return cyclic_reduce(read_path(m, loop)).core;
}

EdgePath realise(const MarkedGraph& m, const Word& w) {
  EdgePath out;
  for (Letter x : w.letters()) {
    const EdgePath& petal = m.fwd[static_cast<std::size_t>((x > 0 ? x : -x) - 1)];
    if (x > 0) {
      append(out, petal);
    } else {
      append(out, reverse_path(petal));
    }
  }
  return out;
}

EdgePath realise(const MarkedGraph& m, const CyclicWord& c) {
  return tighten_cyclic(realise(m, c.as_word()));
}

Rational translation_length(const CVPoint& x, const CyclicWord& c) {
  return path_length(realise(x.marked, c), x.lengths);
}

MarkedGraph retree(const MarkedGraph& m, std::span<const EdgeId> required) {
  const std::vector<EdgeId> tree = spanning_tree(m.graph, required);
  if (tree == m.tree) return m;
  MarkedGraph out = m;
  out.tree = tree;
  const Graph& g = m.graph;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (out.in_tree(e)) {
      out.bwd[static_cast<std::size_t>(e)] = Word();
      continue;
    }
    EdgePath loop = path_in_tree(g, tree, m.basepoint, g.origin(forward(e)));
    loop.push_back(forward(e));
    const EdgePath back = path_in_tree(g, tree, g.terminus(forward(e)), m.basepoint);
    loop.insert(loop.end(), back.begin(), back.end());
    out.bwd[static_cast<std::size_t>(e)] = read_path(m, loop);
  }
  return out;
}

MarkedGraph act(const MarkedGraph& m, const AutoPair& phi) {
  if (phi.rank() != m.rank()) throw std::invalid_argument("act: rank mismatch");
  MarkedGraph out = m;
  for (int i = 0; i < m.rank(); ++i) {
    out.fwd[static_cast<std::size_t>(i)] = realise(m, phi.fwd()[static_cast<std::size_t>(i)]);
  }
  for (Word& w : out.bwd) {
    if (!w.empty()) w = phi.apply_inverse(w);
  }
  return out;
}

CVPoint act(const CVPoint& x, const AutoPair& phi) { return {act(x.marked, phi), x.lengths}; }

MarkedCollapse collapse_forest(const MarkedGraph& m, std::span<const EdgeId> forest) {
  const MarkedGraph src = retree(m, forest);
  MarkedCollapse out{{}, collapse_forest(src.graph, forest)};
  const Collapse& c = out.collapse;
  MarkedGraph& r = out.marked;
  r.graph = c.graph;
  r.basepoint = c.vertex_map[static_cast<std::size_t>(src.basepoint)];
  for (const EdgePath& p : src.fwd) r.fwd.push_back(c.push(p));
  r.bwd.assign(static_cast<std::size_t>(c.graph.edge_count()), Word());
  for (EdgeId e = 0; e < src.graph.edge_count(); ++e) {
    const EdgeId img = c.edge_map[static_cast<std::size_t>(e)];
    if (img < 0) continue;
    r.bwd[static_cast<std::size_t>(img)] = src.bwd[static_cast<std::size_t>(e)];
    if (src.in_tree(e)) r.tree.push_back(img);
  }
  std::sort(r.tree.begin(), r.tree.end());
  return out;
}

MarkedGraph blow_up(const MarkedGraph& m, const BlowUp& b) {
  const Graph& h = b.graph;
  const VertexId nv = m.graph.vertex_count;
  auto connect = [&](EdgePath& out, VertexId from, VertexId to) {
    if (from == to) return;
    if (from == b.vertex && to == nv) {
      out.push_back(forward(b.new_edge));
    } else if (from == nv && to == b.vertex) {
      out.push_back(backward(b.new_edge));
    } else {
      throw std::logic_error("blow_up: endpoints do not match");
    }
  };
  MarkedGraph out;
  out.graph = h;
  out.basepoint = m.basepoint;  // side_a keeps the split vertex's id
  for (const EdgePath& p : m.fwd) {
    EdgePath lifted;
    VertexId at = out.basepoint;
    for (OEdge o : p) {
      connect(lifted, at, h.origin(o));
      lifted.push_back(o);
      at = h.terminus(o);
    }
    connect(lifted, at, out.basepoint);
    out.fwd.push_back(tighten(lifted));
  }
  out.tree = m.tree;
  out.tree.push_back(b.new_edge);
  std::sort(out.tree.begin(), out.tree.end());
  out.bwd = m.bwd;
  out.bwd.push_back(Word());
  return out;
}

AutoPair induced_automorphism(const MarkedGraph& m, const Isomorphism& f) {
  const Isomorphism finv = inverse(f);
  const EdgePath beta =
      tree_path(m, m.basepoint, f.vertex_map[static_cast<std::size_t>(m.basepoint)]);
  const Word c = read_path(m, finv.apply(reverse_path(beta)));
  std::vector<Word> fwd, inv;
  for (const EdgePath& petal : m.fwd) {
    fwd.push_back(read_path(m, f.apply(petal)));
    inv.push_back(c * read_path(m, finv.apply(petal)) * c.inverse());
  }
  return AutoPair(std::move(fwd), std::move(inv));
}

CVPoint centre(const SimplexRef& s) {
  const int n = s.graph.edge_count();
  return {s, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n))};
}

Rational systole(const CVPoint& x) {
  if (!x.open()) throw std::domain_error("systole: point has a zero-length edge");
  std::optional<Rational> best;
  for (const EdgePath& c : embedded_circles(x.marked.graph)) {
    const Rational l = path_length(c, x.lengths);
    if (!best || l < *best) best = l;
  }
  return *best;
}

bool is_thick(const CVPoint& x, const Rational& eps) { return systole(x) >= eps; }

namespace {

bool carries_marking(const MarkedGraph& m, const MarkedGraph& n, const Isomorphism& g) {
  std::vector<Word> images;
  images.reserve(m.fwd.size());
  for (const EdgePath& petal : m.fwd) images.push_back(read_path(n, g.apply(petal)));
  return inner_conjugator(images).has_value();
}

std::optional<Isomorphism> find_marked(const MarkedGraph& m, const MarkedGraph& n,
                                       std::span<const Rational> ml,
                                       std::span<const Rational> nl) {
  if (m.rank() != n.rank()) return std::nullopt;
  for (const Isomorphism& g : isomorphisms(m.graph, n.graph, ml, nl)) {
    if (carries_marking(m, n, g)) return g;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Isomorphism> marked_isometry(const CVPoint& x, const CVPoint& y) {
  return find_marked(x.marked, y.marked, x.lengths, y.lengths);
}

bool marked_graph_equal(const CVPoint& x, const CVPoint& y) {
  return marked_isometry(x, y).has_value();
}

std::optional<Isomorphism> simplex_isomorphism(const MarkedGraph& m, const MarkedGraph& n) {
  return find_marked(m, n, {}, {});
}

bool same_simplex(const MarkedGraph& m, const MarkedGraph& n) {
  return simplex_isomorphism(m, n).has_value();
}

}  // namespace cvn
