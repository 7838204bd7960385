#include "cvn/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace cvn {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

}  // namespace

std::vector<OEdge> Graph::half_edges(VertexId v) const {
  std::vector<OEdge> out;
  for (EdgeId e = 0; e < edge_count(); ++e) {
    if (ends[static_cast<std::size_t>(e)].first == v) out.push_back(forward(e));
    if (ends[static_cast<std::size_t>(e)].second == v) out.push_back(backward(e));
  }
  return out;
}

int Graph::valence(VertexId v) const { return static_cast<int>(half_edges(v).size()); }

bool Graph::connected() const {
  if (vertex_count == 0) return false;
  UnionFind uf(vertex_count);
  for (const auto& [a, b] : ends) uf.unite(a, b);
  for (VertexId v = 0; v < vertex_count; ++v) {
    if (uf.find(v) != 0) return false;
  }
  return true;
}

void Graph::validate() const {
  for (const auto& [a, b] : ends) {
    if (a < 0 || a >= vertex_count || b < 0 || b >= vertex_count) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
  }
  if (!connected()) throw std::invalid_argument("graph: not connected");
  for (VertexId v = 0; v < vertex_count; ++v) {
    const int val = valence(v);
    if (val < 2 || (val == 2 && !subdivided)) {
      throw std::invalid_argument("graph: vertex " + std::to_string(v) + " has valence " +
                                  std::to_string(val));
    }
  }
}

Graph make_rose(int petals) {
  Graph g;
  g.vertex_count = 1;
  g.ends.assign(static_cast<std::size_t>(petals), {0, 0});
  return g;
}

Graph make_theta(int edges) {
  Graph g;
  g.vertex_count = 2;
  g.ends.assign(static_cast<std::size_t>(edges), {0, 1});
  return g;
}

bool is_path(const Graph& g, const EdgePath& p) {
  for (OEdge o : p) {
    if (o < 0 || edge_of(o) >= g.edge_count()) return false;
  }
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (g.terminus(p[i - 1]) != g.origin(p[i])) return false;
  }
  return true;
}

bool is_closed_path(const Graph& g, const EdgePath& p) {
  return is_path(g, p) && (p.empty() || g.terminus(p.back()) == g.origin(p.front()));
}

EdgePath reverse_path(const EdgePath& p) {
  EdgePath out(p.rbegin(), p.rend());
  for (OEdge& o : out) o = reversed(o);
  return out;
}

EdgePath tighten(const EdgePath& p) {
  EdgePath out;
  out.reserve(p.size());
  for (OEdge o : p) {
    if (!out.empty() && out.back() == reversed(o)) {
      out.pop_back();
    } else {
      out.push_back(o);
    }
  }
  return out;
}

EdgePath tighten_cyclic(const EdgePath& p) {
  EdgePath out = tighten(p);
  std::size_t i = 0, j = out.size();
  while (j - i >= 2 && out[i] == reversed(out[j - 1])) {
    ++i;
    --j;
  }
  return EdgePath(out.begin() + static_cast<std::ptrdiff_t>(i),
                  out.begin() + static_cast<std::ptrdiff_t>(j));
}

std::vector<int> crossings(const Graph& g, const EdgePath& p) {
  std::vector<int> count(static_cast<std::size_t>(g.edge_count()), 0);
  for (OEdge o : p) ++count[static_cast<std::size_t>(edge_of(o))];
  return count;
}

Rational path_length(const EdgePath& p, std::span<const Rational> lengths) {
  Rational total = 0;
  for (OEdge o : p) total += lengths[static_cast<std::size_t>(edge_of(o))];
  return total;
}

namespace {

EdgePath least_rotation(const EdgePath& p) {
  EdgePath best = p, rot = p;
  for (std::size_t i = 1; i < p.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

EdgePath rotate_to(const Graph& g, const EdgePath& loop, VertexId v) {
  for (std::size_t k = 0; k < loop.size(); ++k) {
    if (g.origin(loop[k]) == v) {
      EdgePath out = loop;
      std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k), out.end());
      return out;
    }
  }
  throw std::logic_error("rotate_to: vertex not on loop");
}

std::vector<VertexId> loop_vertices(const Graph& g, const EdgePath& loop) {
  std::vector<VertexId> vs;
  for (OEdge o : loop) vs.push_back(g.origin(o));
  std::sort(vs.begin(), vs.end());
  return vs;
}

EdgePath concat(std::initializer_list<const EdgePath*> parts) {
  EdgePath out;
  for (const EdgePath* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

}  // namespace

EdgePath canonical_loop(const EdgePath& loop) {
  EdgePath a = least_rotation(loop);
  EdgePath b = least_rotation(reverse_path(loop));
  return std::min(a, b);
}

std::string to_string(CandidateLoop::Kind k) {
  switch (k) {
    case CandidateLoop::Kind::circle:
      return "circle";
    case CandidateLoop::Kind::figure_eight:
      return "figure-eight";
    case CandidateLoop::Kind::barbell:
      return "barbell";
  }
  return "?";
}

std::vector<EdgePath> embedded_circles(const Graph& g) {
  std::vector<EdgePath> found;
  std::vector<char> on_path(static_cast<std::size_t>(g.vertex_count), 0);
  std::vector<char> edge_used(static_cast<std::size_t>(g.edge_count()), 0);
  EdgePath path;
  // Circles through s whose other vertices all exceed s.
  std::function<void(VertexId, VertexId)> dfs = [&](VertexId s, VertexId u) {
    for (OEdge o : g.half_edges(u)) {
      if (edge_used[static_cast<std::size_t>(edge_of(o))]) continue;
      const VertexId t = g.terminus(o);
      if (t == s) {
        path.push_back(o);
        found.push_back(canonical_loop(path));
        path.pop_back();
      } else if (t > s && !on_path[static_cast<std::size_t>(t)]) {
        path.push_back(o);
        on_path[static_cast<std::size_t>(t)] = 1;
        edge_used[static_cast<std::size_t>(edge_of(o))] = 1;
        dfs(s, t);
        edge_used[static_cast<std::size_t>(edge_of(o))] = 0;
        on_path[static_cast<std::size_t>(t)] = 0;
        path.pop_back();
      }
    }
  };
  for (VertexId s = 0; s < g.vertex_count; ++s) {
    on_path[static_cast<std::size_t>(s)] = 1;
    dfs(s, s);
    on_path[static_cast<std::size_t>(s)] = 0;
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

std::vector<CandidateLoop> enumerate_candidates(const Graph& g) {
  using Kind = CandidateLoop::Kind;
  std::map<EdgePath, Kind> result;
  const std::vector<EdgePath> circles = embedded_circles(g);
  for (const EdgePath& c : circles) result.emplace(c, Kind::circle);

  std::vector<std::vector<VertexId>> verts;
  for (const EdgePath& c : circles) verts.push_back(loop_vertices(g, c));

  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      std::vector<VertexId> common;
      std::set_intersection(verts[i].begin(), verts[i].end(), verts[j].begin(), verts[j].end(),
                            std::back_inserter(common));
      if (common.size() == 1) {
        const VertexId v = common.front();
        const EdgePath c1 = rotate_to(g, circles[i], v);
        const EdgePath c2 = rotate_to(g, circles[j], v);
        const EdgePath c2r = reverse_path(c2);
        result.emplace(canonical_loop(concat({&c1, &c2})), Kind::figure_eight);
        result.emplace(canonical_loop(concat({&c1, &c2r})), Kind::figure_eight);
      } else if (common.empty()) {
        // Bars: embedded paths from circle i to circle j meeting them only at their ends.
        std::vector<char> blocked(static_cast<std::size_t>(g.vertex_count), 0);
        std::vector<char> target(static_cast<std::size_t>(g.vertex_count), 0);
        for (VertexId v : verts[i]) blocked[static_cast<std::size_t>(v)] = 1;
        for (VertexId v : verts[j]) target[static_cast<std::size_t>(v)] = 1;
        EdgePath bar;
        std::function<void(VertexId, VertexId)> walk = [&](VertexId start, VertexId u) {
          for (OEdge o : g.half_edges(u)) {
            const VertexId t = g.terminus(o);
            if (target[static_cast<std::size_t>(t)]) {
              bar.push_back(o);
              const EdgePath c1 = rotate_to(g, circles[i], start);
              const EdgePath c2 = rotate_to(g, circles[j], t);
              const EdgePath c2r = reverse_path(c2);
              const EdgePath back = reverse_path(bar);
              result.emplace(canonical_loop(concat({&c1, &bar, &c2, &back})), Kind::barbell);
              result.emplace(canonical_loop(concat({&c1, &bar, &c2r, &back})), Kind::barbell);
              bar.pop_back();
            } else if (!blocked[static_cast<std::size_t>(t)]) {
              blocked[static_cast<std::size_t>(t)] = 1;
              bar.push_back(o);
              walk(start, t);
              bar.pop_back();
              blocked[static_cast<std::size_t>(t)] = 0;
            }
          }
        };
        for (VertexId u : verts[i]) walk(u, u);
      }
    }
  }
  std::vector<CandidateLoop> out;
  for (auto& [loop, kind] : result) out.push_back({loop, kind});
  return out;
}

EdgePath Isomorphism::apply(const EdgePath& p) const {
  EdgePath out;
  out.reserve(p.size());
  for (OEdge o : p) out.push_back(apply(o));
  return out;
}

std::vector<Isomorphism> isomorphisms(const Graph& g, const Graph& h,
                                      std::span<const Rational> g_lengths,
                                      std::span<const Rational> h_lengths) {
  std::vector<Isomorphism> out;
  if (g.vertex_count != h.vertex_count || g.edge_count() != h.edge_count()) return out;
  const bool use_lengths = !g_lengths.empty() && !h_lengths.empty();
  {
    std::vector<int> vg, vh;
    for (VertexId v = 0; v < g.vertex_count; ++v) {
      vg.push_back(g.valence(v));
      vh.push_back(h.valence(v));
    }
    std::sort(vg.begin(), vg.end());
    std::sort(vh.begin(), vh.end());
    if (vg != vh) return out;
  }
  // Edge order: breadth-first from vertex 0 so that vertex images get fixed early.
  std::vector<EdgeId> order;
  {
    std::vector<char> seen_v(static_cast<std::size_t>(g.vertex_count), 0);
    std::vector<char> seen_e(static_cast<std::size_t>(g.edge_count()), 0);
    std::queue<VertexId> q;
    if (g.vertex_count > 0) {
      q.push(0);
      seen_v[0] = 1;
    }
    while (!q.empty()) {
      const VertexId u = q.front();
      q.pop();
      for (OEdge o : g.half_edges(u)) {
        const EdgeId e = edge_of(o);
        if (!seen_e[static_cast<std::size_t>(e)]) {
          seen_e[static_cast<std::size_t>(e)] = 1;
          order.push_back(e);
        }
        const VertexId t = g.terminus(o);
        if (!seen_v[static_cast<std::size_t>(t)]) {
          seen_v[static_cast<std::size_t>(t)] = 1;
          q.push(t);
        }
      }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!seen_e[static_cast<std::size_t>(e)]) order.push_back(e);
    }
  }
  Isomorphism cur;
  cur.vertex_map.assign(static_cast<std::size_t>(g.vertex_count), -1);
  cur.edge_map.assign(static_cast<std::size_t>(g.edge_count()), -1);
  std::vector<VertexId> vinv(static_cast<std::size_t>(h.vertex_count), -1);
  std::vector<char> hused(static_cast<std::size_t>(h.edge_count()), 0);

  auto assign_vertex = [&](VertexId a, VertexId b, std::vector<VertexId>& undo) {
    VertexId& fa = cur.vertex_map[static_cast<std::size_t>(a)];
    if (fa == b) return true;
    if (fa != -1 || vinv[static_cast<std::size_t>(b)] != -1) return false;
    if (g.valence(a) != h.valence(b)) return false;
    fa = b;
    vinv[static_cast<std::size_t>(b)] = a;
    undo.push_back(a);
    return true;
  };

  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (k == order.size()) {
      out.push_back(cur);
      return;
    }
    const EdgeId e = order[k];
    const auto [a, b] = g.ends[static_cast<std::size_t>(e)];
    for (OEdge o = 0; o < 2 * h.edge_count(); ++o) {
      const EdgeId f = edge_of(o);
      if (hused[static_cast<std::size_t>(f)]) continue;
      if ((a == b) != h.is_loop(f)) continue;
      if (use_lengths &&
          g_lengths[static_cast<std::size_t>(e)] != h_lengths[static_cast<std::size_t>(f)]) {
        continue;
      }
      std::vector<VertexId> undo;
      if (assign_vertex(a, h.origin(o), undo) && assign_vertex(b, h.terminus(o), undo)) {
        hused[static_cast<std::size_t>(f)] = 1;
        cur.edge_map[static_cast<std::size_t>(e)] = o;
        extend(k + 1);
        cur.edge_map[static_cast<std::size_t>(e)] = -1;
        hused[static_cast<std::size_t>(f)] = 0;
      }
      for (VertexId v : undo) {
        vinv[static_cast<std::size_t>(cur.vertex_map[static_cast<std::size_t>(v)])] = -1;
        cur.vertex_map[static_cast<std::size_t>(v)] = -1;
      }
    }
  };
  extend(0);
  return out;
}

Isomorphism inverse(const Isomorphism& iso) {
  Isomorphism inv;
  inv.vertex_map.assign(iso.vertex_map.size(), -1);
  inv.edge_map.assign(iso.edge_map.size(), -1);
  for (std::size_t v = 0; v < iso.vertex_map.size(); ++v) {
    inv.vertex_map[static_cast<std::size_t>(iso.vertex_map[v])] = static_cast<VertexId>(v);
  }
  for (std::size_t e = 0; e < iso.edge_map.size(); ++e) {
    const OEdge img = iso.edge_map[e];
    inv.edge_map[static_cast<std::size_t>(edge_of(img))] =
        is_backward(img) ? backward(static_cast<EdgeId>(e)) : forward(static_cast<EdgeId>(e));
  }
  return inv;
}

bool is_forest(const Graph& g, std::span<const EdgeId> edges) {
  UnionFind uf(g.vertex_count);
  for (EdgeId e : edges) {
    if (e < 0 || e >= g.edge_count()) return false;
    const auto [a, b] = g.ends[static_cast<std::size_t>(e)];
    if (!uf.unite(a, b)) return false;
  }
  return true;
}

EdgePath Collapse::push(const EdgePath& p) const {
  EdgePath out;
  for (OEdge o : p) {
    const EdgeId img = edge_map[static_cast<std::size_t>(edge_of(o))];
    if (img >= 0) out.push_back(is_backward(o) ? backward(img) : forward(img));
  }
  return tighten(out);
}

Collapse collapse_forest(const Graph& g, std::span<const EdgeId> forest) {
  if (!is_forest(g, forest)) throw std::invalid_argument("collapse_forest: edge set has a cycle");
  UnionFind uf(g.vertex_count);
  std::vector<char> collapsed(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeId e : forest) {
    uf.unite(g.ends[static_cast<std::size_t>(e)].first, g.ends[static_cast<std::size_t>(e)].second);
    collapsed[static_cast<std::size_t>(e)] = 1;
  }
  Collapse c;
  c.vertex_map.assign(static_cast<std::size_t>(g.vertex_count), -1);
  std::vector<VertexId> class_id(static_cast<std::size_t>(g.vertex_count), -1);
  int next = 0;
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    const int root = uf.find(v);  // roots are the least member of their class
    if (class_id[static_cast<std::size_t>(root)] == -1) class_id[static_cast<std::size_t>(root)] = next++;
    c.vertex_map[static_cast<std::size_t>(v)] = class_id[static_cast<std::size_t>(root)];
  }
  c.graph.vertex_count = next;
  c.graph.subdivided = g.subdivided;
  c.edge_map.assign(static_cast<std::size_t>(g.edge_count()), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (collapsed[static_cast<std::size_t>(e)]) continue;
    c.edge_map[static_cast<std::size_t>(e)] = c.graph.edge_count();
    const auto [a, b] = g.ends[static_cast<std::size_t>(e)];
    c.graph.ends.emplace_back(c.vertex_map[static_cast<std::size_t>(a)],
                              c.vertex_map[static_cast<std::size_t>(b)]);
  }
  return c;
}

std::vector<BlowUp> enumerate_blow_ups(const Graph& g) {
  std::vector<BlowUp> out;
  for (VertexId v = 0; v < g.vertex_count; ++v) {
    const std::vector<OEdge> hs = g.half_edges(v);
    const int d = static_cast<int>(hs.size());
    if (d < 4) continue;
    // side_a always holds hs[0]; mask picks the rest of side_a among hs[1..].
    for (unsigned mask = 0; mask < (1u << (d - 1)); ++mask) {
      const int a_size = 1 + __builtin_popcount(mask);
      if (a_size < 2 || d - a_size < 2) continue;
      BlowUp b;
      b.vertex = v;
      b.side_a.push_back(hs[0]);
      for (int k = 1; k < d; ++k) {
        (mask & (1u << (k - 1)) ? b.side_a : b.side_b).push_back(hs[static_cast<std::size_t>(k)]);
      }
      b.graph = g;
      const VertexId nv = g.vertex_count;
      b.graph.vertex_count = nv + 1;
      for (OEdge o : b.side_b) {
        auto& ends = b.graph.ends[static_cast<std::size_t>(edge_of(o))];
        (is_backward(o) ? ends.second : ends.first) = nv;
      }
      b.new_edge = g.edge_count();
      b.graph.ends.emplace_back(v, nv);
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<EdgeId> spanning_tree(const Graph& g, std::span<const EdgeId> required) {
  if (!is_forest(g, required)) throw std::invalid_argument("spanning_tree: required edges have a cycle");
  UnionFind uf(g.vertex_count);
  std::vector<EdgeId> tree(required.begin(), required.end());
  for (EdgeId e : required) {
    uf.unite(g.ends[static_cast<std::size_t>(e)].first, g.ends[static_cast<std::size_t>(e)].second);
  }
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count), 0);
  std::queue<VertexId> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop();
    std::vector<OEdge> hs = g.half_edges(u);
    std::sort(hs.begin(), hs.end(), [](OEdge x, OEdge y) { return edge_of(x) < edge_of(y); });
    for (OEdge o : hs) {
      const VertexId t = g.terminus(o);
      if (uf.unite(u, t)) tree.push_back(edge_of(o));
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = 1;
        q.push(t);
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

std::string to_string(const Graph& g) {
  std::ostringstream os;
  os << "vertices " << g.vertex_count << "\n";
  if (g.subdivided) os << "subdivided\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    os << "edge " << e << ' ' << g.ends[static_cast<std::size_t>(e)].first << ' '
       << g.ends[static_cast<std::size_t>(e)].second << "\n";
  }
  return os.str();
}

}  // namespace cvn
