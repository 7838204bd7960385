#include "cvn/min_explorer.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "cvn/lipschitz.hpp"

namespace cvn {

namespace {

std::string half_edge_name(OEdge o) {
  return (is_backward(o) ? "E" : "e") + std::to_string(edge_of(o));
}

std::string key_of(const Graph& g, const std::vector<CyclicWord>& words) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  std::vector<int> valences;
  for (VertexId v = 0; v < g.vertex_count; ++v) valences.push_back(g.valence(v));
  std::sort(valences.begin(), valences.end());
  mix(static_cast<std::uint64_t>(g.edge_count()));
  for (int v : valences) mix(static_cast<std::uint64_t>(v));
  for (const CyclicWord& w : words) {
    for (Letter l : w.letters()) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(l)));
    mix(0);
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

std::size_t shortest(const std::vector<CyclicWord>& words) {
  std::size_t m = SIZE_MAX;
  for (const CyclicWord& w : words) m = std::min(m, w.size());
  return m;
}

std::size_t longest(const std::vector<CyclicWord>& words) {
  std::size_t m = 0;
  for (const CyclicWord& w : words) m = std::max(m, w.size());
  return m;
}

// Simplices seen so far, looked up by key then confirmed by an isomorphism.
class SimplexIndex {
 public:
  struct Match {
    int id;
    Isomorphism iso;  // probe graph -> stored graph
  };

  int add(SimplexRef s, const std::vector<CyclicWord>& cands) {
    const int id = static_cast<int>(stored_.size());
    longest_ = std::max(longest_, longest(cands));
    by_key_[key_of(s.graph, cands)].push_back(id);
    stored_.push_back(std::move(s));
    return id;
  }

  std::optional<Match> find(const SimplexRef& s, const std::vector<CyclicWord>& cands) const {
    const auto it = by_key_.find(key_of(s.graph, cands));
    if (it == by_key_.end()) return std::nullopt;
    for (int id : it->second) {
      if (auto iso = simplex_isomorphism(s, stored_[static_cast<std::size_t>(id)])) {
        return Match{id, *iso};
      }
    }
    return std::nullopt;
  }

  /// Looks for s or one of its translates by phi^k, 1 <= |k| <= k_max.
  std::optional<Match> find_translate(const SimplexRef& s, const std::vector<CyclicWord>& cands,
                                      const AutoPair& phi, int k_max) const {
    if (auto m = find(s, cands)) return m;
    const AutoPair inv = phi.inverse();
    for (const AutoPair* step : {&phi, &inv}) {
      SimplexRef y = s;
      for (int k = 1; k <= k_max; ++k) {
        y = act(y, *step);
        const std::vector<CyclicWord> c = candidates_of(y);
        if (shortest(c) > longest_) break;
        if (auto m = find(y, c)) return m;
      }
    }
    return std::nullopt;
  }

  std::size_t longest_candidate() const { return longest_; }

 private:
  std::vector<SimplexRef> stored_;
  std::unordered_map<std::string, std::vector<int>> by_key_;
  std::size_t longest_ = 0;
};

Isomorphism identity_isomorphism(const Graph& g) {
  Isomorphism id;
  for (VertexId v = 0; v < g.vertex_count; ++v) id.vertex_map.push_back(v);
  for (EdgeId e = 0; e < g.edge_count(); ++e) id.edge_map.push_back(forward(e));
  return id;
}

// Link for a blow-up neighbor n of `here` that matched census entry
// `target` through iso (n graph -> target graph). Collapsing n along its new
// edge gives `here` with identical ids, so the link isomorphism is iso pushed
// through both collapses and inverted.
FaceLink face_link(const Neighbor& n, int target, int here, const Isomorphism& iso) {
  const Graph& g = n.marked.graph;
  const EdgeId forest[] = {n.edge};
  const Collapse cn = collapse_forest(g, forest);
  const EdgeId target_edge = edge_of(iso.apply(forward(n.edge)));
  Graph tg;
  tg.vertex_count = g.vertex_count;
  tg.subdivided = true;
  tg.ends.resize(g.ends.size());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const OEdge img = iso.edge_map[static_cast<std::size_t>(e)];
    const auto [a, b] = g.ends[static_cast<std::size_t>(e)];
    auto& slot = tg.ends[static_cast<std::size_t>(edge_of(img))];
    slot = is_backward(img) ? std::pair{iso.vertex_map[static_cast<std::size_t>(b)], iso.vertex_map[static_cast<std::size_t>(a)]}
                            : std::pair{iso.vertex_map[static_cast<std::size_t>(a)], iso.vertex_map[static_cast<std::size_t>(b)]};
  }
  const EdgeId tforest[] = {target_edge};
  const Collapse ct = collapse_forest(tg, tforest);
  // cn.graph -> ct.graph, then inverted.
  Isomorphism down;
  down.vertex_map.assign(static_cast<std::size_t>(cn.graph.vertex_count), -1);
  for (VertexId u = 0; u < g.vertex_count; ++u) {
    down.vertex_map[static_cast<std::size_t>(cn.vertex_map[static_cast<std::size_t>(u)])] =
        ct.vertex_map[static_cast<std::size_t>(iso.vertex_map[static_cast<std::size_t>(u)])];
  }
  down.edge_map.assign(static_cast<std::size_t>(cn.graph.edge_count()), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const EdgeId ne = cn.edge_map[static_cast<std::size_t>(e)];
    if (ne < 0) continue;
    const OEdge img = iso.edge_map[static_cast<std::size_t>(e)];
    const EdgeId te = ct.edge_map[static_cast<std::size_t>(edge_of(img))];
    down.edge_map[static_cast<std::size_t>(ne)] = is_backward(img) ? backward(te) : forward(te);
  }
  return {target, here, target_edge, inverse(down)};
}

CVPoint point_of(const SimplexRef& s, const MinimizationResult& r) { return {s, r.argmin}; }

}  // namespace

std::vector<Neighbor> neighbors(const SimplexRef& s) {
  std::vector<Neighbor> out;
  const Graph& g = s.graph;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.is_loop(e)) continue;
    const EdgeId forest[] = {e};
    MarkedCollapse c = collapse_forest(s, forest);
    out.push_back({Neighbor::Move::collapse, std::move(c.marked), e, "collapse e" + std::to_string(e)});
  }
  for (const BlowUp& b : enumerate_blow_ups(g)) {
    std::string label = "blow-up v" + std::to_string(b.vertex) + " {";
    for (std::size_t i = 0; i < b.side_b.size(); ++i) {
      label += (i ? "," : "") + half_edge_name(b.side_b[i]);
    }
    label += "}";
    out.push_back({Neighbor::Move::blow_up, blow_up(s, b), b.new_edge, std::move(label)});
  }
  return out;
}

std::string simplex_key(const SimplexRef& s) { return key_of(s.graph, candidates_of(s)); }

Census explore_min_set(const CVPoint& seed, const AutoPair& phi, const Rational& tol,
                       const ExploreLimits& limits) {
  if (tol <= 0) throw std::invalid_argument("explore_min_set: tol must be positive");
  const Rational inner_tol = tol / 1000;
  Census census;
  SimplexIndex index;
  std::vector<int> entry_of;  // index id -> census entry, -1 when rejected

  auto evaluate = [&](const SimplexRef& s) {
    ++census.steps;
    return min_displacement_on_simplex(s, phi, inner_tol);
  };
  auto lookup = [&](const SimplexRef& s, const std::vector<CyclicWord>& cands) {
    return limits.modulo_phi ? index.find_translate(s, cands, phi, limits.k_max)
                             : index.find(s, cands);
  };

  {
    const std::vector<CyclicWord> cands = candidates_of(seed.marked);
    MinimizationResult r = evaluate(seed.marked);
    census.best = r.upper;
    index.add(seed.marked, cands);
    entry_of.push_back(0);
    CVPoint p = point_of(seed.marked, r);
    census.entries.push_back({seed.marked, key_of(seed.marked.graph, cands), std::move(r), std::move(p), {}});
  }

  std::deque<int> frontier{0};
  while (!frontier.empty()) {
    const int current = frontier.front();
    frontier.pop_front();
    const SimplexRef here = census.entries[static_cast<std::size_t>(current)].simplex;
    const std::vector<std::string> here_path = census.entries[static_cast<std::size_t>(current)].path;
    for (Neighbor& n : neighbors(here)) {
      const std::vector<CyclicWord> cands = candidates_of(n.marked);
      int entry = -1;
      std::optional<Isomorphism> iso;
      if (auto m = lookup(n.marked, cands)) {
        entry = entry_of[static_cast<std::size_t>(m->id)];
        iso = m->iso;
      } else {
        if (static_cast<int>(census.entries.size()) >= limits.max_simplices ||
            census.steps >= limits.max_steps) {
          census.partial = true;
          continue;
        }
        MinimizationResult r = evaluate(n.marked);
        const bool keep = r.lower <= census.best * (1 + tol);
        index.add(n.marked, cands);
        if (keep) {
          entry = static_cast<int>(census.entries.size());
          entry_of.push_back(entry);
          census.best = std::min(census.best, r.upper);
          std::vector<std::string> path = here_path;
          path.push_back(n.label);
          CVPoint p = point_of(n.marked, r);
          census.entries.push_back({n.marked, key_of(n.marked.graph, cands), std::move(r), std::move(p), std::move(path)});
          frontier.push_back(entry);
          iso = identity_isomorphism(n.marked.graph);
        } else {
          entry_of.push_back(-1);
        }
      }
      if (entry < 0) continue;
      if (n.move == Neighbor::Move::collapse) {
        census.links.push_back({current, entry, n.edge, *iso});
      } else {
        census.links.push_back(face_link(n, entry, current, *iso));
      }
    }
  }

  // Drop entries that the final estimate no longer supports.
  std::vector<int> remap(census.entries.size(), -1);
  std::vector<SimplexCensusEntry> kept;
  for (std::size_t i = 0; i < census.entries.size(); ++i) {
    if (census.entries[i].bracket.lower <= census.best * (1 + tol)) {
      remap[i] = static_cast<int>(kept.size());
      kept.push_back(std::move(census.entries[i]));
    }
  }
  std::vector<FaceLink> links;
  for (FaceLink& l : census.links) {
    const int a = remap[static_cast<std::size_t>(l.coface)], b = remap[static_cast<std::size_t>(l.face)];
    if (a < 0 || b < 0) continue;
    l.coface = a;
    l.face = b;
    if (std::none_of(links.begin(), links.end(), [&](const FaceLink& o) {
          return o.coface == l.coface && o.face == l.face && o.edge == l.edge;
        })) {
      links.push_back(std::move(l));
    }
  }
  census.entries = std::move(kept);
  census.links = std::move(links);
  return census;
}

Quotient quotient_by_power(const std::vector<SimplexCensusEntry>& entries, const AutoPair& phi,
                           int k_max) {
  if (k_max < 1) throw std::invalid_argument("quotient_by_power: k_max must be >= 1");
  const int n = static_cast<int>(entries.size());
  SimplexIndex index;
  for (const SimplexCensusEntry& e : entries) index.add(e.simplex, candidates_of(e.simplex));

  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  for (int i = 0; i < n; ++i) {
    SimplexRef y = entries[static_cast<std::size_t>(i)].simplex;
    for (int k = 1; k <= k_max; ++k) {
      y = act(y, phi);
      const std::vector<CyclicWord> c = candidates_of(y);
      if (shortest(c) > index.longest_candidate()) break;
      if (auto m = index.find(y, c)) parent[static_cast<std::size_t>(find(i))] = find(m->id);
    }
  }

  Quotient q;
  q.orbit_of.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> rep_of_root(static_cast<std::size_t>(n), -1);
  // Least key per class.
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    int& rep = rep_of_root[static_cast<std::size_t>(r)];
    if (rep < 0 || entries[static_cast<std::size_t>(i)].key < entries[static_cast<std::size_t>(rep)].key) rep = i;
  }
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    if (find(i) == i) roots.push_back(i);
  }
  std::sort(roots.begin(), roots.end(), [&](int a, int b) {
    return entries[static_cast<std::size_t>(rep_of_root[static_cast<std::size_t>(a)])].key <
           entries[static_cast<std::size_t>(rep_of_root[static_cast<std::size_t>(b)])].key;
  });
  for (int r : roots) {
    q.representatives.push_back(rep_of_root[static_cast<std::size_t>(r)]);
    q.class_size.push_back(0);
  }
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    const auto pos = std::find(roots.begin(), roots.end(), r) - roots.begin();
    q.orbit_of[static_cast<std::size_t>(i)] = static_cast<int>(pos);
    ++q.class_size[static_cast<std::size_t>(pos)];
  }
  return q;
}

}  // namespace cvn
