#include "cvn/text_format.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "cvn/dicks_ventura.hpp"

namespace cvn {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

struct Block {
  std::string kind, name;
  int line = 0;
  std::vector<Line> body;
};

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text.substr(0, text.find('#')))};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::vector<Block> split_blocks(std::string_view text) {
  std::vector<Block> blocks;
  std::optional<Block> open;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    ++number;
    const std::vector<std::string> tokens = tokenize(text.substr(pos, end - pos));
    pos = end + 1;
    if (tokens.empty()) continue;
    if (!open) {
      if (tokens[0] != "graph" && tokens[0] != "point" && tokens[0] != "auto") {
        throw ParseError(number, "expected 'graph', 'point' or 'auto', found '" + tokens[0] + "'");
      }
      if (tokens.size() != 2) throw ParseError(number, "expected '" + tokens[0] + " NAME'");
      open = Block{tokens[0], tokens[1], number, {}};
    } else if (tokens[0] == "end") {
      if (tokens.size() != 1) throw ParseError(number, "unexpected text after 'end'");
      blocks.push_back(std::move(*open));
      open.reset();
    } else {
      open->body.push_back({number, tokens});
    }
  }
  if (open) throw ParseError(open->line, "block '" + open->name + "' is missing 'end'");
  return blocks;
}

int to_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, "expected an integer, found '" + s + "'");
}

Rational to_rational(const std::string& s, int line) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a rational number, found '" + s + "'");
  }
}

void expect_args(const Line& l, std::size_t count) {
  if (l.tokens.size() != count + 1) {
    throw ParseError(l.number, "'" + l.tokens[0] + "' takes " + std::to_string(count) + " argument(s)");
  }
}

// vertices/edge lines; returns false for any other keyword.
bool graph_line(const Line& l, Graph& g, bool& has_vertices) {
  if (l.tokens[0] == "vertices") {
    expect_args(l, 1);
    g.vertex_count = to_int(l.tokens[1], l.number);
    has_vertices = true;
    return true;
  }
  if (l.tokens[0] == "edge") {
    expect_args(l, 2);
    g.ends.emplace_back(to_int(l.tokens[1], l.number), to_int(l.tokens[2], l.number));
    return true;
  }
  if (l.tokens[0] == "subdivided") {
    expect_args(l, 0);
    g.subdivided = true;
    return true;
  }
  return false;
}

void check_graph(const Graph& g, int line) {
  try {
    g.validate();
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
}

Graph parse_graph(const Block& b) {
  Graph g;
  bool has_vertices = false;
  for (const Line& l : b.body) {
    if (!graph_line(l, g, has_vertices)) throw ParseError(l.number, "unknown graph field '" + l.tokens[0] + "'");
  }
  if (!has_vertices) throw ParseError(b.line, "graph '" + b.name + "' needs a 'vertices' line");
  check_graph(g, b.line);
  return g;
}

AutoPair parse_auto(const Block& b) {
  int rank = 0;
  std::map<int, Word> fwd, inv;
  std::vector<const Line*> maps;
  for (const Line& l : b.body) {
    if (l.tokens[0] == "rank") {
      expect_args(l, 1);
      rank = to_int(l.tokens[1], l.number);
      if (rank < 1 || rank > 26) throw ParseError(l.number, "rank must be between 1 and 26");
    } else {
      maps.push_back(&l);
    }
  }
  if (rank == 0) throw ParseError(b.line, "auto '" + b.name + "' needs a 'rank' line");
  for (const Line* l : maps) {
    std::size_t at = 0;
    bool inverse = false;
    if (l->tokens[0] == "inverse") {
      inverse = true;
      at = 1;
    }
    if (l->tokens.size() < at + 3 || l->tokens[at + 1] != "->") {
      throw ParseError(l->number, "expected 'x -> word' or 'inverse x -> word'");
    }
    const std::string& g = l->tokens[at];
    if (g.size() != 1 || g[0] < 'a' || g[0] >= 'a' + rank) {
      throw ParseError(l->number, "'" + g + "' is not a generator of rank " + std::to_string(rank));
    }
    std::string text;
    for (std::size_t i = at + 2; i < l->tokens.size(); ++i) text += l->tokens[i] + " ";
    Word w;
    try {
      w = parse_word(text, rank);
    } catch (const std::exception& e) {
      throw ParseError(l->number, e.what());
    }
    auto& table = inverse ? inv : fwd;
    if (!table.emplace(g[0] - 'a', std::move(w)).second) {
      throw ParseError(l->number, "generator '" + g + "' given twice");
    }
  }
  std::vector<Word> f, i;
  for (int k = 0; k < rank; ++k) {
    const std::string g(1, static_cast<char>('a' + k));
    if (!fwd.contains(k)) throw ParseError(b.line, "auto '" + b.name + "' has no image for " + g);
    if (!inv.contains(k)) throw ParseError(b.line, "auto '" + b.name + "' has no inverse image for " + g);
    f.push_back(fwd[k]);
    i.push_back(inv[k]);
  }
  try {
    return AutoPair(std::move(f), std::move(i));
  } catch (const std::exception& e) {
    throw ParseError(b.line, "auto '" + b.name + "': " + e.what());
  }
}

MarkedGraph theta_simplex(int edges) { return tree_marking(make_theta(edges), 0, {0}); }

}  // namespace

std::optional<AutoPair> builtin_auto(const std::string& name) {
  if (name == "golden") {
    return AutoPair({parse_word("b", 2), parse_word("a b", 2)}, {parse_word("b A", 2), parse_word("a", 2)});
  }
  if (name.starts_with("identity")) {
    try {
      const int rank = std::stoi(name.substr(8));
      if (rank >= 1 && rank <= 26) return AutoPair::identity(rank);
    } catch (const std::exception&) {
    }
  }
  if (name.starts_with("alpha")) {
    try {
      const int p = std::stoi(name.substr(5));
      if (p >= 3 && p <= 27 && is_prime(p)) return build_Xp(p).induced;
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

std::optional<MarkedGraph> builtin_simplex(const std::string& name) {
  try {
    if (name.starts_with("rose")) {
      const int n = std::stoi(name.substr(4));
      if (n >= 1 && n <= 26) return identity_rose(n);
    }
    if (name.starts_with("theta")) {
      const int n = std::stoi(name.substr(5));
      if (n >= 3 && n <= 27) return theta_simplex(n);
    }
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

const CVPoint& Workspace::point(const std::string& name) const {
  const auto it = points.find(name);
  if (it == points.end()) throw ParseError(0, "unknown point '" + name + "'");
  return it->second;
}

AutoPair Workspace::automorphism(const std::string& name) const {
  if (const auto it = autos.find(name); it != autos.end()) return it->second;
  if (auto b = builtin_auto(name)) return *b;
  throw ParseError(0, "unknown automorphism '" + name + "'");
}

MarkedGraph Workspace::simplex(const std::string& name) const {
  if (const auto it = points.find(name); it != points.end()) return it->second.marked;
  if (auto b = builtin_simplex(name)) return *b;
  throw ParseError(0, "unknown simplex '" + name + "'");
}

Workspace parse_workspace(std::string_view text) {
  Workspace ws;
  const std::vector<Block> blocks = split_blocks(text);
  auto fresh = [&](const Block& b) {
    if (ws.graphs.contains(b.name) || ws.points.contains(b.name) || ws.autos.contains(b.name)) {
      throw ParseError(b.line, "name '" + b.name + "' defined twice");
    }
  };
  for (const Block& b : blocks) {
    if (b.kind == "graph") {
      fresh(b);
      ws.graphs.emplace(b.name, parse_graph(b));
    } else if (b.kind == "auto") {
      fresh(b);
      ws.autos.emplace(b.name, parse_auto(b));
    }
  }
  for (const Block& b : blocks) {
    if (b.kind != "point") continue;
    fresh(b);
    std::optional<MarkedGraph> base;  // built-in simplex
    Graph inline_graph;
    bool has_vertices = false;
    std::optional<Graph> graph;
    VertexId basepoint = 0;
    std::optional<std::vector<EdgeId>> tree;
    std::vector<std::pair<int, AutoPair>> acts;
    std::optional<std::vector<Rational>> lengths;
    bool centred = false;
    int lengths_line = b.line;
    for (const Line& l : b.body) {
      const std::string& key = l.tokens[0];
      if (graph_line(l, inline_graph, has_vertices)) continue;
      if (key == "graph") {
        if (l.tokens.size() == 3 && (l.tokens[1] == "rose" || l.tokens[1] == "theta")) {
          const int n = to_int(l.tokens[2], l.number);
          base = builtin_simplex(l.tokens[1] + std::to_string(n));
          if (!base) throw ParseError(l.number, "unsupported size for " + l.tokens[1]);
          graph = base->graph;
        } else {
          expect_args(l, 1);
          const auto it = ws.graphs.find(l.tokens[1]);
          if (it == ws.graphs.end()) throw ParseError(l.number, "unknown graph '" + l.tokens[1] + "'");
          graph = it->second;
        }
      } else if (key == "basepoint") {
        expect_args(l, 1);
        basepoint = to_int(l.tokens[1], l.number);
      } else if (key == "tree") {
        tree.emplace();
        for (std::size_t i = 1; i < l.tokens.size(); ++i) tree->push_back(to_int(l.tokens[i], l.number));
      } else if (key == "act") {
        expect_args(l, 1);
        try {
          acts.emplace_back(l.number, ws.automorphism(l.tokens[1]));
        } catch (const ParseError& e) {
          throw ParseError(l.number, e.message());
        }
      } else if (key == "lengths") {
        lengths_line = l.number;
        if (l.tokens.size() == 2 && l.tokens[1] == "centre") {
          centred = true;
        } else {
          lengths.emplace();
          for (std::size_t i = 1; i < l.tokens.size(); ++i) lengths->push_back(to_rational(l.tokens[i], l.number));
        }
      } else {
        throw ParseError(l.number, "unknown point field '" + key + "'");
      }
    }
    if (has_vertices) {
      if (graph) throw ParseError(b.line, "point '" + b.name + "' has both a graph reference and inline edges");
      check_graph(inline_graph, b.line);
      graph = inline_graph;
    }
    if (!graph) throw ParseError(b.line, "point '" + b.name + "' needs a graph");
    if (!lengths && !centred) throw ParseError(b.line, "point '" + b.name + "' needs a 'lengths' line");
    MarkedGraph m;
    try {
      if (base && !tree && basepoint == 0) {
        m = *base;
      } else {
        if (basepoint < 0 || basepoint >= graph->vertex_count) throw std::invalid_argument("basepoint out of range");
        std::vector<EdgeId> t = tree ? *tree : spanning_tree(*graph);
        for (EdgeId e : t) {
          if (e < 0 || e >= graph->edge_count()) throw std::invalid_argument("tree edge out of range");
        }
        if (static_cast<int>(t.size()) != graph->vertex_count - 1 || !is_forest(*graph, t)) {
          throw std::invalid_argument("tree is not a spanning tree");
        }
        m = tree_marking(*graph, basepoint, std::move(t));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(b.line, "point '" + b.name + "': " + e.what());
    }
    for (const auto& [line, phi] : acts) {
      if (phi.rank() != m.rank()) throw ParseError(line, "automorphism rank does not match the graph");
      m = act(m, phi);
    }
    CVPoint x{m, centred ? centre(m).lengths : *lengths};
    try {
      validate(x);
    } catch (const std::exception& e) {
      throw ParseError(lengths_line, "point '" + b.name + "': " + e.what());
    }
    ws.points.emplace(b.name, std::move(x));
  }
  return ws;
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open", path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_workspace(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.message(), path);
  }
}

}  // namespace cvn
