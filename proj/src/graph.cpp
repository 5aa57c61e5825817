#include "lpflat/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "lpflat/error.hpp"

namespace lpflat {

namespace {

std::string edge_str(int a, int b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

}  // namespace

Graph::Graph(int n, const std::vector<Edge>& edges) : n_(n), edges_(edges) {
  if (n < 0) throw Error(ErrorKind::InvalidGraph, "negative vertex count");
  adjacency_.assign(static_cast<std::size_t>(n) * n, 0);
  for (const Edge& e : edges_) {
    if (e.u == e.v) throw Error(ErrorKind::InvalidGraph, "self-loop at vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v >= n)
      throw Error(ErrorKind::InvalidGraph, "edge " + edge_str(e.u, e.v) + " out of range for n = " + std::to_string(n));
    auto& cell = adjacency_[static_cast<std::size_t>(e.u) * n + e.v];
    if (cell) throw Error(ErrorKind::InvalidGraph, "duplicate edge " + edge_str(e.u, e.v));
    cell = 1;
    adjacency_[static_cast<std::size_t>(e.v) * n + e.u] = 1;
  }
  std::sort(edges_.begin(), edges_.end());
}

bool Graph::has_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return false;
  return adjacency_[static_cast<std::size_t>(a) * n_ + b] != 0;
}

int Graph::edge_index(int a, int b) const {
  const Edge e(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return static_cast<int>(it - edges_.begin());
}

int Graph::degree(int v) const {
  int d = 0;
  for (int w = 0; w < n_; ++w) d += has_edge(v, w) ? 1 : 0;
  return d;
}

std::vector<int> Graph::neighbors(int v) const {
  std::vector<int> out;
  for (int w = 0; w < n_; ++w)
    if (has_edge(v, w)) out.push_back(w);
  return out;
}

Graph Graph::with_edge(int a, int b) const {
  auto edges = edges_;
  edges.emplace_back(a, b);
  return Graph(n_, edges);
}

Graph contract_edge(const Graph& g, const Edge& e, std::vector<int>& vertex_map) {
  if (!g.has_edge(e)) throw Error(ErrorKind::MissingEdge, "cannot contract absent edge " + edge_str(e.u, e.v));
  vertex_map.assign(g.n(), 0);
  for (int v = 0, next = 0; v < g.n(); ++v) {
    if (v == e.v) continue;
    vertex_map[v] = next++;
  }
  vertex_map[e.v] = vertex_map[e.u];
  std::vector<Edge> edges;
  for (const Edge& f : g.edges()) {
    const int a = vertex_map[f.u];
    const int b = vertex_map[f.v];
    if (a != b) edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(g.n() - 1, edges);
}

Graph contract_edge(const Graph& g, const Edge& e) {
  std::vector<int> map;
  return contract_edge(g, e, map);
}

Graph delete_edge(const Graph& g, const Edge& e) {
  if (!g.has_edge(e)) throw Error(ErrorKind::MissingEdge, "cannot delete absent edge " + edge_str(e.u, e.v));
  std::vector<Edge> edges;
  for (const Edge& f : g.edges())
    if (f != e) edges.push_back(f);
  return Graph(g.n(), edges);
}

Graph delete_vertex(const Graph& g, int v) {
  std::vector<int> keep;
  for (int w = 0; w < g.n(); ++w)
    if (w != v) keep.push_back(w);
  return induced_subgraph(g, keep);
}

Graph two_sum(const Graph& g1, std::pair<int, int> e1, const Graph& g2, std::pair<int, int> e2) {
  if (!g1.has_edge(e1.first, e1.second))
    throw Error(ErrorKind::MissingEdge, "first graph lacks edge " + edge_str(e1.first, e1.second));
  if (!g2.has_edge(e2.first, e2.second))
    throw Error(ErrorKind::MissingEdge, "second graph lacks edge " + edge_str(e2.first, e2.second));
  std::vector<int> map(g2.n(), -1);
  map[e2.first] = e1.first;
  map[e2.second] = e1.second;
  int next = g1.n();
  for (int v = 0; v < g2.n(); ++v)
    if (map[v] < 0) map[v] = next++;
  std::vector<Edge> edges = g1.edges();
  for (const Edge& f : g2.edges()) {
    const Edge mapped(map[f.u], map[f.v]);
    if (!g1.has_edge(mapped)) edges.push_back(mapped);
  }
  return Graph(next, edges);
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> pos(g.n(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (pos[e.u] >= 0 && pos[e.v] >= 0) edges.emplace_back(pos[e.u], pos[e.v]);
  return Graph(static_cast<int>(vertices.size()), edges);
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<int> comp(g.n(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::vector<int> stack{s};
    comp[s] = static_cast<int>(out.size()) - 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out.back().push_back(v);
      for (int w : g.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

bool is_forest(const Graph& g) {
  return g.num_edges() + static_cast<int>(connected_components(g).size()) == g.n();
}

Graph strip_isolated(const Graph& g) {
  std::vector<int> keep;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) > 0) keep.push_back(v);
  return induced_subgraph(g, keep);
}

// ---- canonical form -------------------------------------------------------

namespace {

/// Colour refinement: start from degrees and split by neighbour colour
/// multisets until stable. Colours are ranks, so they are relabelling-invariant.
std::vector<int> refine_colours(const Graph& g) {
  const int n = g.n();
  std::vector<int> colour(n);
  for (int v = 0; v < n; ++v) colour[v] = g.degree(v);
  for (int round = 0; round < n; ++round) {
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (int w : g.neighbors(v)) sig[v].second.push_back(colour[w]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v)
      next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    const bool stable = std::set<int>(next.begin(), next.end()).size() == std::set<int>(colour.begin(), colour.end()).size();
    colour = std::move(next);
    if (stable) break;
  }
  return colour;
}

struct CanonicalSearch {
  const Graph& g;
  std::vector<int> slot_colour;  // colour required at each position
  std::vector<int> colour;
  std::vector<int> order;
  std::vector<char> used;
  std::vector<char> current;  // lower-triangle bits, row by row
  std::vector<char> best;
  bool have_best = false;

  void run(int pos) {
    const int n = g.n();
    if (pos == n) {
      if (!have_best || current < best) {
        best = current;
        have_best = true;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v] || colour[v] != slot_colour[pos]) continue;
      const std::size_t mark = current.size();
      for (int i = 0; i < pos; ++i) current.push_back(g.has_edge(order[i], v) ? 1 : 0);
      // Prefix comparison against the incumbent; larger prefixes cannot win.
      bool prune = false;
      if (have_best) {
        for (std::size_t k = 0; k < current.size(); ++k) {
          if (current[k] != best[k]) {
            prune = current[k] > best[k];
            break;
          }
        }
      }
      if (!prune) {
        used[v] = 1;
        order[pos] = v;
        run(pos + 1);
        used[v] = 0;
      }
      current.resize(mark);
    }
  }
};

}  // namespace

std::vector<std::uint64_t> canonical_form(const Graph& g) {
  const int n = g.n();
  CanonicalSearch search{g, {}, refine_colours(g), std::vector<int>(n), std::vector<char>(n, 0), {}, {}};
  search.slot_colour = search.colour;
  std::sort(search.slot_colour.begin(), search.slot_colour.end());
  search.run(0);

  std::vector<std::uint64_t> out{static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(g.num_edges())};
  // The colour histogram is part of the invariant as well.
  for (int c : search.slot_colour) out.push_back(static_cast<std::uint64_t>(c));
  std::uint64_t word = 0;
  int filled = 0;
  for (char bit : search.best) {
    word = (word << 1) | static_cast<std::uint64_t>(bit);
    if (++filled == 64) {
      out.push_back(word);
      word = 0;
      filled = 0;
    }
  }
  if (filled) out.push_back(word << (64 - filled));
  return out;
}

bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.n() != b.n() || a.num_edges() != b.num_edges()) return false;
  return canonical_form(a) == canonical_form(b);
}

// ---- named graphs ---------------------------------------------------------

namespace presets {

Graph complete(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, edges);
}

Graph path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph cycle(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
  return Graph(a + b, edges);
}

Graph banana() { return delete_edge(complete(5), Edge(3, 4)); }

Graph k5_minus_two_at_vertex() { return delete_edge(banana(), Edge(2, 4)); }

Graph wheel(int rim) {
  std::vector<Edge> edges;
  for (int i = 0; i < rim; ++i) {
    edges.emplace_back(i, (i + 1) % rim);
    edges.emplace_back(i, rim);
  }
  return Graph(rim + 1, edges);
}

Graph octahedron() {
  Graph g = complete(6);
  for (int i = 0; i < 6; i += 2) g = delete_edge(g, Edge(i, i + 1));
  return g;
}

std::optional<Graph> by_name(const std::string& raw) {
  std::string name;
  for (char c : raw)
    if (c != '_' && c != ',' && c != '{' && c != '}' && c != '-') name.push_back(static_cast<char>(std::toupper(c)));
  if (name == "K2") return complete(2);
  if (name == "K3" || name == "TRIANGLE") return complete(3);
  if (name == "K4") return complete(4);
  if (name == "K5") return complete(5);
  if (name == "BANANA" || name == "K5E") return banana();
  if (name == "W4" || name == "WHEEL") return wheel(4);
  if (name == "K33") return complete_bipartite(3, 3);
  if (name == "K222" || name == "OCTAHEDRON") return octahedron();
  if (name == "C4" || name == "SQUARE") return cycle(4);
  return std::nullopt;
}

}  // namespace presets

}  // namespace lpflat
