#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lpflat {

/// Undirected edge, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Simple undirected graph on vertices 0..n-1. Edges are kept sorted, so two
/// graphs with the same edge set compare equal and iterate identically.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n, const std::vector<Edge>& edges = {});

  int n() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

  bool has_edge(int a, int b) const;
  bool has_edge(const Edge& e) const { return has_edge(e.u, e.v); }
  /// Position of e in edges(), or -1.
  int edge_index(int a, int b) const;

  int degree(int v) const;
  std::vector<int> neighbors(int v) const;

  /// Returns a copy with the edge added; throws InvalidGraph on loops or
  /// duplicates.
  Graph with_edge(int a, int b) const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adjacency_;
};

// ---- minor operations -----------------------------------------------------

/// Identifies the endpoints of e (the larger id is merged into the smaller
/// one, higher ids shift down by one). Parallel edges merge, loops vanish.
Graph contract_edge(const Graph& g, const Edge& e);

/// Same as contract_edge, also reporting where every old vertex went.
Graph contract_edge(const Graph& g, const Edge& e, std::vector<int>& vertex_map);

Graph delete_edge(const Graph& g, const Edge& e);

/// Removes v and its incident edges; higher ids shift down by one.
Graph delete_vertex(const Graph& g, int v);

/// Glues g2 onto g1 by identifying e1 with e2: e2.first maps to e1.first and
/// e2.second to e1.second. Vertices of g1 keep their ids; the remaining
/// vertices of g2 follow in increasing order.
Graph two_sum(const Graph& g1, std::pair<int, int> e1, const Graph& g2, std::pair<int, int> e2);

/// Subgraph induced by `vertices` (relabelled 0..k-1 in the given order).
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

std::vector<std::vector<int>> connected_components(const Graph& g);
bool is_connected(const Graph& g);
bool is_forest(const Graph& g);

/// Drops isolated vertices.
Graph strip_isolated(const Graph& g);

// ---- canonical form -------------------------------------------------------

/// Isomorphism-invariant certificate: vertex count followed by the upper
/// triangle of the adjacency matrix under the lexicographically smallest
/// relabelling that is consistent with an iterated degree refinement.
std::vector<std::uint64_t> canonical_form(const Graph& g);

bool are_isomorphic(const Graph& a, const Graph& b);

// ---- named graphs ---------------------------------------------------------

namespace presets {

Graph complete(int n);
Graph path(int n);
Graph cycle(int n);
Graph complete_bipartite(int a, int b);
/// K_5 without the edge (3, 4).
Graph banana();
/// K_5 without the edges (2, 4) and (3, 4); adding (2, 4) gives banana().
Graph k5_minus_two_at_vertex();
/// Rim 0..k-1 in cyclic order, hub k.
Graph wheel(int rim);
/// K_{2,2,2}: K_6 minus the perfect matching {(0,1), (2,3), (4,5)}.
Graph octahedron();

/// Looks up "K4", "K5", "banana", "W4", "K33", "K222", "K3", "C4" and a few
/// aliases; empty when unknown.
std::optional<Graph> by_name(const std::string& name);

}  // namespace presets

}  // namespace lpflat
