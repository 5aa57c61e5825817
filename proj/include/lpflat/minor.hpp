#pragma once

#include <optional>
#include <vector>

#include "lpflat/graph.hpp"

namespace lpflat {

/// Certificate that h is a minor of a host graph: branch_sets[i] is the
/// connected host vertex set standing in for h-vertex i, and edge_map[k] is a
/// host edge joining the branch sets of h.edges()[k].
struct MinorWitness {
  std::vector<std::vector<int>> branch_sets;
  std::vector<Edge> edge_map;
};

/// Checks disjointness, connectivity of every branch set and the edge map.
bool validate_witness(const Graph& host, const Graph& minor, const MinorWitness& witness);

/// The exact search refuses hosts beyond these sizes instead of guessing.
struct MinorSearchLimits {
  int max_vertices = 10;
  int max_edges = 20;
};

/// Exact minor test: branch over edge contractions (memoising failed states by
/// canonical form) and finish each state with a subgraph embedding search.
/// Throws SizeCapExceeded when the host is larger than `limits` allows.
std::optional<MinorWitness> has_minor(const Graph& g, const Graph& h, const MinorSearchLimits& limits = {});

/// One series-parallel reduction step: `vertex` (of degree <= 2 at that
/// point) was removed; for degree 2 its neighbours were joined.
struct ReductionStep {
  int vertex = -1;
  std::vector<int> neighbors;
  bool added_edge = false;
};

struct TwoTreeReduction {
  bool partial_two_tree = false;
  std::vector<ReductionStep> trace;
  /// Vertices left when no vertex of degree <= 2 remained (empty on success).
  std::vector<int> residual_core;
};

/// Partial 2-tree (equivalently K_4-minor-free) recognition by repeatedly
/// deleting vertices of degree <= 1 and suppressing vertices of degree 2.
TwoTreeReduction reduce_series_parallel(const Graph& g);

inline bool is_partial_two_tree(const Graph& g) { return reduce_series_parallel(g).partial_two_tree; }

}  // namespace lpflat
