#include "lpflat/flatten.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace lpflat {

std::string_view to_string(FlattenStatus s) {
  switch (s) {
    case FlattenStatus::Yes: return "YES";
    case FlattenStatus::No: return "NO";
    case FlattenStatus::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::string_view certificate_name(const Certificate& c) {
  struct Visitor {
    std::string_view operator()(const NoForbiddenMinor&) const { return "NoForbiddenMinor"; }
    std::string_view operator()(const ForbiddenMinor&) const { return "ForbiddenMinor"; }
    std::string_view operator()(const KnownFlattenable&) const { return "KnownFlattenable"; }
    std::string_view operator()(const TwoSumDecomposition&) const { return "TwoSumDecomposition"; }
    std::string_view operator()(const CayleyNonConvexity&) const { return "CayleyNonConvexity"; }
    std::string_view operator()(const ConjectureFrontier&) const { return "ConjectureFrontier"; }
  };
  return std::visit(Visitor{}, c);
}

namespace {

FlattenVerdict make(FlattenStatus s, NormParam p, int d, Certificate c) {
  FlattenVerdict v;
  v.status = s;
  v.norm = p;
  v.dim = d;
  v.certificate = std::move(c);
  return v;
}

/// Past the search cap, looks for h inside induced subgraphs small enough to
/// search. A hit is a proof for the host; a miss proves nothing.
std::optional<MinorWitness> minor_in_small_subgraph(const Graph& g, const Graph& h) {
  const MinorSearchLimits limits;
  constexpr int kMaxAttempts = 4096;
  int attempts = 0;
  for (int k = std::min(g.n(), limits.max_vertices); k >= h.n(); --k) {
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      const Graph sub = induced_subgraph(g, pick);
      if (sub.num_edges() <= limits.max_edges) {
        if (++attempts > kMaxAttempts) return std::nullopt;
        if (auto w = has_minor(sub, h, limits)) {
          for (auto& set : w->branch_sets)
            for (int& v : set) v = pick[v];
          for (Edge& e : w->edge_map) e = Edge(pick[e.u], pick[e.v]);
          return w;
        }
      }
      int i = k - 1;
      while (i >= 0 && pick[i] == g.n() - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

/// Minor test that answers "don't know" instead of throwing past the cap.
std::optional<std::optional<MinorWitness>> bounded_minor(const Graph& g, const Graph& h) {
  try {
    return has_minor(g, h);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeCapExceeded) throw;
  }
  if (auto w = minor_in_small_subgraph(g, h)) return std::optional<MinorWitness>(std::move(*w));
  return std::nullopt;
}

// ---- separators -------------------------------------------------------------

/// Components of g after deleting `removed`, as host vertex lists.
std::vector<std::vector<int>> components_without(const Graph& g, const std::vector<int>& removed) {
  std::vector<char> gone(g.n(), 0);
  for (int v : removed) gone[v] = 1;
  std::vector<int> keep;
  for (int v = 0; v < g.n(); ++v)
    if (!gone[v]) keep.push_back(v);
  const Graph rest = induced_subgraph(g, keep);
  std::vector<std::vector<int>> out;
  for (const auto& comp : connected_components(rest)) {
    std::vector<int> mapped;
    for (int v : comp) mapped.push_back(keep[v]);
    std::sort(mapped.begin(), mapped.end());
    out.push_back(std::move(mapped));
  }
  return out;
}

struct Split {
  std::vector<int> separator;
  std::vector<std::vector<int>> parts;
};

/// Separators of size 0, 1 and 2 (in that order) that leave >= 2 components.
std::vector<Split> separations(const Graph& g) {
  std::vector<Split> out;
  auto comps = components_without(g, {});
  if (comps.size() >= 2) {
    out.push_back({{}, comps});
    return out;
  }
  for (int v = 0; v < g.n(); ++v) {
    comps = components_without(g, {v});
    if (comps.size() >= 2) out.push_back({{v}, comps});
  }
  if (!out.empty()) return out;
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v) {
      comps = components_without(g, {u, v});
      if (comps.size() >= 2) out.push_back({{u, v}, comps});
    }
  return out;
}

std::optional<FlattenVerdict> decide_by_split(const Graph& g, const Split& split,
                                              const std::function<FlattenVerdict(const Graph&)>& recurse) {
  const NormParam l1 = NormParam::finite(1);
  TwoSumDecomposition dec;
  dec.separator = split.separator;
  const bool two = split.separator.size() == 2;
  dec.virtual_edge = two && !g.has_edge(split.separator[0], split.separator[1]);

  int yes = 0, no = 0, with_k4 = 0;
  for (const auto& part : split.parts) {
    DecompositionPiece piece;
    piece.vertices = split.separator;
    piece.vertices.insert(piece.vertices.end(), part.begin(), part.end());
    piece.graph = induced_subgraph(g, piece.vertices);
    if (dec.virtual_edge) piece.graph = piece.graph.with_edge(0, 1);
    piece.has_k4_minor = !is_partial_two_tree(piece.graph);
    auto verdict = std::make_shared<FlattenVerdict>(recurse(piece.graph));
    yes += verdict->status == FlattenStatus::Yes;
    no += verdict->status == FlattenStatus::No;
    with_k4 += piece.has_k4_minor;
    piece.verdict = std::move(verdict);
    dec.pieces.push_back(std::move(piece));
  }
  const int count = static_cast<int>(dec.pieces.size());
  // A NO piece is a minor of g: the other pieces supply a path standing in for
  // a virtual separator edge.
  if (no > 0) return make(FlattenStatus::No, l1, 2, std::move(dec));
  if (yes < count) return std::nullopt;
  if (!two || with_k4 <= 1) return make(FlattenStatus::Yes, l1, 2, std::move(dec));
  // Two K4-minor pieces glued along a real edge, or along a virtual edge that a
  // third piece can realize as a path after contraction.
  if (!dec.virtual_edge || count >= 3) return make(FlattenStatus::No, l1, 2, std::move(dec));
  return std::nullopt;
}

FlattenVerdict l1_cascade(const Graph& input) {
  const NormParam l1 = NormParam::finite(1);
  const Graph g = strip_isolated(input);

  TwoTreeReduction sp = reduce_series_parallel(g);
  if (sp.partial_two_tree) return make(FlattenStatus::Yes, l1, 2, NoForbiddenMinor{"K4"});

  if (auto banana = bounded_minor(g, presets::banana()); banana && *banana)
    return make(FlattenStatus::No, l1, 2, ForbiddenMinor{**banana, "banana"});

  if (g.n() <= 5) {
    if (auto w = has_minor(presets::k5_minus_two_at_vertex(), g))
      return make(FlattenStatus::Yes, l1, 2, KnownFlattenable{"K5 minus two edges at a vertex", *w});
  }

  for (const Split& split : separations(g))
    if (auto v = decide_by_split(g, split, l1_cascade)) return *v;

  return make(FlattenStatus::Unknown, l1, 2, ConjectureFrontier{"W4"});
}

}  // namespace

FlattenVerdict flatten_l2(const Graph& g, int d) {
  const NormParam l2 = NormParam::finite(2);
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be >= 1");
  if (d >= 4)
    throw Error(ErrorKind::UnsupportedDimension, "Euclidean flattenability is only characterized for d <= 3");
  if (d == 1) {
    if (is_forest(g)) return make(FlattenStatus::Yes, l2, 1, NoForbiddenMinor{"K3"});
    auto w = bounded_minor(strip_isolated(g), presets::complete(3));
    return make(FlattenStatus::No, l2, 1, ForbiddenMinor{w && *w ? **w : MinorWitness{}, "K3"});
  }
  if (d == 2) {
    if (is_partial_two_tree(g)) return make(FlattenStatus::Yes, l2, 2, NoForbiddenMinor{"K4"});
    const Graph core = strip_isolated(g);
    auto w = bounded_minor(core, presets::complete(4));
    if (w && *w) return make(FlattenStatus::No, l2, 2, ForbiddenMinor{**w, "K4"});
    // Beyond the search cap the reduction alone is still a proof of a K4 minor,
    // only without an explicit witness.
    return make(FlattenStatus::No, l2, 2, ForbiddenMinor{{}, "K4"});
  }
  const Graph core = strip_isolated(g);
  auto k5 = bounded_minor(core, presets::complete(5));
  if (k5 && *k5) return make(FlattenStatus::No, l2, 3, ForbiddenMinor{**k5, "K5"});
  auto k222 = bounded_minor(core, presets::octahedron());
  if (k222 && *k222) return make(FlattenStatus::No, l2, 3, ForbiddenMinor{**k222, "K222"});
  if (!k5 || !k222) return make(FlattenStatus::Unknown, l2, 3, ConjectureFrontier{"minor search cap"});
  return make(FlattenStatus::Yes, l2, 3, NoForbiddenMinor{"K5, K222"});
}

FlattenVerdict flatten_l1_d2(const Graph& g) { return l1_cascade(g); }

FlattenVerdict attach_cayley_certificate(const FlattenVerdict& v, const Graph& g, const AuditConfig& cfg) {
  if (v.status != FlattenStatus::No) return v;
  const AuditReport audit = inherent_convexity_audit(strip_isolated(g), v.dim, v.norm, cfg);
  if (!audit.refuted) return v;
  FlattenVerdict out = v;
  out.certificate = CayleyNonConvexity{audit.refutation->subgraph, audit.refutation->report};
  return out;
}

NecessaryConditionsReport flattenability_necessary_conditions(const Graph& g, int d, NormParam p,
                                                              const RankConfig& cfg) {
  NecessaryConditionsReport rep;
  rep.independence = independence_check(g, d, p, cfg);
  rep.passes = rep.independence.independent;
  rep.note = rep.passes ? "independent in the generic rigidity matroid"
                        : "dependent: rank " + std::to_string(rep.independence.rank.rank) + " < " +
                              std::to_string(g.num_edges()) + " edges, so no generic framework flattens";
  return rep;
}

}  // namespace lpflat
