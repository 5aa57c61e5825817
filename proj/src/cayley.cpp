#include "lpflat/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace lpflat {

IntervalUnion::IntervalUnion(std::vector<Interval> raw, double merge_tol) {
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  for (const Interval& iv : raw) {
    if (iv.hi < iv.lo) throw Error(ErrorKind::ConfigError, "interval with hi < lo");
    if (!intervals_.empty() && iv.lo - intervals_.back().hi <= merge_tol)
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    else
      intervals_.push_back(iv);
  }
}

bool IntervalUnion::contains(double x, double tol) const noexcept {
  return std::any_of(intervals_.begin(), intervals_.end(), [&](const Interval& iv) { return iv.contains(x, tol); });
}

std::string_view to_string(ScanMode m) { return m == ScanMode::Exact ? "EXACT" : "NUMERIC"; }

std::string_view to_string(ConvexityVerdict v) {
  switch (v) {
    case ConvexityVerdict::Convex: return "CONVEX";
    case ConvexityVerdict::Nonconvex: return "NONCONVEX";
    case ConvexityVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string_view to_string(MultiVerdict v) {
  switch (v) {
    case MultiVerdict::ConvexLikely: return "CONVEX_LIKELY";
    case MultiVerdict::NonconvexWitness: return "NONCONVEX_WITNESS";
    case MultiVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

double path_upper_bound(const Linkage& l, const Edge& f) {
  const int n = l.graph.n();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<char> done(n, 0);
  dist[f.u] = 0.0;
  for (int it = 0; it < n; ++it) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && dist[v] < inf && (best < 0 || dist[v] < dist[best])) best = v;
    if (best < 0) break;
    done[best] = 1;
    for (std::size_t k = 0; k < l.lengths.size(); ++k) {
      const Edge& e = l.graph.edges()[k];
      const int other = e.u == best ? e.v : (e.v == best ? e.u : -1);
      if (other >= 0) dist[other] = std::min(dist[other], dist[best] + l.lengths[k]);
    }
  }
  if (dist[f.v] < inf) return dist[f.v];
  const double total = std::accumulate(l.lengths.begin(), l.lengths.end(), 0.0);
  return total > 0 ? total : 1.0;
}

namespace {

void require_nonedge(const Graph& g, const Edge& f) {
  if (f.u == f.v || f.u < 0 || f.v >= g.n())
    throw Error(ErrorKind::NotANonEdge, "(" + std::to_string(f.u) + ", " + std::to_string(f.v) + ") is not a vertex pair");
  if (g.has_edge(f))
    throw Error(ErrorKind::NotANonEdge,
                "(" + std::to_string(f.u) + ", " + std::to_string(f.v) + ") is already an edge of the graph");
}

RealizeConfig probe_config(const RealizeConfig& cfg) {
  RealizeConfig out = cfg;
  out.probe_mode = true;
  // Probes are already spread over threads; keep each one serial.
  if (cfg.execution == Execution::Parallel) out.execution = Execution::Serial;
  return out;
}

struct ProbeOutcome {
  RealizeStatus status;
  bool exact;
};

ProbeOutcome probe(const Linkage& l, const std::vector<Edge>& f, const std::vector<double>& t, int d, NormParam p,
                   const RealizeConfig& cfg, std::optional<Framework>* witness = nullptr) {
  Linkage aug = l;
  for (std::size_t i = 0; i < f.size(); ++i) aug = aug.with_edge(f[i].u, f[i].v, t[i]);
  RealizeResult r = realize(aug, d, p, cfg);
  if (witness) *witness = r.framework;
  return {r.status, r.exact_mode};
}

}  // namespace

CayleyScanReport cayley_scan_1(const Linkage& l, const Edge& f, int d, NormParam p, int grid_points,
                               const RealizeConfig& cfg) {
  require_nonedge(l.graph, f);
  if (grid_points < 2) throw Error(ErrorKind::ConfigError, "grid_points must be >= 2");
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be >= 1");
  cfg.validate();
  const RealizeConfig pcfg = probe_config(cfg);

  CayleyScanReport rep;
  rep.nonedge = f;
  rep.dim = d;
  rep.norm = p;
  rep.upper_bound = path_upper_bound(l, f);
  const double U = rep.upper_bound;
  const std::vector<Edge> fs{f};

  rep.grid.resize(grid_points);
  std::vector<char> exact(grid_points, 0);
  for_each_index(rep.grid.size(), cfg.execution, [&](std::size_t k) {
    const double t = k + 1 == rep.grid.size() ? U : U * static_cast<double>(k) / (grid_points - 1);
    const ProbeOutcome o = probe(l, fs, {t}, d, p, pcfg);
    rep.grid[k] = {t, o.status};
    exact[k] = o.exact ? 1 : 0;
  });
  bool all_exact = std::all_of(exact.begin(), exact.end(), [](char c) { return c != 0; });

  const double tol = U / 1e4;
  // Bisection is sequential, so each of its probes may use the threads itself.
  RealizeConfig rcfg = cfg;
  rcfg.probe_mode = true;
  auto feasible = [](RealizeStatus s) { return s == RealizeStatus::Feasible; };
  // Bisects between an infeasible and a feasible value; returns the feasible end.
  auto refine = [&](double bad, double good) {
    while (std::abs(good - bad) > tol) {
      const double mid = 0.5 * (bad + good);
      const ProbeOutcome o = probe(l, fs, {mid}, d, p, rcfg);
      rep.refinements.push_back({mid, o.status});
      all_exact = all_exact && o.exact;
      if (feasible(o.status))
        good = mid;
      else
        bad = mid;
    }
    return good;
  };

  std::vector<Interval> raw;
  const int last = grid_points - 1;
  for (int k = 0; k <= last;) {
    if (!feasible(rep.grid[k].status)) {
      ++k;
      continue;
    }
    int e = k;
    while (e < last && feasible(rep.grid[e + 1].status)) ++e;
    const double lo = k == 0 ? rep.grid[0].value : refine(rep.grid[k - 1].value, rep.grid[k].value);
    const double hi = e == last ? rep.grid[last].value : refine(rep.grid[e + 1].value, rep.grid[e].value);
    raw.push_back({lo, hi});
    k = e + 1;
  }
  rep.space = IntervalUnion(std::move(raw), 0.0);
  rep.mode = all_exact ? ScanMode::Exact : ScanMode::Numeric;
  rep.convex = rep.space.size() <= 1;

  if (rep.convex) {
    rep.verdict = ConvexityVerdict::Convex;
  } else {
    bool certified = true;
    const auto& ivs = rep.space.intervals();
    auto check = [&](const CayleyProbe& pr) {
      for (std::size_t i = 0; i + 1 < ivs.size(); ++i)
        if (pr.value > ivs[i].hi && pr.value < ivs[i + 1].lo && pr.status != RealizeStatus::InfeasibleExact)
          certified = false;
    };
    for (const auto& pr : rep.grid) check(pr);
    for (const auto& pr : rep.refinements) check(pr);
    rep.nonconvexity_certified = certified;
    rep.verdict = certified ? ConvexityVerdict::Nonconvex : ConvexityVerdict::Inconclusive;
  }
  return rep;
}

CayleyMultiReport cayley_scan_multi(const Linkage& l, const std::vector<Edge>& nonedges, int d, NormParam p,
                                    int samples, const RealizeConfig& cfg, std::size_t max_pairs) {
  if (nonedges.size() > 3)
    throw Error(ErrorKind::SizeCapExceeded, "cayley_scan_multi handles at most 3 non-edges, got " +
                                                std::to_string(nonedges.size()));
  std::set<Edge> seen;
  for (const Edge& f : nonedges) {
    require_nonedge(l.graph, f);
    if (!seen.insert(f).second) throw Error(ErrorKind::NotANonEdge, "non-edge listed twice");
  }
  CayleyMultiReport rep;
  rep.nonedges = nonedges;
  if (nonedges.empty()) return rep;
  if (samples < 2) throw Error(ErrorKind::ConfigError, "samples must be >= 2");
  cfg.validate();
  const RealizeConfig pcfg = probe_config(cfg);

  const std::size_t m = nonedges.size();
  const int k = std::max(2, static_cast<int>(std::lround(std::pow(static_cast<double>(samples), 1.0 / m))));
  std::vector<double> upper(m);
  for (std::size_t i = 0; i < m; ++i) upper[i] = path_upper_bound(l, nonedges[i]);

  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= static_cast<std::size_t>(k);
  std::vector<std::vector<double>> lattice(total, std::vector<double>(m));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t c = rest % k;
      rest /= k;
      lattice[idx][i] = static_cast<int>(c) == k - 1 ? upper[i] : upper[i] * static_cast<double>(c) / (k - 1);
    }
  }
  std::vector<std::optional<Framework>> fibers(total);
  std::vector<char> ok(total, 0);
  for_each_index(total, cfg.execution, [&](std::size_t idx) {
    ok[idx] = probe(l, nonedges, lattice[idx], d, p, pcfg, &fibers[idx]).status == RealizeStatus::Feasible;
  });
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (!ok[idx]) continue;
    rep.cloud.push_back(lattice[idx]);
    rep.fibers.push_back(*fibers[idx]);
  }

  struct Pair {
    double dist;
    std::size_t a, b;
  };
  std::vector<Pair> pairs;
  for (std::size_t a = 0; a < rep.cloud.size(); ++a) {
    for (std::size_t b = a + 1; b < rep.cloud.size(); ++b) {
      double acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) acc += (rep.cloud[a][i] - rep.cloud[b][i]) * (rep.cloud[a][i] - rep.cloud[b][i]);
      pairs.push_back({acc, a, b});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.dist < y.dist; });
  if (pairs.size() > max_pairs) pairs.resize(max_pairs);
  rep.pairs_tested = pairs.size();

  std::vector<RealizeStatus> mid_status(pairs.size(), RealizeStatus::UnknownNumeric);
  auto midpoint = [&](const Pair& pr) {
    std::vector<double> mid(m);
    for (std::size_t i = 0; i < m; ++i) mid[i] = 0.5 * (rep.cloud[pr.a][i] + rep.cloud[pr.b][i]);
    return mid;
  };
  for_each_index(pairs.size(), cfg.execution,
                 [&](std::size_t i) { mid_status[i] = probe(l, nonedges, midpoint(pairs[i]), d, p, pcfg).status; });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mid_status[i] == RealizeStatus::InfeasibleExact) {
      rep.verdict = MultiVerdict::NonconvexWitness;
      rep.witness_pair = std::make_pair(pairs[i].a, pairs[i].b);
      rep.witness_midpoint = midpoint(pairs[i]);
      return rep;
    }
  }
  const bool unknown =
      std::any_of(mid_status.begin(), mid_status.end(), [](RealizeStatus s) { return s == RealizeStatus::UnknownNumeric; });
  rep.verdict = unknown ? MultiVerdict::Inconclusive : MultiVerdict::ConvexLikely;
  return rep;
}

std::vector<int> edge_orbit_representatives(const Graph& g) {
  const int n = g.n();
  if (n > 8) throw Error(ErrorKind::SizeCapExceeded, "automorphism search is limited to 8 vertices");
  const int m = g.num_edges();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool automorphism = true;
    for (int v = 0; v < n && automorphism; ++v)
      if (g.degree(v) != g.degree(perm[v])) automorphism = false;
    for (const Edge& e : g.edges()) {
      if (!automorphism) break;
      if (!g.has_edge(perm[e.u], perm[e.v])) automorphism = false;
    }
    if (!automorphism) continue;
    for (int k = 0; k < m; ++k) {
      const Edge& e = g.edges()[k];
      const int img = g.edge_index(perm[e.u], perm[e.v]);
      const int a = find(k), b = find(img);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<int> reps;
  for (int k = 0; k < m; ++k)
    if (find(k) == k) reps.push_back(k);
  return reps;
}

AuditReport inherent_convexity_audit(const Graph& g, int d, NormParam p, const AuditConfig& cfg) {
  if (g.n() > 7) throw Error(ErrorKind::SizeCapExceeded, "the convexity audit is limited to 7 vertices");
  if (cfg.trials < 0) throw Error(ErrorKind::ConfigError, "trials must be nonnegative");

  std::vector<Graph> subgraphs{g};
  std::set<std::vector<std::uint64_t>> classes{canonical_form(g)};
  for (const Edge& e : g.edges()) {
    Graph s = delete_edge(g, e);
    if (classes.insert(canonical_form(s)).second) subgraphs.push_back(std::move(s));
  }

  AuditReport rep;
  auto run = [&](const Graph& s, const Edge& f, const std::vector<double>& lengths) {
    Linkage kept(delete_edge(s, f), lengths);
    CayleyScanReport scan = cayley_scan_1(kept, f, d, p, cfg.grid_points, cfg.realize);
    ++rep.scans;
    if (scan.verdict == ConvexityVerdict::Inconclusive) ++rep.inconclusive;
    if (scan.verdict == ConvexityVerdict::Nonconvex) {
      rep.refuted = true;
      rep.refutation = AuditFinding{s, std::move(kept), std::move(scan)};
      return true;
    }
    return false;
  };

  for (const Graph& s : subgraphs) {
    for (int k : edge_orbit_representatives(s)) {
      const Edge f = s.edges()[k];
      if (run(s, f, std::vector<double>(s.num_edges() - 1, 1.0))) return rep;
    }
  }

  std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(0xa0d17)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<const Graph*> candidates;
  for (const Graph& s : subgraphs)
    if (s.num_edges() > 0) candidates.push_back(&s);
  if (candidates.empty()) return rep;
  for (int t = 0; t < cfg.trials; ++t) {
    const Graph& s = *candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    const Edge f = s.edges()[std::uniform_int_distribution<int>(0, s.num_edges() - 1)(rng)];
    Configuration pts(s.n(), Point(d));
    for (auto& q : pts)
      for (double& c : q) c = coord(rng);
    const Graph h = delete_edge(s, f);
    std::vector<double> lengths;
    for (const Edge& e : h.edges()) lengths.push_back(lp_distance(pts[e.u], pts[e.v], p));
    if (run(s, f, lengths)) return rep;
  }
  return rep;
}

}  // namespace lpflat
