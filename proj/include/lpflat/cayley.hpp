#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "lpflat/graph.hpp"
#include "lpflat/metrics.hpp"
#include "lpflat/realize.hpp"

namespace lpflat {

/// Closed interval; lo == hi is an isolated point.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool is_point() const noexcept { return lo == hi; }
  bool contains(double x, double tol = 0.0) const noexcept { return x >= lo - tol && x <= hi + tol; }
};

/// Sorted, pairwise disjoint closed intervals.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  /// Sorts and merges intervals whose gap is at most merge_tol.
  explicit IntervalUnion(std::vector<Interval> raw, double merge_tol = 0.0);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  bool empty() const noexcept { return intervals_.empty(); }
  bool contains(double x, double tol = 0.0) const noexcept;

 private:
  std::vector<Interval> intervals_;
};

enum class ScanMode { Exact, Numeric };
std::string_view to_string(ScanMode m);

enum class ConvexityVerdict {
  Convex,
  /// More than one component and every probe between them is INFEASIBLE_EXACT.
  Nonconvex,
  /// More than one component, but some gap probe was only a numeric failure.
  Inconclusive,
};
std::string_view to_string(ConvexityVerdict v);

struct CayleyProbe {
  double value = 0.0;
  RealizeStatus status = RealizeStatus::UnknownNumeric;
};

struct CayleyScanReport {
  Edge nonedge;
  int dim = 0;
  NormParam norm;
  /// Plain l_p units.
  IntervalUnion space;
  /// Grid probes in increasing order.
  std::vector<CayleyProbe> grid;
  /// Extra probes made while bisecting interval endpoints.
  std::vector<CayleyProbe> refinements;
  /// Upper end of the probed range: the shortest-path length between the
  /// endpoints of the non-edge (total length when they are disconnected).
  double upper_bound = 0.0;
  bool convex = true;
  ConvexityVerdict verdict = ConvexityVerdict::Convex;
  /// True when every probe between two components is INFEASIBLE_EXACT.
  bool nonconvexity_certified = false;
  ScanMode mode = ScanMode::Exact;
};

/// Graph-metric upper bound on the length of the non-edge f.
double path_upper_bound(const Linkage& l, const Edge& f);

/// Probes t = U k / (grid_points - 1), k = 0..grid_points-1, by realizing
/// (G + f, lengths + t); merges feasible runs and bisects each boundary to
/// width U / 10^4 keeping the feasible side. Throws NotANonEdge.
CayleyScanReport cayley_scan_1(const Linkage& l, const Edge& f, int d, NormParam p, int grid_points = 201,
                               const RealizeConfig& cfg = {});

enum class MultiVerdict { ConvexLikely, NonconvexWitness, Inconclusive };
std::string_view to_string(MultiVerdict v);

struct CayleyMultiReport {
  std::vector<Edge> nonedges;
  /// Attained tuples (one value per non-edge), in lattice order.
  std::vector<std::vector<double>> cloud;
  /// A realization of the augmented linkage for every cloud tuple.
  std::vector<Framework> fibers;
  MultiVerdict verdict = MultiVerdict::ConvexLikely;
  /// Indices into `cloud` and the midpoint that failed exactly.
  std::optional<std::pair<std::size_t, std::size_t>> witness_pair;
  std::vector<double> witness_midpoint;
  std::size_t pairs_tested = 0;
};

/// Lattice of about `samples` tuples over the box [0, U_f]; attained tuples
/// form the cloud, then pairs (closest first, at most max_pairs) have their
/// midpoints probed. |F| <= 3, otherwise SizeCapExceeded.
CayleyMultiReport cayley_scan_multi(const Linkage& l, const std::vector<Edge>& nonedges, int d, NormParam p,
                                    int samples, const RealizeConfig& cfg = {}, std::size_t max_pairs = 400);

struct AuditConfig {
  /// Random realizable length assignments per audit, on top of the unit ones.
  int trials = 4;
  int grid_points = 41;
  std::uint64_t seed = 0;
  RealizeConfig realize;
};

struct AuditFinding {
  /// Subgraph that was split into H + f (g itself or g minus one edge).
  Graph subgraph;
  Linkage kept;
  CayleyScanReport report;
};

struct AuditReport {
  bool refuted = false;
  std::optional<AuditFinding> refutation;
  std::size_t scans = 0;
  /// Scans with several components but no exact certificate.
  std::size_t inconclusive = 0;
};

/// Searches for a non-convex Cayley space over a single non-edge: first unit
/// lengths on every partition of g and of each g - e (one edge per
/// automorphism orbit, one subgraph per isomorphism class), then `trials`
/// random realizable linkages on random partitions. Stops at the first
/// certified non-convex space. g.n() <= 7.
AuditReport inherent_convexity_audit(const Graph& g, int d, NormParam p, const AuditConfig& cfg = {});

/// Edge orbits of the automorphism group (brute force, n <= 8): one
/// representative edge index per orbit.
std::vector<int> edge_orbit_representatives(const Graph& g);

}  // namespace lpflat
