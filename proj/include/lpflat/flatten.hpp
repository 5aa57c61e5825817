#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lpflat/cayley.hpp"
#include "lpflat/graph.hpp"
#include "lpflat/metrics.hpp"
#include "lpflat/minor.hpp"
#include "lpflat/rigidity.hpp"

namespace lpflat {

enum class FlattenStatus { Yes, No, Unknown };
std::string_view to_string(FlattenStatus s);

struct FlattenVerdict;

/// None of the named forbidden minors occurs.
struct NoForbiddenMinor {
  std::string name;
};

struct ForbiddenMinor {
  MinorWitness witness;
  std::string name;
};

/// The graph is a minor of a graph known to be flattenable.
struct KnownFlattenable {
  std::string name;
  MinorWitness witness;
};

struct DecompositionPiece {
  /// Host vertex ids of the piece, in the piece's own vertex order.
  std::vector<int> vertices;
  Graph graph;
  bool has_k4_minor = false;
  std::shared_ptr<const FlattenVerdict> verdict;
};

/// Split at a separator of 0, 1 or 2 vertices. For a 2-separator {u, v}
/// every piece carries the edge uv; `virtual_edge` says whether uv is
/// missing from the host.
struct TwoSumDecomposition {
  std::vector<int> separator;
  bool virtual_edge = false;
  std::vector<DecompositionPiece> pieces;
};

struct CayleyNonConvexity {
  Graph subgraph;
  CayleyScanReport report;
};

struct ConjectureFrontier {
  std::string name;
};

using Certificate = std::variant<NoForbiddenMinor, ForbiddenMinor, KnownFlattenable, TwoSumDecomposition,
                                 CayleyNonConvexity, ConjectureFrontier>;

struct FlattenVerdict {
  FlattenStatus status = FlattenStatus::Unknown;
  NormParam norm;
  int dim = 2;
  Certificate certificate = ConjectureFrontier{"W4"};
};

std::string_view certificate_name(const Certificate& c);

/// Euclidean verdicts by forbidden minors: forests for d = 1, no K4 for
/// d = 2, no K5 and no K222 for d = 3. Throws UnsupportedDimension for d >= 4.
FlattenVerdict flatten_l2(const Graph& g, int d);

/// Planar l_1 verdict cascade: K4-minor-free; banana minor; minors of
/// K5 minus two edges at a vertex; splits at separators of size <= 2;
/// otherwise UNKNOWN at the W4 frontier.
FlattenVerdict flatten_l1_d2(const Graph& g);

/// Runs the convexity audit on a NO graph and attaches the non-convex scan
/// when one is found. The status is never changed.
FlattenVerdict attach_cayley_certificate(const FlattenVerdict& v, const Graph& g, const AuditConfig& cfg = {});

struct NecessaryConditionsReport {
  IndependenceReport independence;
  /// Independence in the generic rigidity matroid holds.
  bool passes = false;
  std::string note;
};

NecessaryConditionsReport flattenability_necessary_conditions(const Graph& g, int d, NormParam p,
                                                              const RankConfig& cfg = {});

}  // namespace lpflat
