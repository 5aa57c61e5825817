#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lpflat/metrics.hpp"
#include "lpflat/parallel.hpp"
#include "lpflat/rational.hpp"

namespace lpflat {

enum class RealizeStatus {
  Feasible,
  /// Proven by exhausting the exact planar case enumeration.
  InfeasibleExact,
  /// Every numeric restart failed. This is not a proof of anything.
  UnknownNumeric,
};

std::string_view to_string(RealizeStatus s);

struct RealizeConfig {
  int restarts = 200;
  /// Max edge-length error relative to the RMS edge length.
  double residual_tol = 1e-9;
  /// Smoothing |x| ~ sqrt(x^2 + eps) for l_1, annealed in this order.
  std::vector<double> smoothing_eps_schedule = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10};
  std::uint64_t seed = 0;
  /// Largest edge count handed to the exact planar l_1 / l_inf solver.
  int exact_mode_cap = 12;
  /// Cayley probes may ask for zero lengths (coincident points).
  bool probe_mode = false;
  /// Turn off to force the numeric path (used for cross-checks).
  bool allow_exact = true;
  int max_iterations = 200;
  Execution execution = Execution::Parallel;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

struct RealizeResult {
  RealizeStatus status = RealizeStatus::UnknownNumeric;
  std::optional<Framework> framework;
  /// Exact coordinates when the witness came out of rational arithmetic
  /// (exact planar mode or the sign-pattern polish of l_1 / l_inf).
  std::optional<RationalConfiguration> exact_points;
  double residual = 0.0;
  bool exact_mode = false;
  /// Exact mode: number of (axis, sign) case nodes visited.
  std::size_t cases_explored = 0;
  /// Numeric mode: index of the successful restart, or restarts tried.
  int restarts_used = 0;
};

/// Finds a placement in R^d whose l_p edge lengths match the linkage.
/// Dispatches to the exact planar solver for d = 2, p in {1, inf} when the
/// linkage is small enough, otherwise to multi-start Levenberg-Marquardt.
RealizeResult realize(const Linkage& linkage, int d, NormParam p, const RealizeConfig& cfg = {});

/// Exact decision for planar l_1 / l_inf. In l_inf coordinates every edge
/// picks the axis that attains the max and the sign of that difference; each
/// choice leaves two independent systems of difference constraints (one per
/// axis), which are decided exactly and incrementally. l_1 inputs are solved
/// in rotated coordinates and rotated back.
RealizeResult realize_exact_planar_polyhedral(const Linkage& linkage, NormParam p, const RealizeConfig& cfg = {});

/// The numeric path alone, regardless of d and p.
RealizeResult realize_numeric(const Linkage& linkage, int d, NormParam p, const RealizeConfig& cfg = {});

/// max |achieved - target| / RMS(target) over edges; 0 for edgeless graphs.
double relative_residual(const Configuration& points, const Linkage& linkage, NormParam p);

struct ResidualReport {
  double max_error = 0.0;
  double mean_error = 0.0;
  std::size_t edges = 0;
};

/// Absolute edge-length errors of f against l (plain l_p units).
ResidualReport verify_framework(const Framework& f, const Linkage& l);

/// Exact check in l_p^p units: |sum |d_i|^p - length^p| for finite p, plain
/// max-coordinate error for p = inf. Zero means an exact realization.
Rational max_power_error_exact(const RationalConfiguration& points, const Linkage& l, NormParam p);

}  // namespace lpflat
