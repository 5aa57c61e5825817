#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lpflat/metrics.hpp"
#include "lpflat/parallel.hpp"
#include "lpflat/rational.hpp"

namespace lpflat {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// One row per edge, d columns per vertex. The row of edge (u, v) is the
/// gradient of ||r(u) - r(v)||_p^p / p (for l_1 / l_inf: the facet normal
/// of the unit ball at r(u) - r(v)); the u-block is the negated v-block.
struct RigidityMatrix {
  Eigen::MatrixXd entries;
  Framework framework;
};

/// Throws NotWellPositioned (naming the edge) when an l_1 edge has a zero
/// coordinate difference or an l_inf edge has a tie for the max.
RigidityMatrix rigidity_matrix(const Framework& f, double tol = 1e-9);

/// Same rows in rational arithmetic (entries are polynomial in the
/// coordinates for every integer p, piecewise constant for l_1 / l_inf).
RationalMatrix rigidity_matrix_exact(const Graph& g, const RationalConfiguration& points, NormParam p);

/// Singular values below rel_tol * largest count as zero.
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-8);

/// Rank by fraction-exact Gaussian elimination.
int exact_rank(RationalMatrix m);

enum class RigidityClass {
  Independent,      // rank = |E| < rigid rank
  Isostatic,        // rank = |E| = rigid rank
  RigidDependent,   // rank = rigid rank < |E|
  Neither,          // rank < min(|E|, rigid rank)
};

std::string_view to_string(RigidityClass c);

/// Trivial motions: C(d+1, 2) Euclidean isometries for p = 2, translations
/// only (d) for every other p.
int isometry_dimension(int d, NormParam p);

/// Rank of a generically rigid framework on n vertices.
int rigid_rank(int n, int d, NormParam p);

struct RankConfig {
  int samples = 8;
  /// l_1 / l_inf rigidity matrices are piecewise constant and their rank
  /// differs between sign regions, so the max needs many more samples.
  int polyhedral_samples = 256;
  std::uint64_t seed = 0;
  double rank_tol = 1e-8;
  /// Central-difference step for projection_dimension, relative to the
  /// configuration scale.
  double fd_step = 1e-6;
  Execution execution = Execution::Parallel;
};

struct RankReport {
  int rank = 0;
  int max_possible = 0;
  RigidityClass classification = RigidityClass::Neither;
  int samples_used = 0;
  /// Fraction of samples whose rank equals the reported (maximal) rank.
  double stability = 1.0;
};

/// Rank of the d-dimensional generic rigidity matroid: the maximum numerical
/// rank over random well-positioned frameworks (coordinates in [-1, 1]).
/// Sample k is the same configuration in generic_rank and
/// projection_dimension for a given seed.
RankReport generic_rank(const Graph& g, int d, NormParam p, const RankConfig& cfg = {});

/// Dimension of the projection of the d-dimensional stratum onto the edges of
/// g: rank of the central-difference Jacobian of configuration -> per-edge
/// l_p^p values (max over samples). Does not use rigidity_matrix.
int projection_dimension(const Graph& g, int d, NormParam p, const RankConfig& cfg = {});

struct IndependenceReport {
  bool independent = false;
  RankReport rank;
};

IndependenceReport independence_check(const Graph& g, int d, NormParam p, const RankConfig& cfg = {});

}  // namespace lpflat
