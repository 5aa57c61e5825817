#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "lpflat/metrics.hpp"
#include "lpflat/rational.hpp"
#include "lpflat/realize.hpp"

namespace lpflat {

enum class Membership { Member, NonMember, UnknownNumeric };

std::string_view to_string(Membership m);

/// A cut S (bitmask over points, always containing point 0) with weight.
struct WeightedCut {
  std::uint32_t mask = 0;
  Rational weight;
};

struct ConeMembershipReport {
  Membership member = Membership::UnknownNumeric;
  /// Point configuration whose distance vector reproduces the query.
  std::optional<Configuration> witness;
  /// Exact witness (cut decompositions).
  std::optional<RationalConfiguration> exact_witness;
  std::vector<WeightedCut> cuts;
  std::optional<int> embedding_dim;
  /// Explains a NonMember answer ("negative eigenvalue", "LP infeasible", ...).
  std::string reason;
};

/// Centred Gram matrix G = -1/2 J D J of a squared-distance vector.
std::vector<std::vector<double>> centered_gram(const DistanceVector& squared);

/// l_2 case: squared distances are Euclidean iff the centred Gram matrix is
/// positive semidefinite (relative tolerance 1e-10). The witness is the
/// spectral factor, in embedding_dim coordinates.
ConeMembershipReport edm_membership(const DistanceVector& squared, double rel_tol = 1e-10);

/// l_1 case: exact LP over the 2^(n-1) - 1 cuts containing point 0. The
/// witness concatenates one scaled 0/1 coordinate per cut used. n <= 12.
ConeMembershipReport cut_cone_membership(const RationalDistanceVector& dv);
ConeMembershipReport cut_cone_membership(const DistanceVector& dv);

/// Cayley-Menger determinant of the points in `subset` (squared distances).
double cayley_menger_determinant(const DistanceVector& squared, const std::vector<int>& subset);

/// Exact necessary test for the d-dimensional Euclidean stratum: every
/// (d+2)-subset must span zero volume and every smaller simplex must have a
/// nonnegative squared volume. Returns the first violating subset.
std::optional<std::vector<int>> cayley_menger_violation(const DistanceVector& squared, int d, double rel_tol = 1e-9);

/// Membership in the d-dimensional stratum: the complete-graph linkage with
/// lengths dv^(1/p) handed to realize(). For p = 2 the Cayley-Menger test
/// filters first. l_inf is only supported for d = 2.
ConeMembershipReport stratum_membership(const DistanceVector& dv, int d, NormParam p, const RealizeConfig& cfg = {});

/// Whole-cone membership for finite p: stratum test in dimension
/// min(C(n,2), max_dim), the flattening-dimension bound. p = 1 uses the cut
/// cone directly.
ConeMembershipReport cone_membership(const DistanceVector& dv, NormParam p, int max_dim, const RealizeConfig& cfg = {});

/// A distance vector together with a configuration realizing it.
template <class T>
struct BasicRealizedVector {
  BasicDistanceVector<T> dv;
  BasicConfiguration<T> points;
};
using RealizedVector = BasicRealizedVector<double>;
using RationalRealizedVector = BasicRealizedVector<Rational>;

RealizedVector make_realized(const Configuration& points, NormParam p);
RationalRealizedVector make_realized(const RationalConfiguration& points, NormParam p);

/// lambda * r + (1 - lambda) * s, realised by concatenating lambda^(1/p) r and
/// (1 - lambda)^(1/p) s. Finite p only.
RealizedVector convex_combine(const RealizedVector& r, const RealizedVector& s, double lambda, NormParam p);

/// Exact l_1 version: the scale factors are lambda and 1 - lambda themselves.
RationalRealizedVector convex_combine_l1_exact(const RationalRealizedVector& r, const RationalRealizedVector& s,
                                               const Rational& lambda);

/// Writes a k-dimensional configuration's l_p^p distance vector as the
/// average of k scaled one-dimensional vectors: pairs (1/k, k * delta^l).
template <class T>
std::vector<std::pair<T, BasicDistanceVector<T>>> decompose_to_1d(const BasicConfiguration<T>& points, NormParam p) {
  if (p.is_infinite()) throw Error(ErrorKind::UnsupportedNorm, "l_inf distances do not split over coordinates");
  const int n = static_cast<int>(points.size());
  const int k = n == 0 ? 0 : static_cast<int>(points.front().size());
  std::vector<std::pair<T, BasicDistanceVector<T>>> out;
  for (int l = 0; l < k; ++l) {
    BasicConfiguration<T> line(n);
    for (int v = 0; v < n; ++v) {
      if (static_cast<int>(points[v].size()) != k) detail::check_same_dim(points[v].size(), static_cast<std::size_t>(k));
      line[v] = {points[v][l]};
    }
    auto dv = distance_vector(line, p);
    std::vector<T> scaled = dv.entries();
    for (auto& x : scaled) x *= T(k);
    out.emplace_back(T(1) / T(k), BasicDistanceVector<T>(n, std::move(scaled)));
  }
  return out;
}

}  // namespace lpflat
