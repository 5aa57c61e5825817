#include "lpflat/cone.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "lpflat/linear_program.hpp"

namespace lpflat {

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "MEMBER";
    case Membership::NonMember: return "NON_MEMBER";
    case Membership::UnknownNumeric: return "UNKNOWN_NUMERIC";
  }
  return "?";
}

std::vector<std::vector<double>> centered_gram(const DistanceVector& squared) {
  const int n = squared.n();
  std::vector<std::vector<double>> D(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) D[i][j] = D[j][i] = squared.at(i, j);
  std::vector<double> row(n, 0.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) row[i] += D[i][j];
    total += row[i];
    row[i] /= n;
  }
  total /= static_cast<double>(n) * n;
  std::vector<std::vector<double>> G(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G[i][j] = -0.5 * (D[i][j] - row[i] - row[j] + total);
  return G;
}

ConeMembershipReport edm_membership(const DistanceVector& squared, double rel_tol) {
  const int n = squared.n();
  ConeMembershipReport rep;
  if (n <= 1) {
    rep.member = Membership::Member;
    rep.embedding_dim = 0;
    rep.witness = Configuration(n, Point{});
    return rep;
  }
  const auto G = centered_gram(squared);
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = G[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  const Eigen::VectorXd vals = eig.eigenvalues();  // ascending
  const double scale = std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
  if (vals[0] < -rel_tol * scale) {
    rep.member = Membership::NonMember;
    rep.reason = "centred Gram matrix has eigenvalue " + std::to_string(vals[0]);
    return rep;
  }
  std::vector<int> kept;
  for (int i = n - 1; i >= 0; --i)
    if (vals[i] > rel_tol * scale) kept.push_back(i);
  rep.member = Membership::Member;
  rep.embedding_dim = static_cast<int>(kept.size());
  Configuration pts(n, Point(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const double s = std::sqrt(vals[kept[c]]);
    for (int v = 0; v < n; ++v) pts[v][c] = eig.eigenvectors()(v, kept[c]) * s;
  }
  rep.witness = std::move(pts);
  return rep;
}

ConeMembershipReport cut_cone_membership(const RationalDistanceVector& dv) {
  const int n = dv.n();
  if (n > 12)
    throw Error(ErrorKind::SizeCapExceeded, "cut cone test enumerates 2^(n-1) cuts; n <= 12, got " + std::to_string(n));
  ConeMembershipReport rep;
  if (n <= 1) {
    rep.member = Membership::Member;
    rep.exact_witness = RationalConfiguration(n, BasicPoint<Rational>{});
    rep.witness = Configuration(n, Point{});
    rep.embedding_dim = 0;
    return rep;
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t s = 1; s < full; s += 2) masks.push_back(s);  // odd masks contain point 0

  RationalLp lp;
  for (std::size_t i = 0; i < masks.size(); ++i) lp.add_variable(true);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<LinearTerm> terms;
      for (std::size_t c = 0; c < masks.size(); ++c)
        if (((masks[c] >> i) & 1) != ((masks[c] >> j) & 1)) terms.push_back({static_cast<int>(c), Rational(1)});
      lp.add_constraint(std::move(terms), Relation::Equal, dv.at(i, j));
    }
  }
  auto sol = lp.find_feasible_point();
  if (!sol) {
    rep.member = Membership::NonMember;
    rep.reason = "no nonnegative combination of cut vectors matches the query";
    return rep;
  }
  for (std::size_t c = 0; c < masks.size(); ++c)
    if ((*sol)[c] > 0) rep.cuts.push_back({masks[c], (*sol)[c]});
  RationalConfiguration pts(n);
  for (int v = 0; v < n; ++v)
    for (const auto& cut : rep.cuts) pts[v].push_back((cut.mask >> v) & 1 ? cut.weight : Rational(0));
  rep.member = Membership::Member;
  rep.embedding_dim = static_cast<int>(rep.cuts.size());
  rep.witness = to_double(pts);
  rep.exact_witness = std::move(pts);
  return rep;
}

ConeMembershipReport cut_cone_membership(const DistanceVector& dv) {
  std::vector<Rational> exact(dv.entries().begin(), dv.entries().end());
  return cut_cone_membership(RationalDistanceVector(dv.n(), std::move(exact)));
}

double cayley_menger_determinant(const DistanceVector& squared, const std::vector<int>& subset) {
  const int k = static_cast<int>(subset.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k + 1, k + 1);
  for (int i = 1; i <= k; ++i) M(0, i) = M(i, 0) = 1.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) M(i + 1, j + 1) = M(j + 1, i + 1) = squared.at(subset[i], subset[j]);
  return M.fullPivLu().determinant();
}

namespace {

template <class Visit>
bool for_each_subset(int n, int k, Visit&& visit) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return true;
  for (;;) {
    if (!visit(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<std::vector<int>> cayley_menger_violation(const DistanceVector& squared, int d, double rel_tol) {
  const int n = squared.n();
  double scale = 0.0;
  for (double x : squared.entries()) scale = std::max(scale, x);
  if (scale == 0.0) return std::nullopt;
  std::optional<std::vector<int>> bad;
  for (int k = 2; k <= std::min(n, d + 2) && !bad; ++k) {
    // det(CM) of k points scales like (squared length)^(k-1); the sign of a
    // genuine simplex volume squared is (-1)^k.
    const double unit = std::pow(scale, k - 1) * std::tgamma(k) * std::tgamma(k);
    for_each_subset(n, k, [&](const std::vector<int>& s) {
      const double det = cayley_menger_determinant(squared, s);
      const double signed_volume = (k % 2 == 0 ? 1.0 : -1.0) * det;
      const bool violates = (k == d + 2) ? std::abs(det) > rel_tol * unit : signed_volume < -rel_tol * unit;
      if (violates) {
        bad = s;
        return false;
      }
      return true;
    });
  }
  return bad;
}

ConeMembershipReport stratum_membership(const DistanceVector& dv, int d, NormParam p, const RealizeConfig& cfg) {
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be >= 1");
  if (p.is_infinite() && d != 2)
    throw Error(ErrorKind::UnsupportedDimension, "l_inf strata are only supported in the plane (via the l_1 rotation)");
  const int n = dv.n();
  ConeMembershipReport rep;

  if (!p.is_infinite() && p.p() == 2) {
    if (auto bad = cayley_menger_violation(dv, d)) {
      rep.member = Membership::NonMember;
      rep.reason = "Cayley-Menger test fails on points {";
      for (std::size_t i = 0; i < bad->size(); ++i) rep.reason += (i ? ", " : "") + std::to_string((*bad)[i]);
      rep.reason += "}";
      return rep;
    }
  }

  Graph kn = presets::complete(n);
  std::vector<double> lengths;
  lengths.reserve(dv.size());
  for (const Edge& e : kn.edges()) lengths.push_back(from_power_units(dv.at(e.u, e.v), p));
  RealizeConfig probe = cfg;
  probe.probe_mode = true;
  const RealizeResult res = realize(Linkage(kn, lengths), d, p, probe);
  if (res.status == RealizeStatus::Feasible) {
    rep.member = Membership::Member;
    rep.witness = res.framework->points;
    rep.exact_witness = res.exact_points;
    rep.embedding_dim = d;
    return rep;
  }
  if (res.status == RealizeStatus::InfeasibleExact) {
    rep.member = Membership::NonMember;
    rep.reason = "exact planar enumeration exhausted " + std::to_string(res.cases_explored) + " cases";
    return rep;
  }
  if (!p.is_infinite() && p.p() == 2) {
    // Schoenberg gives a direct witness when the numeric search missed it.
    auto edm = edm_membership(dv);
    if (edm.member == Membership::Member && *edm.embedding_dim <= d) {
      for (auto& q : *edm.witness) q.resize(d, 0.0);
      edm.embedding_dim = d;
      return edm;
    }
  }
  rep.member = Membership::UnknownNumeric;
  rep.reason = "numeric realization failed in all restarts";
  return rep;
}

ConeMembershipReport cone_membership(const DistanceVector& dv, NormParam p, int max_dim, const RealizeConfig& cfg) {
  if (p.is_infinite())
    throw Error(ErrorKind::UnsupportedNorm, "the l_inf cone is only defined as a limit; use the planar stratum test");
  if (p.p() == 1) return cut_cone_membership(dv);
  const int n = dv.n();
  const int bound = std::max(1, n * (n - 1) / 2);
  return stratum_membership(dv, std::min(bound, std::max(1, max_dim)), p, cfg);
}

RealizedVector make_realized(const Configuration& points, NormParam p) { return {distance_vector(points, p), points}; }

RationalRealizedVector make_realized(const RationalConfiguration& points, NormParam p) {
  return {distance_vector(points, p), points};
}

namespace {

template <class T>
BasicRealizedVector<T> combine(const BasicRealizedVector<T>& r, const BasicRealizedVector<T>& s, const T& lambda,
                               const T& a, const T& b) {
  if (r.dv.n() != s.dv.n() || r.points.size() != s.points.size())
    throw Error(ErrorKind::SizeMismatch, "convex combination needs the same number of points");
  const T mu = T(1) - lambda;
  std::vector<T> entries(r.dv.size());
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = lambda * r.dv[k] + mu * s.dv[k];
  BasicConfiguration<T> pts(r.points.size());
  for (std::size_t v = 0; v < pts.size(); ++v) {
    for (const auto& c : r.points[v]) pts[v].push_back(a * c);
    for (const auto& c : s.points[v]) pts[v].push_back(b * c);
  }
  return {BasicDistanceVector<T>(r.dv.n(), std::move(entries)), std::move(pts)};
}

}  // namespace

RealizedVector convex_combine(const RealizedVector& r, const RealizedVector& s, double lambda, NormParam p) {
  if (p.is_infinite()) throw Error(ErrorKind::UnsupportedNorm, "convex_combine needs a finite p");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorKind::ConfigError, "lambda must lie in [0, 1]");
  const double a = std::pow(lambda, 1.0 / p.p());
  const double b = std::pow(1.0 - lambda, 1.0 / p.p());
  return combine<double>(r, s, lambda, a, b);
}

RationalRealizedVector convex_combine_l1_exact(const RationalRealizedVector& r, const RationalRealizedVector& s,
                                               const Rational& lambda) {
  if (lambda < 0 || lambda > 1) throw Error(ErrorKind::ConfigError, "lambda must lie in [0, 1]");
  return combine<Rational>(r, s, lambda, lambda, Rational(1 - lambda));
}

}  // namespace lpflat
