#include "lpflat/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lpflat {

std::string_view to_string(RigidityClass c) {
  switch (c) {
    case RigidityClass::Independent: return "INDEPENDENT";
    case RigidityClass::Isostatic: return "ISOSTATIC";
    case RigidityClass::RigidDependent: return "RIGID_DEPENDENT";
    case RigidityClass::Neither: return "NEITHER";
  }
  return "?";
}

namespace {

std::string edge_name(const Edge& e) { return "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")"; }

/// Smallest gap that decides the facet of an edge direction: min |delta_i|
/// for l_1, the gap between the two largest |delta_i| for l_inf.
double facet_margin(const Point& a, const Point& b, NormParam p) {
  const std::size_t d = a.size();
  if (p.is_infinite()) {
    if (d < 2) return std::abs(a[0] - b[0]);
    double first = -1.0, second = -1.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double x = std::abs(a[i] - b[i]);
      if (x > first) {
        second = first;
        first = x;
      } else if (x > second) {
        second = x;
      }
    }
    return first - second;
  }
  double m = std::abs(a[0] - b[0]);
  for (std::size_t i = 1; i < d; ++i) m = std::min(m, std::abs(a[i] - b[i]));
  return m;
}

void fill_row(Eigen::MatrixXd& R, int row, const Edge& e, const Point& a, const Point& b, NormParam p) {
  const int d = static_cast<int>(a.size());
  int argmax = 0;
  for (int i = 1; i < d; ++i)
    if (std::abs(a[i] - b[i]) > std::abs(a[argmax] - b[argmax])) argmax = i;
  for (int i = 0; i < d; ++i) {
    const double delta = a[i] - b[i];
    double g = 0.0;
    if (p.is_infinite()) {
      g = i == argmax ? std::copysign(1.0, delta) : 0.0;
    } else if (p.p() == 1) {
      g = std::copysign(1.0, delta);
    } else {
      g = std::copysign(std::pow(std::abs(delta), p.p() - 1), delta);
    }
    R(row, e.u * d + i) = g;
    R(row, e.v * d + i) = -g;
  }
}

Configuration random_well_positioned(const Graph& g, int d, NormParam p, std::uint64_t seed, std::size_t sample,
                                     double margin) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(0x71d), static_cast<std::uint64_t>(sample)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (;;) {
    Configuration pts(g.n(), Point(d));
    for (auto& q : pts)
      for (double& c : q) c = coord(rng);
    if (!p.is_polyhedral()) return pts;
    bool ok = true;
    for (const Edge& e : g.edges())
      if (facet_margin(pts[e.u], pts[e.v], p) <= margin) ok = false;
    if (ok) return pts;
  }
}

int sample_count(const RankConfig& cfg, NormParam p) {
  return p.is_polyhedral() ? std::max(cfg.samples, cfg.polyhedral_samples) : cfg.samples;
}

constexpr double kSampleMargin = 1e-4;

RigidityClass classify(int rank, int edges, int rigid) {
  if (rank == edges && edges == rigid) return RigidityClass::Isostatic;
  if (rank == edges) return RigidityClass::Independent;
  if (rank == rigid) return RigidityClass::RigidDependent;
  return RigidityClass::Neither;
}

}  // namespace

RigidityMatrix rigidity_matrix(const Framework& f, double tol) {
  const int d = f.dim;
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(f.graph.num_edges(), static_cast<Eigen::Index>(d) * f.graph.n());
  for (int k = 0; k < f.graph.num_edges(); ++k) {
    const Edge& e = f.graph.edges()[k];
    if (f.norm.is_polyhedral() && d > 0 && facet_margin(f.points[e.u], f.points[e.v], f.norm) <= tol) {
      throw Error(ErrorKind::NotWellPositioned,
                  "edge " + edge_name(e) +
                      (f.norm.is_infinite() ? " has a tie for the largest coordinate difference"
                                            : " has a zero coordinate difference"));
    }
    fill_row(R, k, e, f.points[e.u], f.points[e.v], f.norm);
  }
  return {std::move(R), f};
}

RationalMatrix rigidity_matrix_exact(const Graph& g, const RationalConfiguration& points, NormParam p) {
  const int d = points.empty() ? 0 : static_cast<int>(points.front().size());
  RationalMatrix R(g.num_edges(), std::vector<Rational>(static_cast<std::size_t>(d) * g.n(), Rational(0)));
  for (int k = 0; k < g.num_edges(); ++k) {
    const Edge& e = g.edges()[k];
    int argmax = 0;
    for (int i = 1; i < d; ++i)
      if (abs(Rational(points[e.u][i] - points[e.v][i])) > abs(Rational(points[e.u][argmax] - points[e.v][argmax])))
        argmax = i;
    for (int i = 0; i < d; ++i) {
      const Rational delta = points[e.u][i] - points[e.v][i];
      const int sign = delta < 0 ? -1 : (delta > 0 ? 1 : 0);
      Rational gval;
      if (p.is_infinite()) {
        gval = i == argmax ? Rational(sign) : Rational(0);
      } else if (p.p() == 1) {
        gval = Rational(sign);
      } else {
        gval = detail::power(abs(delta), p.p() - 1) * sign;
      }
      R[k][static_cast<std::size_t>(e.u) * d + i] = gval;
      R[k][static_cast<std::size_t>(e.v) * d + i] = -gval;
    }
  }
  return R;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

int exact_rank(RationalMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m.front().size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

int isometry_dimension(int d, NormParam p) {
  if (!p.is_infinite() && p.p() == 2) return d * (d + 1) / 2;
  return d;
}

int rigid_rank(int n, int d, NormParam p) {
  if (n <= 1) return 0;
  const int complete = n * (n - 1) / 2;
  if (!p.is_infinite() && p.p() == 2) {
    if (n >= d + 1) return d * n - isometry_dimension(d, p);
    return complete;
  }
  return std::min(complete, d * n - isometry_dimension(d, p));
}

RankReport generic_rank(const Graph& g, int d, NormParam p, const RankConfig& cfg) {
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be >= 1");
  if (cfg.samples < 1 || cfg.polyhedral_samples < 1) throw Error(ErrorKind::ConfigError, "samples must be >= 1");
  std::vector<int> ranks(sample_count(cfg, p), 0);
  for_each_index(ranks.size(), cfg.execution, [&](std::size_t s) {
    const Configuration pts = random_well_positioned(g, d, p, cfg.seed, s, kSampleMargin);
    ranks[s] = numerical_rank(rigidity_matrix(Framework(g, pts, p)).entries, cfg.rank_tol);
  });
  RankReport rep;
  rep.rank = *std::max_element(ranks.begin(), ranks.end());
  rep.samples_used = static_cast<int>(ranks.size());
  rep.stability = static_cast<double>(std::count(ranks.begin(), ranks.end(), rep.rank)) / ranks.size();
  const int rigid = rigid_rank(g.n(), d, p);
  rep.max_possible = std::min(g.num_edges(), rigid);
  rep.classification = classify(rep.rank, g.num_edges(), rigid);
  return rep;
}

int projection_dimension(const Graph& g, int d, NormParam p, const RankConfig& cfg) {
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be >= 1");
  if (cfg.samples < 1 || cfg.polyhedral_samples < 1) throw Error(ErrorKind::ConfigError, "samples must be >= 1");
  const int m = g.num_edges();
  const int cols = g.n() * d;
  std::vector<int> ranks(sample_count(cfg, p), 0);
  for_each_index(ranks.size(), cfg.execution, [&](std::size_t s) {
    Configuration pts = random_well_positioned(g, d, p, cfg.seed, s, kSampleMargin);
    double scale = 1e-300;
    for (const auto& q : pts)
      for (double c : q) scale = std::max(scale, std::abs(c));
    const double h = cfg.fd_step * scale;
    auto edge_values = [&](const Configuration& x) {
      Eigen::VectorXd out(m);
      for (int k = 0; k < m; ++k) out[k] = lp_p_distance(x[g.edges()[k].u], x[g.edges()[k].v], p);
      return out;
    };
    Eigen::MatrixXd J(m, cols);
    for (int v = 0; v < g.n(); ++v) {
      for (int i = 0; i < d; ++i) {
        const double keep = pts[v][i];
        pts[v][i] = keep + h;
        const Eigen::VectorXd plus = edge_values(pts);
        pts[v][i] = keep - h;
        const Eigen::VectorXd minus = edge_values(pts);
        pts[v][i] = keep;
        J.col(v * d + i) = (plus - minus) / (2.0 * h);
      }
    }
    ranks[s] = numerical_rank(J, cfg.rank_tol);
  });
  return *std::max_element(ranks.begin(), ranks.end());
}

IndependenceReport independence_check(const Graph& g, int d, NormParam p, const RankConfig& cfg) {
  IndependenceReport rep;
  rep.rank = generic_rank(g, d, p, cfg);
  rep.independent = rep.rank.rank == g.num_edges();
  return rep;
}

}  // namespace lpflat
