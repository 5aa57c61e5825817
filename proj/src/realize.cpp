#include "lpflat/realize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "lpflat/linear_program.hpp"

namespace lpflat {

std::string_view to_string(RealizeStatus s) {
  switch (s) {
    case RealizeStatus::Feasible: return "FEASIBLE";
    case RealizeStatus::InfeasibleExact: return "INFEASIBLE_EXACT";
    case RealizeStatus::UnknownNumeric: return "UNKNOWN_NUMERIC";
  }
  return "?";
}

void RealizeConfig::validate() const {
  if (restarts < 1) throw Error(ErrorKind::ConfigError, "restarts must be positive");
  if (!(residual_tol > 0)) throw Error(ErrorKind::ConfigError, "residual_tol must be positive");
  if (exact_mode_cap < 0) throw Error(ErrorKind::ConfigError, "exact_mode_cap must be nonnegative");
  if (max_iterations < 1) throw Error(ErrorKind::ConfigError, "max_iterations must be positive");
  if (smoothing_eps_schedule.empty()) throw Error(ErrorKind::ConfigError, "smoothing schedule is empty");
  for (std::size_t i = 0; i < smoothing_eps_schedule.size(); ++i) {
    if (!(smoothing_eps_schedule[i] > 0)) throw Error(ErrorKind::ConfigError, "smoothing eps must be positive");
    if (i > 0 && !(smoothing_eps_schedule[i] < smoothing_eps_schedule[i - 1]))
      throw Error(ErrorKind::ConfigError, "smoothing schedule must be strictly decreasing");
  }
}

namespace {

double rms_length(const Linkage& l) {
  if (l.lengths.empty()) return 0.0;
  double acc = 0.0;
  for (double x : l.lengths) acc += x * x;
  return std::sqrt(acc / static_cast<double>(l.lengths.size()));
}

void check_lengths(const Linkage& l, const RealizeConfig& cfg) {
  if (cfg.probe_mode) return;
  for (std::size_t k = 0; k < l.lengths.size(); ++k)
    if (l.lengths[k] == 0.0)
      throw Error(ErrorKind::InvalidLinkage, "edge (" + std::to_string(l.graph.edges()[k].u) + ", " +
                                                 std::to_string(l.graph.edges()[k].v) +
                                                 ") has length 0; zero lengths are only legal for Cayley probes");
}

RealizeResult trivial_result(const Linkage& l, int d, NormParam p) {
  RealizeResult r;
  r.status = RealizeStatus::Feasible;
  Configuration pts(l.graph.n(), Point(d, 0.0));
  r.framework = Framework(l.graph, pts, p);
  RationalConfiguration exact(l.graph.n(), BasicPoint<Rational>(d, Rational(0)));
  r.exact_points = exact;
  return r;
}

// ---- exact planar polyhedral solver ---------------------------------------

using Int128 = __int128;

/// Exact fixed-point image of a set of doubles: value = scaled / 2^shift.
struct FixedPoint {
  std::vector<Int128> scaled;
  int shift = 0;
};

std::optional<FixedPoint> to_fixed_point(const std::vector<double>& values) {
  // Each value is mantissa * 2^exp with a 53-bit integer mantissa.
  int shift = 0;
  std::vector<std::pair<std::int64_t, int>> parts;
  for (double v : values) {
    if (v == 0.0) {
      parts.emplace_back(0, 0);
      continue;
    }
    int exp = 0;
    const double frac = std::frexp(v, &exp);
    const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
    parts.emplace_back(mant, exp - 53);
    shift = std::max(shift, -(exp - 53));
  }
  FixedPoint out;
  out.shift = shift;
  for (auto [mant, exp] : parts) {
    const int up = exp + shift;
    if (mant == 0) {
      out.scaled.push_back(0);
      continue;
    }
    if (up > 64) return std::nullopt;  // keeps every path sum far below 2^127
    out.scaled.push_back(static_cast<Int128>(mant) << up);
  }
  return out;
}

Rational int128_to_rational(Int128 v) {
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  const auto hi = static_cast<std::uint64_t>(mag >> 64);
  const auto lo = static_cast<std::uint64_t>(mag);
  boost::multiprecision::mpz_int z = hi;
  z <<= 64;
  z += lo;
  if (neg) z = -z;
  return Rational(z);
}

template <class Scalar>
struct PlanarCaseSearch {
  int n = 0;
  std::vector<Edge> edges;        // in search order
  std::vector<Scalar> lengths;    // aligned with edges
  std::size_t nodes = 0;

  struct State {
    DifferenceSystem<Scalar> x;
    DifferenceSystem<Scalar> y;
  };

  /// Case c in 0..3: bit 1 = axis (0: x attains the max), bit 0 = sign.
  static bool apply(State& s, const Edge& e, const Scalar& len, int c) {
    const bool axis_y = (c & 2) != 0;
    const Scalar signed_len = (c & 1) ? Scalar(-len) : len;
    auto& tight = axis_y ? s.y : s.x;
    auto& loose = axis_y ? s.x : s.y;
    return tight.add_range(e.u, e.v, signed_len, signed_len) && loose.add_range(e.u, e.v, Scalar(-len), len);
  }

  std::vector<int> cases_for(std::size_t k) const {
    if (k == 0) return {0};  // reflections and the axis swap fix the first edge
    if (lengths[k] == Scalar(0)) return {0};
    return {0, 1, 2, 3};
  }

  std::optional<State> dfs(State state, std::size_t k) {
    if (k == edges.size()) return state;
    for (int c : cases_for(k)) {
      ++nodes;
      State next = state;
      if (!apply(next, edges[k], lengths[k], c)) continue;
      if (auto found = dfs(std::move(next), k + 1)) return found;
    }
    return std::nullopt;
  }
};

/// Orders edges so that each one (after the first of its component) touches
/// an already-constrained vertex; infeasibility then shows up early.
std::vector<int> search_order(const Graph& g) {
  std::vector<int> order;
  std::vector<char> used(g.num_edges(), 0), touched(g.n(), 0);
  while (static_cast<int>(order.size()) < g.num_edges()) {
    int pick = -1;
    int best = -1;
    for (int k = 0; k < g.num_edges(); ++k) {
      if (used[k]) continue;
      const Edge& e = g.edges()[k];
      const int score = touched[e.u] + touched[e.v];
      if (score > best) {
        best = score;
        pick = k;
      }
    }
    used[pick] = 1;
    touched[g.edges()[pick].u] = touched[g.edges()[pick].v] = 1;
    order.push_back(pick);
  }
  return order;
}

template <class Scalar, class ToRational>
RealizeResult solve_planar(const Linkage& l, NormParam p, const std::vector<Scalar>& scaled, ToRational to_rational_fn,
                           Execution exec) {
  PlanarCaseSearch<Scalar> search;
  search.n = l.graph.n();
  for (int k : search_order(l.graph)) {
    search.edges.push_back(l.graph.edges()[k]);
    search.lengths.push_back(scaled[k]);
  }
  using State = typename PlanarCaseSearch<Scalar>::State;
  State root{DifferenceSystem<Scalar>(search.n), DifferenceSystem<Scalar>(search.n)};

  std::optional<State> found;
  std::size_t nodes = 0;
  const std::size_t m = search.edges.size();

  // Split the case tree after the first two free edges into independent
  // subtrees (lexicographic case order) and keep the lowest successful one.
  std::vector<std::vector<int>> prefixes{{}};
  for (std::size_t k = 0; k < std::min<std::size_t>(m, 3); ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& pre : prefixes)
      for (int c : search.cases_for(k)) {
        auto ext = pre;
        ext.push_back(c);
        next.push_back(std::move(ext));
      }
    prefixes = std::move(next);
  }
  std::vector<std::optional<State>> results(prefixes.size());
  std::vector<std::size_t> counts(prefixes.size(), 0);
  auto run_subtree = [&](std::size_t i) {
    PlanarCaseSearch<Scalar> local = search;
    local.nodes = 0;
    State s = root;
    for (std::size_t k = 0; k < prefixes[i].size(); ++k) {
      ++local.nodes;
      if (!local.apply(s, local.edges[k], local.lengths[k], prefixes[i][k])) {
        counts[i] = local.nodes;
        return false;
      }
    }
    results[i] = local.dfs(std::move(s), prefixes[i].size());
    counts[i] = local.nodes;
    return results[i].has_value();
  };
  const auto winner = first_index_where(prefixes.size(), exec, run_subtree);
  const std::size_t last = winner ? *winner : prefixes.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) nodes += counts[i];
  if (winner) found = results[*winner];

  RealizeResult r;
  r.exact_mode = true;
  r.cases_explored = nodes;
  if (!found) {
    r.status = RealizeStatus::InfeasibleExact;
    r.residual = std::numeric_limits<double>::infinity();
    return r;
  }
  const auto xs = found->x.solution();
  const auto ys = found->y.solution();
  RationalConfiguration linf(search.n);
  for (int v = 0; v < search.n; ++v) linf[v] = {to_rational_fn(xs[v]), to_rational_fn(ys[v])};
  RationalConfiguration exact = p.is_infinite() ? linf : rotate_linf_to_l1(linf);
  r.status = RealizeStatus::Feasible;
  r.framework = Framework(l.graph, to_double(exact), p);
  r.residual = relative_residual(r.framework->points, l, p);
  r.exact_points = std::move(exact);
  return r;
}

// ---- numeric solver ---------------------------------------------------------

enum class Smoothing { None, AbsSqrt, QNorm };

/// Edge residuals in normalised units for one smoothing stage.
struct NumericProblem {
  int n = 0;
  int d = 0;
  NormParam norm;
  std::vector<Edge> edges;
  std::vector<double> target;  // plain lengths (normalised)
  Smoothing smoothing = Smoothing::None;
  double eps = 0.0;
  int q = 2;

  int unknowns() const { return n * d; }

  void evaluate(const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd* J) const {
    const int m = static_cast<int>(edges.size());
    r.resize(m);
    if (J) J->setZero(m, unknowns());
    for (int k = 0; k < m; ++k) {
      const int u = edges[k].u, v = edges[k].v;
      if (smoothing == Smoothing::None) {
        // sum |delta_i|^p - target^p
        const int p = norm.p();
        double acc = 0.0;
        for (int i = 0; i < d; ++i) {
          const double dl = x[u * d + i] - x[v * d + i];
          const double a = std::abs(dl);
          acc += std::pow(a, p);
          if (J) {
            const double g = p * std::copysign(std::pow(a, p - 1), dl);
            (*J)(k, u * d + i) = g;
            (*J)(k, v * d + i) = -g;
          }
        }
        r[k] = acc - std::pow(target[k], p);
      } else if (smoothing == Smoothing::AbsSqrt) {
        double acc = 0.0;
        for (int i = 0; i < d; ++i) {
          const double dl = x[u * d + i] - x[v * d + i];
          const double s = std::sqrt(dl * dl + eps);
          acc += s;
          if (J) {
            (*J)(k, u * d + i) = dl / s;
            (*J)(k, v * d + i) = -dl / s;
          }
        }
        r[k] = acc - target[k];
      } else {
        double mx = 0.0;
        for (int i = 0; i < d; ++i) mx = std::max(mx, std::abs(x[u * d + i] - x[v * d + i]));
        if (mx == 0.0) {
          r[k] = -target[k];
          continue;
        }
        double acc = 0.0;
        for (int i = 0; i < d; ++i) acc += std::pow(std::abs(x[u * d + i] - x[v * d + i]) / mx, q);
        const double nrm = mx * std::pow(acc, 1.0 / q);
        r[k] = nrm - target[k];
        if (J) {
          for (int i = 0; i < d; ++i) {
            const double dl = x[u * d + i] - x[v * d + i];
            const double g = std::copysign(std::pow(std::abs(dl) / nrm, q - 1), dl);
            (*J)(k, u * d + i) = g;
            (*J)(k, v * d + i) = -g;
          }
        }
      }
    }
  }
};

void levenberg_marquardt(const NumericProblem& prob, Eigen::VectorXd& x, int max_iterations) {
  Eigen::VectorXd r, r_new;
  Eigen::MatrixXd J;
  prob.evaluate(x, r, &J);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  // Residuals are in power units, so a zero-length edge converges only
  // linearly; stop well below the plain-length tolerance.
  for (int it = 0; it < max_iterations && cost > 1e-48; ++it) {
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    bool accepted = false;
    while (mu < 1e14) {
      Eigen::MatrixXd M = A;
      for (int i = 0; i < M.rows(); ++i) M(i, i) += mu * std::max(A(i, i), 1e-9);
      const Eigen::VectorXd dx = M.ldlt().solve(-g);
      if (!dx.allFinite()) {
        mu *= 10;
        continue;
      }
      const Eigen::VectorXd x_new = x + dx;
      prob.evaluate(x_new, r_new, nullptr);
      const double cost_new = r_new.squaredNorm();
      if (cost_new < cost) {
        const double improvement = cost - cost_new;
        x = x_new;
        cost = cost_new;
        prob.evaluate(x, r, &J);
        mu = std::max(mu / 3.0, 1e-12);
        accepted = true;
        if (improvement <= 1e-15 * cost && dx.norm() < 1e-14 * (1.0 + x.norm())) return;
        break;
      }
      mu *= 4.0;
    }
    if (!accepted) return;
  }
}

double relative_residual_normalised(const Eigen::VectorXd& x, const NumericProblem& prob) {
  double worst = 0.0;
  for (std::size_t k = 0; k < prob.edges.size(); ++k) {
    Point a(prob.d), b(prob.d);
    for (int i = 0; i < prob.d; ++i) {
      a[i] = x[prob.edges[k].u * prob.d + i];
      b[i] = x[prob.edges[k].v * prob.d + i];
    }
    worst = std::max(worst, std::abs(lp_distance(a, b, prob.norm) - prob.target[k]));
  }
  return worst;  // target is normalised to unit RMS
}

/// Solves the piecewise-linear system exactly once the facet pattern of every
/// edge is read off the numeric solution. Near-zero coordinate differences
/// (l_1) and near-ties for the max (l_inf) are tried both ways.
std::optional<RationalConfiguration> polish_polyhedral(const Eigen::VectorXd& x, const NumericProblem& prob,
                                                       const std::vector<Rational>& target) {
  const int n = prob.n, d = prob.d;
  const int m = static_cast<int>(prob.edges.size());
  double scale = 0.0;
  for (int i = 0; i < x.size(); ++i) scale = std::max(scale, std::abs(x[i]));
  const double ambiguous = 1e-6 * std::max(scale, 1.0);

  // pattern[k][i]: l_1 sign per coordinate; l_inf uses pattern[k][0] = axis,
  // pattern[k][1] = sign.
  std::vector<std::vector<int>> pattern(m);
  std::vector<std::pair<int, int>> flips;  // (edge, alternative) candidates
  std::vector<std::vector<int>> alt_axis(m);
  for (int k = 0; k < m; ++k) {
    const int u = prob.edges[k].u, v = prob.edges[k].v;
    std::vector<double> delta(d);
    for (int i = 0; i < d; ++i) delta[i] = x[u * d + i] - x[v * d + i];
    if (prob.norm.is_infinite()) {
      int best = 0;
      for (int i = 1; i < d; ++i)
        if (std::abs(delta[i]) > std::abs(delta[best])) best = i;
      pattern[k] = {best, delta[best] < 0 ? -1 : 1};
      for (int i = 0; i < d; ++i)
        if (i != best && std::abs(delta[best]) - std::abs(delta[i]) < ambiguous) alt_axis[k].push_back(i);
      if (!alt_axis[k].empty()) flips.emplace_back(k, 0);
    } else {
      pattern[k].resize(d);
      for (int i = 0; i < d; ++i) {
        pattern[k][i] = delta[i] < 0 ? -1 : 1;
        if (std::abs(delta[i]) < ambiguous) flips.emplace_back(k, i);
      }
    }
  }
  if (flips.size() > 8) flips.resize(8);

  auto var = [d](int vertex, int coord) { return vertex * d + coord; };
  auto attempt = [&](const std::vector<std::vector<int>>& pat) -> std::optional<RationalConfiguration> {
    RationalLp lp;
    for (int i = 0; i < n * d; ++i) lp.add_variable(false);
    for (int i = 0; i < d && n > 0; ++i) lp.add_constraint({{var(0, i), Rational(1)}}, Relation::Equal, Rational(0));
    for (int k = 0; k < m; ++k) {
      const int u = prob.edges[k].u, v = prob.edges[k].v;
      if (prob.norm.is_infinite()) {
        const int axis = pat[k][0];
        const Rational s(pat[k][1]);
        lp.add_constraint({{var(u, axis), s}, {var(v, axis), Rational(-s)}}, Relation::Equal, target[k]);
        for (int i = 0; i < d; ++i) {
          if (i == axis) continue;
          lp.add_constraint({{var(u, i), Rational(1)}, {var(v, i), Rational(-1)}}, Relation::LessEqual, target[k]);
          lp.add_constraint({{var(u, i), Rational(1)}, {var(v, i), Rational(-1)}}, Relation::GreaterEqual,
                            Rational(-target[k]));
        }
      } else {
        std::vector<LinearTerm> sum;
        for (int i = 0; i < d; ++i) {
          const Rational s(pat[k][i]);
          sum.push_back({var(u, i), s});
          sum.push_back({var(v, i), Rational(-s)});
          lp.add_constraint({{var(u, i), s}, {var(v, i), Rational(-s)}}, Relation::GreaterEqual, Rational(0));
        }
        lp.add_constraint(std::move(sum), Relation::Equal, target[k]);
      }
    }
    auto sol = lp.find_feasible_point();
    if (!sol) return std::nullopt;
    RationalConfiguration pts(n, BasicPoint<Rational>(d));
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) pts[v][i] = (*sol)[var(v, i)];
    return pts;
  };

  const std::size_t combos = std::size_t{1} << flips.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    auto pat = pattern;
    for (std::size_t b = 0; b < flips.size(); ++b) {
      if (!(mask >> b & 1)) continue;
      const auto [k, i] = flips[b];
      if (prob.norm.is_infinite()) {
        pat[k][0] = alt_axis[k].front();
        const int u = prob.edges[k].u, v = prob.edges[k].v;
        const double dl = x[u * d + pat[k][0]] - x[v * d + pat[k][0]];
        pat[k][1] = dl < 0 ? -1 : 1;
      } else {
        pat[k][i] = -pat[k][i];
      }
    }
    if (auto pts = attempt(pat)) return pts;
  }
  return std::nullopt;
}

struct TrialOutcome {
  Configuration points;  // normalised units
  std::optional<RationalConfiguration> exact;
};

std::optional<TrialOutcome> numeric_trial(const Linkage& l, int d, NormParam p, const RealizeConfig& cfg, double unit,
                                          const std::vector<Rational>& exact_target, std::size_t trial) {
  NumericProblem prob;
  prob.n = l.graph.n();
  prob.d = d;
  prob.norm = p;
  prob.edges = l.graph.edges();
  prob.target.resize(l.lengths.size());
  double total = 0.0;
  for (std::size_t k = 0; k < l.lengths.size(); ++k) {
    prob.target[k] = l.lengths[k] / unit;
    total += prob.target[k];
  }
  const double half_width = std::max(total, 1.0);

  std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(trial), std::uint64_t{0x5eed}};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> box(-half_width, half_width);
  Eigen::VectorXd x(prob.unknowns());
  for (int i = 0; i < x.size(); ++i) x[i] = box(rng);

  const bool l1_like = p.is_infinite() || p.p() == 1;
  if (!l1_like) {
    prob.smoothing = Smoothing::None;
    levenberg_marquardt(prob, x, cfg.max_iterations);
  } else if (p.p() == 1 && !p.is_infinite()) {
    prob.smoothing = Smoothing::AbsSqrt;
    for (double eps : cfg.smoothing_eps_schedule) {
      prob.eps = eps;
      levenberg_marquardt(prob, x, cfg.max_iterations);
    }
  } else {
    prob.smoothing = Smoothing::QNorm;
    for (int q : {4, 8, 16, 32, 64, 128, 256}) {
      prob.q = q;
      levenberg_marquardt(prob, x, cfg.max_iterations);
    }
  }

  TrialOutcome out;
  out.points.assign(prob.n, Point(d));
  for (int v = 0; v < prob.n; ++v)
    for (int i = 0; i < d; ++i) out.points[v][i] = x[v * d + i];

  if (l1_like) {
    // Only worth an exact polish when the smoothed solution is close.
    if (relative_residual_normalised(x, prob) > 1e-2) return std::nullopt;
    std::vector<Rational> target(exact_target.size());
    const Rational unit_q(unit);
    for (std::size_t k = 0; k < target.size(); ++k) target[k] = exact_target[k] / unit_q;
    if (auto exact = polish_polyhedral(x, prob, target)) {
      out.exact = std::move(exact);
      out.points = to_double(*out.exact);
      return out;
    }
    return std::nullopt;
  }
  if (relative_residual_normalised(x, prob) <= cfg.residual_tol) return out;
  return std::nullopt;
}

}  // namespace

double relative_residual(const Configuration& points, const Linkage& linkage, NormParam p) {
  const double unit = rms_length(linkage);
  double worst = 0.0;
  for (std::size_t k = 0; k < linkage.lengths.size(); ++k) {
    const Edge& e = linkage.graph.edges()[k];
    worst = std::max(worst, std::abs(lp_distance(points[e.u], points[e.v], p) - linkage.lengths[k]));
  }
  return unit > 0 ? worst / unit : worst;
}

RealizeResult realize_exact_planar_polyhedral(const Linkage& linkage, NormParam p, const RealizeConfig& cfg) {
  cfg.validate();
  if (!p.is_polyhedral())
    throw Error(ErrorKind::UnsupportedNorm, "exact planar mode handles l_1 and l_inf only, got l_" + p.to_string());
  if (linkage.graph.num_edges() > cfg.exact_mode_cap)
    throw Error(ErrorKind::SizeCapExceeded, "exact planar mode is capped at " + std::to_string(cfg.exact_mode_cap) +
                                                " edges; linkage has " + std::to_string(linkage.graph.num_edges()));
  check_lengths(linkage, cfg);
  if (linkage.graph.num_edges() == 0) {
    auto r = trivial_result(linkage, 2, p);
    r.exact_mode = true;
    return r;
  }
  if (auto fixed = to_fixed_point(linkage.lengths)) {
    const int shift = fixed->shift;
    const Rational denom = Rational(boost::multiprecision::mpz_int(1) << shift);
    return solve_planar<Int128>(
        linkage, p, fixed->scaled, [&](Int128 v) { return Rational(int128_to_rational(v) / denom); }, cfg.execution);
  }
  std::vector<Rational> exact(linkage.lengths.begin(), linkage.lengths.end());
  return solve_planar<Rational>(linkage, p, exact, [](const Rational& v) { return v; }, cfg.execution);
}

RealizeResult realize_numeric(const Linkage& linkage, int d, NormParam p, const RealizeConfig& cfg) {
  cfg.validate();
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be >= 1, got " + std::to_string(d));
  check_lengths(linkage, cfg);
  if (linkage.graph.num_edges() == 0) return trivial_result(linkage, d, p);

  double unit = rms_length(linkage);
  if (!(unit > 0)) unit = 1.0;
  const std::vector<Rational> exact_target(linkage.lengths.begin(), linkage.lengths.end());

  std::vector<std::optional<TrialOutcome>> outcomes(static_cast<std::size_t>(cfg.restarts));
  const auto winner = first_index_where(outcomes.size(), cfg.execution, [&](std::size_t t) {
    outcomes[t] = numeric_trial(linkage, d, p, cfg, unit, exact_target, t);
    return outcomes[t].has_value();
  });

  RealizeResult r;
  r.exact_mode = false;
  if (!winner) {
    r.status = RealizeStatus::UnknownNumeric;
    r.restarts_used = cfg.restarts;
    r.residual = std::numeric_limits<double>::infinity();
    return r;
  }
  auto& win = *outcomes[*winner];
  r.restarts_used = static_cast<int>(*winner) + 1;
  Configuration pts = win.points;
  if (win.exact) {
    r.exact_points = win.exact;
    const Rational unit_q(unit);
    for (auto& q : *r.exact_points)
      for (auto& c : q) c *= unit_q;
    pts = to_double(*r.exact_points);
  } else {
    for (auto& q : pts)
      for (double& c : q) c *= unit;
  }
  r.framework = Framework(linkage.graph, pts, p);
  r.residual = relative_residual(pts, linkage, p);
  r.status = r.residual <= cfg.residual_tol ? RealizeStatus::Feasible : RealizeStatus::UnknownNumeric;
  if (r.status != RealizeStatus::Feasible) r.framework.reset();
  return r;
}

RealizeResult realize(const Linkage& linkage, int d, NormParam p, const RealizeConfig& cfg) {
  cfg.validate();
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "dimension must be >= 1, got " + std::to_string(d));
  check_lengths(linkage, cfg);
  if (d == 2 && p.is_polyhedral() && cfg.allow_exact && linkage.graph.num_edges() <= cfg.exact_mode_cap)
    return realize_exact_planar_polyhedral(linkage, p, cfg);
  return realize_numeric(linkage, d, p, cfg);
}

ResidualReport verify_framework(const Framework& f, const Linkage& l) {
  if (!(f.graph == l.graph)) throw Error(ErrorKind::GraphMismatch, "framework and linkage are on different graphs");
  ResidualReport rep;
  rep.edges = l.lengths.size();
  double sum = 0.0;
  for (std::size_t k = 0; k < l.lengths.size(); ++k) {
    const Edge& e = l.graph.edges()[k];
    const double err = std::abs(lp_distance(f.points[e.u], f.points[e.v], f.norm) - l.lengths[k]);
    rep.max_error = std::max(rep.max_error, err);
    sum += err;
  }
  rep.mean_error = rep.edges ? sum / static_cast<double>(rep.edges) : 0.0;
  return rep;
}

Rational max_power_error_exact(const RationalConfiguration& points, const Linkage& l, NormParam p) {
  if (static_cast<int>(points.size()) != l.graph.n())
    throw Error(ErrorKind::GraphMismatch, "point count does not match the linkage");
  Rational worst(0);
  for (std::size_t k = 0; k < l.lengths.size(); ++k) {
    const Edge& e = l.graph.edges()[k];
    const Rational achieved = lp_p_distance(points[e.u], points[e.v], p);
    const Rational len(l.lengths[k]);
    const Rational target = p.is_infinite() ? len : detail::power(len, p.p());
    const Rational err = abs(Rational(achieved - target));
    if (err > worst) worst = err;
  }
  return worst;
}

}  // namespace lpflat
