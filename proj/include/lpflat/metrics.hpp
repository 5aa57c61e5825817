#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpflat/error.hpp"
#include "lpflat/graph.hpp"
#include "lpflat/rational.hpp"

namespace lpflat {

/// The exponent of an l_p norm: an integer p >= 1 or infinity.
class NormParam {
 public:
  constexpr NormParam() = default;

  static NormParam finite(int p) {
    if (p < 1) throw Error(ErrorKind::ConfigError, "norm exponent must be >= 1, got " + std::to_string(p));
    NormParam n;
    n.p_ = p;
    return n;
  }
  static constexpr NormParam infinity() {
    NormParam n;
    n.p_ = 0;
    return n;
  }
  /// Accepts "1", "2", ..., "inf", "INF", "infinity".
  static NormParam parse(std::string_view text);

  constexpr bool is_infinite() const noexcept { return p_ == 0; }
  /// Exponent; only meaningful when !is_infinite().
  constexpr int p() const noexcept { return p_; }
  /// True for the polyhedral norms l_1 and l_inf.
  constexpr bool is_polyhedral() const noexcept { return p_ <= 1; }
  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(p_); }

  constexpr bool operator==(const NormParam&) const = default;

 private:
  int p_ = 2;
};

template <class T>
using BasicPoint = std::vector<T>;
template <class T>
using BasicConfiguration = std::vector<BasicPoint<T>>;

using Point = BasicPoint<double>;
using Configuration = BasicConfiguration<double>;
using RationalConfiguration = BasicConfiguration<Rational>;

namespace detail {

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
T power(const T& x, int p) {
  T out(1);
  for (int i = 0; i < p; ++i) out *= x;
  return out;
}

inline void check_same_dim(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error(ErrorKind::DimensionMismatch,
                "points have " + std::to_string(a) + " and " + std::to_string(b) + " coordinates");
}

}  // namespace detail

/// ||x - y||_p^p for finite p; for p = inf the plain max-coordinate distance
/// (the l_inf "cone" is never exponentiated).
template <class T>
T lp_p_distance(std::span<const T> x, std::span<const T> y, NormParam p) {
  detail::check_same_dim(x.size(), y.size());
  T acc(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const T diff = detail::abs_value(T(x[i] - y[i]));
    if (p.is_infinite()) {
      if (diff > acc) acc = diff;
    } else if (p.p() == 1) {
      acc += diff;
    } else if (p.p() == 2) {
      acc += diff * diff;
    } else {
      acc += detail::power(diff, p.p());
    }
  }
  return acc;
}

template <class T>
T lp_p_distance(const BasicPoint<T>& x, const BasicPoint<T>& y, NormParam p) {
  return lp_p_distance<T>(std::span<const T>(x), std::span<const T>(y), p);
}

/// The l_p norm of x - y (p-th root taken).
double lp_distance(std::span<const double> x, std::span<const double> y, NormParam p);
inline double lp_distance(const Point& x, const Point& y, NormParam p) {
  return lp_distance(std::span<const double>(x), std::span<const double>(y), p);
}

/// Converts a plain length to l_p^p units and back (identity for p = inf).
double to_power_units(double length, NormParam p);
double from_power_units(double value, NormParam p);

/// Index of the pair (i, j), i != j, in the order (0,1), (0,2), ..., (1,2), ...
constexpr std::size_t pair_index(int n, int i, int j) {
  if (i > j) {
    const int t = i;
    i = j;
    j = t;
  }
  return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
}

/// Pairwise l_p^p distances of an n-point configuration in the fixed pair
/// order.
template <class T>
class BasicDistanceVector {
 public:
  BasicDistanceVector() = default;
  BasicDistanceVector(int n, std::vector<T> entries) : n_(n), entries_(std::move(entries)) {
    if (n < 0) throw Error(ErrorKind::SizeMismatch, "negative point count");
    if (entries_.size() != static_cast<std::size_t>(n) * (n - 1) / 2 && !(n == 0 && entries_.empty()))
      throw Error(ErrorKind::SizeMismatch, "distance vector for " + std::to_string(n) + " points needs " +
                                               std::to_string(static_cast<std::size_t>(n) * (n - 1) / 2) +
                                               " entries, got " + std::to_string(entries_.size()));
    for (const T& v : entries_)
      if (v < 0) throw Error(ErrorKind::SizeMismatch, "distance vector entries must be nonnegative");
  }

  int n() const noexcept { return n_; }
  const std::vector<T>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const T& at(int i, int j) const { return entries_[pair_index(n_, i, j)]; }
  const T& operator[](std::size_t k) const { return entries_[k]; }

  bool operator==(const BasicDistanceVector&) const = default;

 private:
  int n_ = 0;
  std::vector<T> entries_;
};

using DistanceVector = BasicDistanceVector<double>;
using RationalDistanceVector = BasicDistanceVector<Rational>;

template <class T>
BasicDistanceVector<T> distance_vector(const BasicConfiguration<T>& points, NormParam p) {
  const int n = static_cast<int>(points.size());
  std::vector<T> entries;
  entries.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) entries.push_back(lp_p_distance(points[i], points[j], p));
  return BasicDistanceVector<T>(n, std::move(entries));
}

/// Restricts a distance vector to the edges of g (aligned with g.edges()).
template <class T>
std::vector<T> project_to_edges(const BasicDistanceVector<T>& dv, const Graph& g) {
  if (dv.n() != g.n())
    throw Error(ErrorKind::SizeMismatch, "distance vector has " + std::to_string(dv.n()) + " points, graph has " +
                                             std::to_string(g.n()) + " vertices");
  std::vector<T> out;
  out.reserve(g.edges().size());
  for (const Edge& e : g.edges()) out.push_back(dv.at(e.u, e.v));
  return out;
}

/// (x, y) -> (x + y, x - y): l_1 distances before equal l_inf distances after.
template <class T>
BasicConfiguration<T> rotate_l1_to_linf(const BasicConfiguration<T>& points) {
  BasicConfiguration<T> out;
  out.reserve(points.size());
  for (const auto& q : points) {
    if (q.size() != 2)
      throw Error(ErrorKind::DimensionMismatch, "rotation between l_1 and l_inf is planar; got dimension " +
                                                    std::to_string(q.size()));
    out.push_back({T(q[0] + q[1]), T(q[0] - q[1])});
  }
  return out;
}

/// Inverse of rotate_l1_to_linf: (X, Y) -> ((X + Y) / 2, (X - Y) / 2).
template <class T>
BasicConfiguration<T> rotate_linf_to_l1(const BasicConfiguration<T>& points) {
  BasicConfiguration<T> out;
  out.reserve(points.size());
  for (const auto& q : points) {
    if (q.size() != 2)
      throw Error(ErrorKind::DimensionMismatch, "rotation between l_1 and l_inf is planar; got dimension " +
                                                    std::to_string(q.size()));
    out.push_back({T((q[0] + q[1]) / 2), T((q[0] - q[1]) / 2)});
  }
  return out;
}

/// A graph with a length (plain l_p units, not raised to p) per edge,
/// aligned with graph.edges(). Lengths are >= 0; realize() rejects zeros
/// outside probe mode.
struct Linkage {
  Graph graph;
  std::vector<double> lengths;

  Linkage() = default;
  Linkage(Graph g, std::vector<double> l);

  double length(int u, int v) const;
  /// Copy with one more edge of the given length.
  Linkage with_edge(int u, int v, double length) const;
  Linkage scaled(double factor) const;
};

/// A placement of a graph's vertices in R^dim under the l_p norm.
struct Framework {
  Graph graph;
  Configuration points;
  int dim = 0;
  NormParam norm;

  Framework() = default;
  Framework(Graph g, Configuration pts, NormParam p);
};

Configuration to_double(const RationalConfiguration& points);
RationalConfiguration to_rational(const Configuration& points);

}  // namespace lpflat
