#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lpflat/rational.hpp"

namespace lpflat {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearTerm {
  int var = 0;
  Rational coef;
};

/// Exact feasibility LP over the rationals: two-phase-free primal simplex on
/// the phase-one problem, Bland's anti-cycling rule throughout.
class RationalLp {
 public:
  /// Returns the new variable's index.
  int add_variable(bool nonnegative = true);
  void add_constraint(std::vector<LinearTerm> terms, Relation rel, Rational rhs);

  int num_variables() const noexcept { return static_cast<int>(nonnegative_.size()); }
  std::size_t num_constraints() const noexcept { return rows_.size(); }

  /// A point satisfying every constraint, or nullopt when none exists.
  std::optional<std::vector<Rational>> find_feasible_point() const;

  /// Pivots performed by the last find_feasible_point call.
  std::size_t last_pivot_count() const noexcept { return pivots_; }

 private:
  struct Row {
    std::vector<LinearTerm> terms;
    Relation rel;
    Rational rhs;
  };
  std::vector<bool> nonnegative_;
  std::vector<Row> rows_;
  mutable std::size_t pivots_ = 0;
};

/// System of difference constraints x[v] - x[u] <= c, decided by maintaining
/// all-pairs shortest paths incrementally. Each add() is O(n^2) and reports
/// infeasibility (a negative cycle) as soon as it appears. Scalar must be an
/// exact ordered ring (integers or rationals) for the answer to be exact.
template <class Scalar>
class DifferenceSystem {
 public:
  explicit DifferenceSystem(int n) : n_(n), dist_(static_cast<std::size_t>(n) * n), finite_(static_cast<std::size_t>(n) * n, 0) {
    for (int i = 0; i < n; ++i) {
      at(i, i) = Scalar(0);
      finite_[idx(i, i)] = 1;
    }
  }

  int size() const noexcept { return n_; }

  /// Adds x[v] - x[u] <= c. Returns false (leaving the system unchanged) when
  /// the constraint closes a negative cycle.
  bool add(int u, int v, const Scalar& c) {
    if (finite_[idx(v, u)] && Scalar(at(v, u) + c) < Scalar(0)) return false;
    if (finite_[idx(u, v)] && !(c < at(u, v))) return true;
    // New paths i -> u -> v -> j.
    std::vector<int> into_u, from_v;
    for (int i = 0; i < n_; ++i) {
      if (finite_[idx(i, u)]) into_u.push_back(i);
      if (finite_[idx(v, i)]) from_v.push_back(i);
    }
    for (int i : into_u) {
      const Scalar head = at(i, u) + c;
      for (int j : from_v) {
        const Scalar cand = head + at(v, j);
        std::size_t k = idx(i, j);
        if (!finite_[k] || cand < dist_[k]) {
          dist_[k] = cand;
          finite_[k] = 1;
        }
      }
    }
    return true;
  }

  /// Adds lo <= x[v] - x[u] <= hi.
  bool add_range(int u, int v, const Scalar& lo, const Scalar& hi) {
    return add(u, v, hi) && add(v, u, Scalar(-lo));
  }

  /// A feasible assignment: x[v] = min(0, min_u dist(u, v)).
  std::vector<Scalar> solution() const {
    std::vector<Scalar> x(n_, Scalar(0));
    for (int v = 0; v < n_; ++v)
      for (int u = 0; u < n_; ++u)
        if (finite_[idx(u, v)] && at(u, v) < x[v]) x[v] = at(u, v);
    return x;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  Scalar& at(int i, int j) { return dist_[idx(i, j)]; }
  const Scalar& at(int i, int j) const { return dist_[idx(i, j)]; }

  int n_;
  std::vector<Scalar> dist_;
  std::vector<char> finite_;
};

}  // namespace lpflat
