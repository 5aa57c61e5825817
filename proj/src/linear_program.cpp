#include "lpflat/linear_program.hpp"

#include "lpflat/error.hpp"

namespace lpflat {

int RationalLp::add_variable(bool nonnegative) {
  nonnegative_.push_back(nonnegative);
  return static_cast<int>(nonnegative_.size()) - 1;
}

void RationalLp::add_constraint(std::vector<LinearTerm> terms, Relation rel, Rational rhs) {
  for (const auto& t : terms)
    if (t.var < 0 || t.var >= num_variables())
      throw Error(ErrorKind::ConfigError, "LP term refers to unknown variable " + std::to_string(t.var));
  rows_.push_back(Row{std::move(terms), rel, std::move(rhs)});
}

std::optional<std::vector<Rational>> RationalLp::find_feasible_point() const {
  pivots_ = 0;
  const int nvars = num_variables();
  const int m = static_cast<int>(rows_.size());

  // Structural columns: x = x_plus (- x_minus for free variables).
  std::vector<int> plus_col(nvars), minus_col(nvars, -1);
  int ncols = 0;
  for (int v = 0; v < nvars; ++v) {
    plus_col[v] = ncols++;
    if (!nonnegative_[v]) minus_col[v] = ncols++;
  }
  const int structural = ncols;

  // Orient rows so rhs >= 0, then attach slack / artificial columns.
  std::vector<Relation> rel(m);
  std::vector<int> sign(m, 1);
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    rel[i] = rows_[i].rel;
    if (rows_[i].rhs < 0) {
      sign[i] = -1;
      if (rel[i] == Relation::LessEqual)
        rel[i] = Relation::GreaterEqual;
      else if (rel[i] == Relation::GreaterEqual)
        rel[i] = Relation::LessEqual;
    }
    if (rel[i] != Relation::Equal) slack_col[i] = ncols++;
  }
  const int first_art = ncols;
  for (int i = 0; i < m; ++i)
    if (rel[i] != Relation::LessEqual) art_col[i] = ncols++;

  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(ncols + 1));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    auto& row = tab[i];
    for (const auto& t : rows_[i].terms) {
      const Rational c = sign[i] > 0 ? t.coef : Rational(-t.coef);
      row[plus_col[t.var]] += c;
      if (minus_col[t.var] >= 0) row[minus_col[t.var]] -= c;
    }
    row[ncols] = sign[i] > 0 ? rows_[i].rhs : Rational(-rows_[i].rhs);
    if (slack_col[i] >= 0) row[slack_col[i]] = rel[i] == Relation::LessEqual ? 1 : -1;
    if (art_col[i] >= 0) {
      row[art_col[i]] = 1;
      basis[i] = art_col[i];
    } else {
      basis[i] = slack_col[i];
    }
  }

  // Phase one: minimise the sum of artificials. reduced[j] = c_j - c_B B^-1 A_j.
  std::vector<Rational> reduced(ncols + 1);
  for (int j = first_art; j < ncols; ++j) reduced[j] = 1;
  for (int i = 0; i < m; ++i) {
    if (basis[i] < first_art) continue;
    for (int j = 0; j <= ncols; ++j)
      if (!tab[i][j].is_zero()) reduced[j] -= tab[i][j];
  }
  // reduced[ncols] holds minus the objective value.

  for (;;) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (reduced[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    Rational best_ratio;
    for (int i = 0; i < m; ++i) {
      if (!(tab[i][enter] > 0)) continue;
      Rational ratio = tab[i][ncols] / tab[i][enter];
      if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = std::move(ratio);
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen for phase one

    ++pivots_;
    auto& prow = tab[leave];
    const Rational piv = prow[enter];
    std::vector<int> nz;
    for (int j = 0; j <= ncols; ++j) {
      if (prow[j].is_zero()) continue;
      prow[j] /= piv;
      nz.push_back(j);
    }
    for (int i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter].is_zero()) continue;
      const Rational f = tab[i][enter];
      for (int j : nz) tab[i][j] -= f * prow[j];
    }
    if (!reduced[enter].is_zero()) {
      const Rational f = reduced[enter];
      for (int j : nz) reduced[j] -= f * prow[j];
    }
    basis[leave] = enter;
  }

  if (!reduced[ncols].is_zero()) return std::nullopt;  // positive infeasibility

  std::vector<Rational> col_value(structural);
  for (int i = 0; i < m; ++i)
    if (basis[i] < structural) col_value[basis[i]] = tab[i][ncols];
  std::vector<Rational> x(nvars);
  for (int v = 0; v < nvars; ++v) {
    x[v] = col_value[plus_col[v]];
    if (minus_col[v] >= 0) x[v] -= col_value[minus_col[v]];
  }
  return x;
}

}  // namespace lpflat
