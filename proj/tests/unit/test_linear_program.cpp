#include <doctest.h>

#include <random>

#include "lpflat/linear_program.hpp"

using namespace lpflat;

namespace {

// Bellman-Ford negative cycle test, the textbook decision procedure.
bool bellman_ford_feasible(int n, const std::vector<std::tuple<int, int, long>>& cons) {
  std::vector<long> dist(n, 0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const auto& [u, v, c] : cons)
      if (dist[u] + c < dist[v]) {
        dist[v] = dist[u] + c;
        changed = true;
      }
    if (!changed) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("linear_program") {
  TEST_CASE("simplex examples") {
    RationalLp lp;
    const int x = lp.add_variable();
    const int y = lp.add_variable();
    lp.add_constraint({{x, Rational(1)}, {y, Rational(1)}}, Relation::Equal, Rational(1));
    lp.add_constraint({{x, Rational(1)}, {y, Rational(-1)}}, Relation::GreaterEqual, Rational(1, 3));
    const auto sol = lp.find_feasible_point();
    REQUIRE(sol.has_value());
    CHECK((*sol)[x] + (*sol)[y] == 1);
    CHECK((*sol)[x] - (*sol)[y] >= Rational(1, 3));
    CHECK((*sol)[y] >= 0);

    RationalLp bad;
    const int z = bad.add_variable();
    bad.add_constraint({{z, Rational(1)}}, Relation::LessEqual, Rational(-1));
    CHECK(!bad.find_feasible_point().has_value());

    RationalLp free_var;
    const int w = free_var.add_variable(false);
    free_var.add_constraint({{w, Rational(2)}}, Relation::Equal, Rational(-3));
    const auto ws = free_var.find_feasible_point();
    REQUIRE(ws.has_value());
    CHECK((*ws)[w] == Rational(-3, 2));
  }

  TEST_CASE("simplex solutions satisfy every constraint on random systems") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> coef(-4, 4), pick(0, 2);
    int feasible = 0;
    for (int t = 0; t < 150; ++t) {
      RationalLp lp;
      const int nv = 2 + t % 4;
      for (int v = 0; v < nv; ++v) lp.add_variable(v % 2 == 0);
      struct Row {
        std::vector<LinearTerm> terms;
        Relation rel;
        Rational rhs;
      };
      std::vector<Row> rows;
      for (int r = 0; r < 2 + t % 5; ++r) {
        Row row;
        for (int v = 0; v < nv; ++v) row.terms.push_back({v, Rational(coef(rng))});
        row.rel = static_cast<Relation>(pick(rng));
        row.rhs = Rational(coef(rng));
        lp.add_constraint(row.terms, row.rel, row.rhs);
        rows.push_back(row);
      }
      const auto sol = lp.find_feasible_point();
      if (!sol) continue;
      ++feasible;
      for (int v = 0; v < nv; v += 2) CHECK((*sol)[v] >= 0);
      for (const Row& row : rows) {
        Rational lhs(0);
        for (const auto& term : row.terms) lhs += term.coef * (*sol)[term.var];
        if (row.rel == Relation::LessEqual) CHECK(lhs <= row.rhs);
        if (row.rel == Relation::Equal) CHECK(lhs == row.rhs);
        if (row.rel == Relation::GreaterEqual) CHECK(lhs >= row.rhs);
      }
    }
    CHECK(feasible > 20);
  }

  TEST_CASE("difference system agrees with Bellman-Ford and the simplex") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> c(-5, 8);
    int infeasible = 0;
    for (int t = 0; t < 300; ++t) {
      const int n = 2 + t % 6;
      std::uniform_int_distribution<int> vert(0, n - 1);
      std::vector<std::tuple<int, int, long>> cons;
      DifferenceSystem<long> ds(n);
      RationalLp lp;
      for (int v = 0; v < n; ++v) lp.add_variable(false);
      bool ds_ok = true;
      for (int k = 0; k < n + t % 7; ++k) {
        const int u = vert(rng), v = vert(rng);
        if (u == v) continue;
        const long w = c(rng);
        cons.emplace_back(u, v, w);
        lp.add_constraint({{v, Rational(1)}, {u, Rational(-1)}}, Relation::LessEqual, Rational(w));
        if (ds_ok && !ds.add(u, v, w)) ds_ok = false;
      }
      const bool bf = bellman_ford_feasible(n, cons);
      CHECK(ds_ok == bf);
      CHECK(lp.find_feasible_point().has_value() == bf);
      if (!bf) ++infeasible;
      if (ds_ok) {
        const auto x = ds.solution();
        for (const auto& [u, v, w] : cons) CHECK(x[v] - x[u] <= w);
      }
    }
    CHECK(infeasible > 10);
  }

  TEST_CASE("rejected constraint leaves the system unchanged") {
    DifferenceSystem<Rational> ds(3);
    CHECK(ds.add_range(0, 1, Rational(1), Rational(2)));
    CHECK(!ds.add(1, 0, Rational(-3)));
    CHECK(ds.add_range(1, 2, Rational(1, 2), Rational(1, 2)));
    const auto x = ds.solution();
    CHECK(x[1] - x[0] >= 1);
    CHECK(x[1] - x[0] <= 2);
    CHECK(x[2] - x[1] == Rational(1, 2));
  }
}
