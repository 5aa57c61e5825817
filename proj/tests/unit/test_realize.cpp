#include <doctest.h>

#include <random>

#include "lpflat/realize.hpp"
#include "support/oracles.hpp"

using namespace lpflat;

namespace {

// Linkage measured off random integer points, so it is realizable by
// construction. Coincident endpoints are nudged apart.
Linkage measured(std::mt19937_64& rng, const Graph& g, int d, NormParam p, int range = 5) {
  std::uniform_int_distribution<int> c(-range, range);
  Configuration pts(g.n(), Point(d));
  for (auto& q : pts)
    for (double& x : q) x = c(rng);
  std::vector<double> lengths;
  for (const Edge& e : g.edges()) {
    double len = lp_distance(pts[e.u], pts[e.v], p);
    if (len == 0.0) len = 1.0;
    lengths.push_back(len);
  }
  return Linkage(g, lengths);
}

Linkage random_lengths(std::mt19937_64& rng, const Graph& g) {
  std::uniform_int_distribution<int> c(1, 6);
  std::vector<double> lengths;
  for (int k = 0; k < g.num_edges(); ++k) lengths.push_back(c(rng) / 2.0);
  return Linkage(g, lengths);
}

}  // namespace

TEST_SUITE("realize") {
  TEST_CASE("config validation") {
    RealizeConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.restarts = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.smoothing_eps_schedule = {1e-3, 1e-2};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = {};
    cfg.residual_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    const Linkage l(presets::path(2), {1.0});
    CHECK_THROWS_AS(realize(l, 0, NormParam::finite(2)), Error);
    const Linkage zero(presets::path(2), {0.0});
    CHECK_THROWS_AS(realize(zero, 2, NormParam::finite(2)), Error);
    RealizeConfig probe;
    probe.probe_mode = true;
    CHECK(realize(zero, 2, NormParam::finite(2), probe).status == RealizeStatus::Feasible);
    CHECK_THROWS_AS(realize_exact_planar_polyhedral(l, NormParam::finite(2)), Error);
  }

  TEST_CASE("exact planar mode agrees with the simplex case enumeration") {
    std::mt19937_64 rng(31);
    int feasible = 0, infeasible = 0;
    for (int t = 0; t < 120; ++t) {
      const int n = 3 + t % 3;
      const Graph g = oracle::random_connected_graph(rng, n, 0.7);
      if (g.num_edges() > 6) {
        --t;
        continue;
      }
      const NormParam p = t % 2 ? NormParam::finite(1) : NormParam::infinity();
      const Linkage l = t % 3 == 0 ? measured(rng, g, 2, p) : random_lengths(rng, g);
      const auto r = realize_exact_planar_polyhedral(l, p);
      // The oracle works in l_inf coordinates; the l_1 and l_inf planar
      // problems are the same up to the 45-degree rotation.
      const bool truth = oracle::planar_polyhedral_by_simplex(l);
      CHECK(r.exact_mode);
      CHECK((r.status == RealizeStatus::Feasible) == truth);
      if (r.status == RealizeStatus::Feasible) {
        ++feasible;
        REQUIRE(r.exact_points.has_value());
        CHECK(max_power_error_exact(*r.exact_points, l, p) == 0);
      } else {
        ++infeasible;
        CHECK(r.status == RealizeStatus::InfeasibleExact);
      }
    }
    CHECK(feasible > 10);
    CHECK(infeasible > 10);
  }

  TEST_CASE("measured linkages are always feasible in exact mode") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 60; ++t) {
      const Graph g = oracle::random_connected_graph(rng, 4 + t % 3, 0.6);
      if (g.num_edges() > 12) continue;
      const NormParam p = t % 2 ? NormParam::finite(1) : NormParam::infinity();
      const Linkage l = measured(rng, g, 2, p);
      const auto r = realize(l, 2, p);
      REQUIRE(r.status == RealizeStatus::Feasible);
      CHECK(max_power_error_exact(*r.exact_points, l, p) == 0);
    }
  }

  TEST_CASE("numeric and exact paths never contradict each other") {
    std::mt19937_64 rng(33);
    RealizeConfig numeric;
    numeric.allow_exact = false;
    numeric.restarts = 40;
    int agreed_feasible = 0;
    for (int t = 0; t < 30; ++t) {
      const Graph g = oracle::random_connected_graph(rng, 4, 0.7);
      const NormParam p = t % 2 ? NormParam::finite(1) : NormParam::infinity();
      const Linkage l = t % 2 ? measured(rng, g, 2, p) : random_lengths(rng, g);
      const auto exact = realize(l, 2, p);
      const auto approx = realize(l, 2, p, numeric);
      CHECK(!approx.exact_mode);
      if (approx.status == RealizeStatus::Feasible) {
        CHECK(exact.status == RealizeStatus::Feasible);
        CHECK(oracle::max_edge_error(approx.framework->points, l, p) < 1e-6 * (1.0 + *std::max_element(l.lengths.begin(), l.lengths.end())));
        if (exact.status == RealizeStatus::Feasible) ++agreed_feasible;
      }
      CHECK(approx.status != RealizeStatus::InfeasibleExact);
    }
    CHECK(agreed_feasible > 5);
  }

  TEST_CASE("numeric mode realizes measured linkages for several norms and dimensions") {
    std::mt19937_64 rng(34);
    RealizeConfig cfg;
    cfg.restarts = 60;
    for (NormParam p : {NormParam::finite(2), NormParam::finite(3), NormParam::finite(1), NormParam::infinity()})
      for (int d : {1, 2, 3}) {
        const Graph g = oracle::random_connected_graph(rng, 5, 0.5);
        const Linkage l = measured(rng, g, d, p);
        RealizeConfig c = cfg;
        c.allow_exact = false;
        const auto r = realize(l, d, p, c);
        INFO("p=" << p.to_string() << " d=" << d);
        REQUIRE(r.status == RealizeStatus::Feasible);
        CHECK(r.framework->dim == d);
        CHECK(oracle::max_edge_error(r.framework->points, l, p) <= 1e-8 * 10.0);
        CHECK(r.residual <= cfg.residual_tol);
      }
  }

  TEST_CASE("equilateral K4 has no planar Euclidean realization but has one in space") {
    const Linkage k4(presets::complete(4), std::vector<double>(6, 1.0));
    RealizeConfig cfg;
    cfg.restarts = 20;
    CHECK(realize(k4, 2, NormParam::finite(2), cfg).status == RealizeStatus::UnknownNumeric);
    CHECK(realize(k4, 3, NormParam::finite(2), cfg).status == RealizeStatus::Feasible);
  }

  TEST_CASE("2-sum composite: infeasible in the plane, feasible in space") {
    const Graph composite = two_sum(presets::complete(4), {0, 1}, presets::complete(4), {0, 1});
    std::vector<double> lengths;
    for (const Edge& e : composite.edges()) lengths.push_back(e.u < 4 && e.v < 4 ? 3.0 : 2.0);
    const Linkage l(composite, lengths);
    const auto planar = realize(l, 2, NormParam::finite(1));
    CHECK(planar.status == RealizeStatus::InfeasibleExact);
    CHECK(planar.cases_explored > 0);
    // Each half alone is planar.
    CHECK(realize(Linkage(presets::complete(4), std::vector<double>(6, 3.0)), 2, NormParam::finite(1)).status ==
          RealizeStatus::Feasible);
    CHECK(realize(Linkage(presets::complete(4), {3, 2, 2, 2, 2, 2}), 2, NormParam::finite(1)).status ==
          RealizeStatus::Feasible);
    const auto space = realize(l, 3, NormParam::finite(1));
    REQUIRE(space.status == RealizeStatus::Feasible);
    CHECK(oracle::max_edge_error(space.framework->points, l, NormParam::finite(1)) < 1e-8);
  }

  TEST_CASE("printed three-dimensional realization is exact") {
    const Linkage g2(presets::complete(4), {3, 2, 2, 2, 2, 2});
    const RationalConfiguration pts{{Rational(0), Rational(0), Rational(0)},
                                    {Rational(3, 2), Rational(3, 2), Rational(0)},
                                    {Rational(1, 2), Rational(1), Rational(1, 2)},
                                    {Rational(1), Rational(1, 2), Rational(-1, 2)}};
    CHECK(max_power_error_exact(pts, g2, NormParam::finite(1)) == 0);
    CHECK(max_power_error_exact(pts, g2, NormParam::finite(2)) != 0);
  }

  TEST_CASE("scale covariance") {
    std::mt19937_64 rng(35);
    for (int t = 0; t < 40; ++t) {
      const Graph g = oracle::random_connected_graph(rng, 4, 0.7);
      const NormParam p = t % 2 ? NormParam::finite(1) : NormParam::infinity();
      const Linkage l = random_lengths(rng, g);
      const auto a = realize(l, 2, p);
      const auto b = realize(l.scaled(4.0), 2, p);
      CHECK(a.status == b.status);
      if (b.status == RealizeStatus::Feasible)
        CHECK(max_power_error_exact(*b.exact_points, l.scaled(4.0), p) == 0);
    }
    RealizeConfig cfg;
    cfg.restarts = 30;
    const Linkage tri(presets::complete(3), {3.0, 4.0, 5.0});
    for (double s : {1e-3, 1.0, 1e3}) {
      const auto r = realize(tri.scaled(s), 2, NormParam::finite(2), cfg);
      REQUIRE(r.status == RealizeStatus::Feasible);
      CHECK(oracle::max_edge_error(r.framework->points, tri.scaled(s), NormParam::finite(2)) < 1e-8 * s);
    }
  }

  TEST_CASE("serial and parallel paths return identical results") {
    std::mt19937_64 rng(36);
    for (int t = 0; t < 16; ++t) {
      const Graph g = oracle::random_connected_graph(rng, 5, 0.6);
      const NormParam p = t % 4 == 0 ? NormParam::finite(2) : (t % 4 == 1 ? NormParam::finite(3) : NormParam::finite(1));
      const int d = t % 4 < 2 ? 2 + t % 2 : 2;
      const Linkage l = t % 3 ? measured(rng, g, d, p) : random_lengths(rng, g);
      RealizeConfig serial;
      serial.execution = Execution::Serial;
      serial.restarts = 12;
      RealizeConfig parallel = serial;
      parallel.execution = Execution::Parallel;
      const auto a = realize(l, d, p, serial);
      const auto b = realize(l, d, p, parallel);
      CHECK(a.status == b.status);
      CHECK(a.restarts_used == b.restarts_used);
      CHECK(a.cases_explored == b.cases_explored);
      CHECK(a.framework.has_value() == b.framework.has_value());
      if (a.framework && b.framework) CHECK(a.framework->points == b.framework->points);
    }
  }

  TEST_CASE("verification helpers") {
    const Linkage l(presets::path(3), {1.0, 2.0});
    const Framework f(presets::path(3), {{0.0, 0.0}, {1.0, 0.0}, {1.0, 2.5}}, NormParam::finite(2));
    const auto rep = verify_framework(f, l);
    CHECK(rep.edges == 2);
    CHECK(rep.max_error == doctest::Approx(0.5));
    CHECK(rep.mean_error == doctest::Approx(0.25));
    CHECK_THROWS_AS(verify_framework(Framework(presets::complete(3), f.points, f.norm), l), Error);
    CHECK(relative_residual(f.points, l, NormParam::finite(2)) > 0.0);
  }
}
