#include <doctest.h>

#include <random>

#include "lpflat/rigidity.hpp"
#include "support/oracles.hpp"

using namespace lpflat;

namespace {

Configuration random_points(std::mt19937_64& rng, int n, int d) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  Configuration pts(n, Point(d));
  for (auto& q : pts)
    for (double& x : q) x = c(rng);
  return pts;
}

}  // namespace

TEST_SUITE("rigidity") {
  TEST_CASE("rows are gradients of ||r(u) - r(v)||^p / p") {
    std::mt19937_64 rng(51);
    for (int p : {2, 3, 4})
      for (int t = 0; t < 10; ++t) {
        const Graph g = oracle::random_connected_graph(rng, 5, 0.6);
        const int d = 1 + t % 3;
        Configuration pts = random_points(rng, 5, d);
        const auto m = rigidity_matrix(Framework(g, pts, NormParam::finite(p))).entries;
        REQUIRE(m.rows() == g.num_edges());
        REQUIRE(m.cols() == 5 * d);
        const double h = 1e-6;
        for (int k = 0; k < g.num_edges(); ++k) {
          const Edge& e = g.edges()[k];
          for (int v = 0; v < 5; ++v)
            for (int i = 0; i < d; ++i) {
              const double old = pts[v][i];
              pts[v][i] = old + h;
              const double up = lp_p_distance(pts[e.u], pts[e.v], NormParam::finite(p)) / p;
              pts[v][i] = old - h;
              const double down = lp_p_distance(pts[e.u], pts[e.v], NormParam::finite(p)) / p;
              pts[v][i] = old;
              CHECK(m(k, v * d + i) == doctest::Approx((up - down) / (2 * h)).epsilon(1e-5));
            }
          for (int i = 0; i < d; ++i) CHECK(m(k, e.u * d + i) == doctest::Approx(-m(k, e.v * d + i)));
        }
      }
  }

  TEST_CASE("polyhedral rows are facet normals") {
    const Graph g = presets::path(2);
    const auto l1 = rigidity_matrix(Framework(g, {{0.0, 0.0}, {-2.0, 0.5}}, NormParam::finite(1))).entries;
    CHECK(l1(0, 0) == 1.0);
    CHECK(l1(0, 1) == -1.0);
    CHECK(l1(0, 2) == -1.0);
    CHECK(l1(0, 3) == 1.0);
    const auto li = rigidity_matrix(Framework(g, {{0.0, 0.0}, {-2.0, 0.5}}, NormParam::infinity())).entries;
    CHECK(li(0, 0) == 1.0);
    CHECK(li(0, 1) == 0.0);
    CHECK(li(0, 2) == -1.0);
    CHECK(li(0, 3) == 0.0);
    CHECK_THROWS_AS(rigidity_matrix(Framework(g, {{0.0, 0.0}, {1.0, 0.0}}, NormParam::finite(1))), Error);
    CHECK_THROWS_AS(rigidity_matrix(Framework(g, {{0.0, 0.0}, {1.0, -1.0}}, NormParam::infinity())), Error);
    try {
      rigidity_matrix(Framework(g, {{0.0, 0.0}, {1.0, 0.0}}, NormParam::finite(1)));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotWellPositioned);
      CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
    }
  }

  TEST_CASE("exact matrix matches the double one on rational points") {
    std::mt19937_64 rng(52);
    std::uniform_int_distribution<int> c(-9, 9);
    for (NormParam p : {NormParam::finite(1), NormParam::finite(2), NormParam::finite(3), NormParam::infinity()})
      for (int t = 0; t < 10; ++t) {
        const Graph g = oracle::random_connected_graph(rng, 5, 0.6);
        RationalConfiguration pts(5, BasicPoint<Rational>(2));
        for (auto& q : pts)
          for (auto& x : q) x = Rational(2 * c(rng) + 1, 7 + 2 * (t % 3));
        const auto exact = rigidity_matrix_exact(g, pts, p);
        Eigen::MatrixXd dm;
        try {
          dm = rigidity_matrix(Framework(g, to_double(pts), p)).entries;
        } catch (const Error&) {
          continue;  // ties in the l_inf case
        }
        for (int k = 0; k < g.num_edges(); ++k)
          for (int j = 0; j < 10; ++j) CHECK(to_double(exact[k][j]) == doctest::Approx(dm(k, j)));
        CHECK(exact_rank(exact) == numerical_rank(dm));
      }
  }

  TEST_CASE("rank helpers") {
    Eigen::MatrixXd m(3, 3);
    m << 1, 2, 3, 2, 4, 6, 0, 1, 1;
    CHECK(numerical_rank(m) == 2);
    CHECK(numerical_rank(Eigen::MatrixXd::Zero(2, 2)) == 0);
    RationalMatrix q{{Rational(1), Rational(2), Rational(3)}, {Rational(2), Rational(4), Rational(6)},
                     {Rational(0), Rational(1), Rational(1)}};
    CHECK(exact_rank(q) == 2);
    CHECK(exact_rank({}) == 0);
  }

  TEST_CASE("trivial motions and rigid ranks") {
    CHECK(isometry_dimension(2, NormParam::finite(2)) == 3);
    CHECK(isometry_dimension(3, NormParam::finite(2)) == 6);
    CHECK(isometry_dimension(2, NormParam::finite(1)) == 2);
    CHECK(isometry_dimension(3, NormParam::finite(3)) == 3);
    CHECK(rigid_rank(4, 2, NormParam::finite(2)) == 5);
    CHECK(rigid_rank(5, 3, NormParam::finite(2)) == 9);
    CHECK(rigid_rank(2, 3, NormParam::finite(2)) == 1);
    CHECK(rigid_rank(4, 2, NormParam::finite(1)) == 6);
    CHECK(rigid_rank(2, 3, NormParam::finite(1)) == 1);
    CHECK(rigid_rank(1, 2, NormParam::finite(1)) == 0);
  }

  TEST_CASE("rank table and classification") {
    struct Row {
      Graph g;
      int d;
      NormParam p;
      int rank;
      RigidityClass cls;
    };
    const std::vector<Row> rows{
        {presets::complete(3), 2, NormParam::finite(2), 3, RigidityClass::Isostatic},
        {presets::complete(4), 2, NormParam::finite(2), 5, RigidityClass::RigidDependent},
        {presets::complete(4), 2, NormParam::finite(1), 6, RigidityClass::Isostatic},
        {presets::banana(), 2, NormParam::finite(1), 8, RigidityClass::RigidDependent},
        {presets::complete(5), 3, NormParam::finite(2), 9, RigidityClass::RigidDependent},
        {presets::path(4), 2, NormParam::finite(3), 3, RigidityClass::Independent},
        {presets::cycle(4), 2, NormParam::infinity(), 4, RigidityClass::Independent},
    };
    for (const auto& r : rows) {
      const auto rep = generic_rank(r.g, r.d, r.p);
      INFO(to_string(r.cls) << " d=" << r.d << " p=" << r.p.to_string());
      CHECK(rep.rank == r.rank);
      CHECK(rep.classification == r.cls);
      CHECK(projection_dimension(r.g, r.d, r.p) == r.rank);
      CHECK(rep.stability > 0.0);
      CHECK(rep.stability <= 1.0);
    }
  }

  TEST_CASE("generic rank matches the finite-difference oracle") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 24; ++t) {
      const Graph g = oracle::random_graph(rng, 3 + t % 5, 0.6);
      const int d = 1 + t % 3;
      const NormParam p = t % 2 ? NormParam::finite(2) : NormParam::finite(3);
      INFO("t=" << t);
      CHECK(generic_rank(g, d, p).rank == oracle::fd_generic_rank(g, d, p, 6, 100 + t));
    }
    for (int t = 0; t < 8; ++t) {
      const Graph g = oracle::random_graph(rng, 4 + t % 2, 0.7);
      CHECK(generic_rank(g, 2, NormParam::finite(1)).rank == oracle::fd_generic_rank(g, 2, NormParam::finite(1), 256, t));
    }
  }

  TEST_CASE("rank is monotone under edge addition and bounded") {
    std::mt19937_64 rng(54);
    for (int t = 0; t < 20; ++t) {
      const int n = 4 + t % 3;
      const Graph g = oracle::random_graph(rng, n, 0.4);
      const NormParam p = NormParam::finite(1 + t % 3);
      const int d = 1 + t % 2;
      const int base = generic_rank(g, d, p).rank;
      CHECK(base <= std::min(g.num_edges(), rigid_rank(n, d, p)));
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (!g.has_edge(u, v)) {
            const int more = generic_rank(g.with_edge(u, v), d, p).rank;
            CHECK(more >= base);
            CHECK(more <= base + 1);
            u = n;
            break;
          }
    }
  }

  TEST_CASE("independence check") {
    CHECK(independence_check(presets::complete(4), 2, NormParam::finite(1)).independent);
    CHECK(!independence_check(presets::complete(4), 2, NormParam::finite(2)).independent);
    CHECK(!independence_check(presets::banana(), 2, NormParam::finite(1)).independent);
  }

  TEST_CASE("serial and parallel sampling agree") {
    RankConfig serial;
    serial.execution = Execution::Serial;
    RankConfig parallel = serial;
    parallel.execution = Execution::Parallel;
    for (NormParam p : {NormParam::finite(1), NormParam::finite(2), NormParam::finite(3)}) {
      const auto a = generic_rank(presets::banana(), 2, p, serial);
      const auto b = generic_rank(presets::banana(), 2, p, parallel);
      CHECK(a.rank == b.rank);
      CHECK(a.stability == b.stability);
      CHECK(projection_dimension(presets::banana(), 2, p, serial) ==
            projection_dimension(presets::banana(), 2, p, parallel));
    }
  }

  TEST_CASE("bad arguments") {
    CHECK_THROWS_AS(generic_rank(presets::complete(3), 0, NormParam::finite(2)), Error);
    RankConfig cfg;
    cfg.samples = 0;
    CHECK_THROWS_AS(generic_rank(presets::complete(3), 2, NormParam::finite(2), cfg), Error);
  }
}
