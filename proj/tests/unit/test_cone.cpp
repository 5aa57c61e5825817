#include <doctest.h>

#include <random>

#include "lpflat/cone.hpp"
#include "support/oracles.hpp"

using namespace lpflat;

namespace {

// Squared Euclidean distances of random points in R^dim.
DistanceVector random_squared(std::mt19937_64& rng, int n, int dim) {
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  Configuration pts(n, Point(dim));
  for (auto& q : pts)
    for (double& x : q) x = c(rng);
  return distance_vector(pts, NormParam::finite(2));
}

}  // namespace

TEST_SUITE("cone") {
  TEST_CASE("centred Gram matrix of a right triangle") {
    // Points (0,0), (1,0), (0,1).
    const DistanceVector sq(3, {1.0, 1.0, 2.0});
    const auto g = centered_gram(sq);
    REQUIRE(g.size() == 3);
    double trace = 0.0;
    for (int i = 0; i < 3; ++i) {
      trace += g[i][i];
      double row = 0.0;
      for (int j = 0; j < 3; ++j) {
        row += g[i][j];
        CHECK(g[i][j] == doctest::Approx(g[j][i]));
      }
      CHECK(row == doctest::Approx(0.0).epsilon(1e-12));
    }
    // Trace of the centred Gram matrix = sum of squared distances / n.
    CHECK(trace == doctest::Approx(4.0 / 3.0));
  }

  TEST_CASE("EDM membership: dimension and witness") {
    std::mt19937_64 rng(41);
    for (int dim : {1, 2, 3})
      for (int t = 0; t < 20; ++t) {
        const auto sq = random_squared(rng, 6, dim);
        const auto rep = edm_membership(sq);
        REQUIRE(rep.member == Membership::Member);
        REQUIRE(rep.embedding_dim.has_value());
        CHECK(*rep.embedding_dim == dim);
        REQUIRE(rep.witness.has_value());
        const auto again = distance_vector(*rep.witness, NormParam::finite(2));
        for (std::size_t k = 0; k < sq.size(); ++k) CHECK(again[k] == doctest::Approx(sq[k]).epsilon(1e-8));
      }
    const DistanceVector bad(3, {1.0, 1.0, 9.0});
    const auto rep = edm_membership(bad);
    CHECK(rep.member == Membership::NonMember);
    CHECK(!rep.reason.empty());
  }

  TEST_CASE("Cayley-Menger determinants") {
    // Unit equilateral triangle: CM = 2 * (2! * area)^2 * (-1)^3 ... sign
    // convention aside, the volume is positive, and collinear points give 0.
    const DistanceVector tri(3, {1.0, 1.0, 1.0});
    CHECK(std::abs(cayley_menger_determinant(tri, {0, 1, 2})) == doctest::Approx(3.0));
    const DistanceVector line(3, {1.0, 4.0, 1.0});
    CHECK(cayley_menger_determinant(line, {0, 1, 2}) == doctest::Approx(0.0));
    std::mt19937_64 rng(42);
    for (int t = 0; t < 20; ++t) {
      CHECK(!cayley_menger_violation(random_squared(rng, 6, 2), 2).has_value());
      CHECK(cayley_menger_violation(random_squared(rng, 6, 3), 2).has_value());
    }
  }

  TEST_CASE("cut cone: l_1 vectors are members with exact decompositions") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int t = 0; t < 60; ++t) {
      const int n = 2 + t % 5, dim = 1 + t % 3;
      RationalConfiguration pts(n, BasicPoint<Rational>(dim));
      for (auto& q : pts)
        for (auto& x : q) x = Rational(c(rng), 2);
      const auto dv = distance_vector(pts, NormParam::finite(1));
      const auto rep = cut_cone_membership(dv);
      REQUIRE(rep.member == Membership::Member);
      REQUIRE(rep.exact_witness.has_value());
      CHECK(distance_vector(*rep.exact_witness, NormParam::finite(1)) == dv);
      for (const auto& cut : rep.cuts) {
        CHECK((cut.mask & 1u) == 1u);
        CHECK(cut.weight > 0);
      }
    }
  }

  TEST_CASE("cut cone: triangle violations and the non-l_1 metric on K_{2,3}") {
    CHECK(cut_cone_membership(DistanceVector(3, {1.0, 1.0, 9.0})).member == Membership::NonMember);
    // Shortest-path metric of K_{2,3}: not l_1 embeddable (violates the
    // pentagonal inequality).
    const Graph k23 = presets::complete_bipartite(2, 3);
    std::vector<double> entries;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) entries.push_back(k23.has_edge(i, j) ? 1.0 : 2.0);
    CHECK(cut_cone_membership(DistanceVector(5, entries)).member == Membership::NonMember);
    CHECK_THROWS_AS(cut_cone_membership(DistanceVector(13, std::vector<double>(78, 1.0))), Error);
  }

  TEST_CASE("strata: planar versus spatial") {
    // Regular tetrahedron in squared units: in the 3-d stratum, not in the 2-d.
    const DistanceVector tet(4, std::vector<double>(6, 1.0));
    RealizeConfig cfg;
    cfg.restarts = 20;
    CHECK(stratum_membership(tet, 2, NormParam::finite(2), cfg).member == Membership::NonMember);
    CHECK(stratum_membership(tet, 3, NormParam::finite(2), cfg).member == Membership::Member);
    // Four points of the l_1 plane.
    const Configuration pts{{0, 0}, {2, 1}, {-1, 3}, {1, -2}};
    const auto dv = distance_vector(pts, NormParam::finite(1));
    const auto rep = stratum_membership(dv, 2, NormParam::finite(1), cfg);
    CHECK(rep.member == Membership::Member);
    CHECK_THROWS_AS(stratum_membership(dv, 3, NormParam::infinity(), cfg), Error);
    CHECK_THROWS_AS(cone_membership(dv, NormParam::infinity(), 3, cfg), Error);
    CHECK(cone_membership(dv, NormParam::finite(1), 3, cfg).member == Membership::Member);
  }

  TEST_CASE("convex combinations stay in the cone") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> c(-1.0, 1.0), u(0.0, 1.0);
    for (int p : {1, 2, 3})
      for (int t = 0; t < 30; ++t) {
        const int n = 3 + t % 4;
        Configuration a(n, Point(2)), b(n, Point(3));
        for (auto& q : a)
          for (double& x : q) x = c(rng);
        for (auto& q : b)
          for (double& x : q) x = c(rng);
        const NormParam norm = NormParam::finite(p);
        const auto r = make_realized(a, norm), s = make_realized(b, norm);
        const double lambda = u(rng);
        const auto mix = convex_combine(r, s, lambda, norm);
        CHECK(mix.points.front().size() == 5);
        const auto again = distance_vector(mix.points, norm);
        for (std::size_t k = 0; k < again.size(); ++k)
          CHECK(again[k] == doctest::Approx(lambda * r.dv[k] + (1 - lambda) * s.dv[k]).epsilon(1e-12));
      }
    const auto r = make_realized(Configuration{{0.0}, {1.0}}, NormParam::finite(2));
    CHECK_THROWS_AS(convex_combine(r, r, 1.5, NormParam::finite(2)), Error);
    CHECK_THROWS_AS(convex_combine(r, r, 0.5, NormParam::infinity()), Error);
    const auto three = make_realized(Configuration{{0.0}, {1.0}, {2.0}}, NormParam::finite(2));
    CHECK_THROWS_AS(convex_combine(r, three, 0.5, NormParam::finite(2)), Error);
  }

  TEST_CASE("decomposition into one-dimensional vectors") {
    const RationalConfiguration pts{{Rational(0), Rational(1)}, {Rational(2), Rational(-1)}, {Rational(1, 2), Rational(3)}};
    for (int p : {1, 2, 3}) {
      const NormParam norm = NormParam::finite(p);
      const auto parts = decompose_to_1d(pts, norm);
      CHECK(parts.size() == 2);
      const auto whole = distance_vector(pts, norm);
      for (std::size_t k = 0; k < whole.size(); ++k) {
        Rational sum(0);
        for (const auto& [w, dv] : parts) sum += w * dv[k];
        CHECK(sum == whole[k]);
      }
    }
    CHECK_THROWS_AS(decompose_to_1d(pts, NormParam::infinity()), Error);
  }
}
