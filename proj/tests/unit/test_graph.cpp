#include <doctest.h>

#include "lpflat/graph.hpp"
#include "lpflat/minor.hpp"
#include "support/oracles.hpp"

using namespace lpflat;

TEST_SUITE("graph") {
  TEST_CASE("construction rejects loops, duplicates and out-of-range endpoints") {
    CHECK_THROWS_AS(Graph(3, {Edge(0, 0)}), Error);
    CHECK_THROWS_AS(Graph(3, {Edge(0, 1), Edge(1, 0)}), Error);
    CHECK_THROWS_AS(Graph(3, {Edge(0, 3)}), Error);
    try {
      Graph(2, {Edge(1, 1)});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidGraph);
    }
  }

  TEST_CASE("contract_edge examples") {
    const Graph k3 = presets::complete(3);
    for (const Edge& e : k3.edges()) CHECK(contract_edge(k3, e) == presets::complete(2));
    const Graph k4 = presets::complete(4);
    for (const Edge& e : k4.edges()) CHECK(oracle::isomorphic_brute(contract_edge(k4, e), presets::complete(3)));
    // Banana: vertex 3 misses 4; contracting (3, v) for v adjacent to both
    // 3 and 4 yields K4.
    const Graph banana = presets::banana();
    for (int v : {0, 1, 2}) CHECK(oracle::isomorphic_brute(contract_edge(banana, Edge(3, v)), presets::complete(4)));
    CHECK_THROWS_AS(contract_edge(banana, Edge(3, 4)), Error);
    try {
      contract_edge(banana, Edge(3, 4));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MissingEdge);
    }
  }

  TEST_CASE("contraction drops exactly one vertex and never adds edges") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
      const Graph g = oracle::random_graph(rng, 2 + t % 6, 0.5);
      for (const Edge& e : g.edges()) {
        const Graph c = contract_edge(g, e);
        CHECK(c.n() == g.n() - 1);
        CHECK(c.num_edges() <= g.num_edges() - 1);
      }
    }
  }

  TEST_CASE("delete_edge examples") {
    CHECK(delete_edge(presets::complete(5), Edge(3, 4)) == presets::banana());
    const Graph k2 = delete_edge(presets::complete(2), Edge(0, 1));
    CHECK(k2.n() == 2);
    CHECK(k2.num_edges() == 0);
    const Graph k4e = delete_edge(presets::complete(4), Edge(0, 1));
    CHECK(k4e.num_edges() == 5);
    CHECK(oracle::isomorphic_brute(k4e, presets::cycle(4).with_edge(0, 2)));
    CHECK_THROWS_AS(delete_edge(presets::path(3), Edge(0, 2)), Error);
  }

  TEST_CASE("two_sum examples and vertex convention") {
    const Graph k3k3 = two_sum(presets::complete(3), {0, 1}, presets::complete(3), {0, 1});
    CHECK(k3k3.n() == 4);
    CHECK(oracle::isomorphic_brute(k3k3, delete_edge(presets::complete(4), Edge(2, 3))));
    const Graph k4k4 = two_sum(presets::complete(4), {0, 1}, presets::complete(4), {2, 3});
    CHECK(k4k4.n() == 6);
    CHECK(k4k4.num_edges() == 11);
    const Graph k3k4 = two_sum(presets::complete(3), {1, 2}, presets::complete(4), {0, 3});
    CHECK(k3k4.n() == 5);
    CHECK(k3k4.num_edges() == 8);
    // First endpoint to first endpoint; both orientations isomorphic.
    const Graph p = two_sum(presets::path(3), {0, 1}, presets::complete(3), {0, 1});
    const Graph q = two_sum(presets::path(3), {0, 1}, presets::complete(3), {1, 0});
    CHECK(p.has_edge(0, 3));
    CHECK(p.has_edge(1, 3));
    CHECK(oracle::isomorphic_brute(p, q));
    CHECK_THROWS_AS(two_sum(presets::path(3), {0, 2}, presets::complete(3), {0, 1}), Error);
  }

  TEST_CASE("canonical form agrees with brute-force isomorphism") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 300; ++t) {
      const int n = 1 + t % 6;
      const Graph a = oracle::random_graph(rng, n, 0.5);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Edge> moved;
      for (const Edge& e : a.edges()) moved.emplace_back(perm[e.u], perm[e.v]);
      const Graph b(n, moved);
      CHECK(canonical_form(a) == canonical_form(b));
      const Graph c = oracle::random_graph(rng, n, 0.5);
      CHECK((canonical_form(a) == canonical_form(c)) == oracle::isomorphic_brute(a, c));
    }
  }

  TEST_CASE("graph counts up to isomorphism match the known sequence") {
    const std::vector<std::size_t> expected{1, 1, 2, 4, 11, 34, 156};
    for (int n = 0; n <= 6; ++n) CHECK(oracle::all_graphs(n).size() == expected[n]);
  }

  TEST_CASE("presets") {
    CHECK(presets::banana().num_edges() == 9);
    CHECK(!presets::banana().has_edge(3, 4));
    CHECK(presets::k5_minus_two_at_vertex().num_edges() == 8);
    CHECK(presets::k5_minus_two_at_vertex().with_edge(2, 4) == presets::banana());
    CHECK(presets::wheel(4).num_edges() == 8);
    CHECK(presets::octahedron().num_edges() == 12);
    CHECK(presets::complete_bipartite(3, 3).num_edges() == 9);
    CHECK(presets::by_name("k_{2,2,2}").has_value());
    CHECK(presets::by_name("W_4") == presets::wheel(4));
    CHECK(!presets::by_name("doublet").has_value());
  }
}

TEST_SUITE("minor") {
  TEST_CASE("has_minor examples") {
    const auto w = has_minor(presets::banana(), presets::complete(4));
    REQUIRE(w.has_value());
    CHECK(validate_witness(presets::banana(), presets::complete(4), *w));
    const auto id = has_minor(presets::complete(4), presets::complete(4));
    REQUIRE(id.has_value());
    for (const auto& b : id->branch_sets) CHECK(b.size() == 1);
    // 2-trees grown by stacking triangles on edges.
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
      Graph g = presets::complete(3);
      for (int k = 3; k < 8; ++k) {
        const Edge e = g.edges()[std::uniform_int_distribution<int>(0, g.num_edges() - 1)(rng)];
        std::vector<Edge> edges = g.edges();
        edges.emplace_back(e.u, k);
        edges.emplace_back(e.v, k);
        g = Graph(k + 1, edges);
      }
      CHECK(!has_minor(g, presets::complete(4)).has_value());
      CHECK(is_partial_two_tree(g));
    }
  }

  TEST_CASE("has_minor matches the labelling oracle on random graphs") {
    std::mt19937_64 rng(21);
    const std::vector<Graph> targets{presets::complete(3), presets::complete(4), presets::cycle(4),
                                     presets::complete_bipartite(2, 3), presets::path(4)};
    for (int t = 0; t < 120; ++t) {
      const Graph g = oracle::random_graph(rng, 4 + t % 3, 0.6);
      for (const Graph& h : targets) {
        const auto w = has_minor(g, h);
        CHECK(w.has_value() == oracle::is_minor_brute(g, h));
        if (w) CHECK(validate_witness(g, h, *w));
      }
    }
  }

  TEST_CASE("minor relation is transitive on graphs with at most 6 vertices") {
    std::mt19937_64 rng(8);
    const auto five = oracle::all_graphs(5);
    for (int t = 0; t < 60; ++t) {
      const Graph g = oracle::random_graph(rng, 6, 0.7);
      const Graph& h = five[std::uniform_int_distribution<std::size_t>(0, five.size() - 1)(rng)];
      const Graph k = presets::complete(3);
      if (has_minor(g, h) && has_minor(h, k)) CHECK(has_minor(g, k).has_value());
    }
  }

  TEST_CASE("size cap refuses instead of guessing") {
    CHECK_THROWS_AS(has_minor(presets::complete(11), presets::complete(4)), Error);
    try {
      has_minor(presets::complete(11), presets::complete(4));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SizeCapExceeded);
    }
    MinorSearchLimits wide{12, 70};
    CHECK(has_minor(presets::complete(11), presets::complete(4), wide).has_value());
  }

  TEST_CASE("series-parallel reduction equals K4-minor-freeness on all connected graphs up to 7 vertices") {
    const Graph k4 = presets::complete(4);
    const MinorSearchLimits limits{7, 21};
    int checked = 0;
    for (int n = 1; n <= 7; ++n)
      for (const Graph& g : oracle::all_graphs(n)) {
        if (!is_connected(g)) continue;
        const auto red = reduce_series_parallel(g);
        CHECK(red.partial_two_tree == !has_minor(g, k4, limits).has_value());
        if (red.partial_two_tree) CHECK(red.residual_core.empty());
        ++checked;
      }
    CHECK(checked == 1 + 1 + 2 + 6 + 21 + 112 + 853);
  }

  TEST_CASE("partial 2-tree examples") {
    CHECK(is_partial_two_tree(presets::complete(3)));
    CHECK(!is_partial_two_tree(presets::complete(4)));
    CHECK(is_partial_two_tree(presets::cycle(4)));
    CHECK(!oracle::is_minor_brute(presets::cycle(4), presets::complete(4)));
  }
}
