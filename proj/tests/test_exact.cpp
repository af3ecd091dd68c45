#include <doctest.h>

#include "oracles.hpp"
#include "rainbow/error.hpp"
#include "rainbow/exact.hpp"
#include "rainbow/gen.hpp"

using namespace rainbow;

TEST_CASE("complete collections have rainbow Hamilton cycles") {
  const auto c = oracle::copies(Hypergraph::complete(5, 2), 5);
  const auto r = find_transversal_cycle(c, edge_link(2, 1));
  REQUIRE(r.found());
  REQUIRE(r.certificate.has_value());
  CHECK(verify_certificate(c, *r.certificate, ExpectedShape{edge_link(2, 1), 5}).ok());
}

TEST_CASE("paths have no Hamilton cycle") {
  const auto c = oracle::copies(Hypergraph(4, 2, {{0, 1}, {1, 2}, {2, 3}}), 4);
  CHECK(find_transversal_cycle(c, edge_link(2, 1)).outcome == SearchOutcome::None);
}

TEST_CASE("square of a Hamilton cycle on six vertices") {
  const auto c = oracle::copies(Hypergraph::complete(6, 2), 12);
  const auto r = find_transversal_cycle(c, triangle_link());
  REQUIRE(r.found());
  CHECK(verify_certificate(c, *r.certificate, ExpectedShape{triangle_link(), 6}).ok());
}

TEST_CASE("colour count must match the cycle") {
  const auto c = oracle::copies(Hypergraph::complete(5, 2), 4);
  try {
    find_transversal_cycle(c, edge_link(2, 1));
    FAIL("expected ColourCountMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ColourCountMismatch);
  }
}

TEST_CASE("a tiny node limit exhausts") {
  const auto c = oracle::copies(Hypergraph::complete(8, 2), 8);
  SearchBudget budget;
  budget.node_limit = 3;
  CHECK(find_transversal_cycle(c, edge_link(2, 1), budget).outcome == SearchOutcome::Exhausted);
}

TEST_CASE("exact cycle search agrees with brute-force enumeration") {
  Rng rng(31);
  int found = 0, none = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 5 + trial % 3;
    const auto c = oracle::random_collection(n, 2, n, 0.25 + 0.05 * (trial % 6), rng);
    const auto r = find_transversal_cycle(c, edge_link(2, 1));
    REQUIRE(r.outcome != SearchOutcome::Exhausted);
    CHECK(r.found() == oracle::has_rainbow_hamilton_cycle(c));
    if (r.found()) {
      ++found;
      CHECK(verify_certificate(c, *r.certificate, ExpectedShape{edge_link(2, 1), n}).ok());
    } else {
      ++none;
    }
  }
  // both outcomes are exercised
  CHECK(found > 5);
  CHECK(none > 5);
}

TEST_CASE("exact square search agrees with brute force on six vertices") {
  Rng rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    const auto c = oracle::random_collection(6, 2, 12, 0.75, rng);
    const auto r = find_transversal_cycle(c, triangle_link());
    REQUIRE(r.outcome != SearchOutcome::Exhausted);
    CHECK(r.found() == oracle::has_rainbow_square_cycle(c));
  }
}

TEST_CASE("tight 3-uniform cycles") {
  const auto c = oracle::copies(Hypergraph::complete(6, 3), 6);
  const auto r = find_transversal_cycle(c, edge_link(3, 2));
  REQUIRE(r.found());
  CHECK(verify_certificate(c, *r.certificate, ExpectedShape{edge_link(3, 2), 6}).ok());
}

TEST_CASE("find_transversal_subgraph") {
  CHECK(find_transversal_subgraph(oracle::copies(Hypergraph::complete(3, 2), 3), Hypergraph::complete(3, 2)).found());
  const Collection empty(2, 2, {Hypergraph(2, 2)});
  CHECK(find_transversal_subgraph(empty, Hypergraph(2, 2, {{0, 1}})).outcome == SearchOutcome::None);
}

TEST_CASE("bridge construction has no rainbow K23 plus C4") {
  // K_{2,3} on {0,1 | 2,3,4} and C_4 on 5..8: a bridgeless graph on 9 vertices, 10 edges
  std::vector<Edge> edges;
  for (Vertex a : {0u, 1u}) {
    for (Vertex b : {2u, 3u, 4u}) edges.push_back({a, b});
  }
  edges.push_back({5, 6});
  edges.push_back({6, 7});
  edges.push_back({7, 8});
  edges.push_back({5, 8});
  const Hypergraph F(9, 2, edges);
  const auto c = bridge_construction(9, 10);
  CHECK(find_transversal_subgraph(c, F).outcome == SearchOutcome::None);
  // without the bipartite colour the same graph is easy to find in complete members
  CHECK(find_transversal_subgraph(oracle::copies(Hypergraph::complete(9, 2), 10), F).found());
}

TEST_CASE("find_copy respects available vertices and pins") {
  const auto host = oracle::cycle_graph(6);
  const Hypergraph path(3, 2, {{0, 1}, {1, 2}});
  std::vector<bool> avail(6, true);
  avail[1] = false;
  const auto r = find_copy(host, path, {}, avail, {{0, 2}});
  REQUIRE(r.found());
  CHECK(r.embedding[0] == 2);
  for (Vertex v : r.embedding) CHECK(v != 1);
  CHECK(find_copy(host, Hypergraph::complete(3, 2)).outcome == SearchOutcome::None);
}

TEST_CASE("greedy_order puts connected positions first") {
  const auto order = greedy_order(Hypergraph(4, 2, {{0, 3}, {1, 3}, {2, 3}}));
  CHECK(order.front() == 3);
  CHECK(order.size() == 4);
}
