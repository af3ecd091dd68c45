#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rainbow/error.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/kernels.hpp"
#include "rainbow/matching.hpp"

using namespace rainbow;

namespace {

Hypergraph c5() { return oracle::cycle_graph(5); }

}  // namespace

TEST_CASE("colex rank is a bijection onto [0, C(n,k))") {
  for (std::size_t k = 1; k <= 4; ++k) {
    std::uint64_t expected = 0;
    for_each_subset(8, k, [&](std::span<const Vertex> s) {
      CHECK(colex_rank(s) == expected);
      std::vector<Vertex> back(k);
      colex_unrank(expected, k, back);
      CHECK(std::equal(back.begin(), back.end(), s.begin()));
      ++expected;
    });
    CHECK(expected == binom(8, k));
  }
}

TEST_CASE("construction rejects malformed edges") {
  CHECK_THROWS_AS(Hypergraph(4, 2, {{1, 0}}), Error);
  CHECK_THROWS_AS(Hypergraph(4, 2, {{0, 4}}), Error);
  CHECK_THROWS_AS(Hypergraph(4, 2, {{0, 1, 2}}), Error);
  CHECK_THROWS_AS(Hypergraph(4, 2, {{0, 1}, {0, 1}}), Error);
  CHECK_THROWS_AS(make_edge({2, 2}), Error);
  CHECK(make_edge({3, 1}) == Edge{1, 3});
}

TEST_CASE("degree_d") {
  const auto k4 = Hypergraph::complete(4, 2);
  CHECK(degree_d(k4, std::vector<Vertex>{0}) == 3);
  CHECK(degree_d(Hypergraph(4, 2), std::vector<Vertex>{2}) == 0);
  CHECK(degree_d(Hypergraph::complete(5, 3), std::vector<Vertex>{0, 1}) == 3);
  CHECK_THROWS_AS(degree_d(k4, std::vector<Vertex>{0, 1}), Error);  // d must be < k
  CHECK_THROWS_AS(degree_d(k4, std::vector<Vertex>{7}), Error);
}

TEST_CASE("min_degree_d") {
  CHECK(min_degree_d(Hypergraph::complete(4, 2), 1) == 3);
  CHECK(min_degree_d(c5(), 1) == 2);
  CHECK(min_degree_d(Hypergraph::complete(5, 3), 2) == 3);
}

TEST_CASE("min_degree_d matches brute force on random hypergraphs") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 2 + trial % 2, n = 5 + trial % 4;
    const auto h = oracle::random_graph(n, k, 0.5, rng);
    for (std::size_t d = 1; d < k; ++d) CHECK(min_degree_d(h, d) == oracle::min_degree(h, d));
  }
}

TEST_CASE("induced") {
  CHECK(induced(Hypergraph::complete(4, 2), std::vector<Vertex>{0, 1, 2}) == Hypergraph::complete(3, 2));
  const auto empty = induced(c5(), std::vector<Vertex>{});
  CHECK(empty.n() == 0);
  CHECK(empty.num_edges() == 0);
  const auto path = induced(c5(), std::vector<Vertex>{0, 1, 2});
  CHECK(path.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  // relabelled to the order of the subset
  const auto far = induced(c5(), std::vector<Vertex>{4, 0});
  CHECK(far.edges() == std::vector<Edge>{{0, 1}});
}

TEST_CASE("ordered_isomorphic compares index patterns") {
  const Hypergraph p(3, 2, {{0, 1}, {1, 2}});
  const Hypergraph q(3, 2, {{0, 2}, {1, 2}});
  CHECK(ordered_isomorphic(p, p));
  CHECK_FALSE(ordered_isomorphic(p, q));
  CHECK(ordered_isomorphic(Hypergraph::complete(3, 2), Hypergraph(3, 2, {{1, 2}, {0, 2}, {0, 1}})));
}

TEST_CASE("sparse storage agrees with dense") {
  // C(600, 3) exceeds the dense limit
  const Hypergraph big(600, 3, {{0, 1, 2}, {5, 300, 599}});
  CHECK(big.has_edge(std::vector<Vertex>{5, 300, 599}));
  CHECK_FALSE(big.has_edge(std::vector<Vertex>{5, 300, 598}));
  CHECK_FALSE(big.has_edge(std::vector<Vertex>{300, 5, 599}));
}

TEST_CASE("kernels agree with their serial references") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 6 + trial, k = 2 + trial % 2;
    const auto c = oracle::random_collection(n, k, 6, 0.45, rng);
    for (std::size_t d = 1; d < k; ++d) {
      CHECK(kernels::degree_table(c[0], d) == kernels::degree_table_reference(c[0], d));
    }
    const std::vector<std::uint32_t> colours{0, 2, 3, 5};
    CHECK(kernels::colour_multiplicity(c.members(), colours) ==
          kernels::colour_multiplicity_reference(c.members(), colours));

    std::vector<std::uint32_t> part_of(n);
    for (auto& p : part_of) p = static_cast<std::uint32_t>(rng.below(3));
    const std::vector<double> required{1.0, 0.5, 2.0};
    const auto a = kernels::audit_partition(c.members(), part_of, 3, 1, required);
    const auto b = kernels::audit_partition_reference(c.members(), part_of, 3, 1, required);
    CHECK(a.ok == b.ok);
    CHECK(a.min_margin == b.min_margin);
    REQUIRE(a.first_violation.has_value() == b.first_violation.has_value());
    if (a.first_violation) {
      CHECK(a.first_violation->member == b.first_violation->member);
      CHECK(a.first_violation->part == b.first_violation->part);
      CHECK(a.first_violation->set_rank == b.first_violation->set_rank);
    }
  }
}

TEST_CASE("degree table entries are d-degrees") {
  Rng rng(3);
  const auto h = oracle::random_graph(7, 3, 0.5, rng);
  const auto table = kernels::degree_table(h, 2);
  for_each_subset(7, 2, [&](std::span<const Vertex> s) {
    CHECK(table[colex_rank(s)] == oracle::degree(h, {s.begin(), s.end()}));
  });
}

TEST_CASE("maximum matching") {
  // Hall violation: two lefts on one right
  std::vector<std::vector<std::uint32_t>> adj{{7}, {7}};
  CHECK_FALSE(saturates_left(adj, 8));
  adj = {{0, 1}, {0}, {1, 2}};
  const auto m = maximum_matching(adj, 3);
  CHECK(m[1] == 0);
  CHECK(m[0] == 1);
  CHECK(m[2] == 2);
}

TEST_CASE("stack matcher keeps a maximum matching across push and pop") {
  BipartiteMatcher bm(3);
  CHECK(bm.push({0, 1}));
  CHECK(bm.push({0}));
  CHECK_FALSE(bm.push({0}));
  CHECK(bm.left_count() == 2);
  CHECK(bm.push({1, 2}));
  bm.pop();
  bm.pop();
  CHECK(bm.push({0, 2}));
  CHECK(bm.left_count() == 2);
}

TEST_CASE("matching size agrees with brute force") {
  Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t L = 1 + rng.below(6), R = 1 + rng.below(6);
    std::vector<std::vector<std::uint32_t>> adj(L);
    for (auto& a : adj) {
      for (std::uint32_t r = 0; r < R; ++r) {
        if (rng.bernoulli(0.4)) a.push_back(r);
      }
    }
    // brute force: can every left be matched?
    std::vector<bool> used(R, false);
    auto brute = [&](auto&& self, std::size_t i) -> bool {
      if (i == L) return true;
      for (auto r : adj[i]) {
        if (used[r]) continue;
        used[r] = true;
        if (self(self, i + 1)) return true;
        used[r] = false;
      }
      return false;
    };
    CHECK(saturates_left(adj, R) == brute(brute, 0));
  }
}
