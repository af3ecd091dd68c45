#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "rainbow/absorb.hpp"
#include "rainbow/error.hpp"
#include "rainbow/gen.hpp"

using namespace rainbow;

namespace {

BipartiteAvailability random_bipartite(std::size_t L, std::size_t R, std::size_t min_deg, Rng& rng) {
  std::vector<std::vector<std::uint32_t>> adj(L);
  for (auto& a : adj) {
    std::vector<std::uint32_t> right(R);
    std::iota(right.begin(), right.end(), 0u);
    rng.shuffle(right);
    const std::size_t deg = min_deg + rng.below(R - min_deg + 1);
    a.assign(right.begin(), right.begin() + static_cast<std::ptrdiff_t>(deg));
    std::sort(a.begin(), a.end());
  }
  return BipartiteAvailability(L, R, adj);
}

// Perfect matching of the left side onto exactly `targets`, by backtracking.
bool brute_perfect(const BipartiteAvailability& k, const std::vector<std::uint32_t>& targets) {
  if (targets.size() != k.left_count) return false;
  std::vector<bool> used(targets.size(), false);
  auto go = [&](auto&& self, std::size_t i) -> bool {
    if (i == k.left_count) return true;
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (used[j] || !k.has(static_cast<std::uint32_t>(i), targets[j])) continue;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return go(go, 0);
}

Collection sub_collection(const Collection& c, const std::vector<Colour>& colours) {
  std::vector<Hypergraph> members;
  for (Colour col : colours) members.push_back(c[col]);
  return Collection(c.n(), c.k(), members);
}

GenSpec random_spec(std::size_t n, std::size_t m, double delta, std::uint64_t seed) {
  GenSpec spec;
  spec.n = n;
  spec.k = 2;
  spec.m = m;
  spec.delta_fraction = delta;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("matching absorber on a complete bipartite graph") {
  std::vector<std::vector<std::uint32_t>> adj(4, std::vector<std::uint32_t>(10));
  for (auto& a : adj) std::iota(a.begin(), a.end(), 0u);
  const BipartiteAvailability k(4, 10, adj);
  const auto abs = build_matching_absorber(k, 2, 0.2, 1);
  REQUIRE(abs.has_value());
  CHECK(abs->B0.size() == 2);
  CHECK(abs->check.ok);
  CHECK(abs->check.exhaustive);
}

TEST_CASE("matching absorber rejects a left vertex without neighbours") {
  const BipartiteAvailability k(2, 5, {{0, 1, 2, 3}, {}});
  try {
    build_matching_absorber(k, 1, 0.2, 1);
    FAIL("expected InfeasibleDegrees");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleDegrees);
  }
}

TEST_CASE("matching absorber holds for every U in B1") {
  Rng rng(2);
  const auto k = random_bipartite(6, 30, 10, rng);
  const auto abs = build_matching_absorber(k, 1, 0.2, 7);
  REQUIRE(abs.has_value());
  CHECK(abs->check.exhaustive);
  CHECK(abs->check.ok);
  for (auto u : abs->B1) {
    auto targets = abs->B0;
    targets.push_back(u);
    CHECK(brute_perfect(k, targets));
  }
}

TEST_CASE("verify_matching_absorber reports a counterexample") {
  // left 0 only sees right 0; right 1 is useless
  const BipartiteAvailability k(2, 3, {{0}, {0, 1, 2}});
  const std::vector<std::uint32_t> B0{0}, B1{1, 2};
  const auto check = verify_matching_absorber(k, B0, B1, 1, 1);
  CHECK(check.ok);
  const std::vector<std::uint32_t> bad_B0{2}, bad_B1{1};
  const auto bad = verify_matching_absorber(k, bad_B0, bad_B1, 1, 1);
  CHECK_FALSE(bad.ok);
  CHECK(bad.counterexample == std::vector<std::uint32_t>{1});
}

TEST_CASE("colour absorber on complete members") {
  const auto c = oracle::copies(Hypergraph::complete(8, 2), 8);
  const auto path = build_chain_template(edge_link(2, 1), 3);
  const auto abs = build_colour_absorber(c, path, 1, 0.2, 3);
  CHECK(abs.A.size() == path.num_edges() - 1);
  CHECK(verify_colour_absorber(c, abs, 1).ok);
}

TEST_CASE("colour absorber needs a copy in the threshold graph") {
  const Collection c(6, 2, std::vector<Hypergraph>(6, Hypergraph(6, 2)));
  try {
    build_colour_absorber(c, build_chain_template(edge_link(2, 1), 2), 1, 0.2, 1);
    FAIL("expected NoCopyFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCopyFound);
  }
}

TEST_CASE("colour absorber absorbs every pair of its colour set") {
  const auto c = generate(random_spec(12, 14, 8.0 / 12, 5));
  REQUIRE(collection_min_degree(c, 1) >= 8);
  const auto path = build_chain_template(edge_link(2, 1), 6);
  const auto abs = build_colour_absorber(c, path, 2, 0.2, 9);
  const auto check = verify_colour_absorber(c, abs, 1);
  CHECK(check.exhaustive);
  CHECK(check.ok);
  // independent check of each B
  for (std::size_t i = 0; i < abs.Cset.size(); ++i) {
    for (std::size_t j = i + 1; j < abs.Cset.size(); ++j) {
      auto colours = abs.A;
      colours.push_back(abs.Cset[i]);
      colours.push_back(abs.Cset[j]);
      CHECK(oracle::assignable(sub_collection(c, colours), abs.edges));
    }
  }
}

TEST_CASE("degree_preserving_partition") {
  const auto complete = oracle::copies(Hypergraph::complete(10, 2), 3);
  const std::vector<std::size_t> sizes{4, 6};
  const auto p = degree_preserving_partition(complete, sizes, 0.2, 1);
  REQUIRE(p.has_value());
  CHECK(p->attempts == 1);
  CHECK(p->parts[0].size() == 4);
  const std::vector<std::size_t> wrong{4, 5};
  try {
    degree_preserving_partition(complete, wrong, 0.2, 1);
    FAIL("expected SizesMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SizesMismatch);
  }
}

TEST_CASE("partition honours fixed vertices and the audit") {
  const auto c = generate(random_spec(16, 6, 0.7, 3));
  PartitionOptions opt;
  opt.fixed = {{0, 1}, {5, 1}};
  const std::vector<std::size_t> sizes{8, 8};
  const auto p = degree_preserving_partition(c, sizes, 0.2, 4, opt);
  REQUIRE(p.has_value());
  CHECK(p->part_of[0] == 1);
  CHECK(p->part_of[5] == 1);
  // the audited floor holds when recounted by brute force
  for (std::size_t col = 0; col < c.size(); ++col) {
    for (std::uint32_t part = 0; part < 2; ++part) {
      for (Vertex v = 0; v < 16; ++v) {
        std::size_t deg = 0;
        for (Vertex w : p->parts[part]) deg += w != v && c[col].has_edge(make_edge({v, w}));
        CHECK(static_cast<double>(deg) >= p->required[part]);
      }
    }
  }
}

TEST_CASE("random halves of dense graphs pass the audit quickly") {
  int accepted = 0;
  const std::vector<std::size_t> sizes{20, 20};
  PartitionOptions opt;
  opt.retries = 5;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = generate(random_spec(40, 10, 0.7, 1000 + seed));
    accepted += degree_preserving_partition(c, sizes, 0.2, seed, opt).has_value();
  }
  CHECK(accepted >= 95);
}

TEST_CASE("greedy_rainbow_factor") {
  const auto k9 = oracle::copies(Hypergraph::complete(9, 2), 6);
  CHECK(greedy_rainbow_factor(k9, std::vector<Colour>{}, triangle_link()).copies.empty());
  const auto f = greedy_rainbow_factor(k9, std::vector<Colour>{0, 1, 2, 3, 4, 5}, triangle_link());
  REQUIRE(f.complete);
  REQUIRE(f.copies.size() == 2);
  std::set<Vertex> seen;
  std::set<Colour> colours;
  for (const auto& copy : f.copies) {
    for (Vertex v : copy.vertices) CHECK(seen.insert(v).second);
    for (Colour col : copy.colouring.phi) CHECK(colours.insert(col).second);
  }
  // a matching: each block is one edge
  const auto g = generate(random_spec(12, 5, 0.6, 1));
  const auto m = greedy_rainbow_factor(g, std::vector<Colour>{0, 1, 2, 3, 4}, edge_link(2, 1));
  CHECK(m.complete);
  CHECK(m.copies.size() == 5);
  // an incomplete last block is reported
  const auto part = greedy_rainbow_factor(k9, std::vector<Colour>{0, 1, 2, 3}, triangle_link());
  CHECK_FALSE(part.complete);
  CHECK(part.stuck_block == std::optional<std::size_t>{1});
}

TEST_CASE("rainbow_tiling on complete members") {
  const std::size_t n = 20;
  const auto c = oracle::copies(Hypergraph::complete(n, 2), n);
  const auto r = rainbow_tiling(c, edge_link(2, 1), 2, 0.2, 1);
  CHECK(r.chains.size() == 2);
  CHECK(r.uncovered.size() <= static_cast<std::size_t>(0.2 * n));
  std::set<Colour> used;
  for (const auto& ch : r.chains) {
    for (Colour col : ch.colouring.phi) CHECK(used.insert(col).second);
  }
  CHECK(used.size() + r.unused.size() == n);
}

TEST_CASE("rainbow_tiling covers most of a dense random collection") {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto c = generate(random_spec(30, 30, 0.75, 500 + seed));
    const auto r = rainbow_tiling(c, edge_link(2, 1), 3, 0.2, seed);
    good += 30 - r.uncovered.size() >= 24;
    for (const auto& ch : r.chains) {
      CHECK(verify_certificate(c, ch.colouring).ok());
    }
  }
  CHECK(good >= 45);
}
