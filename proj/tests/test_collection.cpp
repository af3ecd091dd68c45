#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "rainbow/collection.hpp"
#include "rainbow/error.hpp"

using namespace rainbow;

namespace {

TransversalCertificate hamilton_identity(std::size_t n) {
  TransversalCertificate cert;
  for (Vertex v = 0; v < n; ++v) {
    Vertex w = static_cast<Vertex>((v + 1) % n);
    cert.edges.push_back({std::min(v, w), std::max(v, w)});
    cert.phi.push_back(v);
  }
  return cert;
}

}  // namespace

TEST_CASE("collection validates members") {
  CHECK_THROWS_AS(Collection(4, 2, {Hypergraph(5, 2)}), Error);
  CHECK_THROWS_AS(Collection(4, 2, {Hypergraph(4, 3)}), Error);
  const auto c = oracle::copies(Hypergraph::complete(4, 2), 3);
  CHECK(c.colours_of(std::vector<Vertex>{0, 1}) == std::vector<Colour>{0, 1, 2});
  CHECK(c.colours_of(std::vector<Vertex>{0, 1}, std::vector<Colour>{2}) == std::vector<Colour>{2});
}

TEST_CASE("collection_min_degree") {
  CHECK(collection_min_degree(oracle::copies(Hypergraph::complete(4, 2), 3), 1) == 3);
  CHECK(collection_min_degree(Collection(4, 2, {Hypergraph::complete(4, 2), Hypergraph(4, 2)}), 1) == 0);
  CHECK(collection_min_degree(Collection(5, 2, {oracle::cycle_graph(5), Hypergraph::complete(5, 2)}), 1) == 2);
}

TEST_CASE("threshold_hypergraph") {
  Rng rng(4);
  const auto h = oracle::random_graph(7, 2, 0.5, rng);
  const auto same = oracle::copies(h, 4);
  CHECK(threshold_hypergraph(same, all_colours(same), 4) == h);
  CHECK(threshold_hypergraph(same, all_colours(same), 0) == Hypergraph::complete(7, 2));
  CHECK(union_hypergraph(same, all_colours(same)) == h);
}

TEST_CASE("threshold degree bound on a random collection") {
  Rng rng(8);
  const auto c = oracle::random_collection(8, 2, 10, 0.6, rng);
  const auto K = threshold_hypergraph(c, all_colours(c), 3);
  const double bound = static_cast<double>(oracle::collection_min_degree(c, 1)) - 3.0 / 10.0 * 8;
  CHECK(static_cast<double>(oracle::min_degree(K, 1)) >= bound);
}

TEST_CASE("verify_certificate diagnoses in order") {
  const std::size_t n = 6;
  const auto c = oracle::copies(Hypergraph::complete(n, 2), n);
  const ExpectedShape shape{edge_link(2, 1), n};
  auto cert = hamilton_identity(n);
  CHECK(verify_certificate(c, cert, shape).ok());

  auto dup = cert;
  dup.phi[3] = dup.phi[0];
  const auto d = verify_certificate(c, dup, shape);
  CHECK(d.reason == Diagnosis::DuplicateColour);

  auto malformed = cert;
  malformed.phi.pop_back();
  CHECK(verify_certificate(c, malformed).reason == Diagnosis::Malformed);
  auto out_of_range = cert;
  out_of_range.phi[0] = 99;
  CHECK(verify_certificate(c, out_of_range).reason == Diagnosis::Malformed);

  // colour 0 loses edge {0,1}
  std::vector<Hypergraph> members(n, Hypergraph::complete(n, 2));
  auto edges = members[0].edges();
  edges.erase(std::find(edges.begin(), edges.end(), Edge{0, 1}));
  members[0] = Hypergraph(n, 2, edges);
  const auto v = verify_certificate(Collection(n, 2, members), cert, shape);
  CHECK(v.reason == Diagnosis::EdgeNotInColour);
  REQUIRE(v.edge.has_value());
  CHECK(*v.edge == 0);

  // two triangles span but are not one cycle
  TransversalCertificate two{{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}, {0, 1, 2, 3, 4, 5}};
  CHECK(verify_certificate(c, two, shape).reason == Diagnosis::NotCycleShape);
  CHECK(verify_certificate(c, two).ok());
  CHECK(verify_certificate(c, cert, ExpectedShape{triangle_link(), n}).reason != Diagnosis::Ok);
}

TEST_CASE("verify_certificate catches a non-spanning square of a cycle") {
  const std::size_t n = 7;
  const auto c = oracle::copies(Hypergraph::complete(n, 2), 2 * n);
  const auto sq = cycle_template(triangle_link(), 6);  // misses vertex 6
  TransversalCertificate cert{sq.edges(), {}};
  for (Colour i = 0; i < cert.edges.size(); ++i) cert.phi.push_back(i);
  CHECK(verify_certificate(c, cert, ExpectedShape{triangle_link(), n}).reason == Diagnosis::NotSpanning);
  const auto full = cycle_template(triangle_link(), n);
  TransversalCertificate ok{full.edges(), {}};
  for (Colour i = 0; i < ok.edges.size(); ++i) ok.phi.push_back(i);
  CHECK(verify_certificate(c, ok, ExpectedShape{triangle_link(), n}).ok());
}

TEST_CASE("rainbow_colouring") {
  const auto k5 = oracle::copies(Hypergraph::complete(5, 2), 5);
  const std::vector<Edge> path{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  CHECK(rainbow_colouring(k5, path, all_colours(k5)).has_value());

  // two edges that only colour 7 has
  std::vector<Hypergraph> members(8, Hypergraph(4, 2));
  members[7] = Hypergraph(4, 2, {{0, 1}, {2, 3}});
  const Collection only7(4, 2, members);
  CHECK_FALSE(rainbow_colouring(only7, std::vector<Edge>{{0, 1}, {2, 3}}, all_colours(only7)).has_value());

  // identity availability forces the permutation
  std::vector<Hypergraph> perm;
  const std::vector<std::size_t> sigma{3, 0, 4, 1, 2};
  for (std::size_t col = 0; col < 5; ++col) {
    const std::size_t e = std::find(sigma.begin(), sigma.end(), col) - sigma.begin();
    perm.push_back(Hypergraph(5, 2, {path[e]}));
  }
  const Collection forced(5, 2, perm);
  const auto cert = rainbow_colouring(forced, path, all_colours(forced));
  REQUIRE(cert.has_value());
  for (std::size_t i = 0; i < 5; ++i) CHECK(cert->phi[i] == sigma[i]);
}

TEST_CASE("rainbow_colouring agrees with exhaustive assignment") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 6, m = 4 + rng.below(5);
    const auto c = oracle::random_collection(n, 2, m, 0.35, rng);
    std::vector<Edge> edges;
    for_each_subset(n, 2, [&](std::span<const Vertex> s) {
      if (edges.size() < 8 && rng.bernoulli(0.4)) edges.emplace_back(s.begin(), s.end());
    });
    const auto cert = rainbow_colouring(c, edges, all_colours(c));
    CHECK(cert.has_value() == oracle::assignable(c, edges));
    if (cert) CHECK(verify_certificate(c, *cert).ok());
  }
}
