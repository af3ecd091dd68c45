#include <doctest.h>

#include "oracles.hpp"
#include "rainbow/error.hpp"
#include "rainbow/gen.hpp"

using namespace rainbow;

namespace {

GenSpec spec(std::size_t n, std::size_t k, std::size_t m, double delta, std::uint64_t seed = 1) {
  GenSpec s;
  s.n = n;
  s.k = k;
  s.m = m;
  s.delta_fraction = delta;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("degree_target") {
  CHECK(degree_target(12, 2, 1, 0.55) == 7);
  CHECK(degree_target(10, 2, 1, 0.5) == 5);
  // n^(k-d) overshoots the largest possible degree
  CHECK(degree_target(10, 2, 1, 1.0) == 9);
  CHECK(degree_target(8, 3, 1, 1.0) == 21);
}

TEST_CASE("random_collection reaches its degree floor") {
  const auto full = random_collection(spec(7, 2, 4, 1.0));
  for (const auto& h : full.members()) CHECK(h == Hypergraph::complete(7, 2));
  CHECK(random_collection(spec(7, 2, 4, 0.0)).size() == 4);
  const auto c = random_collection(spec(12, 2, 12, 0.55, 7));
  CHECK(oracle::collection_min_degree(c, 1) >= 7);
  const auto h3 = random_collection(spec(8, 3, 5, 0.4, 2));
  CHECK(oracle::collection_min_degree(h3, 1) >= degree_target(8, 3, 1, 0.4));
  CHECK_THROWS_AS(random_collection(spec(7, 2, 3, 1.5)), Error);
}

TEST_CASE("random_collection is reproducible") {
  CHECK(random_collection(spec(12, 2, 12, 0.55, 7)) == random_collection(spec(12, 2, 12, 0.55, 7)));
  CHECK_FALSE(random_collection(spec(12, 2, 12, 0.55, 7)) == random_collection(spec(12, 2, 12, 0.55, 8)));
}

TEST_CASE("bridge_construction") {
  const auto c = bridge_construction(9, 10);
  CHECK(c.size() == 10);
  for (Colour col = 0; col < 9; ++col) CHECK(min_degree_d(c[col], 1) == 3);
  CHECK(min_degree_d(c[9], 1) == 4);
  const auto small = bridge_construction(4, 2);
  CHECK(small[0].edges() == std::vector<Edge>{{0, 1}, {2, 3}});
  CHECK(small[1].num_edges() == 4);
  CHECK(min_degree_d(bridge_construction(10, 10)[9], 1) == 5);
}

TEST_CASE("dirac_extremal") {
  const auto c = dirac_extremal(5);
  CHECK(c.size() == 5);
  CHECK(c[0].num_edges() == 6);  // K_{3,2}
  CHECK(collection_min_degree(c, 1) == 2);
  CHECK(collection_min_degree(dirac_extremal(4), 1) == 1);
  CHECK(dirac_extremal(3)[0].num_edges() == 2);
}

TEST_CASE("family tags") {
  CHECK(family_from_tag("random") == Family::Random);
  CHECK(family_from_tag("bridge") == Family::Bridge);
  CHECK(family_from_tag("dirac-extremal") == Family::DiracExtremal);
  CHECK_THROWS_AS(family_from_tag("star"), Error);
  CHECK(to_string(Family::DiracExtremal) == "dirac-extremal");
}
