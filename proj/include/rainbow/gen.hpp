#pragma once

// Instance generators: random collections with a guaranteed minimum d-degree,
// the two-clique bridge construction and the unbalanced bipartite extremal
// example.

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "rainbow/collection.hpp"

namespace rainbow {

enum class Family { Random, Bridge, DiracExtremal };

std::string_view to_string(Family f);
// "random", "bridge", "dirac-extremal"; throws Parse otherwise.
Family family_from_tag(std::string_view tag);

struct GenSpec {
  std::size_t n = 10;
  std::size_t k = 2;
  std::size_t m = 10;
  std::size_t d = 1;
  double delta_fraction = 0.5;
  Family family = Family::Random;
  std::uint64_t seed = 0;
  double margin = 0.05;  // added to the sampling density before repair
};

// Degree floor for a delta fraction: ceil(delta * n^(k-d)), capped at the
// largest possible d-degree C(n-d, k-d).
std::size_t degree_target(std::size_t n, std::size_t k, std::size_t d, double delta_fraction);

Collection random_collection(const GenSpec& spec);
Collection bridge_construction(std::size_t n, std::size_t m);
Collection dirac_extremal(std::size_t n);

// Dispatches on spec.family.
Collection generate(const GenSpec& spec);

}  // namespace rainbow
