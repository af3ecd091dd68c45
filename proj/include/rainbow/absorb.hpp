#pragma once

// Absorption toolbox: matching absorbers, colour absorbers, degree-preserving
// random partitions, greedy rainbow factors and rainbow chain tilings. Every
// builder checks its own postcondition instead of relying on asymptotics.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rainbow/collection.hpp"
#include "rainbow/exact.hpp"
#include "rainbow/kernels.hpp"
#include "rainbow/link.hpp"

namespace rainbow {

// Bipartite graph between left indices 0..left_count-1 and right indices
// 0..right_count-1.
struct BipartiteAvailability {
  std::size_t left_count = 0;
  std::size_t right_count = 0;
  std::vector<std::vector<std::uint32_t>> adj;  // left -> sorted right neighbours

  BipartiteAvailability() = default;
  BipartiteAvailability(std::size_t left, std::size_t right, std::vector<std::vector<std::uint32_t>> adjacency);

  bool has(std::uint32_t left, std::uint32_t right) const;
  std::vector<std::size_t> right_degrees() const;
};

struct AbsorberOptions {
  std::size_t retries = 50;
  std::uint64_t exhaustive_limit = 100'000;  // largest C(|B1|, l) checked exhaustively
  std::size_t samples = 1'000;               // random U checked otherwise
  std::size_t min_b1 = 0;                    // attempts leaving fewer B1 vertices fail
};

struct AbsorberCheck {
  bool ok = true;
  bool exhaustive = true;
  std::uint64_t checked = 0;
  std::vector<std::uint32_t> counterexample;  // a failing U when !ok
};

struct MatchingAbsorber {
  std::size_t ell = 0;
  std::vector<std::uint32_t> B0;  // |B0| = left_count - ell
  std::vector<std::uint32_t> B1;
  AbsorberCheck check;
  std::size_t attempts = 0;
  std::vector<std::string> warnings;
};

// Does A have a perfect matching onto B0 u U?
bool completes(const BipartiteAvailability& k, std::span<const std::uint32_t> B0, std::span<const std::uint32_t> U);

AbsorberCheck verify_matching_absorber(const BipartiteAvailability& k, std::span<const std::uint32_t> B0,
                                       std::span<const std::uint32_t> B1, std::size_t ell, std::uint64_t seed,
                                       const AbsorberOptions& options = {});

// Throws InfeasibleDegrees when a left vertex has degree below l + 1.
std::optional<MatchingAbsorber> build_matching_absorber(const BipartiteAvailability& k, std::size_t ell,
                                                        double alpha, std::uint64_t seed,
                                                        const AbsorberOptions& options = {});

struct ColourAbsorber {
  std::vector<Vertex> vertices;  // pattern vertex -> host vertex
  std::vector<Edge> edges;       // host images of the pattern edges
  std::vector<Colour> A;
  std::vector<Colour> Cset;
  std::size_t gamma_n = 0;
  MatchingAbsorber absorber;  // over (edges, colours)
};

struct ColourAbsorberOptions {
  AbsorberOptions absorber;
  SearchBudget budget{2'000'000, 60.0, true};
  std::vector<bool> available;  // host vertices the copy may use; empty = all
};

// Throws NoCopyFound / AbsorberFailed.
ColourAbsorber build_colour_absorber(const Collection& c, const Hypergraph& pattern, std::size_t gamma_n,
                                     double alpha, std::uint64_t seed, const ColourAbsorberOptions& options = {});

// Checks rainbow_colouring(edges, A u B) for every (or, past the limit,
// sampled) B of size gamma_n inside `pool` (defaults to the absorber's Cset),
// and that each colouring uses all of A.
AbsorberCheck verify_colour_absorber(const Collection& c, const ColourAbsorber& absorber, std::uint64_t seed,
                                     const AbsorberOptions& options = {},
                                     std::span<const Colour> pool = {});

struct PartitionOptions {
  std::size_t d = 1;
  double slack = 0.1;
  std::size_t retries = 50;
  std::size_t min_part = 1;
  // Vertices pinned to a part before sampling the rest.
  std::vector<std::pair<Vertex, std::uint32_t>> fixed;
  // When false, parts are sampled but not audited (the audit is still reported).
  bool audit = true;
  // Parts whose floor is enforced; empty means all.
  std::vector<bool> checked_parts;
};

struct Partition {
  std::vector<std::uint32_t> part_of;      // vertex -> part
  std::vector<std::vector<Vertex>> parts;  // sorted
  kernels::PartitionAudit audit;
  std::vector<double> required;
  std::size_t attempts = 0;
};

// Required floor into part i: (delta_d / C(n-d,k-d) - alpha/2 - slack) * C(n_i-d,k-d), rounded down,
// where delta_d is the minimum d-degree over the members.
std::vector<double> partition_requirements(std::span<const Hypergraph> members, std::span<const std::size_t> sizes,
                                           double alpha, const PartitionOptions& options);

// Uniform random partition with the given sizes whose every d-set has the
// required degree into every part in every member. Throws SizesMismatch.
std::optional<Partition> degree_preserving_partition(std::span<const Hypergraph> members,
                                                     std::span<const std::size_t> sizes, double alpha,
                                                     std::uint64_t seed, const PartitionOptions& options = {});
std::optional<Partition> degree_preserving_partition(const Collection& c, std::span<const std::size_t> sizes,
                                                     double alpha, std::uint64_t seed,
                                                     const PartitionOptions& options = {});

struct FactorCopy {
  std::vector<Vertex> vertices;  // link position -> host vertex
  TransversalCertificate colouring;
};

struct FactorResult {
  std::vector<FactorCopy> copies;
  bool complete = true;
  std::optional<std::size_t> stuck_block;  // first block without a copy
};

// Colours are consumed in blocks of e(link) in the given order; each block
// gets a vertex-disjoint copy of the link coloured bijectively by the block.
FactorResult greedy_rainbow_factor(const Collection& c, std::span<const Colour> colours, const Link& link,
                                   std::span<const Vertex> vertices = {},
                                   const SearchBudget& budget = {200'000, 10.0, true});

struct TilingOptions {
  double alpha = 0.2;
  double eta = 0.2;  // threshold fraction of the unused colours
  PartitionOptions partition;
  SearchBudget budget{200'000, 10.0, true};  // per chain-length attempt
  std::vector<Vertex> vertices;              // ground set; empty = all
  std::vector<Colour> colours;               // palette; empty = all
};

struct RainbowChain {
  EmbeddedChain chain;
  TransversalCertificate colouring;
};

struct TilingResult {
  std::vector<RainbowChain> chains;
  std::vector<Vertex> uncovered;
  std::vector<Colour> unused;
  Partition partition;
};

// Throws PartitionFailed when no audited partition is found.
TilingResult rainbow_tiling(const Collection& c, const Link& link, std::size_t T, double omega, std::uint64_t seed,
                            const TilingOptions& options = {});

}  // namespace rainbow
