#pragma once

// Data-parallel counting kernels. Each OpenMP kernel has a serial reference
// that computes the same table by a different route (brute-force enumeration
// instead of edge scatter); tests compare the two and bench/ times them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rainbow/hypergraph.hpp"

namespace rainbow::kernels {

// Largest C(n, k) for which dense per-subset tables are built.
inline constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 26;

// deg(S) for every d-subset S, indexed by colex rank.
std::vector<std::uint32_t> degree_table(const Hypergraph& h, std::size_t d);
std::vector<std::uint32_t> degree_table_reference(const Hypergraph& h, std::size_t d);

// For every k-subset e (colex rank): |{c in colours : e in members[c]}|.
std::vector<std::uint32_t> colour_multiplicity(std::span<const Hypergraph> members,
                                               std::span<const std::uint32_t> colours);
std::vector<std::uint32_t> colour_multiplicity_reference(std::span<const Hypergraph> members,
                                                         std::span<const std::uint32_t> colours);

struct AuditViolation {
  std::size_t member = 0;
  std::size_t part = 0;
  std::uint64_t set_rank = 0;  // colex rank of the offending d-set
  std::uint32_t degree = 0;
  double required = 0.0;
};

struct PartitionAudit {
  bool ok = true;
  // min over (member, part, S) of deg(S, V_part) - required[part]
  double min_margin = 0.0;
  std::optional<AuditViolation> first_violation;  // lowest (member, part, rank)
};

// Degree-into-part audit: deg_{H_j}(S, V_i) counts (k-d)-sets V' inside V_i
// with S u V' an edge of H_j. part_of[v] is the part of vertex v; required[i]
// is the floor for part i (parts with required <= 0 are checked trivially).
PartitionAudit audit_partition(std::span<const Hypergraph> members,
                               std::span<const std::uint32_t> part_of, std::size_t parts,
                               std::size_t d, std::span<const double> required);
PartitionAudit audit_partition_reference(std::span<const Hypergraph> members,
                                         std::span<const std::uint32_t> part_of,
                                         std::size_t parts, std::size_t d,
                                         std::span<const double> required);

}  // namespace rainbow::kernels
