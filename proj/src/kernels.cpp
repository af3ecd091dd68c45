#include "rainbow/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>

#include "rainbow/error.hpp"

namespace rainbow::kernels {

namespace {

std::uint64_t dense_size(std::size_t n, std::size_t r) {
  const auto total = binom(n, r);
  if (total > kDenseLimit) throw Error(ErrorCode::InvalidArgument, "subset table too large");
  return total;
}

// Calls visit(rank(S), rest) for every d-subset S of the sorted edge e, where
// rest = e \ S in increasing order.
template <class Visit>
void split_edge(const Edge& e, std::size_t d, Visit&& visit) {
  const std::size_t k = e.size();
  std::vector<Vertex> s(d), rest(k - d);
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != d) continue;
    std::size_t si = 0, ri = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1U << i)) {
        s[si++] = e[i];
      } else {
        rest[ri++] = e[i];
      }
    }
    visit(colex_rank(s), rest);
  }
}

}  // namespace

std::vector<std::uint32_t> degree_table(const Hypergraph& h, std::size_t d) {
  std::vector<std::uint32_t> table(dense_size(h.n(), d), 0);
  const auto& edges = h.edges();
  const auto count = static_cast<std::int64_t>(edges.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    split_edge(edges[i], d, [&](std::uint64_t rank, const std::vector<Vertex>&) {
#pragma omp atomic
      ++table[rank];
    });
  }
  return table;
}

std::vector<std::uint32_t> degree_table_reference(const Hypergraph& h, std::size_t d) {
  std::vector<std::uint32_t> table(dense_size(h.n(), d), 0);
  const std::size_t n = h.n(), k = h.k();
  for_each_subset(n, d, [&](std::span<const Vertex> s) {
    std::vector<Vertex> others;
    for (Vertex v = 0; v < n; ++v) {
      if (std::find(s.begin(), s.end(), v) == s.end()) others.push_back(v);
    }
    std::uint32_t deg = 0;
    for_each_subset(others.size(), k - d, [&](std::span<const Vertex> pick) {
      Edge e(s.begin(), s.end());
      for (Vertex p : pick) e.push_back(others[p]);
      std::sort(e.begin(), e.end());
      if (h.has_edge(e)) ++deg;
    });
    table[colex_rank(s)] = deg;
  });
  return table;
}

std::vector<std::uint32_t> colour_multiplicity(std::span<const Hypergraph> members,
                                               std::span<const std::uint32_t> colours) {
  if (members.empty()) return {};
  const auto total = dense_size(members.front().n(), members.front().k());
  std::vector<std::uint32_t> out(total, 0);
  const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < count; ++r) {
    std::uint32_t c = 0;
    for (auto colour : colours) c += members[colour].has_edge_rank(static_cast<std::uint64_t>(r));
    out[r] = c;
  }
  return out;
}

std::vector<std::uint32_t> colour_multiplicity_reference(std::span<const Hypergraph> members,
                                                         std::span<const std::uint32_t> colours) {
  if (members.empty()) return {};
  std::vector<std::uint32_t> out(dense_size(members.front().n(), members.front().k()), 0);
  for (auto colour : colours) {
    for (const auto& e : members[colour].edges()) ++out[colex_rank(e)];
  }
  return out;
}

namespace {

struct MemberAudit {
  double min_margin = std::numeric_limits<double>::infinity();
  std::optional<AuditViolation> violation;
};

void fold(PartitionAudit& out, const MemberAudit& m) {
  out.min_margin = std::min(out.min_margin, m.min_margin);
  if (m.violation && !out.first_violation) {
    out.ok = false;
    out.first_violation = m.violation;
  }
}

MemberAudit judge(std::size_t member, std::size_t parts, std::uint64_t sets,
                  const std::vector<std::uint32_t>& counts, std::span<const double> required) {
  MemberAudit m;
  for (std::size_t p = 0; p < parts; ++p) {
    for (std::uint64_t r = 0; r < sets; ++r) {
      const auto deg = counts[p * sets + r];
      const double margin = static_cast<double>(deg) - required[p];
      if (margin < m.min_margin) m.min_margin = margin;
      if (margin < 0 && !m.violation) m.violation = AuditViolation{member, p, r, deg, required[p]};
    }
  }
  return m;
}

}  // namespace

PartitionAudit audit_partition(std::span<const Hypergraph> members,
                               std::span<const std::uint32_t> part_of, std::size_t parts,
                               std::size_t d, std::span<const double> required) {
  PartitionAudit out;
  out.min_margin = std::numeric_limits<double>::infinity();
  if (members.empty()) return out;
  const auto sets = dense_size(members.front().n(), d);
  std::vector<MemberAudit> per(members.size());
  const auto count = static_cast<std::int64_t>(members.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t j = 0; j < count; ++j) {
    std::vector<std::uint32_t> counts(parts * sets, 0);
    for (const auto& e : members[j].edges()) {
      split_edge(e, d, [&](std::uint64_t rank, const std::vector<Vertex>& rest) {
        const auto p = part_of[rest.front()];
        for (Vertex v : rest) {
          if (part_of[v] != p) return;
        }
        ++counts[p * sets + rank];
      });
    }
    per[j] = judge(static_cast<std::size_t>(j), parts, sets, counts, required);
  }
  for (const auto& m : per) fold(out, m);
  return out;
}

PartitionAudit audit_partition_reference(std::span<const Hypergraph> members,
                                         std::span<const std::uint32_t> part_of,
                                         std::size_t parts, std::size_t d,
                                         std::span<const double> required) {
  PartitionAudit out;
  out.min_margin = std::numeric_limits<double>::infinity();
  if (members.empty()) return out;
  const std::size_t n = members.front().n(), k = members.front().k();
  const auto sets = dense_size(n, d);
  std::vector<std::vector<Vertex>> part_vertices(parts);
  for (Vertex v = 0; v < n; ++v) part_vertices[part_of[v]].push_back(v);
  for (std::size_t j = 0; j < members.size(); ++j) {
    std::vector<std::uint32_t> counts(parts * sets, 0);
    for_each_subset(n, d, [&](std::span<const Vertex> s) {
      const auto rank = colex_rank(s);
      for (std::size_t p = 0; p < parts; ++p) {
        std::vector<Vertex> pool;
        for (Vertex v : part_vertices[p]) {
          if (std::find(s.begin(), s.end(), v) == s.end()) pool.push_back(v);
        }
        for_each_subset(pool.size(), k - d, [&](std::span<const Vertex> pick) {
          Edge e(s.begin(), s.end());
          for (Vertex i : pick) e.push_back(pool[i]);
          std::sort(e.begin(), e.end());
          if (members[j].has_edge(e)) ++counts[p * sets + rank];
        });
      }
    });
    fold(out, judge(j, parts, sets, counts, required));
  }
  return out;
}

}  // namespace rainbow::kernels
