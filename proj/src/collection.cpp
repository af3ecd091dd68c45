#include "rainbow/collection.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rainbow/error.hpp"
#include "rainbow/kernels.hpp"
#include "rainbow/matching.hpp"

namespace rainbow {

Collection::Collection(std::size_t n, std::size_t k, std::vector<Hypergraph> members)
    : n_(n), k_(k), members_(std::move(members)) {
  for (const auto& h : members_) {
    if (h.n() != n_ || h.k() != k_) {
      throw Error(ErrorCode::InvalidArgument, "collection members must share n and k");
    }
  }
}

std::vector<Colour> Collection::colours_of(std::span<const Vertex> edge) const {
  std::vector<Colour> out;
  for (Colour c = 0; c < members_.size(); ++c) {
    if (members_[c].has_edge(edge)) out.push_back(c);
  }
  return out;
}

std::vector<Colour> Collection::colours_of(std::span<const Vertex> edge,
                                           std::span<const Colour> allowed) const {
  std::vector<Colour> out;
  for (Colour c : allowed) {
    if (members_[c].has_edge(edge)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Colour> all_colours(const Collection& c) {
  std::vector<Colour> out(c.size());
  std::iota(out.begin(), out.end(), Colour{0});
  return out;
}

std::size_t collection_min_degree(const Collection& c, std::size_t d) {
  if (c.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty collection");
  std::size_t best = SIZE_MAX;
  for (const auto& h : c.members()) best = std::min(best, min_degree_d(h, d));
  return best;
}

Hypergraph threshold_hypergraph(const Collection& c, std::span<const Colour> colours, std::size_t theta) {
  for (Colour col : colours) {
    if (col >= c.size()) throw Error(ErrorCode::InvalidArgument, "colour out of range");
  }
  std::vector<Edge> edges;
  if (binom(c.n(), c.k()) <= kernels::kDenseLimit) {
    const auto counts = kernels::colour_multiplicity(c.members(), colours);
    std::vector<Vertex> e(c.k());
    for (std::uint64_t r = 0; r < counts.size(); ++r) {
      if (counts[r] >= theta) {
        colex_unrank(r, c.k(), e);
        edges.push_back(e);
      }
    }
  } else {
    if (theta == 0) throw Error(ErrorCode::InvalidArgument, "complete hypergraph too large");
    std::map<Edge, std::size_t> counts;
    for (Colour col : colours) {
      for (const auto& e : c[col].edges()) ++counts[e];
    }
    for (const auto& [e, count] : counts) {
      if (count >= theta) edges.push_back(e);
    }
  }
  return Hypergraph(c.n(), c.k(), std::move(edges));
}

Hypergraph union_hypergraph(const Collection& c, std::span<const Colour> colours) {
  return threshold_hypergraph(c, colours, 1);
}

std::string_view to_string(Diagnosis d) {
  switch (d) {
    case Diagnosis::Ok: return "Ok";
    case Diagnosis::Malformed: return "Malformed";
    case Diagnosis::DuplicateColour: return "DuplicateColour";
    case Diagnosis::EdgeNotInColour: return "EdgeNotInColour";
    case Diagnosis::NotSpanning: return "NotSpanning";
    case Diagnosis::NotCycleShape: return "NotCycleShape";
  }
  return "?";
}

namespace {

Verification fail(Diagnosis d, std::string detail, std::optional<std::size_t> edge = std::nullopt) {
  return {d, edge, std::move(detail)};
}

// Connected and 2-regular on all n vertices.
bool is_hamilton_cycle_graph(const std::vector<Edge>& edges, std::size_t n) {
  if (edges.size() != n || n < 3) return false;
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& e : edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (const auto& a : adj) {
    if (a.size() != 2) return false;
  }
  std::size_t seen = 1;
  Vertex prev = 0, cur = adj[0][0];
  while (cur != 0) {
    ++seen;
    const Vertex next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
  }
  return seen == n;
}

}  // namespace

Verification verify_certificate(const Collection& c, const TransversalCertificate& cert,
                                const std::optional<ExpectedShape>& expected) {
  if (cert.edges.size() != cert.phi.size()) {
    return fail(Diagnosis::Malformed, "edges and phi differ in length");
  }
  std::vector<Edge> sorted_edges;
  for (std::size_t i = 0; i < cert.edges.size(); ++i) {
    const auto& e = cert.edges[i];
    if (e.size() != c.k()) return fail(Diagnosis::Malformed, "edge of wrong size", i);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] >= c.n() || (j > 0 && e[j - 1] >= e[j])) {
        return fail(Diagnosis::Malformed, "edge is not a sorted tuple of vertices", i);
      }
    }
    if (cert.phi[i] >= c.size()) return fail(Diagnosis::Malformed, "colour out of range", i);
    sorted_edges.push_back(e);
  }
  std::sort(sorted_edges.begin(), sorted_edges.end());
  if (std::adjacent_find(sorted_edges.begin(), sorted_edges.end()) != sorted_edges.end()) {
    return fail(Diagnosis::Malformed, "repeated edge");
  }
  {
    std::vector<std::size_t> first(c.size(), SIZE_MAX);
    for (std::size_t i = 0; i < cert.phi.size(); ++i) {
      auto& slot = first[cert.phi[i]];
      if (slot != SIZE_MAX) {
        return fail(Diagnosis::DuplicateColour,
                    "colour " + std::to_string(cert.phi[i]) + " used by edges " +
                        std::to_string(slot) + " and " + std::to_string(i),
                    i);
      }
      slot = i;
    }
  }
  for (std::size_t i = 0; i < cert.edges.size(); ++i) {
    if (!c[cert.phi[i]].has_edge(cert.edges[i])) {
      return fail(Diagnosis::EdgeNotInColour,
                  "edge " + std::to_string(i) + " is not in colour " + std::to_string(cert.phi[i]), i);
    }
  }
  if (!expected) return {};

  const std::size_t n = expected->n;
  std::vector<bool> touched(c.n(), false);
  std::size_t count = 0;
  for (const auto& e : cert.edges) {
    for (Vertex v : e) {
      if (!touched[v]) {
        touched[v] = true;
        ++count;
      }
    }
  }
  if (n != c.n() || count != n) {
    return fail(Diagnosis::NotSpanning,
                "covers " + std::to_string(count) + " of " + std::to_string(c.n()) + " vertices");
  }
  const Link& link = expected->link;
  if (link.k() != c.k()) return fail(Diagnosis::NotCycleShape, "link uniformity differs");
  bool shaped;
  if (link.k() == 2 && link.ell() == 1 && link.order() == 2) {
    shaped = is_hamilton_cycle_graph(cert.edges, n);
  } else {
    shaped = find_cycle_labelling(cert.edges, n, link).has_value();
  }
  if (!shaped) return fail(Diagnosis::NotCycleShape, "edges do not form a Hamilton cycle of the link");
  return {};
}

std::optional<TransversalCertificate> rainbow_colouring(const Collection& c,
                                                        std::span<const Edge> target,
                                                        std::span<const Colour> allowed) {
  std::vector<Colour> pool(allowed.begin(), allowed.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (target.size() > pool.size()) return std::nullopt;
  // right side indexes pool positions
  std::vector<std::vector<std::uint32_t>> adj(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    for (std::uint32_t j = 0; j < pool.size(); ++j) {
      if (c[pool[j]].has_edge(target[i])) adj[i].push_back(j);
    }
    if (adj[i].empty()) return std::nullopt;
  }
  const auto match = maximum_matching(adj, pool.size());
  TransversalCertificate cert;
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (match[i] == BipartiteMatcher::kFree) return std::nullopt;
    cert.edges.push_back(target[i]);
    cert.phi.push_back(pool[match[i]]);
  }
  return cert;
}

}  // namespace rainbow
