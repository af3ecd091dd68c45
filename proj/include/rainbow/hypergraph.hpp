#pragma once

// k-uniform hypergraphs on vertices 0..n-1, d-degrees, induced subgraphs and
// ordered isomorphism.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <unordered_set>
#include <vector>

namespace rainbow {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;

// Binomial coefficient; saturates at UINT64_MAX on overflow.
std::uint64_t binom(std::uint64_t n, std::uint64_t k);

// Colex rank of a strictly increasing tuple: sum of C(v_i, i+1). Independent of n.
std::uint64_t colex_rank(std::span<const Vertex> sorted);
void colex_unrank(std::uint64_t rank, std::size_t k, std::span<Vertex> out);

// Visits every strictly increasing k-subset of {0..n-1} in colex order.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(std::span<const Vertex>)>& visit);

// Sorts and validates a vertex list. Throws on duplicates.
Edge make_edge(std::initializer_list<Vertex> vertices);
Edge make_edge(Edge vertices);

class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(std::size_t n, std::size_t k);
  // Every edge must be strictly increasing, inside {0..n-1}, of size k; no duplicates.
  Hypergraph(std::size_t n, std::size_t k, std::vector<Edge> edges);

  static Hypergraph complete(std::size_t n, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  // Lexicographically sorted.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(std::span<const Vertex> sorted) const;
  bool has_edge_rank(std::uint64_t rank) const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
  }

 private:
  void index();

  std::size_t n_ = 0;
  std::size_t k_ = 2;
  std::vector<Edge> edges_;
  // Dense bitset over colex ranks when C(n,k) is small, hash set otherwise.
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> sparse_;
};

// Vertex order is the integer order; re-indexing happens at construction, so
// ordered isomorphism reduces to edge-set equality.
using OrderedHypergraph = Hypergraph;

std::size_t degree_d(const Hypergraph& h, std::span<const Vertex> s);
std::size_t min_degree_d(const Hypergraph& h, std::size_t d);
Hypergraph induced(const Hypergraph& h, std::span<const Vertex> subset);
bool ordered_isomorphic(const OrderedHypergraph& a, const OrderedHypergraph& b);

}  // namespace rainbow
