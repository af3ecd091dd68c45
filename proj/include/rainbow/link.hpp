#pragma once

// l-links, chains of overlapping shifted link copies, and the cycles obtained
// by closing a chain up.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rainbow/hypergraph.hpp"

namespace rainbow {

// An ordered hypergraph on m vertices whose first-l and last-l induced
// patterns coincide. Consecutive links in a chain overlap in those l vertices.
class Link {
 public:
  // Throws Error(StartEndMismatch) when the two l-windows differ.
  static Link make(OrderedHypergraph body, std::size_t ell, std::string name = {});

  const OrderedHypergraph& body() const noexcept { return body_; }
  const OrderedHypergraph& start() const noexcept { return start_; }
  std::size_t order() const noexcept { return body_.n(); }
  std::size_t ell() const noexcept { return ell_; }
  std::size_t k() const noexcept { return body_.k(); }
  std::size_t edges() const noexcept { return body_.num_edges(); }
  std::size_t start_edges() const noexcept { return start_.num_edges(); }
  // m - l: offset between consecutive windows. Zero for degenerate links.
  std::size_t stride() const noexcept { return order() - ell_; }
  // Edges contributed by each further window: e(A) - e(A_s).
  std::size_t edges_per_window() const noexcept { return edges() - start_edges(); }
  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Link& a, const Link& b) {
    return a.ell_ == b.ell_ && a.body_ == b.body_;
  }

 private:
  Link(OrderedHypergraph body, OrderedHypergraph start, std::size_t ell, std::string name)
      : body_(std::move(body)), start_(std::move(start)), ell_(ell), name_(std::move(name)) {}

  OrderedHypergraph body_;
  OrderedHypergraph start_;
  std::size_t ell_;
  std::string name_;
};

Link make_link(OrderedHypergraph body, std::size_t ell);

// Built-ins.
Link edge_link(std::size_t k, std::size_t ell);  // single k-edge; chains are l-paths
Link triangle_link();                            // chains are squares of paths
Link clique_link(std::size_t r);                 // K_r as an (r-1)-link
Link pillar_link();                              // C_4 ordered so chains are pillars
// Accepts "edge(k,ell)", "triangle", "clique(r)", "pillar".
Link link_from_name(std::string_view name);

struct ChainCounts {
  std::size_t vertices;
  std::size_t edges;
  friend bool operator==(const ChainCounts&, const ChainCounts&) = default;
};

ChainCounts chain_counts(const Link& link, std::size_t t);
// Edges of a Hamilton link-cycle on n vertices. Throws Divisibility, or TooShort
// when n < m or the cycle is so short that distinct windows share edges.
std::size_t cycle_counts(const Link& link, std::size_t n);

// Union of the link pattern shifted by stride*(q-1), q = 1..t.
OrderedHypergraph build_chain_template(const Link& link, std::size_t t);
// Identifies chain index i >= stride*t with i - stride*t; merges duplicate edges.
// Throws TooShort when stride*t < m.
Hypergraph close_cycle(const OrderedHypergraph& chain_template, const Link& link, std::size_t t);
Hypergraph cycle_template(const Link& link, std::size_t n);

struct ChainLayout {
  std::size_t t = 0;
  std::size_t order = 0;   // m
  std::size_t stride = 0;  // m - l

  std::size_t vertex_count() const { return stride * t + (order - stride); }
  // First index of window q (0-based).
  std::size_t window_start(std::size_t q) const { return q * stride; }
};

ChainLayout chain_layout(const Link& link, std::size_t t);

enum class ChainMatch {
  Exact,    // every window induces exactly the link pattern; no edges outside windows
  Contain,  // every window contains the link pattern; other edges are ignored
};

std::optional<ChainLayout> is_chain(const OrderedHypergraph& candidate, const Link& link,
                                    ChainMatch mode = ChainMatch::Exact);

struct RealisedEdge {
  Edge edge;           // host vertices, sorted
  std::size_t window;  // 0-based window that realises it
};

// A chain layout placed on host vertices. vertices[i] is the host vertex at
// chain index i.
struct EmbeddedChain {
  ChainLayout layout;
  std::vector<Vertex> vertices;
  std::vector<RealisedEdge> edges;  // one per chain-template edge

  std::span<const Vertex> start(std::size_t ell) const { return {vertices.data(), ell}; }
  std::span<const Vertex> end(std::size_t ell) const {
    return {vertices.data() + vertices.size() - ell, ell};
  }
};

// Realises the chain template of the right length on the given vertex sequence.
// Throws when the sequence length is not stride*t + l or vertices repeat.
EmbeddedChain embed_chain(const Link& link, std::vector<Vertex> sequence);
// Checks every realised edge is a host edge (chain inside the host).
bool chain_in_host(const EmbeddedChain& chain, const Hypergraph& host);

// Searches for a cyclic labelling of the given edge set as a Hamilton
// link-cycle on n vertices. Returns position -> vertex on success.
std::optional<std::vector<Vertex>> find_cycle_labelling(const std::vector<Edge>& edges,
                                                        std::size_t n, const Link& link);

}  // namespace rainbow
