#include "rainbow/hypergraph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "rainbow/error.hpp"
#include "rainbow/kernels.hpp"

namespace rainbow {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t colex_rank(std::span<const Vertex> sorted) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) r += binom(sorted[i], i + 1);
  return r;
}

void colex_unrank(std::uint64_t rank, std::size_t k, std::span<Vertex> out) {
  for (std::size_t i = k; i-- > 0;) {
    // largest v with C(v, i+1) <= rank
    std::uint64_t v = i;
    while (binom(v + 1, i + 1) <= rank) ++v;
    out[i] = static_cast<Vertex>(v);
    rank -= binom(v, i + 1);
  }
}

void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(std::span<const Vertex>)>& visit) {
  if (k > n) return;
  std::vector<Vertex> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<Vertex>(i);
  if (k == 0) {
    visit(c);
    return;
  }
  while (true) {
    visit(c);
    // colex successor: bump the lowest position that can move
    std::size_t i = 0;
    while (i + 1 < k && c[i] + 1 == c[i + 1]) ++i;
    if (c[i] + 1 >= n && i + 1 == k) return;
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = static_cast<Vertex>(j);
  }
}

Edge make_edge(Edge vertices) {
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw Error(ErrorCode::InvalidArgument, "edge has a repeated vertex");
  }
  return vertices;
}

Edge make_edge(std::initializer_list<Vertex> vertices) { return make_edge(Edge(vertices)); }

Hypergraph::Hypergraph(std::size_t n, std::size_t k) : Hypergraph(n, k, {}) {}

Hypergraph::Hypergraph(std::size_t n, std::size_t k, std::vector<Edge> edges)
    : n_(n), k_(k), edges_(std::move(edges)) {
  if (k_ < 1) throw Error(ErrorCode::InvalidArgument, "uniformity must be positive");
  for (const auto& e : edges_) {
    if (e.size() != k_) {
      throw Error(ErrorCode::InvalidArgument, "edge size " + std::to_string(e.size()) +
                                                  " differs from uniformity " + std::to_string(k_));
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] >= n_) throw Error(ErrorCode::InvalidArgument, "edge vertex out of range");
      if (i > 0 && e[i - 1] >= e[i]) {
        throw Error(ErrorCode::InvalidArgument, "edge is not strictly increasing");
      }
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate edge");
  }
  index();
}

void Hypergraph::index() {
  const std::uint64_t total = binom(n_, k_);
  if (total <= kernels::kDenseLimit) {
    bits_.assign((total + 63) / 64, 0);
    for (const auto& e : edges_) {
      const auto r = colex_rank(e);
      bits_[r >> 6] |= std::uint64_t{1} << (r & 63);
    }
  } else {
    sparse_.reserve(edges_.size());
    for (const auto& e : edges_) sparse_.insert(colex_rank(e));
  }
}

Hypergraph Hypergraph::complete(std::size_t n, std::size_t k) {
  if (binom(n, k) > kernels::kDenseLimit) {
    throw Error(ErrorCode::InvalidArgument, "complete hypergraph too large");
  }
  std::vector<Edge> edges;
  for_each_subset(n, k, [&](std::span<const Vertex> s) { edges.emplace_back(s.begin(), s.end()); });
  return Hypergraph(n, k, std::move(edges));
}

bool Hypergraph::has_edge_rank(std::uint64_t rank) const {
  if (!bits_.empty() || sparse_.empty()) {
    const auto word = rank >> 6;
    return word < bits_.size() && ((bits_[word] >> (rank & 63)) & 1U);
  }
  return sparse_.count(rank) != 0;
}

bool Hypergraph::has_edge(std::span<const Vertex> sorted) const {
  if (sorted.size() != k_) return false;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= n_ || (i > 0 && sorted[i - 1] >= sorted[i])) return false;
  }
  return has_edge_rank(colex_rank(sorted));
}

namespace {

void check_d(const Hypergraph& h, std::size_t d) {
  if (d < 1 || d >= h.k()) {
    throw Error(ErrorCode::InvalidArgument,
                "d = " + std::to_string(d) + " outside [1, " + std::to_string(h.k() - 1) + "]");
  }
}

}  // namespace

std::size_t degree_d(const Hypergraph& h, std::span<const Vertex> s) {
  check_d(h, s.size());
  std::vector<Vertex> set(s.begin(), s.end());
  std::sort(set.begin(), set.end());
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] >= h.n()) throw Error(ErrorCode::InvalidArgument, "vertex not in the vertex set");
    if (i > 0 && set[i - 1] == set[i]) throw Error(ErrorCode::InvalidArgument, "repeated vertex in S");
  }
  std::size_t count = 0;
  for (const auto& e : h.edges()) {
    if (std::includes(e.begin(), e.end(), set.begin(), set.end())) ++count;
  }
  return count;
}

std::size_t min_degree_d(const Hypergraph& h, std::size_t d) {
  check_d(h, d);
  if (h.n() < d) throw Error(ErrorCode::InvalidArgument, "fewer than d vertices");
  const auto table = kernels::degree_table(h, d);
  return table.empty() ? 0 : *std::min_element(table.begin(), table.end());
}

Hypergraph induced(const Hypergraph& h, std::span<const Vertex> subset) {
  std::vector<Vertex> u(subset.begin(), subset.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  if (!u.empty() && u.back() >= h.n()) throw Error(ErrorCode::InvalidArgument, "vertex not in the vertex set");
  constexpr Vertex kAbsent = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> index(h.n(), kAbsent);
  for (std::size_t i = 0; i < u.size(); ++i) index[u[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const auto& e : h.edges()) {
    Edge mapped;
    mapped.reserve(e.size());
    for (Vertex v : e) {
      if (index[v] == kAbsent) break;
      mapped.push_back(index[v]);
    }
    if (mapped.size() == e.size()) edges.push_back(std::move(mapped));
  }
  return Hypergraph(u.size(), h.k(), std::move(edges));
}

bool ordered_isomorphic(const OrderedHypergraph& a, const OrderedHypergraph& b) { return a == b; }

}  // namespace rainbow
