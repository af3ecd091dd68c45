#pragma once

// Slow, obviously-correct reimplementations used as test oracles. Nothing
// here calls the library's search, matching or kernel code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "rainbow/collection.hpp"
#include "rainbow/gen.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/link.hpp"
#include "rainbow/rng.hpp"

namespace oracle {

using rainbow::Collection;
using rainbow::Colour;
using rainbow::Edge;
using rainbow::Hypergraph;
using rainbow::Vertex;

// d-degree of S by scanning every k-subset of [n].
inline std::size_t degree(const Hypergraph& h, const std::vector<Vertex>& s) {
  const std::size_t n = h.n(), k = h.k();
  std::size_t count = 0;
  std::vector<int> pick(n, 0);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), 1);
  do {
    Edge e;
    for (Vertex v = 0; v < n; ++v) {
      if (pick[v]) e.push_back(v);
    }
    bool has_s = std::all_of(s.begin(), s.end(), [&](Vertex v) { return pick[v] == 1; });
    if (has_s && h.has_edge(e)) ++count;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return count;
}

inline std::size_t min_degree(const Hypergraph& h, std::size_t d) {
  std::size_t best = SIZE_MAX;
  std::vector<int> pick(h.n(), 0);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(d), pick.end(), 1);
  do {
    std::vector<Vertex> s;
    for (Vertex v = 0; v < h.n(); ++v) {
      if (pick[v]) s.push_back(v);
    }
    best = std::min(best, degree(h, s));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

inline std::size_t collection_min_degree(const Collection& c, std::size_t d) {
  std::size_t best = SIZE_MAX;
  for (const auto& h : c.members()) best = std::min(best, min_degree(h, d));
  return best;
}

// Shifted copies of the link body, collected in a set.
inline std::set<Edge> chain_edges(const rainbow::Link& link, std::size_t t) {
  std::set<Edge> out;
  for (std::size_t q = 0; q < t; ++q) {
    for (const auto& e : link.body().edges()) {
      Edge s;
      for (Vertex v : e) s.push_back(static_cast<Vertex>(v + q * link.stride()));
      out.insert(s);
    }
  }
  return out;
}

inline std::size_t chain_vertices(const rainbow::Link& link, std::size_t t) {
  std::set<Vertex> vs;
  for (std::size_t q = 0; q < t; ++q) {
    for (std::size_t i = 0; i < link.order(); ++i) vs.insert(static_cast<Vertex>(i + q * link.stride()));
  }
  return vs.size();
}

inline std::set<Edge> cycle_edges(const rainbow::Link& link, std::size_t n) {
  std::set<Edge> out;
  for (std::size_t q = 0; q * link.stride() < n; ++q) {
    for (const auto& e : link.body().edges()) {
      Edge s;
      for (Vertex v : e) s.push_back(static_cast<Vertex>((v + q * link.stride()) % n));
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) == s.end()) out.insert(s);
    }
  }
  return out;
}

// Is there an injective colour choice with edge i in a member containing it?
// Plain backtracking over a used-colour mask.
inline bool assignable(const Collection& c, const std::vector<Edge>& edges, std::vector<bool>& used,
                       std::size_t i = 0) {
  if (i == edges.size()) return true;
  for (Colour col = 0; col < c.size(); ++col) {
    if (used[col] || !c[col].has_edge(edges[i])) continue;
    used[col] = true;
    if (assignable(c, edges, used, i + 1)) return true;
    used[col] = false;
  }
  return false;
}

inline bool assignable(const Collection& c, const std::vector<Edge>& edges) {
  std::vector<bool> used(c.size(), false);
  return assignable(c, edges, used);
}

// Does any Hamilton cycle on [n] (k = 2) admit a rainbow colouring with all n colours?
// Enumerates cyclic orders starting at 0 with order[1] < order[n-1].
inline bool has_rainbow_hamilton_cycle(const Collection& c) {
  const std::size_t n = c.n();
  if (n < 3 || c.size() != n) return false;
  std::vector<Vertex> rest(n - 1);
  std::iota(rest.begin(), rest.end(), Vertex{1});
  do {
    if (rest.front() > rest.back()) continue;
    std::vector<Edge> edges;
    Vertex prev = 0;
    for (Vertex v : rest) {
      edges.push_back({std::min(prev, v), std::max(prev, v)});
      prev = v;
    }
    edges.push_back({0, prev});
    if (assignable(c, edges)) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

// Square of a Hamilton cycle: the order is a cyclic sequence, edges join
// positions at distance 1 and 2.
inline bool has_rainbow_square_cycle(const Collection& c) {
  const std::size_t n = c.n();
  std::vector<Vertex> rest(n - 1);
  std::iota(rest.begin(), rest.end(), Vertex{1});
  do {
    std::vector<Vertex> order{0};
    order.insert(order.end(), rest.begin(), rest.end());
    std::set<Edge> es;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t gap : {1u, 2u}) {
        Vertex a = order[i], b = order[(i + gap) % n];
        es.insert({std::min(a, b), std::max(a, b)});
      }
    }
    std::vector<Edge> edges(es.begin(), es.end());
    if (edges.size() == c.size() && assignable(c, edges)) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

inline Collection copies(const Hypergraph& h, std::size_t m) {
  return Collection(h.n(), h.k(), std::vector<Hypergraph>(m, h));
}

inline Hypergraph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    Vertex w = static_cast<Vertex>((v + 1) % n);
    edges.push_back({std::min(v, w), std::max(v, w)});
  }
  return Hypergraph(n, 2, edges);
}

inline Hypergraph random_graph(std::size_t n, std::size_t k, double p, rainbow::Rng& rng) {
  std::vector<Edge> edges;
  rainbow::for_each_subset(n, k, [&](std::span<const Vertex> s) {
    if (rng.bernoulli(p)) edges.emplace_back(s.begin(), s.end());
  });
  return Hypergraph(n, k, edges);
}

inline Collection random_collection(std::size_t n, std::size_t k, std::size_t m, double p, rainbow::Rng& rng) {
  std::vector<Hypergraph> members;
  for (std::size_t i = 0; i < m; ++i) members.push_back(random_graph(n, k, p, rng));
  return Collection(n, k, members);
}

}  // namespace oracle
