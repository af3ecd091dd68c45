#include "rainbow/gen.hpp"

#include <algorithm>
#include <cmath>

#include "rainbow/error.hpp"
#include "rainbow/kernels.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Random: return "random";
    case Family::Bridge: return "bridge";
    case Family::DiracExtremal: return "dirac-extremal";
  }
  return "?";
}

Family family_from_tag(std::string_view tag) {
  if (tag == "random") return Family::Random;
  if (tag == "bridge") return Family::Bridge;
  if (tag == "dirac-extremal") return Family::DiracExtremal;
  throw Error(ErrorCode::Parse, "unknown family '" + std::string(tag) + "'");
}

std::size_t degree_target(std::size_t n, std::size_t k, std::size_t d, double delta_fraction) {
  const double scale = std::pow(static_cast<double>(n), static_cast<double>(k - d));
  // the epsilon keeps 0.7 * 80 from rounding up to 57
  const auto want = static_cast<std::uint64_t>(std::ceil(delta_fraction * scale - 1e-9));
  return static_cast<std::size_t>(std::min<std::uint64_t>(want, binom(n - d, k - d)));
}

namespace {

Hypergraph repaired_member(std::size_t n, std::size_t k, std::size_t d, std::size_t target, double density,
                           Rng rng) {
  const auto total = binom(n, k);
  std::vector<bool> present(total, false);
  std::vector<Edge> edges;
  for_each_subset(n, k, [&](std::span<const Vertex> s) {
    if (rng.bernoulli(density)) {
      present[colex_rank(s)] = true;
      edges.emplace_back(s.begin(), s.end());
    }
  });
  auto degree = kernels::degree_table(Hypergraph(n, k, edges), d);

  std::vector<Vertex> set(d), rest_pool, sub(d);
  while (true) {
    // lowest-degree deficient d-set, ties broken by lowest rank
    std::uint64_t worst = degree.size();
    for (std::uint64_t r = 0; r < degree.size(); ++r) {
      if (degree[r] < target && (worst == degree.size() || degree[r] < degree[worst])) worst = r;
    }
    if (worst == degree.size()) break;
    colex_unrank(worst, d, set);
    rest_pool.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (std::find(set.begin(), set.end(), v) == set.end()) rest_pool.push_back(v);
    }
    // among missing edges through this set, prefer the one fixing most deficient sets
    std::vector<Edge> best;
    std::size_t best_score = 0;
    for_each_subset(rest_pool.size(), k - d, [&](std::span<const Vertex> pick) {
      Edge e(set.begin(), set.end());
      for (Vertex i : pick) e.push_back(rest_pool[i]);
      std::sort(e.begin(), e.end());
      if (present[colex_rank(e)]) return;
      std::size_t score = 0;
      for_each_subset(k, d, [&](std::span<const Vertex> idx) {
        for (std::size_t i = 0; i < d; ++i) sub[i] = e[idx[i]];
        if (degree[colex_rank(sub)] < target) ++score;
      });
      if (score > best_score) {
        best_score = score;
        best.clear();
      }
      if (score == best_score) best.push_back(std::move(e));
    });
    if (best.empty()) throw Error(ErrorCode::Unachievable, "degree floor exceeds what repair can reach");
    Edge chosen = std::move(best[rng.below(best.size())]);
    present[colex_rank(chosen)] = true;
    for_each_subset(k, d, [&](std::span<const Vertex> idx) {
      for (std::size_t i = 0; i < d; ++i) sub[i] = chosen[idx[i]];
      ++degree[colex_rank(sub)];
    });
    edges.push_back(std::move(chosen));
  }
  return Hypergraph(n, k, std::move(edges));
}

}  // namespace

Collection random_collection(const GenSpec& spec) {
  const std::size_t n = spec.n, k = spec.k, d = spec.d;
  if (k < 2 || d < 1 || d >= k || n < k) throw Error(ErrorCode::InvalidArgument, "need 1 <= d < k <= n");
  if (!(spec.delta_fraction >= 0.0 && spec.delta_fraction <= 1.0)) {
    throw Error(ErrorCode::Unachievable, "delta fraction outside [0, 1]");
  }
  if (binom(n, k) > kernels::kDenseLimit) throw Error(ErrorCode::InvalidArgument, "instance too large");
  const auto target = degree_target(n, k, d, spec.delta_fraction);
  const double density = std::min(1.0, spec.delta_fraction + spec.margin);
  Rng master(spec.seed);
  std::vector<Hypergraph> members;
  members.reserve(spec.m);
  for (std::size_t j = 0; j < spec.m; ++j) {
    members.push_back(repaired_member(n, k, d, target, density, master.split(j)));
  }
  Collection c(n, k, std::move(members));
  if (spec.m > 0 && collection_min_degree(c, d) < target) {
    throw Error(ErrorCode::Unachievable, "degree audit failed after repair");
  }
  return c;
}

Collection bridge_construction(std::size_t n, std::size_t m) {
  if (n < 4 || m < 2) throw Error(ErrorCode::InvalidArgument, "bridge construction needs n >= 4, m >= 2");
  const std::size_t a = (n + 1) / 2;
  std::vector<Edge> cliques, bipartite;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const bool same = (u < a) == (v < a);
      (same ? cliques : bipartite).push_back({u, v});
    }
  }
  std::vector<Hypergraph> members(m - 1, Hypergraph(n, 2, cliques));
  members.emplace_back(n, 2, bipartite);
  return Collection(n, 2, std::move(members));
}

Collection dirac_extremal(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "dirac extremal needs n >= 3");
  const std::size_t big = (n + 2) / 2;  // ceil((n+1)/2)
  std::vector<Edge> edges;
  for (Vertex u = 0; u < big; ++u) {
    for (Vertex v = static_cast<Vertex>(big); v < n; ++v) edges.push_back({u, v});
  }
  return Collection(n, 2, std::vector<Hypergraph>(n, Hypergraph(n, 2, edges)));
}

Collection generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::Random: return random_collection(spec);
    case Family::Bridge: return bridge_construction(spec.n, spec.m);
    case Family::DiracExtremal: return dirac_extremal(spec.n);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family");
}

}  // namespace rainbow
