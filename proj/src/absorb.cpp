#include "rainbow/absorb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rainbow/error.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

BipartiteAvailability::BipartiteAvailability(std::size_t left, std::size_t right,
                                             std::vector<std::vector<std::uint32_t>> adjacency)
    : left_count(left), right_count(right), adj(std::move(adjacency)) {
  if (adj.size() != left_count) throw Error(ErrorCode::InvalidArgument, "adjacency size differs from left count");
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (!list.empty() && list.back() >= right_count) {
      throw Error(ErrorCode::InvalidArgument, "right index out of range");
    }
  }
}

bool BipartiteAvailability::has(std::uint32_t left, std::uint32_t right) const {
  return std::binary_search(adj[left].begin(), adj[left].end(), right);
}

std::vector<std::size_t> BipartiteAvailability::right_degrees() const {
  std::vector<std::size_t> deg(right_count, 0);
  for (const auto& list : adj) {
    for (auto r : list) ++deg[r];
  }
  return deg;
}

bool completes(const BipartiteAvailability& k, std::span<const std::uint32_t> B0, std::span<const std::uint32_t> U) {
  if (B0.size() + U.size() < k.left_count) return false;
  std::vector<bool> allowed(k.right_count, false);
  for (auto r : B0) allowed[r] = true;
  for (auto r : U) allowed[r] = true;
  std::vector<std::vector<std::uint32_t>> adj(k.left_count);
  for (std::size_t i = 0; i < k.left_count; ++i) {
    for (auto r : k.adj[i]) {
      if (allowed[r]) adj[i].push_back(r);
    }
    if (adj[i].empty()) return false;
  }
  return saturates_left(adj, k.right_count);
}

namespace {

// Runs check(U) over all l-subsets of pool, or over `samples` random ones when
// C(|pool|, l) is past the limit. Stops at the first failure.
template <class Check>
AbsorberCheck check_subsets(std::span<const std::uint32_t> pool, std::size_t ell, std::uint64_t seed,
                            const AbsorberOptions& options, Check&& check) {
  AbsorberCheck out;
  const auto total = binom(pool.size(), ell);
  std::vector<std::uint32_t> U(ell);
  if (total <= options.exhaustive_limit) {
    out.exhaustive = true;
    bool failed = false;
    for_each_subset(pool.size(), ell, [&](std::span<const Vertex> pick) {
      if (failed) return;
      for (std::size_t i = 0; i < ell; ++i) U[i] = pool[pick[i]];
      ++out.checked;
      if (!check(U)) {
        failed = true;
        out.ok = false;
        out.counterexample = U;
      }
    });
    return out;
  }
  out.exhaustive = false;
  Rng rng(seed);
  std::vector<std::uint32_t> shuffled(pool.begin(), pool.end());
  for (std::size_t s = 0; s < options.samples; ++s) {
    // partial Fisher-Yates for a uniform l-subset
    for (std::size_t i = 0; i < ell; ++i) {
      std::swap(shuffled[i], shuffled[i + rng.below(shuffled.size() - i)]);
      U[i] = shuffled[i];
    }
    ++out.checked;
    if (!check(U)) {
      out.ok = false;
      out.counterexample = U;
      std::sort(out.counterexample.begin(), out.counterexample.end());
      return out;
    }
  }
  return out;
}

}  // namespace

AbsorberCheck verify_matching_absorber(const BipartiteAvailability& k, std::span<const std::uint32_t> B0,
                                       std::span<const std::uint32_t> B1, std::size_t ell, std::uint64_t seed,
                                       const AbsorberOptions& options) {
  return check_subsets(B1, ell, seed, options, [&](std::span<const std::uint32_t> U) { return completes(k, B0, U); });
}

std::optional<MatchingAbsorber> build_matching_absorber(const BipartiteAvailability& k, std::size_t ell,
                                                        double alpha, std::uint64_t seed,
                                                        const AbsorberOptions& options) {
  const std::size_t mA = k.left_count, nB = k.right_count;
  if (ell > mA) throw Error(ErrorCode::InvalidArgument, "l exceeds the left side");
  for (std::size_t i = 0; i < mA; ++i) {
    if (k.adj[i].size() < ell + 1) {
      throw Error(ErrorCode::InfeasibleDegrees, "left vertex " + std::to_string(i) + " has degree " +
                                                    std::to_string(k.adj[i].size()) + " < l + 1");
    }
  }
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < mA; ++i) {
    if (static_cast<double>(k.adj[i].size()) < alpha * static_cast<double>(nB)) {
      warnings.push_back("left vertex " + std::to_string(i) + " has degree below alpha * |B|");
      break;
    }
  }
  if (static_cast<double>(ell) > std::pow(alpha, 7) * static_cast<double>(mA) / 1e5) {
    warnings.push_back("l is above alpha^7 |A| / 10^5");
  }

  const auto right_deg = k.right_degrees();
  const std::size_t floor_b1 = std::max(ell, options.min_b1);
  Rng master(seed);
  for (std::size_t attempt = 0; attempt < options.retries; ++attempt) {
    Rng rng = master.split(attempt);
    // random matching of A into B: shuffle each adjacency list and the left order
    std::vector<std::size_t> left(mA);
    std::iota(left.begin(), left.end(), 0);
    rng.shuffle(left);
    std::vector<std::vector<std::uint32_t>> adj(mA);
    for (std::size_t i = 0; i < mA; ++i) {
      adj[i] = k.adj[left[i]];
      rng.shuffle(adj[i]);
    }
    const auto match = maximum_matching(adj, nB);
    if (std::any_of(match.begin(), match.end(), [](std::uint32_t r) { return r == BipartiteMatcher::kFree; })) {
      return std::nullopt;  // no matching saturates A, so no absorber exists
    }
    // drop the l best-connected left vertices; the rest fix B0
    std::vector<std::size_t> by_degree(mA);
    std::iota(by_degree.begin(), by_degree.end(), 0);
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](std::size_t a, std::size_t b) { return adj[a].size() > adj[b].size(); });
    std::vector<bool> dropped(mA, false);
    for (std::size_t i = 0; i < ell; ++i) dropped[by_degree[i]] = true;
    MatchingAbsorber out;
    out.ell = ell;
    std::vector<bool> in_b0(nB, false);
    for (std::size_t i = 0; i < mA; ++i) {
      if (!dropped[i]) {
        out.B0.push_back(match[i]);
        in_b0[match[i]] = true;
      }
    }
    std::sort(out.B0.begin(), out.B0.end());
    for (std::uint32_t r = 0; r < nB; ++r) {
      if (!in_b0[r] && right_deg[r] > 0) out.B1.push_back(r);
    }
    // prune the weakest vertex of each failing U until the property holds
    while (out.B1.size() >= floor_b1) {
      out.check = verify_matching_absorber(k, out.B0, out.B1, ell, rng.split("verify").next(), options);
      if (out.check.ok) break;
      const auto victim = *std::min_element(
          out.check.counterexample.begin(), out.check.counterexample.end(),
          [&](std::uint32_t a, std::uint32_t b) { return right_deg[a] < right_deg[b] || (right_deg[a] == right_deg[b] && a < b); });
      out.B1.erase(std::find(out.B1.begin(), out.B1.end(), victim));
    }
    if (out.check.ok && out.B1.size() >= floor_b1) {
      out.attempts = attempt + 1;
      out.warnings = warnings;
      return out;
    }
  }
  return std::nullopt;
}

namespace {

std::vector<Vertex> random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  rng.shuffle(p);
  return p;
}

Hypergraph relabel(const Hypergraph& h, std::span<const Vertex> to) {
  std::vector<Edge> edges;
  edges.reserve(h.num_edges());
  for (const auto& e : h.edges()) {
    Edge r;
    for (Vertex v : e) r.push_back(to[v]);
    std::sort(r.begin(), r.end());
    edges.push_back(std::move(r));
  }
  return Hypergraph(h.n(), h.k(), std::move(edges));
}

}  // namespace

ColourAbsorber build_colour_absorber(const Collection& c, const Hypergraph& pattern, std::size_t gamma_n,
                                     double alpha, std::uint64_t seed, const ColourAbsorberOptions& options) {
  if (pattern.num_edges() <= gamma_n) throw Error(ErrorCode::InvalidArgument, "pattern needs more than gamma_n edges");
  const auto colours = all_colours(c);
  const auto theta = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(c.size()) - 1e-9));
  const auto K = threshold_hypergraph(c, colours, theta);

  // search a randomly relabelled host so different seeds give different copies
  Rng rng(seed);
  const auto to = random_permutation(c.n(), rng);
  std::vector<Vertex> from(c.n());
  for (Vertex v = 0; v < c.n(); ++v) from[to[v]] = v;
  std::vector<bool> available;
  if (!options.available.empty()) {
    available.assign(c.n(), false);
    for (Vertex v = 0; v < c.n(); ++v) available[to[v]] = v < options.available.size() && options.available[v];
  }
  const auto found = find_copy(relabel(K, to), pattern, options.budget, available);
  if (!found.found()) throw Error(ErrorCode::NoCopyFound, "no copy of the pattern in the threshold hypergraph");

  ColourAbsorber out;
  out.gamma_n = gamma_n;
  for (Vertex img : found.embedding) out.vertices.push_back(from[img]);
  std::vector<std::vector<std::uint32_t>> adj;
  for (const auto& e : pattern.edges()) {
    Edge host;
    for (Vertex v : e) host.push_back(out.vertices[v]);
    std::sort(host.begin(), host.end());
    adj.push_back(c.colours_of(host));
    out.edges.push_back(std::move(host));
  }
  const BipartiteAvailability avail(pattern.num_edges(), c.size(), std::move(adj));
  auto absorber = build_matching_absorber(avail, gamma_n, alpha, rng.split("absorber").next(), options.absorber);
  if (!absorber) throw Error(ErrorCode::AbsorberFailed, "no verified matching absorber within the retry budget");
  out.A.assign(absorber->B0.begin(), absorber->B0.end());
  out.Cset.assign(absorber->B1.begin(), absorber->B1.end());
  out.absorber = std::move(*absorber);
  return out;
}

AbsorberCheck verify_colour_absorber(const Collection& c, const ColourAbsorber& absorber, std::uint64_t seed,
                                     const AbsorberOptions& options, std::span<const Colour> pool) {
  if (pool.empty()) pool = absorber.Cset;
  return check_subsets(pool, absorber.gamma_n, seed, options, [&](std::span<const std::uint32_t> B) {
    std::vector<Colour> allowed(absorber.A.begin(), absorber.A.end());
    allowed.insert(allowed.end(), B.begin(), B.end());
    const auto cert = rainbow_colouring(c, absorber.edges, allowed);
    if (!cert) return false;
    std::vector<Colour> used = cert->phi;
    std::sort(used.begin(), used.end());
    return std::includes(used.begin(), used.end(), absorber.A.begin(), absorber.A.end());
  });
}

std::vector<double> partition_requirements(std::span<const Hypergraph> members, std::span<const std::size_t> sizes,
                                           double alpha, const PartitionOptions& options) {
  std::vector<double> required(sizes.size(), 0.0);
  if (members.empty()) return required;
  const std::size_t n = members.front().n(), k = members.front().k(), d = options.d;
  std::size_t delta = SIZE_MAX;
  for (const auto& h : members) delta = std::min(delta, min_degree_d(h, d));
  // Degrees are normalised by the largest degree a d-set can have inside a
  // part, C(size - d, k - d), so singleton and tiny parts stay satisfiable.
  const auto reach = [&](std::size_t size) {
    return size < d ? 0.0 : static_cast<double>(binom(size - d, k - d));
  };
  const double frac = reach(n) > 0 ? static_cast<double>(delta) / reach(n) : 0.0;
  const double coeff = frac - alpha / 2 - options.slack;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const bool checked = options.checked_parts.empty() || (i < options.checked_parts.size() && options.checked_parts[i]);
    // degrees are integers, so the floor is rounded down
    required[i] = checked ? std::floor(coeff * reach(sizes[i]) + 1e-9) : -std::numeric_limits<double>::infinity();
  }
  return required;
}

std::optional<Partition> degree_preserving_partition(std::span<const Hypergraph> members,
                                                     std::span<const std::size_t> sizes, double alpha,
                                                     std::uint64_t seed, const PartitionOptions& options) {
  if (members.empty()) throw Error(ErrorCode::InvalidArgument, "empty collection");
  const std::size_t n = members.front().n();
  if (std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) != n) {
    throw Error(ErrorCode::SizesMismatch, "part sizes do not sum to n");
  }
  for (auto s : sizes) {
    if (s < options.min_part) throw Error(ErrorCode::InvalidArgument, "part smaller than the configured minimum");
  }
  std::vector<std::size_t> room(sizes.begin(), sizes.end());
  std::vector<bool> pinned(n, false);
  for (auto [v, part] : options.fixed) {
    if (v >= n || part >= sizes.size() || pinned[v] || room[part] == 0) {
      throw Error(ErrorCode::SizesMismatch, "fixed vertices do not fit the part sizes");
    }
    pinned[v] = true;
    --room[part];
  }
  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v) {
    if (!pinned[v]) free.push_back(v);
  }
  const auto required = partition_requirements(members, sizes, alpha, options);
  Rng master(seed);
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(options.retries, 1); ++attempt) {
    Rng rng = master.split(attempt);
    Partition p;
    p.part_of.assign(n, 0);
    for (auto [v, part] : options.fixed) p.part_of[v] = part;
    auto order = free;
    rng.shuffle(order);
    std::size_t at = 0;
    for (std::uint32_t part = 0; part < sizes.size(); ++part) {
      for (std::size_t i = 0; i < room[part]; ++i) p.part_of[order[at++]] = part;
    }
    p.audit = kernels::audit_partition(members, p.part_of, sizes.size(), options.d, required);
    if (p.audit.ok || !options.audit) {
      p.parts.assign(sizes.size(), {});
      for (Vertex v = 0; v < n; ++v) p.parts[p.part_of[v]].push_back(v);
      p.required = required;
      p.attempts = attempt + 1;
      return p;
    }
  }
  return std::nullopt;
}

std::optional<Partition> degree_preserving_partition(const Collection& c, std::span<const std::size_t> sizes,
                                                     double alpha, std::uint64_t seed,
                                                     const PartitionOptions& options) {
  return degree_preserving_partition(c.members(), sizes, alpha, seed, options);
}

FactorResult greedy_rainbow_factor(const Collection& c, std::span<const Colour> colours, const Link& link,
                                   std::span<const Vertex> vertices, const SearchBudget& budget) {
  FactorResult out;
  if (colours.empty()) return out;
  const std::size_t block = link.edges();
  std::vector<bool> free(c.n(), vertices.empty());
  for (Vertex v : vertices) free[v] = true;
  for (std::size_t b = 0; b * block < colours.size(); ++b) {
    if ((b + 1) * block > colours.size()) {
      out.complete = false;
      out.stuck_block = b;
      return out;
    }
    std::vector<Colour> palette(colours.begin() + b * block, colours.begin() + (b + 1) * block);
    const auto host = union_hypergraph(c, palette);
    EmbeddingProblem prob;
    prob.pattern = &link.body();
    prob.host = &host;
    prob.colours = &c;
    prob.allowed = palette;
    prob.available = free;
    for (std::size_t i = 0; i < link.order(); ++i) prob.order.push_back(i);
    const auto r = embed(prob, budget);
    if (!r.found()) {
      out.complete = false;
      out.stuck_block = b;
      return out;
    }
    for (Vertex v : r.embedding) free[v] = false;
    out.copies.push_back({r.embedding, *r.certificate});
  }
  return out;
}

namespace {

std::vector<std::size_t> even_sizes(std::size_t total, std::size_t parts) {
  std::vector<std::size_t> sizes(parts, total / parts);
  for (std::size_t i = 0; i < total % parts; ++i) ++sizes[i];
  return sizes;
}

// Longest chain (by decreasing t) inside `part` of K that can be coloured
// from `palette`. Returns nullopt when not even one window fits.
std::optional<RainbowChain> longest_rainbow_chain(const Collection& c, const Hypergraph& K, const Link& link,
                                                  std::span<const Vertex> part, std::span<const Colour> palette,
                                                  const SearchBudget& budget) {
  if (part.size() < link.order()) return std::nullopt;
  std::vector<bool> available(c.n(), false);
  for (Vertex v : part) available[v] = true;
  for (std::size_t t = (part.size() - link.ell()) / link.stride(); t >= 1; --t) {
    const auto pattern = build_chain_template(link, t);
    EmbeddingProblem prob;
    prob.pattern = &pattern;
    prob.host = &K;
    prob.available = available;
    for (std::size_t i = 0; i < pattern.n(); ++i) prob.order.push_back(i);
    const auto r = embed(prob, budget);
    if (!r.found()) continue;
    auto chain = embed_chain(link, r.embedding);
    std::vector<Edge> edges;
    for (const auto& re : chain.edges) edges.push_back(re.edge);
    auto colouring = rainbow_colouring(c, edges, palette);
    if (!colouring) continue;
    return RainbowChain{std::move(chain), std::move(*colouring)};
  }
  return std::nullopt;
}

}  // namespace

TilingResult rainbow_tiling(const Collection& c, const Link& link, std::size_t T, double omega, std::uint64_t seed,
                            const TilingOptions& options) {
  TilingResult out;
  std::vector<Vertex> ground = options.vertices;
  if (ground.empty()) {
    ground.resize(c.n());
    std::iota(ground.begin(), ground.end(), Vertex{0});
  }
  std::sort(ground.begin(), ground.end());
  std::vector<Colour> palette = options.colours.empty() ? all_colours(c) : options.colours;
  std::sort(palette.begin(), palette.end());
  if (T == 0 || ground.empty()) {
    out.uncovered = ground;
    out.unused = palette;
    return out;
  }
  const auto reserve = static_cast<std::size_t>(std::floor(omega * static_cast<double>(ground.size()) / 2));
  // no more parts than can each hold one copy of the link
  T = std::clamp<std::size_t>((ground.size() - reserve) / link.order(), 1, T);
  auto sizes = even_sizes(ground.size() - reserve, T);
  if (reserve > 0) sizes.push_back(reserve);

  std::vector<Hypergraph> restricted;
  restricted.reserve(palette.size());
  for (Colour col : palette) restricted.push_back(induced(c[col], ground));
  // the reserve part stays uncovered, so only the tiled parts are audited
  PartitionOptions popt = options.partition;
  if (popt.checked_parts.empty() && reserve > 0) {
    popt.checked_parts.assign(T, true);
    popt.checked_parts.push_back(false);
  }
  auto partition = degree_preserving_partition(restricted, sizes, options.alpha, seed, popt);
  if (!partition) throw Error(ErrorCode::PartitionFailed, "no audited partition for the tiling");
  // back to host labels; vertices outside the ground set get no part
  std::vector<std::uint32_t> part_of(c.n(), ~std::uint32_t{0});
  for (std::uint32_t i = 0; i < partition->parts.size(); ++i) {
    for (auto& v : partition->parts[i]) {
      v = ground[v];
      part_of[v] = i;
    }
  }
  partition->part_of = std::move(part_of);

  std::vector<bool> used_colour(c.size(), false);
  std::vector<bool> covered(c.n(), false);
  for (std::size_t i = 0; i < T; ++i) {
    std::vector<Colour> unused;
    for (Colour col : palette) {
      if (!used_colour[col]) unused.push_back(col);
    }
    if (unused.empty()) break;
    const auto theta =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(options.eta * static_cast<double>(unused.size()) - 1e-9)));
    const auto K = threshold_hypergraph(c, unused, theta);
    auto chain = longest_rainbow_chain(c, K, link, partition->parts[i], unused, options.budget);
    if (!chain) continue;
    for (Vertex v : chain->chain.vertices) covered[v] = true;
    for (Colour col : chain->colouring.phi) used_colour[col] = true;
    out.chains.push_back(std::move(*chain));
  }
  for (Vertex v : ground) {
    if (!covered[v]) out.uncovered.push_back(v);
  }
  for (Colour col : palette) {
    if (!used_colour[col]) out.unused.push_back(col);
  }
  out.partition = std::move(*partition);
  return out;
}

}  // namespace rainbow
