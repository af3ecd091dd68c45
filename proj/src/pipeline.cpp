#include "rainbow/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "rainbow/error.hpp"
#include "rainbow/matching.hpp"

namespace rainbow {

std::vector<std::string> PipelineConfig::warnings() const {
  std::vector<std::string> out;
  auto order = [&](double a, const char* an, double b, const char* bn) {
    if (!(a < b)) out.push_back(std::string(an) + " >= " + bn);
  };
  order(gamma, "gamma", rho, "rho");
  order(rho, "rho", beta, "beta");
  order(beta, "beta", alpha, "alpha");
  order(omega, "omega", nu, "nu");
  order(nu, "nu", eta, "eta");
  return out;
}

const std::vector<StepRecord>& step_trace(const PipelineRun& run) { return run.trace; }

// ---------------------------------------------------------------------------
// built-in provider for graph Hamilton cycles

namespace {

std::vector<Vertex> shuffled_labels(std::size_t n, Rng& rng) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  rng.shuffle(p);
  return p;
}

Hypergraph relabelled(const Hypergraph& h, std::span<const Vertex> to) {
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

class PathProvider final : public Provider {
 public:
  PathProvider() : link_(edge_link(2, 1)) {}

  std::string name() const override { return "hc2uniform"; }
  const Link& link() const override { return link_; }

  std::optional<VertexAbsorber> ab_build(const Hypergraph& K, std::span<const Vertex> ground,
                                         const AbRequest& request, Rng& rng) const override {
    const std::size_t size = std::min<std::size_t>(std::max<std::size_t>(2, request.size), ground.size());
    if (size < 2) return std::nullopt;
    const auto pattern = build_chain_template(link_, size - 1);
    for (int attempt = 0; attempt < 10; ++attempt) {
      Rng local = rng.split(static_cast<std::uint64_t>(attempt));
      const auto to = shuffled_labels(K.n(), local);
      std::vector<Vertex> from(K.n());
      for (Vertex v = 0; v < K.n(); ++v) from[to[v]] = v;
      std::vector<bool> available(K.n(), false);
      for (Vertex v : ground) available[to[v]] = true;
      EmbeddingProblem prob;
      const auto host = relabelled(K, to);
      prob.pattern = &pattern;
      prob.host = &host;
      prob.available = available;
      for (std::size_t i = 0; i < size; ++i) prob.order.push_back(i);
      const auto r = embed(prob, request.budget);
      if (!r.found()) continue;
      VertexAbsorber absorber;
      for (Vertex v : r.embedding) absorber.chain.push_back(from[v]);

      // splice sampled leftover sets to check the absorber
      std::vector<bool> in_chain(K.n(), false);
      for (Vertex v : absorber.chain) in_chain[v] = true;
      std::vector<Vertex> outside;
      for (Vertex v : ground) {
        if (!in_chain[v]) outside.push_back(v);
      }
      const std::size_t cap = std::min(request.capacity, outside.size());
      bool ok = true;
      for (std::size_t s = 0; s < request.samples && ok && cap > 0; ++s) {
        auto pool = outside;
        local.shuffle(pool);
        pool.resize(cap);
        ok = ab_absorb(K, absorber, pool, request.budget).has_value();
        ++absorber.checked;
      }
      if (!ok) continue;
      absorber.capacity = cap;
      return absorber;
    }
    return std::nullopt;
  }

  std::optional<std::vector<Vertex>> ab_absorb(const Hypergraph& K, const VertexAbsorber& absorber,
                                               std::span<const Vertex> L,
                                               const SearchBudget& budget) const override {
    const auto& P = absorber.chain;
    if (L.empty()) return P;
    // each leftover vertex takes its own gap p_j p_{j+1} with both ends adjacent
    std::vector<std::vector<std::uint32_t>> adj(L.size());
    for (std::size_t i = 0; i < L.size(); ++i) {
      for (std::uint32_t j = 0; j + 1 < P.size(); ++j) {
        if (K.has_edge(make_edge({std::min(L[i], P[j]), std::max(L[i], P[j])})) &&
            K.has_edge(make_edge({std::min(L[i], P[j + 1]), std::max(L[i], P[j + 1])}))) {
          adj[i].push_back(j);
        }
      }
    }
    const auto match = maximum_matching(adj, P.size() > 0 ? P.size() - 1 : 0);
    if (std::none_of(match.begin(), match.end(), [](std::uint32_t r) { return r == BipartiteMatcher::kFree; })) {
      std::vector<std::optional<Vertex>> gap(P.size(), std::nullopt);
      for (std::size_t i = 0; i < L.size(); ++i) gap[match[i]] = L[i];
      std::vector<Vertex> out;
      for (std::size_t j = 0; j < P.size(); ++j) {
        out.push_back(P[j]);
        if (gap[j]) out.push_back(*gap[j]);
      }
      return out;
    }
    // fall back to an exact Hamilton path on P u L with the same ends
    const std::size_t N = P.size() + L.size();
    const auto pattern = build_chain_template(link_, N - 1);
    std::vector<bool> available(K.n(), false);
    for (Vertex v : P) available[v] = true;
    for (Vertex v : L) available[v] = true;
    EmbeddingProblem prob;
    prob.pattern = &pattern;
    prob.host = &K;
    prob.available = std::move(available);
    for (std::size_t i = 0; i < N; ++i) prob.order.push_back(i);
    prob.pins = {{0, P.front()}, {N - 1, P.back()}};
    const auto r = embed(prob, budget);
    if (!r.found()) return std::nullopt;
    return r.embedding;
  }

  std::optional<std::vector<Vertex>> con(const Hypergraph& K, std::span<const Vertex> from,
                                         std::span<const Vertex> to, std::span<const Vertex> reservoir,
                                         std::size_t max_windows) const override {
    const Vertex a = from[0], b = to[0];
    if (a == b || max_windows == 0) return std::nullopt;
    auto adjacent = [&](Vertex u, Vertex v) { return K.has_edge(make_edge({std::min(u, v), std::max(u, v)})); };
    if (adjacent(a, b)) return std::vector<Vertex>{a, b};
    // breadth-first search through the reservoir, lowest labels first
    std::vector<Vertex> pool(reservoir.begin(), reservoir.end());
    std::sort(pool.begin(), pool.end());
    std::vector<std::size_t> dist(pool.size(), SIZE_MAX), parent(pool.size(), SIZE_MAX);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i] != a && pool[i] != b && adjacent(a, pool[i])) {
        dist[i] = 1;
        queue.push_back(i);
      }
    }
    while (!queue.empty()) {
      const auto i = queue.front();
      queue.pop_front();
      if (dist[i] + 1 > max_windows) continue;
      if (adjacent(pool[i], b)) {
        std::vector<Vertex> path{b};
        for (auto j = i; j != SIZE_MAX; j = parent[j]) path.push_back(pool[j]);
        path.push_back(a);
        std::reverse(path.begin(), path.end());
        return path;
      }
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (dist[j] == SIZE_MAX && pool[j] != a && pool[j] != b && adjacent(pool[i], pool[j])) {
          dist[j] = dist[i] + 1;
          parent[j] = i;
          queue.push_back(j);
        }
      }
    }
    return std::nullopt;
  }

  FactorResult fac(const Collection& c, std::span<const Colour> colours, std::span<const Vertex> vertices,
                   const SearchBudget& budget) const override {
    if (vertices.empty() && !colours.empty()) {
      FactorResult r;
      r.complete = false;
      r.stuck_block = 0;
      return r;
    }
    return greedy_rainbow_factor(c, colours, link_, vertices, budget);
  }

 private:
  Link link_;
};

}  // namespace

std::unique_ptr<Provider> builtin_provider_hc2uniform() { return std::make_unique<PathProvider>(); }

// ---------------------------------------------------------------------------
// the solver

namespace {

struct StepFailure {
  std::string sub_operation;
  std::string message;
};

std::size_t scaled(double fraction, std::size_t n, std::size_t floor = 0) {
  return std::max<std::size_t>(floor, static_cast<std::size_t>(std::lround(fraction * static_cast<double>(n))));
}

std::vector<Vertex> minus(std::span<const Vertex> from, const std::vector<bool>& drop) {
  std::vector<Vertex> out;
  for (Vertex v : from) {
    if (!drop[v]) out.push_back(v);
  }
  return out;
}

class Solver {
 public:
  Solver(const Collection& c, const Provider& provider, const PipelineConfig& cfg, std::uint64_t seed)
      : c_(c),
        provider_(provider),
        link_(provider.link()),
        cfg_(cfg),
        rng_(seed),
        n_(c.n()),
        used_colour_(c.size(), false),
        covered_(c.n(), false) {}

  PipelineRun run() {
    PipelineRun out;
    out.seed = rng_.seed();
    int step = 0;
    const char* names[] = {"",
                           "colour absorber",
                           "vertex absorber",
                           "reservoir",
                           "balancing set",
                           "tiling",
                           "exhaust leftover colours",
                           "shrink balancing set",
                           "connect",
                           "absorb leftover vertices",
                           "colour the colour absorber"};
    try {
      for (step = 1; step <= 10; ++step) {
        extra_.clear();
        switch (step) {
          case 1: colour_absorber(); break;
          case 2: vertex_absorber(); break;
          case 3: reservoir(); break;
          case 4: balancing_set(); break;
          case 5: tiling(); break;
          case 6: exhaust_leftover(); break;
          case 7: shrink(); break;
          case 8: connect(); break;
          case 9: absorb_leftover(); break;
          case 10: colour_s1(); break;
        }
        trace_.push_back(record(step, names[step], true));
      }
      out.certificate = certificate_;
      out.cycle = cycle_;
    } catch (const StepFailure& f) {
      trace_.push_back(record(step, names[step], false));
      FailureReport report;
      report.step = step;
      report.step_name = names[step];
      report.sub_operation = f.sub_operation;
      report.message = f.message;
      report.seed = rng_.seed();
      report.trace = trace_;
      out.failure = std::move(report);
    }
    out.trace = trace_;
    return out;
  }

 private:
  [[noreturn]] static void fail(std::string sub, std::string message) {
    throw StepFailure{std::move(sub), std::move(message)};
  }

  StepRecord record(int step, const char* name, bool ok) const {
    StepRecord r;
    r.step = step;
    r.name = name;
    r.ok = ok;
    r.A = A_.size();
    r.C = C_.size();
    r.C1 = C1_.size();
    r.C2 = C2_.size();
    r.S2 = absorber_.chain.size();
    r.R1 = R1_.size();
    r.R2 = R2_.size();
    r.colours_consumed = static_cast<std::size_t>(std::count(used_colour_.begin(), used_colour_.end(), true));
    r.colours_unused = c_.size() - r.colours_consumed;
    r.vertices_covered = static_cast<std::size_t>(std::count(covered_.begin(), covered_.end(), true));
    r.extra = extra_;
    return r;
  }

  std::uint64_t seed_for(std::string_view tag) const { return rng_.split(tag).seed(); }

  void cover(std::span<const Vertex> vs) {
    for (Vertex v : vs) covered_[v] = true;
  }

  std::vector<Edge> chain_edges(std::span<const Vertex> seq) const {
    std::vector<Edge> edges;
    for (auto& re : embed_chain(link_, std::vector<Vertex>(seq.begin(), seq.end())).edges) {
      edges.push_back(std::move(re.edge));
    }
    return edges;
  }

  // Edges not coloured yet.
  std::vector<Edge> fresh(const std::vector<Edge>& edges) const {
    std::vector<Edge> out;
    for (const auto& e : edges) {
      if (!colour_of_.count(e)) out.push_back(e);
    }
    return out;
  }

  void assign(const TransversalCertificate& cert) {
    for (std::size_t i = 0; i < cert.edges.size(); ++i) {
      if (used_colour_[cert.phi[i]]) fail("assign colours", "colour " + std::to_string(cert.phi[i]) + " reused");
      if (!colour_of_.emplace(cert.edges[i], cert.phi[i]).second) fail("assign colours", "edge coloured twice");
      used_colour_[cert.phi[i]] = true;
    }
  }

  void unassign(const std::vector<Edge>& edges) {
    for (const auto& e : edges) {
      auto it = colour_of_.find(e);
      if (it == colour_of_.end()) continue;
      used_colour_[it->second] = false;
      colour_of_.erase(it);
    }
  }

  std::vector<Colour> unused_in(std::span<const Colour> colours) const {
    std::vector<Colour> out;
    for (Colour col : colours) {
      if (!used_colour_[col]) out.push_back(col);
    }
    return out;
  }

  std::vector<Vertex> start_of(std::span<const Vertex> seq) const {
    return {seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(link_.ell())};
  }
  std::vector<Vertex> end_of(std::span<const Vertex> seq) const {
    return {seq.end() - static_cast<std::ptrdiff_t>(link_.ell()), seq.end()};
  }

  // 1. An uncoloured chain S1 with colour sets A, C such that A u B colours it
  // for every B of size gamma_n inside C.
  void colour_absorber() {
    gamma_n_ = scaled(cfg_.gamma, n_, 1);
    const std::size_t rho_n = scaled(cfg_.rho, n_, gamma_n_);
    std::size_t e_target = std::max(gamma_n_ + 1, scaled(cfg_.beta, n_));
    std::size_t t1 = 1;
    if (e_target > link_.start_edges()) {
      t1 = std::max<std::size_t>(1, (e_target - link_.start_edges() + link_.edges_per_window() - 1) /
                                        link_.edges_per_window());
    }
    auto F = build_chain_template(link_, t1);
    while (F.num_edges() <= gamma_n_) F = build_chain_template(link_, ++t1);

    ColourAbsorberOptions opt;
    opt.absorber.min_b1 = rho_n;
    opt.budget = cfg_.budget;
    try {
      absorber1_ = build_colour_absorber(c_, F, gamma_n_, cfg_.alpha, seed_for("colour absorber"), opt);
    } catch (const Error& e) {
      fail("build_colour_absorber", e.what());
    }
    // keep the rho_n lowest colours of the absorbing set
    C_.assign(absorber1_.Cset.begin(), absorber1_.Cset.begin() + static_cast<std::ptrdiff_t>(rho_n));
    A_ = absorber1_.A;
    const auto check = verify_colour_absorber(c_, absorber1_, seed_for("verify colour absorber"), {}, C_);
    if (!check.ok) fail("verify_colour_absorber", "a subset of C does not complete A");
    const std::size_t c1 = gamma_n_ / 2;
    C1_.assign(C_.begin(), C_.begin() + static_cast<std::ptrdiff_t>(c1));
    C2_.assign(C_.begin() + static_cast<std::ptrdiff_t>(c1), C_.end());
    S1_ = absorber1_.vertices;
    cover(S1_);
    extra_["e_S1"] = static_cast<long long>(absorber1_.edges.size());
    extra_["gamma_n"] = static_cast<long long>(gamma_n_);
    extra_["v_S1"] = static_cast<long long>(S1_.size());
    extra_["absorber_exhaustive"] = check.exhaustive;
    extra_["absorber_checked"] = static_cast<long long>(check.checked);
  }

  // 2. Vertex absorber S2 in the threshold graph of C outside S1.
  void vertex_absorber() {
    const auto theta = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(cfg_.alpha * static_cast<double>(C_.size()) / 2 - 1e-9)));
    K_ = threshold_hypergraph(c_, C_, theta);
    std::vector<Vertex> V1;
    for (Vertex v = 0; v < n_; ++v) {
      if (!covered_[v]) V1.push_back(v);
    }
    AbRequest req;
    req.size = scaled(cfg_.tau, n_, link_.order());
    req.capacity = scaled(cfg_.eta, n_, 1);
    req.samples = cfg_.ab_samples;
    req.budget = cfg_.budget;
    Rng local = rng_.split("vertex absorber");
    auto ab = provider_.ab_build(K_, V1, req, local);
    if (!ab) fail("ab_build", "no vertex absorber passed the splice checks");
    if (ab->chain.size() < link_.order() || (ab->chain.size() - link_.ell()) % link_.stride() != 0) {
      fail("ab_build", "absorber is not a chain");
    }
    for (Vertex v : ab->chain) {
      if (covered_[v]) fail("ab_build", "absorber overlaps S1");
    }
    absorber_ = std::move(*ab);
    cover(absorber_.chain);
    extra_["theta_K"] = static_cast<long long>(theta);
    extra_["K_edges"] = static_cast<long long>(K_.num_edges());
    extra_["ab_capacity"] = static_cast<long long>(absorber_.capacity);
  }

  // 3. Reservoir R1 in V2 = V minus the interiors of S1 and S2, avoiding their ends.
  void reservoir() {
    const std::size_t ell = link_.ell();
    std::vector<bool> interior(n_, false), ends(n_, false);
    for (const auto* seq : {&S1_, &absorber_.chain}) {
      for (std::size_t i = 0; i < seq->size(); ++i) {
        const bool end = i < ell || i + ell >= seq->size();
        (end ? ends : interior)[(*seq)[i]] = true;
      }
    }
    std::vector<Vertex> V2;
    for (Vertex v = 0; v < n_; ++v) {
      if (!interior[v]) V2.push_back(v);
    }
    const std::size_t r1 = scaled(cfg_.nu, n_, 1);
    std::size_t fixed_count = 0;
    PartitionOptions opt;
    opt.d = link_.k() - 1 == 0 ? 1 : std::min<std::size_t>(1, link_.k() - 1);
    opt.slack = cfg_.partition_slack;
    opt.checked_parts = {true, false};
    for (std::uint32_t i = 0; i < V2.size(); ++i) {
      if (ends[V2[i]]) {
        opt.fixed.push_back({i, 1});
        ++fixed_count;
      }
    }
    if (r1 + fixed_count > V2.size()) fail("degree_preserving_partition", "reservoir does not fit");
    const std::vector<std::size_t> sizes{r1, V2.size() - r1};
    const std::vector<Hypergraph> members{induced(K_, V2)};
    std::optional<Partition> p;
    try {
      p = degree_preserving_partition(members, sizes, cfg_.alpha, seed_for("reservoir"), opt);
    } catch (const Error& e) {
      fail("degree_preserving_partition", e.what());
    }
    if (!p) fail("degree_preserving_partition", "no reservoir passed the degree audit");
    for (Vertex v : p->parts[0]) R1_.push_back(V2[v]);
    extra_["V2"] = static_cast<long long>(V2.size());
    extra_["audit_attempts"] = static_cast<long long>(p->attempts);
  }

  // 4. Balancing set R2 so that the rest V' has exactly as many colours as a
  // cycle through it needs.
  void balancing_set() {
    const std::size_t epw = link_.edges_per_window(), stride = link_.stride();
    const std::size_t reserved = A_.size() + C_.size();
    if ((reserved * stride) % epw != 0) fail("balance", "|A| + |C| is not a whole number of windows");
    const std::size_t removed = reserved * stride / epw;
    if (removed > n_) fail("balance", "A and C exceed the colour budget");
    n0_ = n_ - removed;
    const std::size_t taken = S1_.size() + absorber_.chain.size() + R1_.size();
    if (taken + n0_ > n_) {
      fail("balance", "n0 = " + std::to_string(n0_) + " leaves no room for R2 (taken " + std::to_string(taken) + ")");
    }
    r2_ = n_ - taken - n0_;
    extra_["n0"] = static_cast<long long>(n0_);
    extra_["r2"] = static_cast<long long>(r2_);
    extra_["v_S1"] = static_cast<long long>(S1_.size());
    extra_["S2"] = static_cast<long long>(absorber_.chain.size());
    extra_["R1"] = static_cast<long long>(R1_.size());

    std::vector<bool> out(n_, false);
    for (Vertex v : S1_) out[v] = true;
    for (Vertex v : absorber_.chain) out[v] = true;
    for (Vertex v : R1_) out[v] = true;
    std::vector<Vertex> W;
    for (Vertex v = 0; v < n_; ++v) {
      if (!out[v]) W.push_back(v);
    }
    if (r2_ == 0 || n0_ == 0) {
      (r2_ == 0 ? Vprime_ : R2_) = W;
      return;
    }
    PartitionOptions opt;
    opt.slack = cfg_.partition_slack;
    opt.checked_parts = {true, false};
    std::vector<Hypergraph> members;
    members.reserve(c_.size());
    for (const auto& h : c_.members()) members.push_back(induced(h, W));
    const std::vector<std::size_t> sizes{r2_, n0_};
    auto p = degree_preserving_partition(members, sizes, cfg_.alpha, seed_for("balancing set"), opt);
    if (!p) fail("degree_preserving_partition", "no balancing set passed the degree audit");
    for (Vertex v : p->parts[0]) R2_.push_back(W[v]);
    for (Vertex v : p->parts[1]) Vprime_.push_back(W[v]);
    extra_["audit_attempts"] = static_cast<long long>(p->attempts);
  }

  TilingResult tile(std::vector<Vertex> ground, std::vector<Colour> palette, std::size_t T, std::string_view tag) {
    TilingOptions opt;
    opt.alpha = cfg_.alpha;
    opt.eta = cfg_.eta;
    opt.partition.slack = cfg_.partition_slack;
    opt.budget = cfg_.budget;
    opt.vertices = std::move(ground);
    opt.colours = std::move(palette);
    try {
      return rainbow_tiling(c_, link_, T, cfg_.omega, seed_for(tag), opt);
    } catch (const Error& e) {
      fail("rainbow_tiling", e.what());
    }
  }

  void take_chains(TilingResult& r, std::vector<std::vector<Vertex>>& into) {
    for (auto& rc : r.chains) {
      assign(rc.colouring);
      cover(rc.chain.vertices);
      into.push_back(rc.chain.vertices);
    }
  }

  // 5. Tile V' with the colours outside A u C.
  void tiling() {
    std::vector<bool> reserved(c_.size(), false);
    for (Colour col : A_) reserved[col] = true;
    for (Colour col : C_) reserved[col] = true;
    std::vector<Colour> R;
    for (Colour col = 0; col < c_.size(); ++col) {
      if (!reserved[col]) R.push_back(col);
    }
    if (Vprime_.empty()) {
      C0_ = R;
      return;
    }
    auto r = tile(Vprime_, R, cfg_.T, "tiling");
    take_chains(r, main_chains_);
    V0_ = r.uncovered;
    C0_ = r.unused;
    extra_["chains"] = static_cast<long long>(main_chains_.size());
    extra_["V0"] = static_cast<long long>(V0_.size());
    extra_["C0"] = static_cast<long long>(C0_.size());
  }

  // 6. Spend C0 (padded from C1 to a multiple of e(A)) on link copies in R2.
  void exhaust_leftover() {
    const std::size_t e = link_.edges();
    const std::size_t pad = (e - C0_.size() % e) % e;
    if (pad > C1_.size()) fail("pad", "C1 too small to pad C0");
    std::vector<Colour> palette = C0_;
    palette.insert(palette.end(), C1_.begin(), C1_.begin() + static_cast<std::ptrdiff_t>(pad));
    C1_.erase(C1_.begin(), C1_.begin() + static_cast<std::ptrdiff_t>(pad));
    extra_["pad"] = static_cast<long long>(pad);
    if (palette.empty()) return;
    const auto f = provider_.fac(c_, palette, R2_, cfg_.budget);
    if (!f.complete) {
      fail("fac", "no rainbow copy for colour block " + std::to_string(f.stuck_block.value_or(0)));
    }
    for (const auto& copy : f.copies) {
      for (Vertex v : copy.vertices) {
        if (covered_[v] || std::find(R2_.begin(), R2_.end(), v) == R2_.end()) fail("fac", "copy leaves R2");
      }
      assign(copy.colouring);
      cover(copy.vertices);
      factor_chains_.push_back(copy.vertices);
    }
    extra_["copies"] = static_cast<long long>(f.copies.size());
  }

  // 7. Tile what is left of R2 with colours from C2.
  void shrink() {
    const auto R2rest = minus(R2_, covered_);
    if (R2rest.empty()) return;
    auto r = tile(R2rest, C2_, cfg_.T_shrink, "shrink");
    take_chains(r, shrink_chains_);
    V0p_ = r.uncovered;
    extra_["chains"] = static_cast<long long>(shrink_chains_.size());
    extra_["V0'"] = static_cast<long long>(V0p_.size());
  }

  // 8. Join every chain into one cycle through the reservoir.
  void connect() {
    chains_.clear();
    chains_.push_back(S1_);
    chains_.push_back(absorber_.chain);
    for (auto* group : {&main_chains_, &factor_chains_, &shrink_chains_}) {
      for (auto& ch : *group) chains_.push_back(ch);
    }
    std::vector<bool> spent(n_, false);
    const std::size_t cap = link_.stride() * cfg_.c + link_.ell();
    pool_before_connect_ = unused_in(C_);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < chains_.size(); ++i) {
      const auto& a = chains_[i];
      const auto& b = chains_[(i + 1) % chains_.size()];
      const auto free = minus(R1_, spent);
      auto conn = provider_.con(K_, end_of(a), start_of(b), free, cfg_.c);
      if (!conn) fail("con", "no connector from chain " + std::to_string(i) + " to chain " +
                                 std::to_string((i + 1) % chains_.size()));
      const std::size_t ell = link_.ell();
      if (conn->size() < 2 * ell || !std::equal(conn->begin(), conn->begin() + static_cast<std::ptrdiff_t>(ell), a.end() - static_cast<std::ptrdiff_t>(ell)) ||
          !std::equal(conn->end() - static_cast<std::ptrdiff_t>(ell), conn->end(), b.begin())) {
        fail("con", "connector does not join the requested ends");
      }
      const std::size_t inner = conn->size() - 2 * ell;
      if (inner >= cap) fail("con", "connector exceeds (m-l)c+l reservoir vertices");
      for (std::size_t j = ell; j + ell < conn->size(); ++j) {
        const Vertex v = (*conn)[j];
        if (spent[v] || std::find(free.begin(), free.end(), v) == free.end()) fail("con", "connector leaves the reservoir");
        spent[v] = true;
      }
      for (auto& e : chain_edges(*conn)) {
        if (!K_.has_edge(e)) fail("con", "connector edge outside K2");
        edges.push_back(std::move(e));
      }
      connectors_.push_back(std::move(*conn));
    }
    for (std::size_t i = 0; i < connectors_.size(); ++i) cover(connectors_[i]);
    connector_edges_ = fresh(edges);
    auto cert = rainbow_colouring(c_, connector_edges_, pool_before_connect_);
    if (!cert) fail("colour connectors", "no rainbow matching of connector edges into C");
    assign(*cert);
    extra_["chains"] = static_cast<long long>(chains_.size());
    extra_["reservoir_used"] = static_cast<long long>(std::count(spent.begin(), spent.end(), true));
    extra_["connector_edges"] = static_cast<long long>(connector_edges_.size());
  }

  // 9. Absorb R1' u V0 u V0' into the vertex absorber.
  void absorb_leftover() {
    std::vector<Vertex> L;
    for (Vertex v = 0; v < n_; ++v) {
      if (!covered_[v]) L.push_back(v);
    }
    extra_["L"] = static_cast<long long>(L.size());
    if (L.size() % link_.stride() != 0) fail("ab_absorb", "leftover size is not a multiple of m - l");
    auto grown = provider_.ab_absorb(K_, absorber_, L, cfg_.budget);
    if (!grown) fail("ab_absorb", "absorber could not take " + std::to_string(L.size()) + " vertices");
    {
      std::vector<Vertex> want = absorber_.chain, got = *grown;
      want.insert(want.end(), L.begin(), L.end());
      std::sort(want.begin(), want.end());
      std::sort(got.begin(), got.end());
      if (want != got) fail("ab_absorb", "absorbed chain has the wrong vertex set");
      if (start_of(*grown) != start_of(absorber_.chain) || end_of(*grown) != end_of(absorber_.chain)) {
        fail("ab_absorb", "absorbed chain moved its ends");
      }
    }
    const auto edges = fresh(chain_edges(*grown));
    for (const auto& e : edges) {
      if (!K_.has_edge(e)) fail("ab_absorb", "absorbed chain leaves K1");
    }
    cover(*grown);
    chains_[1] = *grown;
    auto cert = rainbow_colouring(c_, edges, unused_in(C_));
    if (!cert) {
      // re-match connectors and the absorber chain together
      unassign(connector_edges_);
      std::vector<Edge> joint = connector_edges_;
      joint.insert(joint.end(), edges.begin(), edges.end());
      cert = rainbow_colouring(c_, joint, pool_before_connect_);
      extra_["joint_rematch"] = 1;
      if (!cert) fail("colour absorber chain", "no rainbow matching of absorber edges into C");
    }
    assign(*cert);
    const auto count = std::count(covered_.begin(), covered_.end(), true);
    if (static_cast<std::size_t>(count) != n_) fail("cover", "cycle misses vertices");
  }

  // 10. The colours left are A plus gamma_n colours of C; S1 absorbs them.
  void colour_s1() {
    std::vector<Colour> left;
    for (Colour col = 0; col < c_.size(); ++col) {
      if (!used_colour_[col]) left.push_back(col);
    }
    std::vector<bool> in_c(c_.size(), false), in_a(c_.size(), false);
    for (Colour col : C_) in_c[col] = true;
    for (Colour col : A_) in_a[col] = true;
    std::size_t b = 0;
    for (Colour col : left) {
      if (in_a[col]) continue;
      if (!in_c[col]) fail("colour accounting", "colour " + std::to_string(col) + " outside A u C left over");
      ++b;
    }
    if (left.size() < A_.size() || std::any_of(A_.begin(), A_.end(), [&](Colour col) { return used_colour_[col]; })) {
      fail("colour accounting", "a colour of A was consumed");
    }
    extra_["B"] = static_cast<long long>(b);
    if (b != gamma_n_) fail("colour accounting", "left-over part of C has size " + std::to_string(b));
    auto cert = rainbow_colouring(c_, absorber1_.edges, left);
    if (!cert) fail("colour S1", "colour absorber did not absorb B");
    assign(*cert);

    // cyclic sequence: chain, connector, chain, ... sharing l-ends
    const std::size_t ell = link_.ell();
    std::vector<Vertex> seq = chains_[0];
    for (std::size_t i = 0; i < chains_.size(); ++i) {
      seq.insert(seq.end(), connectors_[i].begin() + static_cast<std::ptrdiff_t>(ell), connectors_[i].end());
      if (i + 1 < chains_.size()) {
        seq.insert(seq.end(), chains_[i + 1].begin() + static_cast<std::ptrdiff_t>(ell), chains_[i + 1].end());
      }
    }
    seq.resize(seq.size() - ell);
    if (seq.size() != n_) fail("assemble", "cycle has " + std::to_string(seq.size()) + " vertices");
    const auto shape = cycle_template(link_, n_);
    TransversalCertificate out;
    for (const auto& e : shape.edges()) {
      Edge img;
      for (Vertex p : e) img.push_back(seq[p]);
      std::sort(img.begin(), img.end());
      auto it = colour_of_.find(img);
      if (it == colour_of_.end()) fail("assemble", "cycle edge without a colour");
      out.edges.push_back(img);
      out.phi.push_back(it->second);
    }
    if (out.edges.size() != colour_of_.size()) fail("assemble", "coloured edges outside the cycle");
    const auto v = verify_certificate(c_, out, ExpectedShape{link_, n_});
    if (!v) fail("verify_certificate", std::string(to_string(v.reason)) + ": " + v.detail);
    certificate_ = std::move(out);
    cycle_ = std::move(seq);
  }

  const Collection& c_;
  const Provider& provider_;
  const Link& link_;
  const PipelineConfig& cfg_;
  Rng rng_;
  std::size_t n_;

  std::vector<bool> used_colour_;
  std::vector<bool> covered_;
  std::map<Edge, Colour> colour_of_;
  std::vector<StepRecord> trace_;
  std::map<std::string, long long> extra_;

  std::size_t gamma_n_ = 0, n0_ = 0, r2_ = 0;
  ColourAbsorber absorber1_;
  std::vector<Colour> A_, C_, C1_, C2_, C0_, pool_before_connect_;
  std::vector<Vertex> S1_, R1_, R2_, Vprime_, V0_, V0p_;
  VertexAbsorber absorber_;
  Hypergraph K_;
  std::vector<std::vector<Vertex>> main_chains_, factor_chains_, shrink_chains_, chains_, connectors_;
  std::vector<Edge> connector_edges_;
  std::optional<TransversalCertificate> certificate_;
  std::vector<Vertex> cycle_;
};

}  // namespace

PipelineRun solve_once(const Collection& c, const Provider& provider, const PipelineConfig& cfg,
                       std::uint64_t seed) {
  return Solver(c, provider, cfg, seed).run();
}

PipelineResult solve_transversal_hamilton(const Collection& c, const Link& link, const Provider& provider,
                                          const PipelineConfig& cfg) {
  if (!(provider.link() == link)) throw Error(ErrorCode::InvalidArgument, "provider is for a different link");
  if (link.k() != c.k()) throw Error(ErrorCode::InvalidArgument, "link and collection differ in uniformity");
  const std::size_t needed = cycle_counts(link, c.n());
  if (c.size() != needed) {
    throw Error(ErrorCode::ColourCountMismatch,
                "need " + std::to_string(needed) + " colours, got " + std::to_string(c.size()));
  }
  PipelineResult out;
  out.warnings = cfg.warnings();
  const Rng master(cfg.seed);
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(1, cfg.retries); ++attempt) {
    auto run = solve_once(c, provider, cfg, master.split(attempt).seed());
    if (run.failure) run.failure->attempt = attempt;
    const bool ok = run.certificate.has_value();
    if (ok) out.certificate = run.certificate;
    out.runs.push_back(std::move(run));
    if (ok) break;
  }
  return out;
}

}  // namespace rainbow
