#include "rainbow/exact.hpp"

#include <algorithm>
#include <unordered_map>

#include "rainbow/error.hpp"
#include "rainbow/matching.hpp"

namespace rainbow {

std::string_view to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Found: return "success";
    case SearchOutcome::None: return "none";
    case SearchOutcome::Exhausted: return "exhausted";
  }
  return "?";
}

namespace {

using Bits = std::vector<std::uint64_t>;

std::vector<std::vector<std::size_t>> shadow(const Hypergraph& h) {
  std::vector<std::vector<std::size_t>> nbrs(h.n());
  for (const auto& e : h.edges()) {
    for (Vertex a : e) {
      for (Vertex b : e) {
        if (a != b) nbrs[a].push_back(b);
      }
    }
  }
  for (auto& list : nbrs) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return nbrs;
}

class Engine {
 public:
  Engine(const EmbeddingProblem& p, const SearchBudget& budget, std::uint64_t spent)
      : p_(p), budget_(budget), nodes_(spent), start_(std::chrono::steady_clock::now()) {
    const auto& pattern = *p.pattern;
    const auto& host = *p.host;
    if (pattern.k() != host.k()) throw Error(ErrorCode::InvalidArgument, "pattern and host differ in uniformity");
    N_ = pattern.n();
    n_ = host.n();
    W_ = (n_ + 63) / 64;

    order_ = p.order.empty() ? greedy_order(pattern) : p.order;
    if (order_.size() != N_) throw Error(ErrorCode::InvalidArgument, "order is not a permutation of positions");
    std::vector<std::size_t> step_of(N_, SIZE_MAX);
    for (std::size_t s = 0; s < N_; ++s) {
      if (order_[s] >= N_ || step_of[order_[s]] != SIZE_MAX) {
        throw Error(ErrorCode::InvalidArgument, "order is not a permutation of positions");
      }
      step_of[order_[s]] = s;
    }

    const auto pnbrs = shadow(pattern);
    back_.resize(N_);
    pdeg_.resize(N_);
    for (std::size_t pos = 0; pos < N_; ++pos) {
      pdeg_[pos] = pnbrs[pos].size();
      for (auto q : pnbrs[pos]) {
        if (step_of[q] < step_of[pos]) back_[step_of[pos]].push_back(q);
      }
    }
    closing_.resize(N_);
    for (std::size_t i = 0; i < pattern.edges().size(); ++i) {
      std::size_t last = 0;
      for (Vertex v : pattern.edges()[i]) last = std::max(last, step_of[v]);
      closing_[last].push_back(i);
    }

    avail_.assign(W_, 0);
    for (Vertex v = 0; v < n_; ++v) {
      if (p.available.empty() || (v < p.available.size() && p.available[v])) set(avail_, v);
    }
    adj_.assign(n_, Bits(W_, 0));
    for (const auto& e : host.edges()) {
      for (Vertex a : e) {
        for (Vertex b : e) {
          if (a != b) set(adj_[a], b);
        }
      }
    }
    hdeg_.assign(n_, 0);
    for (Vertex v = 0; v < n_; ++v) {
      for (std::size_t w = 0; w < W_; ++w) hdeg_[v] += __builtin_popcountll(adj_[v][w] & avail_[w]);
    }
    pinned_.assign(N_, kUnset);
    reserved_.assign(W_, 0);
    for (auto [pos, v] : p.pins) {
      if (pos >= N_ || v >= n_) throw Error(ErrorCode::InvalidArgument, "pin out of range");
      pinned_[pos] = v;
      set(reserved_, v);
    }
    if (p.colours) matcher_.reset(p.allowed.size());
    image_.assign(N_, kUnset);
    used_.assign(W_, 0);
    cand_.assign(N_, Bits(W_, 0));
  }

  SearchResult run() {
    SearchResult r;
    if (N_ > n_ || (p_.colours && p_.pattern->num_edges() > p_.allowed.size())) {
      r.outcome = SearchOutcome::None;
    } else if (extend(0)) {
      r.outcome = SearchOutcome::Found;
      r.embedding = image_;
      if (p_.colours) {
        TransversalCertificate cert;
        for (std::size_t i = 0; i < stack_.size(); ++i) {
          cert.edges.push_back(stack_[i]);
          cert.phi.push_back(p_.allowed[matcher_.match_of_left(i)]);
        }
        r.certificate = std::move(cert);
      }
    } else {
      r.outcome = exhausted_ ? SearchOutcome::Exhausted : SearchOutcome::None;
    }
    r.nodes = nodes_;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return r;
  }

 private:
  static constexpr Vertex kUnset = ~Vertex{0};

  static void set(Bits& b, Vertex v) { b[v >> 6] |= std::uint64_t{1} << (v & 63); }
  static bool test(const Bits& b, Vertex v) { return (b[v >> 6] >> (v & 63)) & 1U; }

  bool out_of_budget() {
    if (++nodes_ > budget_.node_limit) return exhausted_ = true;
    if (!budget_.deterministic && (nodes_ & 1023) == 0) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (secs > budget_.time_limit) return exhausted_ = true;
    }
    return false;
  }

  const std::vector<std::uint32_t>& colour_slots(const Edge& e) {
    const auto rank = colex_rank(e);
    auto it = colour_cache_.find(rank);
    if (it != colour_cache_.end()) return it->second;
    std::vector<std::uint32_t> slots;
    for (std::uint32_t j = 0; j < p_.allowed.size(); ++j) {
      if ((*p_.colours)[p_.allowed[j]].has_edge(e)) slots.push_back(j);
    }
    return colour_cache_.emplace(rank, std::move(slots)).first->second;
  }

  // Places the edges completed by the current vertex; returns how many were
  // pushed into the matcher, or SIZE_MAX after undoing a failure.
  bool close_edges(std::size_t step, std::size_t& pushed) {
    pushed = 0;
    for (auto idx : closing_[step]) {
      Edge mapped;
      mapped.reserve(p_.pattern->k());
      for (Vertex pos : p_.pattern->edges()[idx]) mapped.push_back(image_[pos]);
      std::sort(mapped.begin(), mapped.end());
      bool ok = p_.host->has_edge(mapped);
      if (ok && p_.colours) {
        const auto& slots = colour_slots(mapped);
        ok = !slots.empty() && matcher_.push(slots);
        if (ok) {
          stack_.push_back(std::move(mapped));
          ++pushed;
        }
      }
      if (!ok) {
        undo(pushed);
        return false;
      }
    }
    return true;
  }

  void undo(std::size_t pushed) {
    for (std::size_t i = 0; i < pushed; ++i) {
      matcher_.pop();
      stack_.pop_back();
    }
  }

  bool extend(std::size_t step) {
    if (step == N_) return true;
    const std::size_t pos = order_[step];
    Bits& cand = cand_[step];
    // pinned vertices are kept for their own positions
    const bool free_pos = pinned_[pos] == kUnset;
    for (std::size_t w = 0; w < W_; ++w) cand[w] = avail_[w] & ~used_[w] & (free_pos ? ~reserved_[w] : ~std::uint64_t{0});
    for (auto q : back_[step]) {
      const auto& a = adj_[image_[q]];
      for (std::size_t w = 0; w < W_; ++w) cand[w] &= a[w];
    }
    Vertex lo = 0, hi = static_cast<Vertex>(n_);
    if (p_.orientation) {
      const auto [a, b] = *p_.orientation;
      if (pos == a && image_[b] != kUnset) lo = image_[b] + 1;
      if (pos == b && image_[a] != kUnset) hi = image_[a];
    }
    for (std::size_t w = 0; w < W_; ++w) {
      std::uint64_t word = cand[w];
      while (word) {
        const Vertex v = static_cast<Vertex>(w * 64 + __builtin_ctzll(word));
        word &= word - 1;
        if (v < lo || v >= hi) continue;
        if (pinned_[pos] != kUnset && v != pinned_[pos]) continue;
        if (hdeg_[v] < pdeg_[pos]) continue;
        if (out_of_budget()) return false;
        image_[pos] = v;
        std::size_t pushed = 0;
        if (close_edges(step, pushed)) {
          set(used_, v);
          if (extend(step + 1)) return true;
          used_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
          undo(pushed);
        }
        image_[pos] = kUnset;
        if (exhausted_) return false;
      }
    }
    return false;
  }

  const EmbeddingProblem& p_;
  SearchBudget budget_;
  std::uint64_t nodes_;
  bool exhausted_ = false;
  std::chrono::steady_clock::time_point start_;
  std::size_t N_ = 0, n_ = 0, W_ = 0;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> back_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<std::size_t> pdeg_, hdeg_;
  std::vector<Vertex> pinned_;
  Bits avail_, used_, reserved_;
  std::vector<Bits> adj_, cand_;
  std::vector<Vertex> image_;
  BipartiteMatcher matcher_;
  std::vector<Edge> stack_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> colour_cache_;
};

// Whether j -> -j (mod N) maps the cycle template onto itself.
bool reflection_symmetric(const Hypergraph& cycle) {
  const std::size_t N = cycle.n();
  for (const auto& e : cycle.edges()) {
    Edge r;
    for (Vertex v : e) r.push_back(static_cast<Vertex>((N - v) % N));
    std::sort(r.begin(), r.end());
    if (!cycle.has_edge(r)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::size_t> greedy_order(const Hypergraph& pattern) {
  const auto nbrs = shadow(pattern);
  const std::size_t N = pattern.n();
  std::vector<std::size_t> order;
  std::vector<bool> placed(N, false);
  std::vector<std::size_t> links(N, 0);
  for (std::size_t s = 0; s < N; ++s) {
    std::size_t best = SIZE_MAX;
    for (std::size_t v = 0; v < N; ++v) {
      if (placed[v]) continue;
      if (best == SIZE_MAX || links[v] > links[best] ||
          (links[v] == links[best] && nbrs[v].size() > nbrs[best].size())) {
        best = v;
      }
    }
    placed[best] = true;
    order.push_back(best);
    for (auto w : nbrs[best]) ++links[w];
  }
  return order;
}

SearchResult embed(const EmbeddingProblem& problem, const SearchBudget& budget, std::uint64_t spent_nodes) {
  if (!problem.pattern || !problem.host) throw Error(ErrorCode::InvalidArgument, "pattern and host required");
  return Engine(problem, budget, spent_nodes).run();
}

SearchResult find_transversal_cycle(const Collection& c, const Link& link, const SearchBudget& budget) {
  if (link.k() != c.k()) throw Error(ErrorCode::InvalidArgument, "link and collection differ in uniformity");
  const std::size_t n = c.n();
  const std::size_t needed = cycle_counts(link, n);
  if (c.size() != needed) {
    throw Error(ErrorCode::ColourCountMismatch, "need " + std::to_string(needed) + " colours, got " +
                                                    std::to_string(c.size()));
  }
  const auto pattern = cycle_template(link, n);
  const auto colours = all_colours(c);
  const auto host = union_hypergraph(c, colours);
  const bool reflect = link.stride() == 1 && reflection_symmetric(pattern);

  const auto start = std::chrono::steady_clock::now();
  SearchResult last;
  bool exhausted = false;
  std::uint64_t spent = 0;
  for (std::size_t p = 0; p < link.stride(); ++p) {
    EmbeddingProblem prob;
    prob.pattern = &pattern;
    prob.host = &host;
    prob.colours = &c;
    prob.allowed = colours;
    for (std::size_t i = 0; i < n; ++i) prob.order.push_back((p + i) % n);
    prob.pins = {{p, 0}};
    if (reflect) prob.orientation = std::pair<std::size_t, std::size_t>{1, n - 1};
    SearchBudget b = budget;
    if (!b.deterministic) {
      b.time_limit -= std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    last = embed(prob, b, spent);
    spent = last.nodes;
    if (last.found()) break;
    if (last.outcome == SearchOutcome::Exhausted) {
      exhausted = true;
      break;
    }
  }
  if (!last.found()) last.outcome = exhausted ? SearchOutcome::Exhausted : SearchOutcome::None;
  last.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return last;
}

SearchResult find_transversal_subgraph(const Collection& c, const Hypergraph& pattern,
                                       const SearchBudget& budget) {
  if (pattern.k() != c.k()) throw Error(ErrorCode::InvalidArgument, "pattern and collection differ in uniformity");
  if (c.size() != pattern.num_edges()) {
    throw Error(ErrorCode::ColourCountMismatch, "need " + std::to_string(pattern.num_edges()) +
                                                    " colours, got " + std::to_string(c.size()));
  }
  const auto colours = all_colours(c);
  const auto host = union_hypergraph(c, colours);
  EmbeddingProblem prob;
  prob.pattern = &pattern;
  prob.host = &host;
  prob.colours = &c;
  prob.allowed = colours;
  return embed(prob, budget);
}

SearchResult find_copy(const Hypergraph& host, const Hypergraph& pattern, const SearchBudget& budget,
                       std::vector<bool> available, std::vector<std::pair<std::size_t, Vertex>> pins) {
  EmbeddingProblem prob;
  prob.pattern = &pattern;
  prob.host = &host;
  prob.available = std::move(available);
  prob.pins = std::move(pins);
  return embed(prob, budget);
}

}  // namespace rainbow
