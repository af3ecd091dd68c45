#include "rainbow/link.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "rainbow/error.hpp"

namespace rainbow {

namespace {

std::vector<Vertex> iota_vertices(std::size_t from, std::size_t count) {
  std::vector<Vertex> v(count);
  std::iota(v.begin(), v.end(), static_cast<Vertex>(from));
  return v;
}

void require_stride(const Link& link) {
  if (link.stride() == 0) {
    throw Error(ErrorCode::InvalidArgument, "link with l = m has no chains");
  }
}

}  // namespace

Link Link::make(OrderedHypergraph body, std::size_t ell, std::string name) {
  const std::size_t m = body.n();
  if (ell < 1 || ell > m) {
    throw Error(ErrorCode::InvalidArgument, "need 1 <= l <= m");
  }
  auto first = iota_vertices(0, ell);
  auto last = iota_vertices(m - ell, ell);
  auto start = induced(body, first);
  if (!ordered_isomorphic(start, induced(body, last))) {
    throw Error(ErrorCode::StartEndMismatch, "first and last l-windows induce different patterns");
  }
  return Link(std::move(body), std::move(start), ell, std::move(name));
}

Link make_link(OrderedHypergraph body, std::size_t ell) { return Link::make(std::move(body), ell); }

Link edge_link(std::size_t k, std::size_t ell) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "edge link needs k >= 2");
  std::vector<Edge> edges{iota_vertices(0, k)};
  return Link::make(Hypergraph(k, k, std::move(edges)), ell,
                    "edge(" + std::to_string(k) + "," + std::to_string(ell) + ")");
}

Link clique_link(std::size_t r) {
  if (r < 2) throw Error(ErrorCode::InvalidArgument, "clique link needs r >= 2");
  return Link::make(Hypergraph::complete(r, 2), r - 1, "clique(" + std::to_string(r) + ")");
}

Link triangle_link() { return Link::make(Hypergraph::complete(3, 2), 2, "triangle"); }

Link pillar_link() {
  // Square with corners labelled 1..4 as (top-left, bottom-left, top-right,
  // bottom-right); the shared rungs are {1,2} and {3,4}.
  std::vector<Edge> edges{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  return Link::make(Hypergraph(4, 2, std::move(edges)), 2, "pillar");
}

namespace {

std::vector<std::size_t> parse_args(std::string_view inner, std::string_view full) {
  std::vector<std::size_t> out;
  while (!inner.empty()) {
    auto comma = inner.find(',');
    auto token = inner.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw Error(ErrorCode::Parse, "bad link name '" + std::string(full) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

Link link_from_name(std::string_view name) {
  if (name == "triangle") return triangle_link();
  if (name == "pillar") return pillar_link();
  const auto open = name.find('(');
  if (open == std::string_view::npos || name.back() != ')') {
    throw Error(ErrorCode::Parse, "unknown link '" + std::string(name) + "'");
  }
  const auto head = name.substr(0, open);
  const auto args = parse_args(name.substr(open + 1, name.size() - open - 2), name);
  if (head == "edge" && args.size() == 2) return edge_link(args[0], args[1]);
  if (head == "clique" && args.size() == 1) return clique_link(args[0]);
  throw Error(ErrorCode::Parse, "unknown link '" + std::string(name) + "'");
}

ChainCounts chain_counts(const Link& link, std::size_t t) {
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "chain length must be positive");
  return {link.stride() * t + link.ell(), t * link.edges_per_window() + link.start_edges()};
}

std::size_t cycle_counts(const Link& link, std::size_t n) {
  require_stride(link);
  if (n % link.stride() != 0) {
    throw Error(ErrorCode::Divisibility, std::to_string(link.stride()) + " does not divide " + std::to_string(n));
  }
  if (n < link.order()) throw Error(ErrorCode::TooShort, "cycle shorter than one link");
  const std::size_t numerator = link.edges_per_window() * n;
  if (numerator % link.stride() != 0) throw Error(ErrorCode::Divisibility, "non-integral edge count");
  const std::size_t count = numerator / link.stride();
  // on very short cycles distant windows wrap onto each other and edges merge
  if (cycle_template(link, n).num_edges() != count) {
    throw Error(ErrorCode::TooShort, "windows of a " + std::to_string(n) + "-vertex cycle share edges");
  }
  return count;
}

ChainLayout chain_layout(const Link& link, std::size_t t) {
  require_stride(link);
  if (t < 1) throw Error(ErrorCode::InvalidArgument, "chain length must be positive");
  return {t, link.order(), link.stride()};
}

OrderedHypergraph build_chain_template(const Link& link, std::size_t t) {
  const auto layout = chain_layout(link, t);
  std::set<Edge> edges;
  for (std::size_t q = 0; q < t; ++q) {
    const auto offset = static_cast<Vertex>(layout.window_start(q));
    for (const auto& e : link.body().edges()) {
      Edge shifted(e);
      for (auto& v : shifted) v += offset;
      edges.insert(std::move(shifted));
    }
  }
  return Hypergraph(layout.vertex_count(), link.k(), {edges.begin(), edges.end()});
}

Hypergraph close_cycle(const OrderedHypergraph& chain_template, const Link& link, std::size_t t) {
  const auto layout = chain_layout(link, t);
  if (chain_template.n() != layout.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "template does not match (link, t)");
  }
  const std::size_t n = layout.stride * t;
  if (n < link.order()) throw Error(ErrorCode::TooShort, "closing would collapse a window");
  std::set<Edge> edges;
  for (const auto& e : chain_template.edges()) {
    Edge wrapped(e);
    for (auto& v : wrapped) v = static_cast<Vertex>(v % n);
    edges.insert(make_edge(std::move(wrapped)));
  }
  return Hypergraph(n, link.k(), {edges.begin(), edges.end()});
}

Hypergraph cycle_template(const Link& link, std::size_t n) {
  require_stride(link);
  if (n % link.stride() != 0) throw Error(ErrorCode::Divisibility, "cycle length not a multiple of m - l");
  const std::size_t t = n / link.stride();
  return close_cycle(build_chain_template(link, t), link, t);
}

std::optional<ChainLayout> is_chain(const OrderedHypergraph& candidate, const Link& link,
                                    ChainMatch mode) {
  if (link.stride() == 0 || candidate.k() != link.k()) return std::nullopt;
  const std::size_t v = candidate.n();
  if (v < link.order() || (v - link.ell()) % link.stride() != 0) return std::nullopt;
  const auto layout = chain_layout(link, (v - link.ell()) / link.stride());
  std::vector<bool> covered(candidate.num_edges(), false);
  for (std::size_t q = 0; q < layout.t; ++q) {
    const auto window = iota_vertices(layout.window_start(q), layout.order);
    const auto pattern = induced(candidate, window);
    if (mode == ChainMatch::Exact) {
      if (!ordered_isomorphic(pattern, link.body())) return std::nullopt;
    } else {
      for (const auto& e : link.body().edges()) {
        if (!pattern.has_edge(e)) return std::nullopt;
      }
    }
  }
  if (mode == ChainMatch::Exact) {
    for (const auto& e : candidate.edges()) {
      // windows are intervals, so an edge fits iff its span does and it starts
      // no later than the last window allows
      const std::size_t lo = e.front(), hi = e.back();
      bool inside = false;
      for (std::size_t q = 0; q < layout.t && !inside; ++q) {
        const auto s = layout.window_start(q);
        inside = lo >= s && hi < s + layout.order;
      }
      if (!inside) return std::nullopt;
    }
  }
  return layout;
}

EmbeddedChain embed_chain(const Link& link, std::vector<Vertex> sequence) {
  require_stride(link);
  if (sequence.size() < link.order() || (sequence.size() - link.ell()) % link.stride() != 0) {
    throw Error(ErrorCode::InvalidArgument, "sequence length is not (m-l)t + l");
  }
  {
    auto sorted = sequence;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::InvalidArgument, "chain vertices must be distinct");
    }
  }
  EmbeddedChain chain;
  chain.layout = chain_layout(link, (sequence.size() - link.ell()) / link.stride());
  std::set<Edge> seen;
  for (std::size_t q = 0; q < chain.layout.t; ++q) {
    const auto offset = chain.layout.window_start(q);
    for (const auto& e : link.body().edges()) {
      Edge host;
      host.reserve(e.size());
      for (Vertex i : e) host.push_back(sequence[offset + i]);
      host = make_edge(std::move(host));
      if (seen.insert(host).second) chain.edges.push_back({std::move(host), q});
    }
  }
  chain.vertices = std::move(sequence);
  return chain;
}

bool chain_in_host(const EmbeddedChain& chain, const Hypergraph& host) {
  return std::all_of(chain.edges.begin(), chain.edges.end(),
                     [&](const RealisedEdge& r) { return host.has_edge(r.edge); });
}

namespace {

class CycleLabeller {
 public:
  CycleLabeller(const Hypergraph& target, const Hypergraph& pattern, std::size_t stride)
      : target_(target), pattern_(pattern), stride_(stride), n_(target.n()) {
    target_incident_.resize(n_);
    target_degree_.assign(n_, 0);
    for (const auto& e : target.edges()) {
      for (Vertex v : e) {
        ++target_degree_[v];
        for (Vertex w : e) {
          if (w != v) target_incident_[v].push_back(w);
        }
      }
    }
    for (auto& list : target_incident_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    pattern_degree_.assign(n_, 0);
    for (const auto& e : pattern.edges()) {
      for (Vertex v : e) ++pattern_degree_[v];
    }
  }

  std::optional<std::vector<Vertex>> run() {
    for (std::size_t p = 0; p < stride_; ++p) {
      order_.clear();
      for (std::size_t i = 0; i < n_; ++i) order_.push_back(static_cast<Vertex>((p + i) % n_));
      prepare();
      image_.assign(n_, kUnset);
      used_.assign(n_, false);
      if (pattern_degree_[order_[0]] != target_degree_[0]) continue;
      image_[order_[0]] = 0;
      used_[0] = true;
      if (extend(1)) return image_;
    }
    return std::nullopt;
  }

 private:
  static constexpr Vertex kUnset = ~Vertex{0};

  void prepare() {
    std::vector<std::size_t> step_of(n_);
    for (std::size_t s = 0; s < n_; ++s) step_of[order_[s]] = s;
    closing_.assign(n_, {});
    anchor_.assign(n_, kUnset);
    for (const auto& e : pattern_.edges()) {
      std::size_t last = 0;
      for (Vertex v : e) last = std::max(last, step_of[v]);
      closing_[last].push_back(&e);
      for (Vertex v : e) {
        if (step_of[v] < last) {
          auto& a = anchor_[last];
          if (a == kUnset || step_of[v] < step_of[a]) a = v;
        }
      }
    }
  }

  bool extend(std::size_t step) {
    if (step == n_) return true;
    const Vertex pos = order_[step];
    auto try_vertex = [&](Vertex v) {
      if (used_[v] || target_degree_[v] != pattern_degree_[pos]) return false;
      image_[pos] = v;
      for (const Edge* e : closing_[step]) {
        Edge mapped;
        for (Vertex i : *e) mapped.push_back(image_[i]);
        std::sort(mapped.begin(), mapped.end());
        if (!target_.has_edge(mapped)) {
          image_[pos] = kUnset;
          return false;
        }
      }
      used_[v] = true;
      if (extend(step + 1)) return true;
      used_[v] = false;
      image_[pos] = kUnset;
      return false;
    };
    if (anchor_[step] != kUnset) {
      for (Vertex v : target_incident_[image_[anchor_[step]]]) {
        if (try_vertex(v)) return true;
      }
    } else {
      for (Vertex v = 0; v < n_; ++v) {
        if (try_vertex(v)) return true;
      }
    }
    return false;
  }

  const Hypergraph& target_;
  const Hypergraph& pattern_;
  std::size_t stride_;
  std::size_t n_;
  std::vector<std::vector<Vertex>> target_incident_;
  std::vector<std::size_t> target_degree_, pattern_degree_;
  std::vector<Vertex> order_;
  std::vector<std::vector<const Edge*>> closing_;
  std::vector<Vertex> anchor_;
  std::vector<Vertex> image_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<Vertex>> find_cycle_labelling(const std::vector<Edge>& edges,
                                                        std::size_t n, const Link& link) {
  if (link.stride() == 0 || n < link.order() || n % link.stride() != 0) return std::nullopt;
  for (const auto& e : edges) {
    if (e.size() != link.k()) return std::nullopt;
  }
  std::optional<Hypergraph> target;
  try {
    target.emplace(n, link.k(), edges);
  } catch (const Error&) {
    return std::nullopt;
  }
  const auto pattern = cycle_template(link, n);
  if (pattern.num_edges() != target->num_edges()) return std::nullopt;
  return CycleLabeller(*target, pattern, link.stride()).run();
}

}  // namespace rainbow
