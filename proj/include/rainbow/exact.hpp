#pragma once

// Exhaustive backtracking for (rainbow) embeddings of a fixed pattern.
// Vertices are placed one pattern position at a time; colours are never
// branched on, instead each completed edge is pushed into an incremental
// bipartite matching against the allowed colours, so a partial embedding
// survives iff Hall's condition still holds for the edges placed so far.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rainbow/collection.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/link.hpp"

namespace rainbow {

struct SearchBudget {
  std::uint64_t node_limit = 10'000'000;
  double time_limit = 300.0;  // seconds; ignored when deterministic
  bool deterministic = true;
};

enum class SearchOutcome { Found, None, Exhausted };

std::string_view to_string(SearchOutcome o);

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::None;
  std::vector<Vertex> embedding;                      // pattern position -> host vertex
  std::optional<TransversalCertificate> certificate;  // rainbow searches only
  std::uint64_t nodes = 0;
  double seconds = 0.0;

  bool found() const noexcept { return outcome == SearchOutcome::Found; }
};

struct EmbeddingProblem {
  const Hypergraph* pattern = nullptr;  // on N <= n positions
  const Hypergraph* host = nullptr;     // candidate edges on n vertices
  // When set, every pattern edge needs a distinct colour from `allowed` whose
  // member contains its image.
  const Collection* colours = nullptr;
  std::vector<Colour> allowed;
  std::vector<bool> available;                      // host vertices usable; empty means all
  std::vector<std::size_t> order;                   // position order; empty means greedy
  std::vector<std::pair<std::size_t, Vertex>> pins;  // position -> fixed host vertex
  // Optional (a, b): require image(a) > image(b).
  std::optional<std::pair<std::size_t, std::size_t>> orientation;
};

// Budget nodes are shared through `spent` so callers can run several
// problems against one budget.
SearchResult embed(const EmbeddingProblem& problem, const SearchBudget& budget,
                   std::uint64_t spent_nodes = 0);

// Rainbow Hamilton link-cycle on all n vertices using every colour once.
// Throws ColourCountMismatch unless |C| = cycle_counts(link, n).
SearchResult find_transversal_cycle(const Collection& c, const Link& link, const SearchBudget& budget = {});

// Rainbow copy of F; throws ColourCountMismatch unless |C| = e(F).
SearchResult find_transversal_subgraph(const Collection& c, const Hypergraph& pattern,
                                       const SearchBudget& budget = {});

// Uncoloured copy of the pattern in host, restricted to available vertices.
SearchResult find_copy(const Hypergraph& host, const Hypergraph& pattern, const SearchBudget& budget = {},
                       std::vector<bool> available = {},
                       std::vector<std::pair<std::size_t, Vertex>> pins = {});

// Greedy order: repeatedly take the position with most already-ordered
// neighbours (ties: larger degree, then lower index).
std::vector<std::size_t> greedy_order(const Hypergraph& pattern);

}  // namespace rainbow
