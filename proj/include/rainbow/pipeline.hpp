#pragma once

// Ten-step absorption solver for rainbow Hamilton link-cycles. Each step
// builds and checks one object (colour absorber, vertex absorber, reservoir,
// balancing set, tilings, factor, connections, final absorption, colouring of
// the colour absorber); a failed check aborts the run with a FailureReport and
// the whole run is retried on a fresh seed.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rainbow/absorb.hpp"
#include "rainbow/collection.hpp"
#include "rainbow/link.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

struct PipelineConfig {
  double alpha = 0.2;
  double beta = 0.15;   // colour absorber chain: about beta * n edges
  double gamma = 0.05;  // gamma * n colours it can swallow
  double rho = 0.7;     // |C| = rho * n
  double tau = 0.15;    // vertex absorber size
  double eta = 0.2;     // tiling threshold fraction and absorber capacity
  double nu = 0.1;      // reservoir size
  double omega = 0.2;   // tiling slack part
  std::size_t T = 2;         // chains per tiling of the main part
  std::size_t T_shrink = 1;  // chains per tiling of the balancing set
  std::size_t c = 3;         // connector length cap in windows
  std::size_t retries = 8;
  std::uint64_t seed = 0;
  double partition_slack = 0.2;
  std::size_t ab_samples = 10;  // random leftover sets spliced when checking the vertex absorber
  SearchBudget budget{1'000'000, 30.0, true};  // per exact sub-search

  // Violations of gamma < rho < beta < alpha and omega < nu < eta.
  std::vector<std::string> warnings() const;
};

struct VertexAbsorber {
  std::vector<Vertex> chain;  // link-chain vertex sequence
  std::size_t capacity = 0;   // largest leftover size it was checked against
  std::size_t checked = 0;    // number of sampled leftover sets spliced in
};

struct AbRequest {
  std::size_t size = 0;      // target number of absorber vertices
  std::size_t capacity = 0;  // leftover sizes to check against
  std::size_t samples = 10;
  SearchBudget budget;
};

// Uncoloured realisations of the three properties the solver needs from the
// link. All chains are vertex sequences of length stride * t + l.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual std::string name() const = 0;
  virtual const Link& link() const = 0;

  // Ab: an absorber chain in K using only `ground` vertices.
  virtual std::optional<VertexAbsorber> ab_build(const Hypergraph& K, std::span<const Vertex> ground,
                                                 const AbRequest& request, Rng& rng) const = 0;
  // Ab: a chain on absorber u L with the absorber's start and end.
  virtual std::optional<std::vector<Vertex>> ab_absorb(const Hypergraph& K, const VertexAbsorber& absorber,
                                                       std::span<const Vertex> L,
                                                       const SearchBudget& budget) const = 0;
  // Con: a chain in K starting with `from` and ending with `to` whose other
  // vertices come from `reservoir`, with at most max_windows windows.
  virtual std::optional<std::vector<Vertex>> con(const Hypergraph& K, std::span<const Vertex> from,
                                                 std::span<const Vertex> to, std::span<const Vertex> reservoir,
                                                 std::size_t max_windows) const = 0;
  // Fac: vertex-disjoint link copies inside `vertices` using every colour once.
  virtual FactorResult fac(const Collection& c, std::span<const Colour> colours,
                           std::span<const Vertex> vertices, const SearchBudget& budget) const = 0;
};

// Graph Hamilton cycles: path absorbers with gap splicing, shortest-path
// connectors and greedy rainbow matchings.
std::unique_ptr<Provider> builtin_provider_hc2uniform();

struct StepRecord {
  int step = 0;
  std::string name;
  bool ok = true;
  std::size_t A = 0, C = 0, C1 = 0, C2 = 0, S2 = 0, R1 = 0, R2 = 0;
  std::size_t colours_consumed = 0;
  std::size_t colours_unused = 0;
  std::size_t vertices_covered = 0;
  std::map<std::string, long long> extra;
};

struct FailureReport {
  int step = 0;
  std::string step_name;
  std::string sub_operation;
  std::string message;
  std::size_t attempt = 0;
  std::uint64_t seed = 0;
  std::vector<StepRecord> trace;
};

struct PipelineRun {
  std::uint64_t seed = 0;
  std::vector<StepRecord> trace;
  std::optional<TransversalCertificate> certificate;
  std::optional<FailureReport> failure;
  std::vector<Vertex> cycle;  // cyclic vertex sequence on success
};

struct PipelineResult {
  std::optional<TransversalCertificate> certificate;
  std::vector<PipelineRun> runs;  // one per attempt, last is the deciding one
  std::vector<std::string> warnings;

  bool ok() const noexcept { return certificate.has_value(); }
  const PipelineRun& last() const { return runs.back(); }
};

// One attempt with the given seed.
PipelineRun solve_once(const Collection& c, const Provider& provider, const PipelineConfig& cfg,
                       std::uint64_t seed);

// Up to cfg.retries attempts on seeds split from cfg.seed. Throws
// ColourCountMismatch / Divisibility before any attempt.
PipelineResult solve_transversal_hamilton(const Collection& c, const Link& link, const Provider& provider,
                                          const PipelineConfig& cfg = {});

const std::vector<StepRecord>& step_trace(const PipelineRun& run);

}  // namespace rainbow
