// rainbow: generate collections, search for rainbow Hamilton link-cycles,
// verify certificates and scan success rates over minimum degree.
//
// Exit codes: 0 success, 1 definitive negative, 2 budget exhausted or
// pipeline failure, 3 usage error.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rainbow/error.hpp"
#include "rainbow/exact.hpp"
#include "rainbow/gen.hpp"
#include "rainbow/io.hpp"
#include "rainbow/pipeline.hpp"

namespace {

using namespace rainbow;
using io::Json;

constexpr int kSuccess = 0, kNegative = 1, kExhausted = 2, kUsage = 3;

std::uint64_t default_seed() {
  if (const char* s = std::getenv("RAINBOW_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "RAINBOW_SEED is not an unsigned integer");
    }
  }
  return 0;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_file(path, text);
  }
}

struct GenArgs {
  std::string family = "random";
  std::size_t n = 10, k = 2, d = 1;
  std::optional<std::size_t> m;
  double delta = 0.5;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::uint64_t seed) {
  GenSpec spec;
  spec.family = family_from_tag(a.family);
  spec.n = a.n;
  spec.k = a.k;
  spec.d = a.d;
  spec.m = a.m.value_or(a.n);
  spec.delta_fraction = a.delta;
  spec.seed = seed;
  emit(a.out, io::to_json(generate(spec)).dump() + "\n");
  return kSuccess;
}

struct SolveArgs {
  std::string in, link = "edge(2,1)", engine = "exact", out_cert;
  std::uint64_t nodes = 10'000'000;
  std::optional<double> secs;
  bool trace = false;
};

struct Outcome {
  std::string name;  // success / none / exhausted / failure step N
  int code = kSuccess;
  std::optional<TransversalCertificate> cert;
  Json detail = Json::object();
};

Outcome run_exact(const Collection& c, const Link& link, const SearchBudget& budget) {
  const auto r = find_transversal_cycle(c, link, budget);
  Outcome o;
  o.name = std::string(to_string(r.outcome));
  o.code = r.found() ? kSuccess : r.outcome == SearchOutcome::None ? kNegative : kExhausted;
  o.cert = r.certificate;
  o.detail["nodes"] = r.nodes;
  return o;
}

Outcome run_pipeline(const Collection& c, const Link& link, std::uint64_t seed, std::uint64_t nodes,
                     bool trace) {
  if (!(link == edge_link(2, 1))) {
    throw Error(ErrorCode::InvalidArgument, "the pipeline engine has a built-in provider only for edge(2,1)");
  }
  const auto provider = builtin_provider_hc2uniform();
  PipelineConfig cfg;
  cfg.seed = seed;
  cfg.budget.node_limit = std::min<std::uint64_t>(cfg.budget.node_limit, nodes);
  const auto r = solve_transversal_hamilton(c, link, *provider, cfg);
  Outcome o;
  o.cert = r.certificate;
  if (r.ok()) {
    o.name = "success";
  } else {
    o.name = "failure step " + std::to_string(r.last().failure->step);
    o.code = kExhausted;
    o.detail["failure"] = io::to_json(*r.last().failure);
  }
  o.detail["attempts"] = r.runs.size();
  if (!r.warnings.empty()) o.detail["warnings"] = r.warnings;
  if (trace) {
    Json t = Json::array();
    for (const auto& s : step_trace(r.last())) t.push_back(io::to_json(s));
    o.detail["trace"] = std::move(t);
  }
  return o;
}

int cmd_solve(const SolveArgs& a, std::uint64_t seed) {
  const auto cj = io::parse(io::read_file(a.in));
  const auto c = io::collection_from_json(cj);
  const auto link = io::parse_link(a.link);
  SearchBudget budget;
  budget.node_limit = a.nodes;
  if (a.secs) {
    budget.time_limit = *a.secs;
    budget.deterministic = false;
  }
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  if (a.engine == "exact") {
    o = run_exact(c, link, budget);
  } else if (a.engine == "pipeline") {
    o = run_pipeline(c, link, seed, a.nodes, a.trace);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown engine " + a.engine);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json report;
  report["digest"] = io::digest(cj);
  report["engine"] = a.engine;
  report["link"] = link.name().empty() ? a.link : link.name();
  report["outcome"] = o.name;
  report["seed"] = seed;
  for (auto& [k, v] : o.detail.items()) report[k] = v;
  if (o.cert && !a.out_cert.empty()) {
    io::write_file(a.out_cert, io::to_json(*o.cert).dump() + "\n");
    report["certificate"] = a.out_cert;
  }
  report["wall_time"] = secs;
  std::cout << report.dump(2) << "\n";
  return o.code;
}

struct VerifyArgs {
  std::string in, cert;
  std::optional<std::string> link;
};

int cmd_verify(const VerifyArgs& a) {
  const auto c = io::collection_from_json(io::parse(io::read_file(a.in)));
  const auto cert = io::certificate_from_json(io::parse(io::read_file(a.cert)));
  std::optional<ExpectedShape> shape;
  if (a.link) shape = ExpectedShape{io::parse_link(*a.link), c.n()};
  const auto v = verify_certificate(c, cert, shape);
  std::cout << io::to_json(v).dump() << "\n";
  return v ? kSuccess : kNegative;
}

struct ScanArgs {
  std::size_t n = 10, k = 2, trials = 10;
  std::optional<std::size_t> m;
  std::string link = "edge(2,1)", engine = "exact";
  double from = 0.3, to = 0.7, step = 0.1;
  int jobs = 1;
  std::uint64_t nodes = 10'000'000;
};

int cmd_scan(const ScanArgs& a, std::uint64_t seed) {
  if (a.step <= 0) throw Error(ErrorCode::InvalidArgument, "--delta-step must be positive");
  const auto link = io::parse_link(a.link);
  if (link.k() != a.k) throw Error(ErrorCode::InvalidArgument, "--k disagrees with the link's uniformity");
  const std::size_t m = a.m.value_or(cycle_counts(link, a.n));
  const Rng master(seed);
  std::printf("delta,trials,successes,nones,exhausted,mean_time\n");
  const auto steps = static_cast<std::size_t>(std::floor((a.to - a.from) / a.step + 1e-9)) + 1;
  for (std::size_t s = 0; s < steps && a.trials > 0; ++s) {
    const double delta = a.from + static_cast<double>(s) * a.step;
    std::vector<int> codes(a.trials, kExhausted);
    std::vector<double> times(a.trials, 0.0);
    std::string error;
    const auto trials = static_cast<std::int64_t>(a.trials);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, a.jobs))
    for (std::int64_t t = 0; t < trials; ++t) {
      try {
        // the same seeds at every delta, so rows differ only in density
        const auto trial_seed = master.split(static_cast<std::uint64_t>(t)).seed();
        GenSpec spec;
        spec.n = a.n;
        spec.k = a.k;
        spec.m = m;
        spec.delta_fraction = delta;
        spec.seed = trial_seed;
        const auto t0 = std::chrono::steady_clock::now();
        SearchBudget budget;
        budget.node_limit = a.nodes;
        const auto c = random_collection(spec);
        const auto o = a.engine == "exact" ? run_exact(c, link, budget)
                                           : run_pipeline(c, link, trial_seed, a.nodes, false);
        codes[t] = o.code;
        times[t] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      } catch (const std::exception& e) {
#pragma omp critical
        if (error.empty()) error = e.what();
      }
    }
    if (!error.empty()) throw Error(ErrorCode::InvalidArgument, error);
    std::size_t ok = 0, none = 0, ex = 0;
    double total = 0;
    for (std::size_t t = 0; t < a.trials; ++t) {
      ok += codes[t] == kSuccess;
      none += codes[t] == kNegative;
      ex += codes[t] == kExhausted;
      total += times[t];
    }
    std::printf("%.4f,%zu,%zu,%zu,%zu,%.6f\n", delta, a.trials, ok, none, ex, total / static_cast<double>(a.trials));
  }
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rainbow Hamilton link-cycles in hypergraph collections"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed_flag;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a collection as JSON");
  g->add_option("--family", gen.family, "random | bridge | dirac-extremal")->capture_default_str();
  g->add_option("--n", gen.n)->capture_default_str();
  g->add_option("--k", gen.k)->capture_default_str();
  g->add_option("--d", gen.d)->capture_default_str();
  g->add_option("--m", gen.m, "members (default n)");
  g->add_option("--delta", gen.delta, "minimum degree fraction")->capture_default_str();
  g->add_option("--seed", seed_flag);
  g->add_option("--out", gen.out, "output file (default stdout)");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "search for a rainbow Hamilton link-cycle");
  s->add_option("--in", solve.in)->required();
  s->add_option("--link", solve.link)->capture_default_str();
  s->add_option("--engine", solve.engine)->check(CLI::IsMember({"exact", "pipeline"}))->capture_default_str();
  s->add_option("--budget-nodes", solve.nodes)->capture_default_str();
  s->add_option("--budget-secs", solve.secs, "wall-clock limit; makes the run non-deterministic");
  s->add_flag("--trace", solve.trace, "include the pipeline step trace");
  s->add_option("--seed", seed_flag);
  s->add_option("--out-cert", solve.out_cert);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check a certificate");
  v->add_option("--in", verify.in)->required();
  v->add_option("--cert", verify.cert)->required();
  v->add_option("--link", verify.link, "also check the cycle shape");

  ScanArgs scan;
  auto* sc = app.add_subcommand("scan", "CSV of success rates over delta");
  sc->add_option("--n", scan.n)->capture_default_str();
  sc->add_option("--k", scan.k)->capture_default_str();
  sc->add_option("--m", scan.m, "members (default: edges of the cycle)");
  sc->add_option("--link", scan.link)->capture_default_str();
  sc->add_option("--delta-from", scan.from)->capture_default_str();
  sc->add_option("--delta-to", scan.to)->capture_default_str();
  sc->add_option("--delta-step", scan.step)->capture_default_str();
  sc->add_option("--trials", scan.trials)->capture_default_str();
  sc->add_option("--engine", scan.engine)->check(CLI::IsMember({"exact", "pipeline"}))->capture_default_str();
  sc->add_option("--jobs", scan.jobs)->capture_default_str();
  sc->add_option("--budget-nodes", scan.nodes)->capture_default_str();
  sc->add_option("--seed", seed_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    const std::uint64_t seed = seed_flag.value_or(default_seed());
    if (*g) return cmd_gen(gen, seed);
    if (*s) return cmd_solve(solve, seed);
    if (*v) return cmd_verify(verify);
    if (*sc) return cmd_scan(scan, seed);
  } catch (const std::exception& e) {
    std::cerr << "rainbow: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
