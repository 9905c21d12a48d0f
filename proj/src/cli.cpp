#include "spanlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spanlab/additive.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/hybrid.hpp"
#include "spanlab/lowerbound.hpp"
#include "spanlab/numeric.hpp"
#include "spanlab/sourcewise.hpp"
#include "spanlab/verify.hpp"

namespace spanlab::cli {
namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string output;
  std::string report;
  std::string sources;
  std::string sources_out;
  std::string meta;
  std::string candidate;
  std::string spec;
  int n = 0;
  double p = -1.0;
  double degree = -1.0;
  int k = 2;
  int r = 0;
  double eps = 1.0;
  std::uint64_t seed = 1;
  int retries = 0;
  int num_sources = 0;
  double size_cap = 0.0;
  bool suffix_both = false;
  std::vector<std::string> only;
  bool quick = false;
  std::string csv;
};

// Pending file writes, flushed together once the command has succeeded.
class Outputs {
 public:
  explicit Outputs(std::ostream& out) : out_(out) {}
  void put(const std::string& path, std::string content) { files_.emplace_back(path, std::move(content)); }
  void flush() {
    for (auto& [path, content] : files_) {
      if (path.empty() || path == "-") {
        out_ << content;
        continue;
      }
      std::ofstream f(path, std::ios::binary);
      if (!f) throw IoError("cannot write " + path);
      f << content;
      if (!f) throw IoError("write failed for " + path);
    }
    files_.clear();
  }

 private:
  std::ostream& out_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

Graph load_graph(const std::string& path) {
  if (path.empty()) throw IoError("missing input graph path");
  auto in = open_input(path);
  try {
    return read_edge_list(in);
  } catch (const ParseError& e) {
    throw IoError(path + ": " + e.what());
  }
}

SourceSet load_sources(const std::string& path, Vertex n) {
  auto in = open_input(path);
  try {
    return SourceSet(n, read_vertex_list(in, n));
  } catch (const ParseError& e) {
    throw IoError(path + ": " + e.what());
  }
}

json load_json(const std::string& path) {
  auto in = open_input(path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string edge_list_text(Vertex n, std::span<const Edge> edges) {
  std::ostringstream s;
  write_edge_list(s, n, edges);
  return s.str();
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

// Resolves --sources or --num-sources; sampled sets can be saved with --sources-out.
SourceSet resolve_sources(const RunConfig& cfg, Vertex n, Outputs& outputs) {
  if (!cfg.sources.empty()) return load_sources(cfg.sources, n);
  if (cfg.num_sources <= 0) throw CLI::ValidationError("--sources", "a sources file or --num-sources is required");
  SourceSet s = sample_sources(n, static_cast<std::size_t>(cfg.num_sources), cfg.seed);
  if (!cfg.sources_out.empty()) {
    std::ostringstream text;
    write_vertex_list(text, s.vertices());
    outputs.put(cfg.sources_out, text.str());
  }
  return s;
}

struct SizeCheck {
  double ratio = 0.0;
  int exit_code = kExitOk;
};

// The soft cap warns above the cap and fails only above five times it.
SizeCheck apply_size_cap(double ratio, double cap, SpannerMeta& meta, std::ostream& err) {
  SizeCheck c{ratio, kExitOk};
  if (cap <= 0.0 || ratio <= cap) return c;
  std::ostringstream msg;
  msg << "size ratio " << ratio << " exceeds cap " << cap;
  if (ratio > 5.0 * cap) {
    msg << " by more than 5x";
    c.exit_code = kExitViolations;
  }
  meta.warnings.push_back(msg.str());
  err << "warning: " << msg.str() << "\n";
  return c;
}

json build_report(const SpannerMeta& meta, const Graph& g, std::size_t size, const std::string& formula, double ratio) {
  json j = to_json(meta);
  j["n"] = g.num_vertices();
  j["m"] = g.num_edges();
  j["size"] = size;
  j["size_formula"] = formula;
  j["size_ratio"] = ratio;
  return j;
}

int finish_spanner(const RunConfig& cfg, const Graph& g, Spanner& s, const std::string& formula, int k, double eps,
                   Outputs& outputs, std::ostream& err) {
  const double ratio = size_report(s.size(), formula, g.num_vertices(), k, eps);
  const SizeCheck check = apply_size_cap(ratio, cfg.size_cap, s.meta, err);
  for (const std::string& w : s.meta.warnings) {
    if (w.rfind("size ratio", 0) != 0) err << "warning: " << w << "\n";
  }
  outputs.put(cfg.output, edge_list_text(s.n, s.edges));
  if (!cfg.report.empty()) outputs.put(cfg.report, json_text(build_report(s.meta, g, s.size(), formula, ratio)));
  return check.exit_code;
}

int cmd_gen_random(const RunConfig& cfg, Outputs& outputs) {
  if (cfg.n < 1) throw CLI::ValidationError("--n", "must be >= 1");
  double p = cfg.p;
  if (cfg.degree >= 0.0) p = cfg.n > 1 ? std::min(1.0, cfg.degree / (cfg.n - 1)) : 0.0;
  if (p < 0.0 || p > 1.0) throw CLI::ValidationError("--p", "give --p in [0,1] or --degree");
  const Graph g = random_graph(cfg.n, p, cfg.seed);
  std::ostringstream s;
  write_edge_list(s, g);
  outputs.put(cfg.output, s.str());
  return kExitOk;
}

json lb_meta(const LayeredGraph& lg) {
  json sizes = json::array();
  for (int level = 1; level <= lg.k + 1; ++level) sizes.push_back(lg.level_size(level));
  return {{"r", lg.r},
          {"k", lg.k},
          {"epsilon", lg.epsilon},
          {"N1", lg.n1},
          {"N2", lg.n2},
          {"n", lg.graph.num_vertices()},
          {"m", lg.graph.num_edges()},
          {"level_sizes", sizes},
          {"warnings", lg.warnings}};
}

int cmd_gen_lb(const RunConfig& cfg, Outputs& outputs, std::ostream& err) {
  const LayeredGraph lg = build_lb_graph(cfg.r, cfg.k, cfg.eps);
  for (const std::string& w : lg.warnings) err << "warning: " << w << "\n";
  std::ostringstream g;
  write_edge_list(g, lg.graph);
  outputs.put(cfg.output, g.str());
  if (!cfg.sources_out.empty()) {
    std::ostringstream s;
    write_vertex_list(s, lg.sources);
    outputs.put(cfg.sources_out, s.str());
  }
  if (!cfg.meta.empty()) outputs.put(cfg.meta, json_text(lb_meta(lg)));
  return kExitOk;
}

int cmd_build(const std::string& which, const RunConfig& cfg, Outputs& outputs, std::ostream& err) {
  const Graph g = load_graph(cfg.input);
  if (which == "hybrid") {
    HybridResult r = build_hybrid(g, cfg.k, cfg.seed, HybridOptions{cfg.suffix_both});
    return finish_spanner(cfg, g, r.spanner, "hybrid", cfg.k, 0.0, outputs, err);
  }
  const SourceSet sources = resolve_sources(cfg, g.num_vertices(), outputs);
  if (which == "swmult") {
    SourcewiseResult r = build_sourcewise_mult(g, sources, cfg.k, cfg.seed);
    return finish_spanner(cfg, g, r.spanner, "swmult", cfg.k, sources.epsilon(), outputs, err);
  }
  if (which == "swadd") {
    AdditiveOptions opt;
    opt.retries = cfg.retries;
    AdditiveResult r = build_sourcewise_additive(g, sources, cfg.k, cfg.seed, opt);
    if (cfg.retries > 0 && !r.verified) {
      r.spanner.meta.warnings.push_back("long pairs still outside +2k after " + std::to_string(r.draws) + " draws");
    }
    const int code = finish_spanner(cfg, g, r.spanner, "swadd", cfg.k, sources.epsilon(), outputs, err);
    return (cfg.retries > 0 && !r.verified) ? kExitViolations : code;
  }
  if (which == "sw4") {
    Spanner s = build_sourcewise_additive4(g, sources);
    s.meta.seed = cfg.seed;
    return finish_spanner(cfg, g, s, "sw4", 0, sources.epsilon(), outputs, err);
  }
  if (which == "emulator") {
    EmulatorResult r = build_sourcewise_emulator2(g, sources);
    r.meta.seed = cfg.seed;
    const double ratio = size_report(r.emulator.num_edges(), "emu2", g.num_vertices(), 0, sources.epsilon());
    const SizeCheck check = apply_size_cap(ratio, cfg.size_cap, r.meta, err);
    std::ostringstream text;
    write_emulator(text, r.emulator);
    outputs.put(cfg.output, text.str());
    if (!cfg.report.empty()) {
      outputs.put(cfg.report, json_text(build_report(r.meta, g, r.emulator.num_edges(), "emu2", ratio)));
    }
    return check.exit_code;
  }
  throw CLI::ValidationError("build", "unknown construction " + which);
}

int cmd_verify(const RunConfig& cfg, Outputs& outputs, std::ostream& err) {
  const StretchSpec spec = StretchSpec::parse(cfg.spec);
  const Graph g = load_graph(cfg.input);
  std::optional<SourceSet> sources;
  if (!cfg.sources.empty()) sources = load_sources(cfg.sources, g.num_vertices());
  if (spec.needs_sources() && !sources) throw CLI::ValidationError("--sources", "spec " + spec.kind + " needs --sources");

  StretchReport report;
  if (spec.kind == "emulator") {
    auto in = open_input(cfg.candidate);
    const Emulator h = read_emulator(in);
    report = verify_emulator(g, h, *sources, spec.bounds.begin()->second.beta);
  } else {
    const Graph h = load_graph(cfg.candidate);
    if (h.num_vertices() != g.num_vertices()) throw IoError("candidate and graph differ in vertex count");
    const std::vector<Edge> edges = h.edges();
    report = verify_spanner(g, edges, sources ? &*sources : nullptr, spec);
  }
  outputs.put(cfg.report, json_text(to_json(report)));
  err << report.kind << ": " << report.violations.size() << " violations, size " << report.size << "\n";
  return report.ok() ? kExitOk : kExitViolations;
}

int cmd_audit_lb(const RunConfig& cfg, Outputs& outputs, std::ostream& err) {
  const json meta = load_json(cfg.meta);
  LayeredGraph lg;
  try {
    lg = build_lb_graph(meta.at("r").get<int>(), meta.at("k").get<int>(), meta.at("epsilon").get<double>());
  } catch (const json::exception& e) {
    throw IoError(cfg.meta + ": " + e.what());
  }
  const Graph g = load_graph(cfg.input);
  if (g.edges() != lg.graph.edges()) throw IoError(cfg.input + " does not match the instance described by " + cfg.meta);
  const Graph h = load_graph(cfg.candidate);
  const std::vector<Edge> edges = h.edges();
  if (h.num_vertices() != g.num_vertices() || !is_subgraph(g, edges)) throw IoError("candidate is not a subgraph of the instance");

  const LbAudit audit = lb_audit(lg, edges);
  json j = {{"candidate_size", edges.size()},
            {"edges", g.num_edges()},
            {"k", lg.k},
            {"chain_found", audit.chain.has_value()}};
  if (audit.chain) {
    j["chain"] = audit.chain->chain;
    j["witness"] = {audit.chain->chain.front(), audit.chain->chain.back()};
    j["dist_g"] = audit.dist_g;
    j["dist_h"] = audit.dist_h == kUnreachable ? json(nullptr) : json(audit.dist_h);
    j["distortion_confirmed"] = audit.distortion_confirmed;
    err << "witness " << audit.chain->chain.front() << " " << audit.chain->chain.back() << ": dist_G " << audit.dist_g
        << ", dist_H " << (audit.dist_h == kUnreachable ? std::string("inf") : std::to_string(audit.dist_h)) << "\n";
  } else {
    err << "no chain, no witness\n";
  }
  outputs.put(cfg.report, json_text(j));
  return audit.chain ? kExitViolations : kExitOk;
}

struct BenchRow {
  std::string construction;
  Vertex n = 0;
  int k = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  double ratio = 0.0;
  double max_mult = 0.0;
  std::int64_t max_add = 0;
  std::size_t violations = 0;
  double millis = 0.0;
};

int cmd_bench(const RunConfig& cfg, Outputs& outputs) {
  auto wanted = [&](const std::string& c) {
    return cfg.only.empty() || std::find(cfg.only.begin(), cfg.only.end(), c) != cfg.only.end();
  };
  const std::vector<Vertex> mult_ns = cfg.quick ? std::vector<Vertex>{128} : std::vector<Vertex>{128, 256, 512};
  const std::vector<Vertex> add_ns = cfg.quick ? std::vector<Vertex>{256} : std::vector<Vertex>{256, 512};
  const std::vector<std::uint64_t> seeds = cfg.quick ? std::vector<std::uint64_t>{1} : std::vector<std::uint64_t>{1, 2, 3};
  auto graph_for = [](Vertex n, std::uint64_t seed) { return random_graph(n, 8.0 / (n - 1), seed); };

  std::vector<BenchRow> rows;
  auto timed = [&](BenchRow row, const std::function<std::pair<std::size_t, StretchReport>()>& body,
                   const std::string& formula, int fk) {
    const auto t0 = std::chrono::steady_clock::now();
    auto [size, report] = body();
    row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    row.size = size;
    row.ratio = size_report(size, formula, row.n, fk, row.eps);
    row.max_mult = report.max_mult;
    row.max_add = report.max_add;
    row.violations = report.violations.size();
    rows.push_back(row);
  };

  for (Vertex n : mult_ns) {
    for (int k : {2, 3, 4}) {
      for (std::uint64_t seed : seeds) {
        const Graph g = graph_for(n, seed);
        if (wanted("hybrid")) {
          timed({"hybrid", n, k, 0.0, seed}, [&] {
            const HybridResult r = build_hybrid(g, k, seed);
            return std::pair{r.spanner.size(), verify_spanner(g, r.spanner.edges, nullptr, StretchSpec::hybrid(k))};
          }, "hybrid", k);
        }
        if (wanted("swmult")) {
          for (double eps : {0.25, 0.5}) {
            const SourceSet s = sample_sources(n, static_cast<std::size_t>(ceil_robust(std::pow(n, eps))), seed);
            timed({"swmult", n, k, s.epsilon(), seed}, [&] {
              const SourcewiseResult r = build_sourcewise_mult(g, s, k, seed);
              return std::pair{r.spanner.size(), verify_spanner(g, r.spanner.edges, &s, StretchSpec::swmult(k))};
            }, "swmult", k);
          }
        }
      }
    }
  }
  for (Vertex n : add_ns) {
    for (std::uint64_t seed : seeds) {
      const Graph g = graph_for(n, seed);
      const SourceSet s = sample_sources(n, static_cast<std::size_t>(ceil_robust(std::sqrt(n))), seed);
      if (wanted("swadd")) {
        for (int k : {1, 2}) {
          timed({"swadd", n, k, s.epsilon(), seed}, [&] {
            AdditiveOptions opt;
            opt.retries = 2;
            const AdditiveResult r = build_sourcewise_additive(g, s, k, seed, opt);
            return std::pair{r.spanner.size(), verify_spanner(g, r.spanner.edges, &s, StretchSpec::additive(2 * k))};
          }, "swadd", k);
        }
      }
      if (wanted("emulator")) {
        timed({"emulator", n, 0, s.epsilon(), seed}, [&] {
          const EmulatorResult r = build_sourcewise_emulator2(g, s);
          return std::pair{r.emulator.num_edges(), verify_emulator(g, r.emulator, s, 2)};
        }, "emu2", 0);
      }
    }
  }
  if (wanted("sw4")) {
    for (std::uint64_t seed : seeds) {
      const Vertex n = cfg.quick ? 256 : 512;
      const Graph g = graph_for(n, seed);
      const SourceSet s = sample_sources(n, cfg.quick ? 41 : 64, seed);
      timed({"sw4", n, 0, s.epsilon(), seed}, [&] {
        const Spanner h = build_sourcewise_additive4(g, s);
        return std::pair{h.size(), verify_spanner(g, h.edges, &s, StretchSpec::additive(4))};
      }, "sw4", 0);
    }
  }

  std::ostringstream table;
  table << std::left << std::setw(10) << "build" << std::right << std::setw(6) << "n" << std::setw(4) << "k"
        << std::setw(7) << "eps" << std::setw(6) << "seed" << std::setw(8) << "size" << std::setw(9) << "ratio"
        << std::setw(9) << "mult" << std::setw(6) << "add" << std::setw(6) << "viol" << std::setw(10) << "ms" << "\n";
  std::ostringstream csv;
  csv << "build,n,k,eps,seed,size,ratio,max_mult,max_add,violations,ms\n";
  std::size_t total = 0;
  for (const BenchRow& r : rows) {
    total += r.violations;
    table << std::left << std::setw(10) << r.construction << std::right << std::setw(6) << r.n << std::setw(4) << r.k
          << std::fixed << std::setprecision(3) << std::setw(7) << r.eps << std::setw(6) << r.seed << std::setw(8)
          << r.size << std::setw(9) << r.ratio << std::setw(9) << r.max_mult << std::setw(6) << r.max_add
          << std::setw(6) << r.violations << std::setprecision(1) << std::setw(10) << r.millis << "\n";
    csv << r.construction << ',' << r.n << ',' << r.k << ',' << r.eps << ',' << r.seed << ',' << r.size << ','
        << r.ratio << ',' << r.max_mult << ',' << r.max_add << ',' << r.violations << ',' << r.millis << "\n";
  }
  table << rows.size() << " runs, " << total << " violations\n";
  outputs.put(cfg.output, table.str());
  if (!cfg.csv.empty()) outputs.put(cfg.csv, csv.str());
  return total == 0 ? kExitOk : kExitViolations;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spanner and emulator constructions with exact stretch verification", "spanlab"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<int(Outputs&)> action;

  auto* gen = app.add_subcommand("gen", "Generate input graphs")->require_subcommand(1);
  auto* gen_random = gen->add_subcommand("random", "Erdos-Renyi G(n,p) edge list");
  gen_random->add_option("--n", cfg.n, "vertex count")->required();
  auto* p_opt = gen_random->add_option("--p", cfg.p, "edge probability");
  gen_random->add_option("--degree", cfg.degree, "target average degree, sets p = d/(n-1)")->excludes(p_opt);
  gen_random->add_option("--seed", cfg.seed);
  gen_random->add_option("--out", cfg.output);
  gen_random->callback([&] { action = [&](Outputs& o) { return cmd_gen_random(cfg, o); }; });

  auto* gen_lb = gen->add_subcommand("lb", "Layered lower-bound instance");
  gen_lb->add_option("--r", cfg.r)->required();
  gen_lb->add_option("--k", cfg.k)->required();
  gen_lb->add_option("--eps", cfg.eps)->required();
  gen_lb->add_option("--out", cfg.output);
  gen_lb->add_option("--sources", cfg.sources_out, "write level-1 vertices here");
  gen_lb->add_option("--meta", cfg.meta, "write N1, N2 and level sizes here");
  gen_lb->callback([&] { action = [&](Outputs& o) { return cmd_gen_lb(cfg, o, err); }; });

  auto* build = app.add_subcommand("build", "Build a spanner or emulator")->require_subcommand(1);
  for (const char* which : {"hybrid", "swmult", "swadd", "emulator", "sw4"}) {
    auto* sub = build->add_subcommand(which);
    sub->add_option("--in", cfg.input, "input edge list")->required();
    sub->add_option("--out", cfg.output);
    sub->add_option("--report", cfg.report, "JSON build report");
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--size-cap", cfg.size_cap, "soft cap on the size ratio");
    const std::string name = which;
    if (name == "hybrid" || name == "swmult" || name == "swadd") sub->add_option("--k", cfg.k)->required();
    if (name == "hybrid") sub->add_flag("--suffix-both", cfg.suffix_both, "keep path suffixes at both ends");
    if (name != "hybrid") {
      auto* src = sub->add_option("--sources", cfg.sources, "one vertex id per line");
      sub->add_option("--num-sources", cfg.num_sources, "sample this many sources instead")->excludes(src);
      sub->add_option("--sources-out", cfg.sources_out, "write sampled sources here");
    }
    if (name == "swadd") sub->add_option("--retries", cfg.retries, "redraws of the long-pair sample")->check(CLI::NonNegativeNumber);
    sub->callback([&, name] { action = [&, name](Outputs& o) { return cmd_build(name, cfg, o, err); }; });
  }

  auto* verify = app.add_subcommand("verify", "Check a candidate against a stretch spec");
  verify->add_option("--graph", cfg.input)->required();
  verify->add_option("--candidate", cfg.candidate)->required();
  verify->add_option("--sources", cfg.sources);
  verify->add_option("--spec", cfg.spec, "hybrid:k=K | swmult:k=K | additive:beta=B | emulator:beta=B | subsetwise:beta=B")->required();
  verify->add_option("--report", cfg.report);
  verify->callback([&] { action = [&](Outputs& o) { return cmd_verify(cfg, o, err); }; });

  auto* audit = app.add_subcommand("audit", "Adversarial audits")->require_subcommand(1);
  auto* audit_lb = audit->add_subcommand("lb", "Search a candidate for a missing chain");
  audit_lb->add_option("--graph", cfg.input)->required();
  audit_lb->add_option("--meta", cfg.meta)->required();
  audit_lb->add_option("--candidate", cfg.candidate)->required();
  audit_lb->add_option("--report", cfg.report);
  audit_lb->callback([&] { action = [&](Outputs& o) { return cmd_audit_lb(cfg, o, err); }; });

  auto* bench = app.add_subcommand("bench", "Build and verify a parameter grid");
  bench->add_option("--only", cfg.only, "constructions to run")->delimiter(',');
  bench->add_flag("--quick", cfg.quick, "smallest grid point per construction");
  bench->add_option("--out", cfg.output, "table destination");
  bench->add_option("--csv", cfg.csv);
  bench->callback([&] { action = [&](Outputs& o) { return cmd_bench(cfg, o); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  Outputs outputs(out);
  try {
    const int code = action(outputs);
    outputs.flush();
    return code;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace spanlab::cli
