#include "spanlab/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace spanlab {

std::string_view to_string(StretchClass c) {
  switch (c) {
    case StretchClass::AdjacentSV: return "adjacent_SxV";
    case StretchClass::NonAdjacentSV: return "nonadjacent_SxV";
    case StretchClass::AdjacentVV: return "adjacent_VxV";
    case StretchClass::NonAdjacentVV: return "nonadjacent_VxV";
    case StretchClass::ZZ: return "ZxZ";
  }
  return "?";
}

namespace {

int parse_int_field(std::string_view key, std::string_view value) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("stretch spec: " + std::string(key) + " needs an integer, got '" + std::string(value) + "'");
  }
  return out;
}

void check_bound(Bound b) {
  if (b.alpha < 1 || b.beta < 0) throw std::invalid_argument("stretch spec: need alpha >= 1 and beta >= 0");
}

}  // namespace

StretchSpec StretchSpec::hybrid(int k) {
  if (k < 1) throw std::invalid_argument("stretch spec: hybrid needs k >= 1");
  StretchSpec s;
  s.kind = "hybrid";
  s.bounds = {{StretchClass::AdjacentVV, {2 * k - 1, 0}}, {StretchClass::NonAdjacentVV, {k, 0}}};
  s.formula = "hybrid";
  s.k = k;
  return s;
}

StretchSpec StretchSpec::swmult(int k) {
  if (k < 2) throw std::invalid_argument("stretch spec: swmult needs k >= 2");
  StretchSpec s;
  s.kind = "swmult";
  s.bounds = {{StretchClass::AdjacentSV, {2 * k - 1, 0}}, {StretchClass::NonAdjacentSV, {2 * k - 2, 0}}};
  s.formula = "swmult";
  s.k = k;
  return s;
}

StretchSpec StretchSpec::additive(int beta) {
  StretchSpec s;
  s.kind = "additive";
  s.bounds = {{StretchClass::AdjacentSV, {1, beta}}, {StretchClass::NonAdjacentSV, {1, beta}}};
  check_bound({1, beta});
  if (beta >= 2 && beta % 2 == 0) {
    s.formula = "swadd";
    s.k = beta / 2;
  }
  return s;
}

StretchSpec StretchSpec::emulator(int beta) {
  StretchSpec s = additive(beta);
  s.kind = "emulator";
  s.formula = "emu2";
  s.k = 0;
  return s;
}

StretchSpec StretchSpec::subsetwise(int beta) {
  check_bound({1, beta});
  StretchSpec s;
  s.kind = "subsetwise";
  s.bounds = {{StretchClass::ZZ, {1, beta}}};
  return s;
}

StretchSpec StretchSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("stretch spec: expected KIND:KEY=VALUE, got '" + std::string(text) + "'");
  const std::string kind(text.substr(0, colon));
  std::map<std::string, std::string, std::less<>> fields;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("stretch spec: expected KEY=VALUE, got '" + std::string(item) + "'");
    fields[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  auto take_int = [&](const std::string& key) {
    auto it = fields.find(key);
    if (it == fields.end()) throw std::invalid_argument("stretch spec: " + kind + " needs " + key + "=");
    const int v = parse_int_field(key, it->second);
    fields.erase(it);
    return v;
  };

  StretchSpec s;
  if (kind == "hybrid") {
    s = hybrid(take_int("k"));
  } else if (kind == "swmult") {
    s = swmult(take_int("k"));
  } else if (kind == "additive") {
    s = additive(take_int("beta"));
  } else if (kind == "emulator") {
    s = emulator(take_int("beta"));
  } else if (kind == "subsetwise") {
    s = subsetwise(take_int("beta"));
  } else {
    throw std::invalid_argument("stretch spec: unknown kind '" + kind + "'");
  }
  if (auto it = fields.find("formula"); it != fields.end()) {
    s.formula = it->second == "none" ? "" : it->second;
    if (!s.formula.empty()) size_bound(s.formula, 2, 1, 0.0);
    fields.erase(it);
  }
  if (fields.contains("k")) s.k = take_int("k");
  if (!fields.empty()) throw std::invalid_argument("stretch spec: unknown field '" + fields.begin()->first + "'");
  return s;
}

bool StretchSpec::needs_sources() const {
  return bounds.contains(StretchClass::AdjacentSV) || bounds.contains(StretchClass::NonAdjacentSV) ||
         bounds.contains(StretchClass::ZZ);
}

bool StretchSpec::needs_all_pairs() const {
  return bounds.contains(StretchClass::AdjacentVV) || bounds.contains(StretchClass::NonAdjacentVV);
}

double size_bound(std::string_view formula, Vertex n, int k, double epsilon) {
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  if (formula == "emu2" || formula == "sw4") return std::pow(nn, 1.0 + epsilon / 2.0);
  if (k < 1) throw std::invalid_argument("size formula " + std::string(formula) + " needs k >= 1");
  if (formula == "hybrid") return kk * kk * std::pow(nn, 1.0 + 1.0 / kk);
  if (formula == "swmult") return kk * kk * std::pow(nn, 1.0 + epsilon / kk);
  if (formula == "swadd") return kk * std::pow(nn, 1.0 + (kk * epsilon + 1.0) / (2.0 * kk + 2.0));
  throw std::invalid_argument("unknown size formula '" + std::string(formula) + "'");
}

double size_report(std::size_t size, std::string_view formula, Vertex n, int k, double epsilon) {
  return static_cast<double>(size) / size_bound(formula, n, k, epsilon);
}

namespace {

// Accumulates per-class stretch over (u, v) pairs.
class Checker {
 public:
  explicit Checker(const std::map<StretchClass, Bound>& bounds) {
    for (const auto& [cls, bound] : bounds) {
      ClassReport cr;
      cr.cls = cls;
      cr.bound = bound;
      index_[cls] = reports_.size();
      reports_.push_back(cr);
    }
  }

  bool covers(StretchClass c) const { return index_.contains(c); }

  void check(StretchClass cls, Vertex u, Vertex v, int dg, std::int64_t dh) {
    if (dg == kUnreachable) {
      ++skipped_;
      return;
    }
    ClassReport& cr = reports_[index_.at(cls)];
    ++cr.pairs;
    const Bound b = cr.bound;
    const bool disconnected = dh == kUnreachableWeight;
    if (disconnected) {
      cr.max_mult = std::numeric_limits<double>::infinity();
      cr.max_add = kUnreachableWeight;
    } else if (dg > 0) {
      cr.max_mult = std::max(cr.max_mult, static_cast<double>(dh) / dg);
      cr.max_add = std::max(cr.max_add, dh - dg);
    }
    if (disconnected || dh < dg || dh > static_cast<std::int64_t>(b.alpha) * dg + b.beta) {
      ++cr.n_violations;
      violations_.push_back({cls, u, v, dg, dh});
    }
  }

  StretchReport finish(std::string kind, std::size_t size) {
    StretchReport r;
    r.kind = std::move(kind);
    r.size = size;
    r.skipped_unreachable = skipped_;
    for (const ClassReport& cr : reports_) {
      r.loosest.alpha = std::max(r.loosest.alpha, cr.bound.alpha);
      r.loosest.beta = std::max(r.loosest.beta, cr.bound.beta);
      r.max_mult = std::max(r.max_mult, cr.max_mult);
      r.max_add = std::max(r.max_add, cr.max_add);
    }
    r.classes = std::move(reports_);
    std::sort(violations_.begin(), violations_.end(), [](const Violation& a, const Violation& b) {
      return std::tie(a.u, a.v, a.cls) < std::tie(b.u, b.v, b.cls);
    });
    r.violations = std::move(violations_);
    return r;
  }

 private:
  std::map<StretchClass, std::size_t> index_;
  std::vector<ClassReport> reports_;
  std::vector<Violation> violations_;
  std::size_t skipped_ = 0;
};

std::int64_t widen(int d) { return d == kUnreachable ? kUnreachableWeight : d; }

}  // namespace

StretchReport verify_spanner(const Graph& g, std::span<const Edge> h_edges, const SourceSet* sources,
                             const StretchSpec& spec) {
  if (!is_subgraph(g, h_edges)) throw std::invalid_argument("verify: candidate is not a subgraph of the input graph");
  if (spec.needs_sources() && sources == nullptr) throw std::invalid_argument("verify: spec " + spec.kind + " needs sources");
  const Vertex n = g.num_vertices();
  const Graph h = Graph::from_edges(n, h_edges);
  Checker checker(spec.bounds);

  const bool sv = checker.covers(StretchClass::AdjacentSV) || checker.covers(StretchClass::NonAdjacentSV);
  if (spec.needs_all_pairs()) {
    for (Vertex u = 0; u < n; ++u) {
      const auto dg = bfs_distances(g, u);
      const auto dh = bfs_distances(h, u);
      for (Vertex v = u + 1; v < n; ++v) {
        const auto cls = dg[v] == 1 ? StretchClass::AdjacentVV : StretchClass::NonAdjacentVV;
        if (checker.covers(cls)) checker.check(cls, u, v, dg[v], widen(dh[v]));
      }
    }
  }
  if (sv) {
    for (Vertex s : sources->vertices()) {
      const auto dg = bfs_distances(g, s);
      const auto dh = bfs_distances(h, s);
      for (Vertex v = 0; v < n; ++v) {
        if (v == s) continue;
        const auto cls = dg[v] == 1 ? StretchClass::AdjacentSV : StretchClass::NonAdjacentSV;
        if (checker.covers(cls)) checker.check(cls, s, v, dg[v], widen(dh[v]));
      }
    }
  }
  if (checker.covers(StretchClass::ZZ)) {
    const auto z = sources->vertices();
    for (std::size_t i = 0; i < z.size(); ++i) {
      const auto dg = bfs_distances(g, z[i]);
      const auto dh = bfs_distances(h, z[i]);
      for (std::size_t j = i + 1; j < z.size(); ++j) checker.check(StretchClass::ZZ, z[i], z[j], dg[z[j]], widen(dh[z[j]]));
    }
  }

  StretchReport report = checker.finish(spec.kind, h_edges.size());
  if (!spec.formula.empty()) {
    const double eps = sources ? sources->epsilon() : 0.0;
    report.bound_ratio = size_report(h_edges.size(), spec.formula, n, spec.k, eps);
  }
  return report;
}

StretchReport verify_emulator(const Graph& g, const Emulator& h, const SourceSet& sources, int beta) {
  if (h.num_vertices() != g.num_vertices()) throw std::invalid_argument("verify: emulator and graph differ in vertex count");
  const StretchSpec spec = StretchSpec::emulator(beta);
  Checker checker(spec.bounds);
  for (Vertex s : sources.vertices()) {
    const auto dg = bfs_distances(g, s);
    const auto dh = weighted_sssp(h, s);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (v == s) continue;
      checker.check(dg[v] == 1 ? StretchClass::AdjacentSV : StretchClass::NonAdjacentSV, s, v, dg[v], dh[v]);
    }
  }
  StretchReport report = checker.finish(spec.kind, h.num_edges());
  report.bound_ratio = size_report(h.num_edges(), spec.formula, g.num_vertices(), 0, sources.epsilon());
  return report;
}

namespace {

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }
nlohmann::json dist_or_null(std::int64_t d) { return d == kUnreachableWeight ? nlohmann::json(nullptr) : nlohmann::json(d); }

}  // namespace

nlohmann::json to_json(const StretchReport& report, std::size_t cap) {
  nlohmann::json classes = nlohmann::json::array();
  for (const ClassReport& cr : report.classes) {
    classes.push_back({{"class", to_string(cr.cls)},
                       {"alpha", cr.bound.alpha},
                       {"beta", cr.bound.beta},
                       {"pairs", cr.pairs},
                       {"max_mult", number_or_null(cr.max_mult)},
                       {"max_add", dist_or_null(cr.max_add)},
                       {"n_violations", cr.n_violations}});
  }
  nlohmann::json violations = nlohmann::json::array();
  for (std::size_t i = 0; i < std::min(cap, report.violations.size()); ++i) {
    const Violation& v = report.violations[i];
    violations.push_back({{"class", to_string(v.cls)},
                          {"u", v.u},
                          {"v", v.v},
                          {"dist_g", v.dist_g},
                          {"dist_h", dist_or_null(v.dist_h)}});
  }
  return {{"class", report.kind},
          {"alpha", report.loosest.alpha},
          {"beta", report.loosest.beta},
          {"max_mult", number_or_null(report.max_mult)},
          {"max_add", dist_or_null(report.max_add)},
          {"n_violations", report.violations.size()},
          {"violations", violations},
          {"size", report.size},
          {"bound_ratio", report.bound_ratio ? nlohmann::json(*report.bound_ratio) : nlohmann::json(nullptr)},
          {"classes", classes},
          {"skipped_unreachable", report.skipped_unreachable}};
}

nlohmann::json to_json(const SpannerMeta& meta) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : meta.params) params[name] = value;
  nlohmann::json phases = nlohmann::json::array();
  for (const auto& [name, count] : meta.phase_edges) phases.push_back({{"phase", name}, {"edges", count}});
  return {{"construction", meta.construction},
          {"seed", meta.seed},
          {"params", params},
          {"phase_edges", phases},
          {"warnings", meta.warnings}};
}

}  // namespace spanlab
