#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "spanlab/graph.hpp"
#include "spanlab/spanner.hpp"

namespace spanlab {

enum class StretchClass { AdjacentSV, NonAdjacentSV, AdjacentVV, NonAdjacentVV, ZZ };

std::string_view to_string(StretchClass c);

/// dist_H <= alpha * dist_G + beta.
struct Bound {
  int alpha = 1;
  int beta = 0;
};

struct StretchSpec {
  std::string kind;  // hybrid, swmult, additive, emulator, subsetwise
  std::map<StretchClass, Bound> bounds;
  /// Size formula id for the bound ratio, empty for none.
  std::string formula;
  int k = 0;  // formula parameter

  /// Parses "hybrid:k=2", "swmult:k=3", "additive:beta=4", "emulator:beta=2"
  /// or "subsetwise:beta=2". Extra ",formula=ID" or ",k=K" override the
  /// size formula. Throws std::invalid_argument.
  static StretchSpec parse(std::string_view text);

  static StretchSpec hybrid(int k);
  static StretchSpec swmult(int k);
  static StretchSpec additive(int beta);
  static StretchSpec emulator(int beta);
  static StretchSpec subsetwise(int beta);

  bool needs_sources() const;
  bool needs_all_pairs() const;
};

struct Violation {
  StretchClass cls = StretchClass::AdjacentVV;
  Vertex u = 0;
  Vertex v = 0;
  int dist_g = 0;
  std::int64_t dist_h = 0;  // kUnreachableWeight when disconnected in h
};

struct ClassReport {
  StretchClass cls = StretchClass::AdjacentVV;
  Bound bound;
  std::size_t pairs = 0;
  double max_mult = 1.0;
  std::int64_t max_add = 0;
  std::size_t n_violations = 0;
};

struct StretchReport {
  std::string kind;
  std::vector<ClassReport> classes;
  Bound loosest;
  double max_mult = 1.0;  // infinity when some pair is disconnected in h
  std::int64_t max_add = 0;
  std::vector<Violation> violations;  // sorted by (u, v, class)
  std::size_t skipped_unreachable = 0;
  std::size_t size = 0;
  std::optional<double> bound_ratio;

  bool ok() const noexcept { return violations.empty(); }
};

/// Size expression of a construction, evaluated at (n, k, epsilon):
///   hybrid k^2 n^{1+1/k}, swmult k^2 n^{1+eps/k},
///   swadd k n^{1+(k eps+1)/(2k+2)}, emu2 and sw4 n^{1+eps/2}.
double size_bound(std::string_view formula, Vertex n, int k, double epsilon);
double size_report(std::size_t size, std::string_view formula, Vertex n, int k, double epsilon);

/// Exact check of every pair in the StretchSpec classes by BFS in g and h.
/// Throws std::invalid_argument when h is not a subgraph of g or when
/// sources are needed and missing.
StretchReport verify_spanner(const Graph& g, std::span<const Edge> h, const SourceSet* sources, const StretchSpec& spec);

/// Sandwich dist_G <= dist_H <= dist_G + beta over S×V, using weighted
/// shortest paths in h.
StretchReport verify_emulator(const Graph& g, const Emulator& h, const SourceSet& sources, int beta);

/// Report as a single JSON object. At most `cap` violations are listed.
nlohmann::json to_json(const StretchReport& report, std::size_t cap = 100);
nlohmann::json to_json(const SpannerMeta& meta);

}  // namespace spanlab
