#include "spanlab/lowerbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "spanlab/numeric.hpp"

namespace spanlab {

std::size_t LayeredGraph::level_size(int level) const {
  return static_cast<std::size_t>(level_start[level] - level_start[level - 1]);
}

namespace {

std::int64_t first_radix(const LayeredGraph& lg, int level) { return level == 1 ? lg.n1 : lg.n2; }

constexpr std::int64_t kSaturated = std::int64_t{1} << 40;

// base^exp, saturating at kSaturated.
std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp && out < kSaturated; ++i) out = std::min(kSaturated, out * base);
  return out;
}

}  // namespace

// Mixed radix with a_1 most significant.
Vertex LayeredGraph::vertex_at(int level, std::span<const int> coordinates) const {
  if (level < 1 || level > k + 1 || static_cast<int>(coordinates.size()) != k) {
    throw std::out_of_range("vertex_at: bad level or coordinate count");
  }
  std::int64_t index = 0;
  for (int j = 0; j < k; ++j) {
    const std::int64_t radix = j == 0 ? first_radix(*this, level) : n1;
    if (coordinates[j] < 1 || coordinates[j] > radix) throw std::out_of_range("vertex_at: coordinate out of range");
    index = index * radix + (coordinates[j] - 1);
  }
  return level_start[level - 1] + static_cast<Vertex>(index);
}

LayeredGraph build_lb_graph(int r, int k, double epsilon, std::int64_t max_vertices) {
  if (r < 2) throw std::invalid_argument("build_lb_graph: r must be >= 2");
  if (k < 1) throw std::invalid_argument("build_lb_graph: k must be >= 1");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("build_lb_graph: epsilon must lie in [0,1]");
  LayeredGraph lg;
  lg.r = r;
  lg.k = k;
  lg.epsilon = epsilon;
  lg.n1 = std::max<std::int64_t>(1, ceil_robust(std::pow(static_cast<double>(r), epsilon / k)));
  const std::int64_t n1_pow = checked_pow(lg.n1, k - 1);
  lg.n2 = std::max<std::int64_t>(1, ceil_robust(static_cast<double>(r) / static_cast<double>(n1_pow)));

  const std::int64_t first = checked_pow(lg.n1, k);
  const std::int64_t upper = lg.n2 * n1_pow;
  const std::int64_t vertices = first + k * upper;
  if (first >= kSaturated || upper >= kSaturated || vertices > max_vertices ||
      vertices > std::numeric_limits<Vertex>::max()) {
    throw std::length_error("build_lb_graph: instance exceeds the cap of " + std::to_string(max_vertices) + " vertices");
  }
  const std::int64_t edges = k * first * lg.n2;
  if (r > std::exp(1.0) && k > std::log(r) / std::log(std::log(r))) {
    lg.warnings.push_back("k exceeds ln r / ln ln r; the distortion bound still holds but the size regime is degenerate");
  }

  lg.level_start.push_back(0);
  for (int level = 1; level <= k + 1; ++level) {
    lg.level_start.push_back(lg.level_start.back() + static_cast<Vertex>(level == 1 ? first : upper));
  }
  const auto n = static_cast<Vertex>(vertices);
  lg.levels.resize(static_cast<std::size_t>(n));
  lg.coords.resize(static_cast<std::size_t>(n));
  for (int level = 1; level <= k + 1; ++level) {
    for (Vertex v = lg.level_start[level - 1]; v < lg.level_start[level]; ++v) {
      std::int64_t rest = v - lg.level_start[level - 1];
      std::vector<int> a(static_cast<std::size_t>(k));
      for (int j = k - 1; j >= 0; --j) {
        const std::int64_t radix = j == 0 ? first_radix(lg, level) : lg.n1;
        a[j] = static_cast<int>(rest % radix) + 1;
        rest /= radix;
      }
      lg.levels[v] = level;
      lg.coords[v] = std::move(a);
    }
  }
  for (Vertex v = lg.level_start[0]; v < lg.level_start[1]; ++v) lg.sources.push_back(v);

  std::vector<Edge> edge_list;
  edge_list.reserve(static_cast<std::size_t>(edges));
  for (int level = 1; level <= k; ++level) {
    const std::int64_t choices = level == 1 ? lg.n2 : lg.n1;
    for (Vertex v = lg.level_start[level - 1]; v < lg.level_start[level]; ++v) {
      std::vector<int> a = lg.coords[v];
      for (int c = 1; c <= choices; ++c) {
        a[level - 1] = c;
        edge_list.push_back(Edge::of(v, lg.vertex_at(level + 1, a)));
      }
    }
  }
  lg.graph = Graph::from_edges(n, edge_list);
  return lg;
}

std::optional<MissingChain> find_missing_chain(const LayeredGraph& lg, std::span<const Edge> h) {
  std::unordered_set<std::uint64_t> present;
  for (Edge e : h) present.insert(edge_key(e));
  const Graph& g = lg.graph;
  std::vector<char> dead(static_cast<std::size_t>(g.num_vertices()), 0);

  std::vector<Vertex> chain;
  auto extend = [&](auto&& self, Vertex v) -> bool {
    chain.push_back(v);
    if (lg.levels[v] == lg.k + 1) return true;
    for (Vertex w : g.neighbors(v)) {
      if (lg.levels[w] != lg.levels[v] + 1 || dead[w] || present.contains(edge_key(Edge::of(v, w)))) continue;
      if (self(self, w)) return true;
    }
    dead[v] = 1;
    chain.pop_back();
    return false;
  };
  for (Vertex s : lg.sources) {
    if (extend(extend, s)) return MissingChain{chain};
  }
  return std::nullopt;
}

LbAudit lb_audit(const LayeredGraph& lg, std::span<const Edge> h) {
  LbAudit audit;
  audit.chain = find_missing_chain(lg, h);
  if (!audit.chain) return audit;
  const Vertex a = audit.chain->chain.front();
  const Vertex b = audit.chain->chain.back();
  audit.dist_g = bfs_distances(lg.graph, a)[b];
  audit.dist_h = bfs_distances(Graph::from_edges(lg.graph.num_vertices(), h), a)[b];
  audit.distortion_confirmed = audit.dist_g <= lg.k && audit.dist_h >= 3 * lg.k;
  return audit;
}

}  // namespace spanlab
