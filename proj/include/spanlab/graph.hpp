#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace spanlab {

using Vertex = std::int32_t;

inline constexpr Vertex kNoVertex = -1;
inline constexpr int kUnreachable = std::numeric_limits<int>::max();
inline constexpr std::int64_t kUnreachableWeight = std::numeric_limits<std::int64_t>::max();

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the text readers; carries the 1-based line of the offending input.
class ParseError : public GraphError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Undirected edge, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static constexpr Edge of(Vertex a, Vertex b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
  }
  constexpr auto operator<=>(const Edge&) const = default;
};

constexpr std::uint64_t edge_key(Edge e) noexcept {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.u)) << 32) |
         static_cast<std::uint32_t>(e.v);
}

/// Simple undirected graph in compressed sparse row form with ascending
/// neighbor lists. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Vertex n);

  /// Validates every edge: ids in range, no self-loops, no duplicates.
  static Graph from_edges(Vertex n, std::span<const Edge> edges);

  Vertex num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const noexcept { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  bool has_edge(Vertex u, Vertex v) const noexcept;

  /// All edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

 private:
  Vertex n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

/// Growable adjacency used while a spanner is under construction.
class MutableGraph {
 public:
  explicit MutableGraph(Vertex n) : adj_(static_cast<std::size_t>(n)) {}

  Vertex num_vertices() const noexcept { return static_cast<Vertex>(adj_.size()); }
  std::size_t num_edges() const noexcept { return keys_.size(); }
  std::span<const Vertex> neighbors(Vertex v) const noexcept { return adj_[v]; }
  bool has_edge(Vertex u, Vertex v) const { return keys_.contains(edge_key(Edge::of(u, v))); }

  /// Returns true when the edge was not present before.
  bool add_edge(Edge e);
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::unordered_set<std::uint64_t> keys_;
};

struct Path {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  std::vector<Edge> edges() const;
  friend bool operator==(const Path&, const Path&) = default;
};

/// Output of a (possibly multi-root) breadth-first search.
///
/// parent(v) is the minimum-id neighbor one level closer to the roots.
/// owner(v) is the nearest root, the minimum root id on ties.
/// tree_parent(v) is the minimum-id neighbor one level closer that shares
/// v's owner, so following it from v always ends at owner(v).
struct BfsResult {
  std::vector<int> dist;
  std::vector<Vertex> parent;
  std::vector<Vertex> tree_parent;
  std::vector<Vertex> owner;
  std::vector<Vertex> order;

  bool reached(Vertex v) const noexcept { return dist[v] != kUnreachable; }
};

template <class G>
concept AdjacencyGraph = requires(const G& g, Vertex v) {
  { g.num_vertices() } -> std::convertible_to<Vertex>;
  { g.neighbors(v) } -> std::convertible_to<std::span<const Vertex>>;
};

/// BFS from a non-empty root set, truncated at max_depth hops.
template <AdjacencyGraph G>
BfsResult bfs_on(const G& g, std::span<const Vertex> roots, int max_depth = kUnreachable);

BfsResult bfs(const Graph& g, std::span<const Vertex> roots, int max_depth = kUnreachable);
BfsResult bfs(const Graph& g, Vertex root, int max_depth = kUnreachable);

/// Hop distances only; cheaper than bfs() when parents are not needed.
template <AdjacencyGraph G>
std::vector<int> bfs_distances(const G& g, Vertex root);

/// Path from owner(v) to v along tree parents. Requires result.reached(v).
Path path_to(const BfsResult& result, Vertex v);

/// Shortest u-v path obtained by following canonical BFS parents from v
/// back to u. Reproducible across runs; nullopt when disconnected.
std::optional<Path> canonical_path(const Graph& g, Vertex u, Vertex v);

/// True when consecutive vertices are adjacent in g and no vertex repeats.
bool is_path_in(const Graph& g, const Path& p);

struct WeightedEdge {
  Vertex u = 0;
  Vertex v = 0;
  std::int64_t w = 1;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Weighted graph on the same vertex set as its source graph. Edges are
/// stored with u < v; parallel insertions keep the smallest weight.
class Emulator {
 public:
  Emulator() = default;
  explicit Emulator(Vertex n) : n_(n) {}

  static Emulator from_edges(Vertex n, std::span<const WeightedEdge> edges);

  Vertex num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const WeightedEdge> edges() const noexcept { return edges_; }

 private:
  Vertex n_ = 0;
  std::vector<WeightedEdge> edges_;
};

/// Exact single-source distances in an emulator (Dijkstra).
std::vector<std::int64_t> weighted_sssp(const Emulator& h, Vertex root);

/// G(n, p): every unordered pair independently with probability p.
Graph random_graph(Vertex n, double p, std::uint64_t seed);

// Text formats.
//   edge list: '#' comments, header "p <n> <m>", then m lines "<u> <v>"
//   emulator:  header "e <n> <m>", then m lines "<u> <v> <w>"
//   sources:   one vertex id per line
Graph read_edge_list(std::istream& in);
Graph parse_edge_list(std::string_view text);
void write_edge_list(std::ostream& out, Vertex n, std::span<const Edge> edges);
void write_edge_list(std::ostream& out, const Graph& g);
Emulator read_emulator(std::istream& in);
void write_emulator(std::ostream& out, const Emulator& h);
std::vector<Vertex> read_vertex_list(std::istream& in, Vertex n);
void write_vertex_list(std::ostream& out, std::span<const Vertex> vertices);

}  // namespace spanlab

#include "spanlab/bfs_impl.hpp"
