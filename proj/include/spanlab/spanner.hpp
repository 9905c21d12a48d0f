#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spanlab/graph.hpp"

namespace spanlab {

struct SpannerMeta {
  std::string construction;
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;
  /// New edges contributed by each phase, in phase order; sums to the size.
  std::vector<std::pair<std::string, std::size_t>> phase_edges;
  std::vector<std::string> warnings;

  double param(const std::string& name, double fallback = 0.0) const;
};

/// Edge subset of a host graph plus how it was built.
struct Spanner {
  Vertex n = 0;
  std::vector<Edge> edges;  // sorted, unique
  SpannerMeta meta;

  std::size_t size() const noexcept { return edges.size(); }
  Graph graph() const { return Graph::from_edges(n, edges); }
};

/// Insertion-ordered edge set with O(1) membership.
class EdgeCollector {
 public:
  bool insert(Edge e) {
    if (!keys_.insert(edge_key(e)).second) return false;
    edges_.push_back(e);
    return true;
  }
  /// Inserts a range and returns how many edges were new.
  std::size_t insert_all(std::span<const Edge> edges) {
    std::size_t added = 0;
    for (Edge e : edges) added += insert(e) ? 1 : 0;
    return added;
  }
  bool contains(Edge e) const { return keys_.contains(edge_key(e)); }
  std::size_t size() const noexcept { return edges_.size(); }
  std::vector<Edge> sorted() const;

 private:
  std::unordered_set<std::uint64_t> keys_;
  std::vector<Edge> edges_;
};

/// Designated sources S, kept in ascending order. epsilon = log|S| / log n.
class SourceSet {
 public:
  SourceSet() = default;
  /// Validates ids (in range, distinct, non-empty).
  SourceSet(Vertex n, std::vector<Vertex> sources);

  std::span<const Vertex> vertices() const noexcept { return sources_; }
  std::size_t size() const noexcept { return sources_.size(); }
  double epsilon() const noexcept { return epsilon_; }
  bool contains(Vertex v) const;

 private:
  std::vector<Vertex> sources_;
  double epsilon_ = 0.0;
};

/// count distinct vertices drawn uniformly at random.
SourceSet sample_sources(Vertex n, std::size_t count, std::uint64_t seed);

/// True when every spanner edge is an edge of g.
bool is_subgraph(const Graph& g, std::span<const Edge> edges);

}  // namespace spanlab
