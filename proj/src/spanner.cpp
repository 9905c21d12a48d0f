#include "spanlab/spanner.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "spanlab/numeric.hpp"
#include "spanlab/rng.hpp"

namespace spanlab {

double SpannerMeta::param(const std::string& name, double fallback) const {
  for (const auto& [key, value] : params) {
    if (key == name) return value;
  }
  return fallback;
}

std::vector<Edge> EdgeCollector::sorted() const {
  std::vector<Edge> out = edges_;
  std::sort(out.begin(), out.end());
  return out;
}

SourceSet::SourceSet(Vertex n, std::vector<Vertex> sources) : sources_(std::move(sources)) {
  if (sources_.empty()) throw std::invalid_argument("source set must be non-empty");
  std::sort(sources_.begin(), sources_.end());
  if (std::adjacent_find(sources_.begin(), sources_.end()) != sources_.end()) {
    throw std::invalid_argument("source set contains a repeated vertex");
  }
  if (sources_.front() < 0 || sources_.back() >= n) throw std::out_of_range("source id outside vertex range");
  epsilon_ = n >= 2 ? log_ratio(static_cast<double>(sources_.size()), static_cast<double>(n)) : 1.0;
}

bool SourceSet::contains(Vertex v) const { return std::binary_search(sources_.begin(), sources_.end(), v); }

SourceSet sample_sources(Vertex n, std::size_t count, std::uint64_t seed) {
  if (count == 0 || count > static_cast<std::size_t>(n)) throw std::invalid_argument("sample_sources: bad count");
  std::vector<Vertex> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(derive_seed(seed, "sources"));
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return SourceSet(n, std::move(pool));
}

bool is_subgraph(const Graph& g, std::span<const Edge> edges) {
  return std::all_of(edges.begin(), edges.end(), [&](Edge e) { return g.has_edge(e.u, e.v); });
}

}  // namespace spanlab
