#include "spanlab/sourcewise.hpp"

#include <stdexcept>

#include "spanlab/hybrid.hpp"

namespace spanlab {

SwParams sw_params(int k, const SourceSet& sources, Vertex n) {
  if (k < 2) throw std::invalid_argument("sourcewise spanner needs k >= 2");
  if (n < 2) throw std::invalid_argument("sourcewise spanner needs n >= 2");
  SwParams p;
  p.k = k;
  p.epsilon = sources.epsilon();
  p.mu = p.epsilon / k;
  p.ell_k = 2 * k * k + 3 * k;
  return p;
}

SourcewiseResult build_sourcewise_mult(const Graph& g, const SourceSet& sources, int k, std::uint64_t seed) {
  SourcewiseResult result;
  result.params = sw_params(k, sources, g.num_vertices());
  const SwParams& sp = result.params;

  result.clusters = cluster_sequence(g, k, sp.mu, seed);
  EdgeCollector h;
  const std::size_t from_hk = h.insert_all(result.clusters.partial_spanner);

  std::size_t from_paths = 0;
  const auto& centers = result.clusters.level(k - 1).centers;
  for (Vertex s : sources.vertices()) {
    const BfsResult r = bfs(g, s);
    for (Vertex z : centers) {
      if (z == s || !r.reached(z)) continue;
      from_paths += h.insert_all(path_suffix(path_to(r, z), static_cast<std::size_t>(sp.ell_k), PathEnd::Back));
    }
  }

  Spanner& out = result.spanner;
  out.n = g.num_vertices();
  out.edges = h.sorted();
  out.meta.construction = "swmult";
  out.meta.seed = seed;
  out.meta.params = {{"k", k},
                     {"epsilon", sp.epsilon},
                     {"mu", sp.mu},
                     {"ell_k", sp.ell_k},
                     {"sources", static_cast<double>(sources.size())}};
  out.meta.phase_edges = {{"H_k", from_hk}, {"source_center_paths", from_paths}};
  return result;
}

}  // namespace spanlab
