#include "spanlab/hybrid.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace spanlab {

HybridParams hybrid_params(int k) {
  if (k < 2) throw std::invalid_argument("hybrid spanner needs k >= 2");
  HybridParams p;
  p.k = k;
  p.t = k / 2;
  p.t_prime = k - 1 - p.t;
  p.ell_t = 7 * p.t + 8 * p.t * p.t;
  return p;
}

std::vector<Edge> path_suffix(const Path& p, std::size_t ell, PathEnd anchor) {
  std::vector<Edge> out;
  const std::size_t take = std::min(ell, p.length());
  const auto& vs = p.vertices;
  for (std::size_t i = 0; i < take; ++i) {
    if (anchor == PathEnd::Back) {
      const std::size_t hi = vs.size() - 1 - i;
      out.push_back(Edge::of(vs[hi - 1], vs[hi]));
    } else {
      out.push_back(Edge::of(vs[i], vs[i + 1]));
    }
  }
  return out;
}

std::optional<Path> closest_pair_path(const BfsResult& from_c1, std::span<const Vertex> c2) {
  Vertex best = kNoVertex;
  for (Vertex u2 : c2) {
    if (!from_c1.reached(u2)) continue;
    if (best == kNoVertex ||
        std::tie(from_c1.dist[u2], from_c1.owner[u2], u2) < std::tie(from_c1.dist[best], from_c1.owner[best], best)) {
      best = u2;
    }
  }
  if (best == kNoVertex) return std::nullopt;
  return path_to(from_c1, best);
}

std::optional<Path> closest_pair_path(const Graph& g, std::span<const Vertex> c1, std::span<const Vertex> c2) {
  if (c1.empty() || c2.empty()) throw std::invalid_argument("closest_pair_path: empty cluster");
  return closest_pair_path(bfs(g, c1), c2);
}

namespace {

std::size_t add_path_ends(EdgeCollector& h, const Path& p, std::size_t ell, bool both) {
  std::size_t added = h.insert_all(path_suffix(p, ell, PathEnd::Back));
  if (both) added += h.insert_all(path_suffix(p, ell, PathEnd::Front));
  return added;
}

}  // namespace

HybridResult build_hybrid(const Graph& g, int k, std::uint64_t seed, HybridOptions options) {
  HybridResult result;
  result.params = hybrid_params(k);
  const HybridParams& hp = result.params;

  // S1.
  result.clusters = cluster_sequence(g, k, 1.0 / k, seed);
  const ClusterSequence& cs = result.clusters;
  EdgeCollector h;
  const std::size_t from_hk = h.insert_all(cs.partial_spanner);

  // S2. The kept suffix sits at the Z_t end of pi(z_i, z_j).
  std::size_t from_e2 = 0;
  const auto ell_t = static_cast<std::size_t>(hp.ell_t);
  for (Vertex zi : cs.level(hp.t_prime).centers) {
    const BfsResult r = bfs(g, zi);
    for (Vertex zj : cs.level(hp.t).centers) {
      if (zj == zi || !r.reached(zj)) continue;
      from_e2 += add_path_ends(h, path_to(r, zj), ell_t, options.suffix_both);
    }
  }

  // S3. Every ordered level pair (tau, k-1-tau); suffix at the C_2 end.
  std::size_t from_e3 = 0;
  for (int tau = 0; tau <= k - 1; ++tau) {
    const std::size_t ell = (tau == hp.t || tau == hp.t_prime) ? ell_t : static_cast<std::size_t>(2 * k - 1);
    const auto near_side = cs.level(tau).members();
    const auto far_side = cs.level(k - 1 - tau).members();
    if (far_side.empty()) continue;
    for (const auto& c1 : near_side) {
      const BfsResult r = bfs(g, c1);
      for (const auto& c2 : far_side) {
        if (auto p = closest_pair_path(r, c2)) from_e3 += add_path_ends(h, *p, ell, options.suffix_both);
      }
    }
  }

  Spanner& s = result.spanner;
  s.n = g.num_vertices();
  s.edges = h.sorted();
  s.meta.construction = "hybrid";
  s.meta.seed = seed;
  s.meta.params = {{"k", k},
                   {"t", hp.t},
                   {"t_prime", hp.t_prime},
                   {"ell_t", hp.ell_t},
                   {"mu", 1.0 / k},
                   {"suffix_both", options.suffix_both ? 1.0 : 0.0}};
  s.meta.phase_edges = {{"H_k", from_hk}, {"E2", from_e2}, {"E3", from_e3}};
  return result;
}

}  // namespace spanlab
