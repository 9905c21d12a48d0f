#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "spanlab/hybrid.hpp"

using namespace spanlab;

namespace {

// Counts pairs violating adjacent <= 2k-1, other <= k*dist.
int hybrid_violations(const Graph& g, const Spanner& h, int k) {
  const auto dg = oracle::all_pairs(g);
  const auto dh = oracle::all_pairs(h.graph());
  int bad = 0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    for (Vertex v = u + 1; v < g.num_vertices(); ++v) {
      if (dg[u][v] == oracle::kInf) continue;
      const std::int64_t bound = dg[u][v] == 1 ? 2 * k - 1 : k * dg[u][v];
      bad += dh[u][v] > bound ? 1 : 0;
    }
  }
  return bad;
}

// Returns how many checked pairs lie farther apart than ell_t.
int check_center_pairs(const Graph& g, const HybridResult& r) {
  int far = 0;
  const HybridParams& p = r.params;
  const Graph h = r.spanner.graph();
  for (Vertex zi : r.clusters.level(p.t_prime).centers) {
    const auto dg = bfs_distances(g, zi);
    const auto dh = bfs_distances(h, zi);
    for (Vertex zj : r.clusters.level(p.t).centers) {
      if (dg[zj] == kUnreachable) continue;
      if (dg[zj] <= p.ell_t) {
        CHECK(dh[zj] == dg[zj]);
      } else {
        ++far;
        CHECK(dh[zj] <= 2 * p.t * (dg[zj] + 1) - p.ell_t);
      }
    }
  }
  return far;
}

}  // namespace

TEST_CASE("hybrid params") {
  CHECK(hybrid_params(2).t == 1);
  CHECK(hybrid_params(2).t_prime == 0);
  CHECK(hybrid_params(2).ell_t == 15);
  CHECK(hybrid_params(3).t == 1);
  CHECK(hybrid_params(3).t_prime == 1);
  CHECK(hybrid_params(3).ell_t == 15);
  CHECK(hybrid_params(5).t == 2);
  CHECK(hybrid_params(5).t_prime == 2);
  CHECK(hybrid_params(5).ell_t == 46);
  CHECK_THROWS(hybrid_params(1));
}

TEST_CASE("path suffix") {
  const Path p{{0, 1, 2, 3}};
  CHECK(path_suffix(p, 0, PathEnd::Back).empty());
  CHECK(path_suffix(p, 9, PathEnd::Back).size() == 3);
  CHECK(path_suffix(p, 2, PathEnd::Back) == std::vector<Edge>{{2, 3}, {1, 2}});
  CHECK(path_suffix(p, 2, PathEnd::Front) == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(path_suffix(Path{{4}}, 3, PathEnd::Back).empty());
}

TEST_CASE("closest pair path") {
  const Graph p5 = oracle::make(5, oracle::path_edges(5));
  const std::vector<Vertex> left{0}, right{4};
  CHECK(closest_pair_path(p5, left, right)->vertices == std::vector<Vertex>{0, 1, 2, 3, 4});
  const std::vector<Vertex> same{1, 2};
  CHECK(closest_pair_path(p5, same, same)->length() == 0);

  // Two adjacent clusters joined by edges (1,3) and (2,3), (2,4): min-id edge wins.
  const Graph g = oracle::make(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}});
  const std::vector<Vertex> c1{1, 2}, c2{3, 4};
  CHECK(closest_pair_path(g, c1, c2)->vertices == std::vector<Vertex>{1, 3});

  const Graph split = oracle::make(4, {{0, 1}, {2, 3}});
  const std::vector<Vertex> a{0}, b{3};
  CHECK_FALSE(closest_pair_path(split, a, b).has_value());
  CHECK_THROWS(closest_pair_path(split, std::span<const Vertex>{}, b));
}

TEST_CASE("hybrid keeps every edge of a tree") {
  const Graph tree = oracle::random_tree(50, 3);
  for (int k : {2, 3, 4}) CHECK(build_hybrid(tree, k, 1).spanner.edges == tree.edges());
}

TEST_CASE("hybrid on Petersen, k=2, seeds 1..5") {
  const Graph g = oracle::petersen();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const HybridResult r = build_hybrid(g, 2, seed);
    CHECK(hybrid_violations(g, r.spanner, 2) == 0);
    check_center_pairs(g, r);
  }
}

TEST_CASE("hybrid on G(256, 0.05, 2), k=3") {
  const Graph g = random_graph(256, 0.05, 2);
  const HybridResult r = build_hybrid(g, 3, 2);
  CHECK(hybrid_violations(g, r.spanner, 3) == 0);
  check_center_pairs(g, r);
  CHECK(static_cast<double>(r.spanner.size()) <= 100 * 9 * std::pow(256.0, 1.0 + 1.0 / 3));
}

TEST_CASE("hybrid on sparse graphs with long paths") {
  // Long cycles with a few chords put center pairs beyond ell_t.
  int far = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    std::vector<Edge> edges = oracle::cycle_edges(300);
    const Graph extra = random_graph(300, 0.002, seed);
    for (Edge e : extra.edges()) {
      if (e.v - e.u > 1 && !(e.u == 0 && e.v == 299)) edges.push_back(e);
    }
    const Graph g = oracle::make(300, edges);
    for (int k : {2, 3, 4, 5}) {
      const HybridResult r = build_hybrid(g, k, seed);
      CHECK(hybrid_violations(g, r.spanner, k) == 0);
      far += check_center_pairs(g, r);
    }
    const Graph sparse = random_graph(200, 0.012, seed);
    for (int k : {2, 3, 4, 5}) {
      const HybridResult r = build_hybrid(sparse, k, seed);
      CHECK(hybrid_violations(sparse, r.spanner, k) == 0);
      far += check_center_pairs(sparse, r);
    }
  }
  CHECK(far > 0);
}

TEST_CASE("hybrid metadata and options") {
  const Graph g = random_graph(120, 0.06, 4);
  const HybridResult one = build_hybrid(g, 3, 4);
  const HybridResult both = build_hybrid(g, 3, 4, HybridOptions{true});
  CHECK(one.spanner.meta.construction == "hybrid");
  std::size_t total = 0;
  for (const auto& [phase, count] : one.spanner.meta.phase_edges) total += count;
  CHECK(total == one.spanner.size());
  CHECK(both.spanner.size() >= one.spanner.size());
  CHECK(is_subgraph(g, one.spanner.edges));
  CHECK(build_hybrid(g, 3, 4).spanner.edges == one.spanner.edges);
  CHECK(hybrid_violations(g, both.spanner, 3) == 0);
}
