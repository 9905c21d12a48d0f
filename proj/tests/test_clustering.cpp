#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "spanlab/clustering.hpp"

using namespace spanlab;

namespace {

// Checks every level of seq against the all-pairs distance matrix of g.
void check_sequence(const Graph& g, const ClusterSequence& seq) {
  const Vertex n = g.num_vertices();
  const auto d = oracle::all_pairs(g);
  REQUIRE(seq.levels.size() == static_cast<std::size_t>(seq.k) + 1);
  for (Vertex v = 0; v < n; ++v) CHECK(seq.level(0).center[v] == v);

  std::set<Vertex> in_some_delta;
  for (int tau = 1; tau <= seq.k; ++tau) {
    const ClusterLevel& lv = seq.level(tau);
    const ClusterLevel& prev = seq.level(tau - 1);
    CHECK(std::includes(prev.centers.begin(), prev.centers.end(), lv.centers.begin(), lv.centers.end()));
    for (Vertex u = 0; u < n; ++u) {
      Vertex want = kNoVertex;
      for (Vertex z : lv.centers) {
        if (d[u][z] > tau) continue;
        if (want == kNoVertex || d[u][z] < d[u][want]) want = z;
      }
      REQUIRE(lv.center[u] == want);
      if (want == kNoVertex) continue;
      CHECK(lv.depth[u] == d[u][want]);
      if (u == want) {
        CHECK(lv.parent[u] == kNoVertex);
      } else {
        CHECK(g.has_edge(u, lv.parent[u]));
        CHECK(lv.center[lv.parent[u]] == want);
        CHECK(lv.depth[lv.parent[u]] == lv.depth[u] - 1);
      }
    }
    // Delta_tau: clustered at every earlier level, unclustered here.
    std::vector<Vertex> delta;
    for (Vertex u = 0; u < n; ++u) {
      bool all = true;
      for (int j = 0; j < tau; ++j) all = all && seq.level(j).clustered(u);
      if (all && !lv.clustered(u)) delta.push_back(u);
    }
    CHECK(lv.delta == delta);
    for (Vertex u : delta) CHECK(in_some_delta.insert(u).second);
    // Q_tau: one edge per (u, adjacent cluster of C_{tau-1}), to its minimum-id member.
    std::set<Edge> q;
    for (Vertex u : delta) {
      std::set<Vertex> done;
      for (Vertex w : g.neighbors(u)) {
        const Vertex c = prev.center[w];
        if (c != kNoVertex && done.insert(c).second) q.insert(Edge::of(u, w));
      }
    }
    CHECK(std::set<Edge>(lv.q_edges.begin(), lv.q_edges.end()) == q);
  }
}

// Level at which v first becomes unclustered, k+1 if never.
int unclustered_level(const ClusterSequence& seq, Vertex v) {
  for (int tau = 1; tau <= seq.k; ++tau) {
    if (!seq.level(tau).clustered(v)) return tau;
  }
  return seq.k + 1;
}

}  // namespace

TEST_CASE("nearest center") {
  const Graph p3 = oracle::make(3, oracle::path_edges(3));
  const std::vector<Vertex> ends{0, 2};
  CHECK(nearest_center(p3, 1, ends, 1) == 0);
  CHECK(nearest_center(p3, 2, ends, 0) == 2);
  const Graph c5 = oracle::make(5, oracle::cycle_edges(5));
  const std::vector<Vertex> zero{0};
  CHECK_FALSE(nearest_center(c5, 3, zero, 1).has_value());
  CHECK_THROWS(nearest_center(c5, 3, std::span<const Vertex>{}, 1));
}

TEST_CASE("cluster sequence on Petersen, k=2, mu=1/2, seed 3") {
  const Graph g = oracle::petersen();
  check_sequence(g, cluster_sequence(g, 2, 0.5, 3));
}

TEST_CASE("cluster sequence invariants on random graphs") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Graph g = random_graph(60, 0.08, seed);
    for (int k : {1, 2, 3}) check_sequence(g, cluster_sequence(g, k, 1.0 / k, seed));
  }
}

TEST_CASE("k=1, mu=1 keeps every edge") {
  const Graph g = random_graph(40, 0.15, 9);
  const ClusterSequence seq = cluster_sequence(g, 1, 1.0, 2);
  CHECK(seq.level(1).centers.empty());
  CHECK(seq.level(1).delta.size() == 40);
  CHECK(seq.partial_spanner == g.edges());
}

TEST_CASE("l-unclustered edges are stretched at most 2l-1 in H_k") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = random_graph(64, 0.1, seed + 20);
    for (int k : {2, 3, 4}) {
      const ClusterSequence seq = cluster_sequence(g, k, 1.0 / k, seed);
      const Graph h = Graph::from_edges(64, seq.partial_spanner);
      const auto dh = oracle::all_pairs(h);
      const bool zk_empty = seq.level(k).centers.empty();
      for (Edge e : g.edges()) {
        const int l = std::min(unclustered_level(seq, e.u), unclustered_level(seq, e.v));
        if (l <= k) CHECK(dh[e.u][e.v] <= 2 * l - 1);
        if (zk_empty) CHECK(dh[e.u][e.v] <= 2 * k - 1);
      }
    }
  }
}

TEST_CASE("expected center counts") {
  const Vertex n = 200;
  const int k = 3;
  const double mu = 1.0 / k;
  const Graph g = random_graph(n, 0.03, 1);
  const int runs = 30;
  for (int tau = 1; tau < k; ++tau) {
    double total = 0;
    for (int seed = 1; seed <= runs; ++seed) total += static_cast<double>(cluster_sequence(g, k, mu, seed).level(tau).centers.size());
    const double p = std::pow(n, -tau * mu);
    const double mean = n * p;
    const double sd = std::sqrt(n * p * (1 - p) / runs);
    CHECK(std::abs(total / runs - mean) <= 5 * sd);
  }
}

TEST_CASE("cluster sequence is deterministic per seed and validates mu") {
  const Graph g = random_graph(50, 0.1, 3);
  CHECK(cluster_sequence(g, 3, 1.0 / 3, 7).partial_spanner == cluster_sequence(g, 3, 1.0 / 3, 7).partial_spanner);
  CHECK_THROWS(cluster_sequence(g, 2, 1.5, 1));
  CHECK_THROWS(cluster_sequence(g, 0, 0.5, 1));
}

TEST_CASE("cgk clustering") {
  SUBCASE("gamma=1 leaves the graph intact") {
    const Graph g = random_graph(30, 0.2, 1);
    const CgkClustering c = cgk_clustering(g, 1.0);
    CHECK(c.clusters.empty());
    CHECK(c.edges == g.edges());
  }
  SUBCASE("star with cluster size 9") {
    const Graph g = oracle::make(10, oracle::star_edges(9));
    const CgkClustering c = cgk_clustering_with_size(g, 9);
    REQUIRE(c.clusters.size() == 1);
    CHECK(c.hubs == std::vector<Vertex>{0});
    CHECK(c.clusters[0] == std::vector<Vertex>{1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(c.edges == g.edges());
  }
  SUBCASE("G(200, 0.1, 5), gamma=1/2") {
    const Graph g = random_graph(200, 0.1, 5);
    const CgkClustering c = cgk_clustering(g, 0.5);
    CHECK(c.cluster_size == 15);
    CHECK(c.clusters.size() <= static_cast<std::size_t>(std::ceil(std::pow(200.0, 0.5))));
    std::set<Vertex> seen;
    for (std::size_t i = 0; i < c.clusters.size(); ++i) {
      CHECK(c.clusters[i].size() == 15);
      for (Vertex v : c.clusters[i]) {
        CHECK(seen.insert(v).second);
        CHECK(c.cluster_of[v] == static_cast<int>(i));
        CHECK(g.has_edge(v, c.hubs[i]));
      }
    }
    const std::set<Edge> gc(c.edges.begin(), c.edges.end());
    for (Edge e : g.edges()) {
      if (gc.contains(e)) continue;
      CHECK(c.clustered(e.u));
      CHECK(c.clustered(e.v));
      CHECK(c.cluster_of[e.u] != c.cluster_of[e.v]);
    }
    const auto d = oracle::all_pairs(Graph::from_edges(200, c.edges));
    for (const auto& cl : c.clusters)
      for (Vertex a : cl)
        for (Vertex b : cl) CHECK(d[a][b] <= 2);
  }
  SUBCASE("gamma outside [0,1]") {
    const Graph g = oracle::make(3, oracle::path_edges(3));
    CHECK_THROWS(cgk_clustering(g, 1.5));
  }
}

TEST_CASE("cluster dump") {
  const Graph g = oracle::make(3, oracle::path_edges(3));
  std::ostringstream out;
  write_cluster_dump(out, cluster_sequence(g, 1, 1.0, 1));
  CHECK(out.str() == "0 0 0 0\n0 1 1 0\n0 2 2 0\n1 0 - -\n1 1 - -\n1 2 - -\n");
}
