#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "spanlab/additive.hpp"

using namespace spanlab;

namespace {

// Largest dist_H - dist_G over S×V, or -1 when some pair is disconnected in h.
int max_additive(const Graph& g, const Graph& h, const SourceSet& s) {
  int worst = 0;
  for (Vertex src : s.vertices()) {
    const auto dg = bfs_distances(g, src);
    const auto dh = bfs_distances(h, src);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (dg[v] == kUnreachable) continue;
      if (dh[v] == kUnreachable) return -1;
      worst = std::max(worst, dh[v] - dg[v]);
    }
  }
  return worst;
}

bool short_pairs_within(const Graph& g, const AdditiveResult& r, int k) {
  const Graph hb = Graph::from_edges(g.num_vertices(), r.short_pair_edges);
  std::map<Vertex, std::vector<int>> dg, dh;
  for (const PairClass& pc : r.pairs) {
    if (pc.is_long) continue;
    if (!dg.contains(pc.source)) {
      dg[pc.source] = bfs_distances(g, pc.source);
      dh[pc.source] = bfs_distances(hb, pc.source);
    }
    const int h = dh[pc.source][pc.target];
    if (h == kUnreachable || h > dg[pc.source][pc.target] + 2 * k) return false;
  }
  return true;
}

void check_purchases(const Graph& g, const AdditiveResult& r) {
  for (const CandidatePath& c : r.purchases) {
    REQUIRE(c.path.front() == c.source);
    REQUIRE(c.path.back() == c.target);
    CHECK(is_path_in(g, c.path));
    const int d = bfs_distances(g, c.source)[c.target];
    CHECK(static_cast<int>(c.path.length()) <= d + 2 * c.level);
    std::map<int, int> per_cluster;
    for (Vertex x : c.path.vertices) {
      if (r.clustering.clustered(x)) CHECK(++per_cluster[r.clustering.cluster_of[x]] <= 3);
    }
    CHECK(static_cast<double>(c.cost) <= r.params.long_length / std::pow(r.params.phi, c.level) + 1e-9);
    CHECK(static_cast<double>(c.cost) <= 3 * r.params.phi * static_cast<double>(c.value));
  }
}

}  // namespace

TEST_CASE("additive params for n=1024, |S|=32, k=1") {
  std::vector<Vertex> ids(32);
  for (Vertex i = 0; i < 32; ++i) ids[i] = i;
  const AdditiveParams p = additive_params(1024, SourceSet(1024, ids), 1);
  CHECK(p.epsilon == doctest::Approx(0.5));
  CHECK(p.heavy_degree == 14);
  CHECK(p.long_length == 37);
  CHECK(p.phi == doctest::Approx(74.0));
  CHECK(additive_params(1024, SourceSet(1024, ids), 2).phi == doctest::Approx(std::sqrt(2.0 * additive_params(1024, SourceSet(1024, ids), 2).long_length)));
  CHECK_THROWS(additive_params(1024, SourceSet(1024, ids), 0));
}

TEST_CASE("pair classification") {
  SUBCASE("no heavy vertices means every pair is short") {
    const Graph g = oracle::make(30, oracle::cycle_edges(30));
    const SourceSet s(30, {0, 7});
    const auto pairs = classify_pairs(g, s, additive_params(g, s, 1));
    CHECK(pairs.size() == 58);
    for (const PairClass& pc : pairs) CHECK_FALSE(pc.is_long);
  }
  SUBCASE("L=1 with a heavy vertex on the path is long") {
    const Graph g = oracle::make(6, oracle::star_edges(5));
    const SourceSet s(6, {1});
    AdditiveParams p = additive_params(g, s, 1);
    p.heavy_degree = 3;
    p.long_length = 1;
    for (const PairClass& pc : classify_pairs(g, s, p)) CHECK(pc.is_long);
  }
  SUBCASE("G(256, 0.1, 6) heavy counts by walking each path") {
    const Graph g = random_graph(256, 0.1, 6);
    const SourceSet s = sample_sources(256, 16, 6);
    const AdditiveParams p = additive_params(g, s, 1);
    for (const PairClass& pc : classify_pairs(g, s, p)) {
      const auto path = canonical_path(g, pc.source, pc.target);
      REQUIRE(path);
      int heavy = 0;
      for (Vertex x : path->vertices) heavy += g.degree(x) >= p.heavy_degree ? 1 : 0;
      REQUIRE(pc.heavy_count == heavy);
      CHECK(pc.is_long == (heavy >= p.long_length));
    }
  }
}

TEST_CASE("compute value") {
  // Cluster A = {5,6,7} sits at path position 3 but 4 hops away in H;
  // cluster B = {1,9,10} is reached at position 1 in both.
  CgkClustering c;
  c.cluster_size = 3;
  c.clusters = {{5, 6, 7}, {1, 9, 10}};
  c.hubs = {4, 11};
  c.cluster_of.assign(12, -1);
  for (Vertex v : {5, 6, 7}) c.cluster_of[v] = 0;
  for (Vertex v : {1, 9, 10}) c.cluster_of[v] = 1;
  const Graph h = oracle::make(12, {{0, 1}, {0, 8}, {8, 9}, {9, 10}, {6, 10}});
  const Path path{{0, 1, 2, 5, 3}};
  CHECK(compute_value(path, 0, c, h) == 1);

  const Graph same = oracle::make(12, {{0, 1}, {1, 2}, {2, 5}, {3, 5}});
  CHECK(compute_value(path, 0, c, same) == 0);
  CHECK(compute_value(Path{{0, 8, 2}}, 0, c, h) == 0);
  CHECK_THROWS(compute_value(path, 3, c, h));
}

TEST_CASE("all vertices light keeps the whole graph") {
  const Graph g = oracle::make(40, oracle::cycle_edges(40));
  const SourceSet s(40, {0, 10, 20});
  const AdditiveResult r = build_sourcewise_additive(g, s, 1, 1);
  CHECK(r.spanner.edges == g.edges());
  CHECK(max_additive(g, r.spanner.graph(), s) == 0);
}

TEST_CASE("G(512, 0.08), k=1, seeds 1..3") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Graph g = random_graph(512, 0.08, seed);
    const SourceSet s = sample_sources(512, 23, seed);
    AdditiveOptions opt;
    opt.record_purchases = true;
    const AdditiveResult r = build_sourcewise_additive(g, s, 1, seed, opt);
    CHECK(short_pairs_within(g, r, 1));
    const int worst = max_additive(g, r.spanner.graph(), s);
    CHECK(worst >= 0);
    CHECK(worst <= 2);
    check_purchases(g, r);
    CHECK(is_subgraph(g, r.spanner.edges));
  }
}

TEST_CASE("forced path buying with reroutes") {
  // Tiny heavy threshold and a huge long threshold put every pair through
  // the buying loop.
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Graph g = random_graph(220, 0.08, seed + 40);
    const SourceSet s = sample_sources(220, 15, seed);
    for (int k : {1, 2, 3}) {
      AdditiveParams p = additive_params(g, s, k);
      p.heavy_degree = 4;
      p.long_length = 1'000'000;
      p.phi = std::pow(2.0 * p.long_length, 1.0 / k);
      AdditiveOptions opt;
      opt.params = p;
      opt.record_purchases = true;
      const AdditiveResult r = build_sourcewise_additive(g, s, k, seed, opt);
      for (const PairClass& pc : r.pairs) CHECK_FALSE(pc.is_long);
      CHECK(short_pairs_within(g, r, k));
      check_purchases(g, r);
      std::size_t rerouted = 0;
      for (std::size_t level = 1; level < r.bought_per_level.size(); ++level) rerouted += r.bought_per_level[level];
      CHECK(rerouted > 0);
    }
  }
}

TEST_CASE("moderate thresholds reach the deeper levels") {
  const Graph g = random_graph(300, 0.05, 5);
  const SourceSet s = sample_sources(300, 20, 5);
  for (int k : {2, 3}) {
    AdditiveParams p = additive_params(g, s, k);
    p.heavy_degree = 6;
    p.long_length = 40;
    p.phi = std::pow(2.0 * p.long_length, 1.0 / k);
    AdditiveOptions opt;
    opt.params = p;
    opt.record_purchases = true;
    opt.retries = 2;
    const AdditiveResult r = build_sourcewise_additive(g, s, k, 5, opt);
    CHECK(short_pairs_within(g, r, k));
    check_purchases(g, r);
    CHECK(r.verified);
    CHECK(max_additive(g, r.spanner.graph(), s) <= 2 * k);
  }
}

TEST_CASE("low long-pair threshold exercises the sampled trees") {
  const Graph g = random_graph(300, 0.05, 7);
  const SourceSet s = sample_sources(300, 18, 7);
  for (int k : {1, 2}) {
    AdditiveParams p = additive_params(g, s, k);
    p.heavy_degree = 12;
    p.long_length = 2;
    p.phi = std::pow(2.0 * p.long_length, 1.0 / k);
    AdditiveOptions opt;
    opt.params = p;
    opt.retries = 2;
    const AdditiveResult r = build_sourcewise_additive(g, s, k, 7, opt);
    std::size_t long_pairs = 0;
    for (const PairClass& pc : r.pairs) long_pairs += pc.is_long ? 1 : 0;
    CHECK(long_pairs > 0);
    CHECK(long_pairs < r.pairs.size());
    CHECK_FALSE(r.sample.empty());
    CHECK(short_pairs_within(g, r, k));
    CHECK(r.verified);
    CHECK(max_additive(g, r.spanner.graph(), s) <= 2 * k);
  }
}

TEST_CASE("additive build is deterministic and reports phases") {
  const Graph g = random_graph(256, 0.05, 3);
  const SourceSet s = sample_sources(256, 16, 3);
  const AdditiveResult a = build_sourcewise_additive(g, s, 2, 3);
  const AdditiveResult b = build_sourcewise_additive(g, s, 2, 3);
  CHECK(a.spanner.edges == b.spanner.edges);
  std::size_t total = 0;
  for (const auto& [phase, count] : a.spanner.meta.phase_edges) total += count;
  CHECK(total == a.spanner.size());
  AdditiveOptions wrong;
  wrong.params = additive_params(g, s, 1);
  CHECK_THROWS_AS(build_sourcewise_additive(g, s, 2, 3, wrong), std::invalid_argument);
}

TEST_CASE("sourcewise emulator") {
  SUBCASE("G(400, 0.06, 11), |S|=20") {
    const Graph g = random_graph(400, 0.06, 11);
    const SourceSet s = sample_sources(400, 20, 11);
    const EmulatorResult r = build_sourcewise_emulator2(g, s);
    for (Vertex src : s.vertices()) {
      const auto dg = bfs_distances(g, src);
      const auto dh = weighted_sssp(r.emulator, src);
      for (Vertex v = 0; v < 400; ++v) {
        if (dg[v] == kUnreachable) continue;
        CHECK(dh[v] >= dg[v]);
        CHECK(dh[v] <= dg[v] + 2);
      }
    }
    for (const WeightedEdge& e : r.emulator.edges()) {
      CHECK(e.u != e.v);
      CHECK(e.w == bfs_distances(g, e.u)[e.v]);
    }
  }
  SUBCASE("small instance against relaxation") {
    const Graph g = random_graph(48, 0.2, 2);
    const SourceSet s = sample_sources(48, 7, 2);
    const EmulatorResult r = build_sourcewise_emulator2(g, s);
    const auto dg = oracle::all_pairs(g);
    for (Vertex src : s.vertices()) {
      const auto dh = oracle::relax_to_fixpoint(r.emulator, src);
      for (Vertex v = 0; v < 48; ++v) {
        if (dg[src][v] == oracle::kInf) continue;
        CHECK(dh[v] >= dg[src][v]);
        CHECK(dh[v] <= dg[src][v] + 2);
      }
    }
  }
  SUBCASE("a source inside a cluster gets no self edge") {
    const Graph g = oracle::make(10, oracle::star_edges(9));
    const SourceSet s(10, {1, 2, 3});
    const EmulatorResult r = build_sourcewise_emulator2(g, s);
    for (const WeightedEdge& e : r.emulator.edges()) CHECK(e.w >= 1);
  }
}

TEST_CASE("subsetwise +2") {
  SUBCASE("single vertex subset is g_c") {
    const Graph g = random_graph(100, 0.1, 2);
    const std::vector<Vertex> z{5};
    const Spanner h = build_subsetwise_plus2(g, z);
    CHECK(h.edges == cgk_clustering(g, 0.0).edges);
  }
  SUBCASE("G(300, 0.07, 8), |Z|=30") {
    const Graph g = random_graph(300, 0.07, 8);
    const SourceSet z = sample_sources(300, 30, 8);
    const Spanner h = build_subsetwise_plus2(g, z.vertices());
    const Graph hg = h.graph();
    for (Vertex a : z.vertices()) {
      const auto dg = bfs_distances(g, a);
      const auto dh = bfs_distances(hg, a);
      for (Vertex b : z.vertices()) {
        if (dg[b] == kUnreachable) continue;
        CHECK(dh[b] <= dg[b] + 2);
      }
    }
  }
  SUBCASE("an adjacent pair far apart in g_c gets its edge") {
    const Graph g = random_graph(200, 0.1, 3);
    const double kappa = std::log(2.0) / std::log(200.0);
    const CgkClustering c = cgk_clustering(g, kappa / 2);
    const Graph gc = Graph::from_edges(200, c.edges);
    int found = 0;
    for (Edge e : g.edges()) {
      if (bfs_distances(gc, e.u)[e.v] <= 3) continue;
      const std::vector<Vertex> z{e.u, e.v};
      const Spanner h = build_subsetwise_plus2(g, z);
      CHECK(std::binary_search(h.edges.begin(), h.edges.end(), e));
      CHECK(h.size() == c.edges.size() + 1);
      if (++found == 5) break;
    }
    CHECK(found > 0);
  }
}

TEST_CASE("sourcewise +4") {
  SUBCASE("no clusters keeps distances exact") {
    const Graph g = oracle::make(50, oracle::path_edges(50));
    const SourceSet s = sample_sources(50, 20, 1);
    const Spanner h = build_sourcewise_additive4(g, s);
    CHECK(max_additive(g, h.graph(), s) == 0);
  }
  SUBCASE("G(512, 0.05, 12), |S|=64") {
    const Graph g = random_graph(512, 0.05, 12);
    const SourceSet s = sample_sources(512, 64, 12);
    const Spanner h = build_sourcewise_additive4(g, s);
    const int worst = max_additive(g, h.graph(), s);
    CHECK(worst >= 0);
    CHECK(worst <= 4);
    CHECK(h.meta.warnings.empty());
  }
  SUBCASE("small source sets are flagged") {
    const Graph g = random_graph(200, 0.05, 1);
    CHECK_FALSE(build_sourcewise_additive4(g, sample_sources(200, 5, 1)).meta.warnings.empty());
  }
}
