#include "spanlab/additive.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "spanlab/numeric.hpp"
#include "spanlab/rng.hpp"

namespace spanlab {

AdditiveParams additive_params(Vertex n, const SourceSet& sources, int k) {
  if (k < 1) throw std::invalid_argument("additive spanner needs k >= 1");
  if (n < 2) throw std::invalid_argument("additive spanner needs n >= 2");
  AdditiveParams p;
  p.k = k;
  p.epsilon = sources.epsilon();
  const double nn = static_cast<double>(n);
  const double exponent = (k * p.epsilon + 1.0) / (2.0 * k + 2.0);
  p.heavy_degree = std::max<std::int64_t>(1, ceil_robust(std::pow(nn, exponent)));
  const double y = static_cast<double>(p.heavy_degree);
  p.long_length = std::max<std::int64_t>(1, ceil_robust(nn * std::log(nn) / (y * y)));
  p.phi = std::pow(2.0 * static_cast<double>(p.long_length), 1.0 / k);
  return p;
}

namespace {

bool is_heavy(const Graph& g, Vertex v, const AdditiveParams& p) { return g.degree(v) >= p.heavy_degree; }

// heavy_on_path[v] = heavy vertices on the canonical path from the BFS root to v.
std::vector<int> heavy_counts(const Graph& g, const BfsResult& r, const AdditiveParams& p) {
  std::vector<int> count(r.dist.size(), 0);
  for (Vertex v : r.order) {
    const int here = is_heavy(g, v, p) ? 1 : 0;
    count[v] = here + (r.tree_parent[v] == kNoVertex ? 0 : count[r.tree_parent[v]]);
  }
  return count;
}

}  // namespace

std::vector<PairClass> classify_pairs(const Graph& g, const SourceSet& sources, const AdditiveParams& p) {
  std::vector<PairClass> out;
  for (Vertex s : sources.vertices()) {
    const BfsResult r = bfs(g, s);
    const auto heavy = heavy_counts(g, r, p);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (v == s || !r.reached(v)) continue;
      out.push_back({s, v, heavy[v], heavy[v] >= p.long_length});
    }
  }
  return out;
}

std::size_t compute_value(const Path& path, const CgkClustering& clustering, std::span<const int> spanner_dist) {
  // First position of each cluster along the path.
  std::map<int, std::size_t> first_seen;
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    const int c = clustering.cluster_of[path.vertices[i]];
    if (c >= 0) first_seen.try_emplace(c, i);
  }
  std::size_t value = 0;
  for (const auto& [c, along_path] : first_seen) {
    int in_spanner = kUnreachable;
    for (Vertex m : clustering.clusters[c]) in_spanner = std::min(in_spanner, spanner_dist[m]);
    if (static_cast<std::int64_t>(along_path) < static_cast<std::int64_t>(in_spanner)) ++value;
  }
  return value;
}

std::size_t compute_value(const Path& path, Vertex source, const CgkClustering& clustering, const Graph& current) {
  if (path.vertices.empty() || path.front() != source) throw std::invalid_argument("compute_value: path must start at source");
  return compute_value(path, clustering, bfs_distances(current, source));
}

namespace {

// Sequential path buying over the short pairs against the evolving H^b.
class PathBuyer {
 public:
  PathBuyer(const Graph& g, const CgkClustering& clustering, const AdditiveParams& p, MutableGraph& hb,
            bool record)
      : g_(g), clustering_(clustering), p_(p), hb_(hb), record_(record), bought_(static_cast<std::size_t>(p.k) + 1, 0) {}

  void process(Vertex s, Vertex v, const Path& shortest) {
    Path path = shortest;
    const auto dist_g = shortest.length();
    for (int level = 0; level <= p_.k; ++level) {
      const std::size_t cost = missing_edges(path);
      check_invariants(path, dist_g, level, cost);
      std::size_t value = 0;
      if (cost > 0) {
        refresh(s);
        value = compute_value(path, clustering_, hb_dist_.dist);
      }
      if (static_cast<double>(cost) <= 3.0 * p_.phi * static_cast<double>(value)) {
        buy(path);
        ++bought_[static_cast<std::size_t>(level)];
        if (record_) purchases_.push_back({s, v, level, path, cost, value});
        return;
      }
      if (level == p_.k) throw std::logic_error("path buying: level-k candidate has positive cost");
      path = reroute(path, cost);
    }
  }

  const std::vector<std::size_t>& bought_per_level() const { return bought_; }
  std::vector<CandidatePath> take_purchases() { return std::move(purchases_); }

 private:
  std::size_t missing_edges(const Path& path) const {
    std::size_t cost = 0;
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
      cost += hb_.has_edge(path.vertices[i - 1], path.vertices[i]) ? 0 : 1;
    }
    return cost;
  }

  void check_invariants(const Path& path, std::size_t dist_g, int level, std::size_t cost) const {
    if (path.length() > dist_g + 2 * static_cast<std::size_t>(level)) {
      throw std::logic_error("path buying: candidate longer than dist + 2*level");
    }
    std::map<int, int> per_cluster;
    for (Vertex x : path.vertices) {
      const int c = clustering_.cluster_of[x];
      if (c >= 0 && ++per_cluster[c] > 3) throw std::logic_error("path buying: cluster holds more than 3 path vertices");
    }
    const double cap = static_cast<double>(p_.long_length) / std::pow(p_.phi, level);
    if (static_cast<double>(cost) > cap + 1e-9) throw std::logic_error("path buying: candidate cost above L/phi^level");
  }

  // BFS from s in H^b, recomputed only when H^b grew since the last one.
  void refresh(Vertex s) {
    if (hb_source_ == s && hb_version_ == version_) return;
    hb_dist_ = bfs_on(hb_, std::span<const Vertex>(&s, 1));
    hb_source_ = s;
    hb_version_ = version_;
  }

  void buy(const Path& path) {
    bool grew = false;
    for (Edge e : path.edges()) grew = hb_.add_edge(e) || grew;
    if (grew) ++version_;
  }

  // Connects a and b (same cluster) through g_c: the edge itself when they
  // are adjacent, otherwise via the cluster hub.
  void cluster_hop(std::vector<Vertex>& out, Vertex a, Vertex b) const {
    if (a != b && !g_.has_edge(a, b)) out.push_back(clustering_.hubs[clustering_.cluster_of[a]]);
  }

  Path reroute(const Path& path, std::size_t cost) {
    const auto& vs = path.vertices;
    const auto quota = static_cast<std::size_t>(std::floor(static_cast<double>(cost) / p_.phi));
    // R = vs[r0..]: the longest suffix holding exactly `quota` missing edges.
    std::size_t r0 = 0;
    std::size_t seen = 0;
    for (std::size_t i = vs.size() - 1; i > 0; --i) {
      if (!hb_.has_edge(vs[i - 1], vs[i]) && ++seen > quota) {
        r0 = i;
        break;
      }
    }
    // Non-improving cluster met by R, its vertex taken closest to the target.
    std::vector<int> cluster_dist(clustering_.clusters.size(), kUnreachable);
    std::size_t pick = vs.size();
    for (std::size_t i = vs.size(); i-- > r0;) {
      const int c = clustering_.cluster_of[vs[i]];
      if (c < 0) continue;
      if (cluster_dist[c] == kUnreachable) {
        for (Vertex m : clustering_.clusters[c]) cluster_dist[c] = std::min(cluster_dist[c], hb_dist_.dist[m]);
      }
      if (static_cast<std::int64_t>(cluster_dist[c]) <= static_cast<std::int64_t>(i)) {
        pick = i;
        break;
      }
    }
    if (pick == vs.size()) throw std::logic_error("path buying: no reroute cluster for an unbought candidate");
    const Vertex x = vs[pick];
    const int c = clustering_.cluster_of[x];
    Vertex y = kNoVertex;
    for (Vertex m : clustering_.clusters[c]) {
      if (hb_dist_.dist[m] == cluster_dist[c] && (y == kNoVertex || m < y)) y = m;
    }

    std::vector<Vertex> next = path_to(hb_dist_, y).vertices;
    cluster_hop(next, y, x);
    next.insert(next.end(), vs.begin() + static_cast<std::ptrdiff_t>(pick + (y == x ? 1 : 0)), vs.end());
    return tidy(std::move(next));
  }

  // Drops loops and collapses any cluster holding four or more path
  // vertices onto a g_c hop, until neither applies. Both steps shorten.
  Path tidy(std::vector<Vertex> vs) const {
    for (;;) {
      std::vector<Vertex> simple;
      std::map<Vertex, std::size_t> at;
      for (Vertex v : vs) {
        if (auto it = at.find(v); it != at.end()) {
          for (std::size_t j = it->second + 1; j < simple.size(); ++j) at.erase(simple[j]);
          simple.resize(it->second + 1);
          continue;
        }
        at[v] = simple.size();
        simple.push_back(v);
      }
      vs = std::move(simple);

      std::map<int, std::pair<std::size_t, std::size_t>> span;  // cluster -> (first, last)
      std::map<int, int> count;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        const int c = clustering_.cluster_of[vs[i]];
        if (c < 0) continue;
        auto [it, fresh] = span.try_emplace(c, i, i);
        if (!fresh) it->second.second = i;
        ++count[c];
      }
      auto over = std::find_if(count.begin(), count.end(), [](const auto& kv) { return kv.second >= 4; });
      if (over == count.end()) return Path{std::move(vs)};
      const auto [a, b] = span[over->first];
      std::vector<Vertex> shorter(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(a) + 1);
      cluster_hop(shorter, vs[a], vs[b]);
      shorter.insert(shorter.end(), vs.begin() + static_cast<std::ptrdiff_t>(b), vs.end());
      vs = std::move(shorter);
    }
  }

  const Graph& g_;
  const CgkClustering& clustering_;
  const AdditiveParams& p_;
  MutableGraph& hb_;
  bool record_;
  std::uint64_t version_ = 0;
  Vertex hb_source_ = kNoVertex;
  std::uint64_t hb_version_ = 0;
  BfsResult hb_dist_;
  std::vector<std::size_t> bought_;
  std::vector<CandidatePath> purchases_;
};

std::vector<Vertex> draw_sample(Vertex n, const AdditiveParams& p, std::uint64_t seed, int draw) {
  const std::string label = draw == 0 ? "phase1" : "phase1/redraw" + std::to_string(draw);
  Rng rng(derive_seed(seed, label));
  const double prob = std::min(1.0, 9.0 * static_cast<double>(p.heavy_degree) / static_cast<double>(n));
  std::vector<Vertex> z;
  for (Vertex v = 0; v < n; ++v) {
    if (rng.bernoulli(prob)) z.push_back(v);
  }
  return z;
}

// Every S×V pair within +2k in the union of the two edge sets.
bool all_pairs_within(const Graph& g, const SourceSet& sources, const std::vector<Edge>& h_edges, int k) {
  const Graph h = Graph::from_edges(g.num_vertices(), h_edges);
  for (Vertex s : sources.vertices()) {
    const auto dg = bfs_distances(g, s);
    const auto dh = bfs_distances(h, s);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (dg[v] == kUnreachable) continue;
      if (dh[v] == kUnreachable || dh[v] > dg[v] + 2 * k) return false;
    }
  }
  return true;
}

}  // namespace

AdditiveResult build_sourcewise_additive(const Graph& g, const SourceSet& sources, int k, std::uint64_t seed,
                                         const AdditiveOptions& options) {
  const Vertex n = g.num_vertices();
  AdditiveResult result;
  result.params = options.params ? *options.params : additive_params(g, sources, k);
  const AdditiveParams& p = result.params;
  if (p.k != k) throw std::invalid_argument("additive params built for a different k");

  // H_0: every edge with a light endpoint.
  std::vector<Edge> light_edges;
  for (const Edge& e : g.edges()) {
    if (!is_heavy(g, e.u, p) || !is_heavy(g, e.v, p)) light_edges.push_back(e);
  }

  // Phase 2 (short pairs) does not depend on the sample, so it runs once.
  result.clustering = cgk_clustering_with_size(g, static_cast<Vertex>(std::min<std::int64_t>(p.heavy_degree, n)));
  MutableGraph hb(n);
  for (const Edge& e : light_edges) hb.add_edge(e);
  for (const Edge& e : result.clustering.edges) hb.add_edge(e);
  const std::size_t before_buying = hb.num_edges();

  PathBuyer buyer(g, result.clustering, p, hb, options.record_purchases);
  for (Vertex s : sources.vertices()) {
    const BfsResult r = bfs(g, s);
    const auto heavy = heavy_counts(g, r, p);
    for (Vertex v = 0; v < n; ++v) {
      if (v == s || !r.reached(v)) continue;
      const bool is_long = heavy[v] >= p.long_length;
      result.pairs.push_back({s, v, heavy[v], is_long});
      if (!is_long) buyer.process(s, v, path_to(r, v));
    }
  }
  result.short_pair_edges = hb.edges();
  result.bought_per_level = buyer.bought_per_level();
  result.purchases = buyer.take_purchases();

  // Phase 1 (long pairs), redrawn while verification fails.
  const int max_draws = 1 + std::max(0, options.retries);
  for (int draw = 0; draw < max_draws; ++draw) {
    result.sample = draw_sample(n, p, seed, draw);
    EdgeCollector ha;
    ha.insert_all(light_edges);
    for (Vertex z : result.sample) {
      const BfsResult r = bfs(g, z);
      for (Vertex v : r.order) {
        if (r.parent[v] != kNoVertex) ha.insert(Edge::of(v, r.parent[v]));
      }
    }
    result.long_pair_edges = ha.sorted();
    result.draws = draw + 1;
    if (options.retries <= 0) break;
    EdgeCollector both;
    both.insert_all(result.long_pair_edges);
    both.insert_all(result.short_pair_edges);
    result.verified = all_pairs_within(g, sources, both.sorted(), k);
    if (result.verified) break;
  }

  EdgeCollector h;
  Spanner& out = result.spanner;
  out.meta.phase_edges = {{"H0", h.insert_all(light_edges)},
                          {"bfs_trees", h.insert_all(result.long_pair_edges)},
                          {"g_c", h.insert_all(result.clustering.edges)},
                          {"bought", h.insert_all(result.short_pair_edges)}};
  out.n = n;
  out.edges = h.sorted();
  out.meta.construction = "swadd";
  out.meta.seed = seed;
  std::size_t long_pairs = 0;
  for (const PairClass& pc : result.pairs) long_pairs += pc.is_long ? 1 : 0;
  out.meta.params = {{"k", k},
                     {"epsilon", p.epsilon},
                     {"Y", static_cast<double>(p.heavy_degree)},
                     {"L", static_cast<double>(p.long_length)},
                     {"phi", p.phi},
                     {"sample_size", static_cast<double>(result.sample.size())},
                     {"draws", result.draws},
                     {"long_pairs", static_cast<double>(long_pairs)},
                     {"short_pairs", static_cast<double>(result.pairs.size() - long_pairs)},
                     {"bought_edges", static_cast<double>(hb.num_edges() - before_buying)}};
  for (std::size_t level = 0; level < result.bought_per_level.size(); ++level) {
    out.meta.params.emplace_back("bought_level_" + std::to_string(level),
                                 static_cast<double>(result.bought_per_level[level]));
  }
  return result;
}

EmulatorResult build_sourcewise_emulator2(const Graph& g, const SourceSet& sources) {
  EmulatorResult result;
  const double eps = sources.epsilon();
  result.clustering = cgk_clustering(g, eps / 2.0);
  const CgkClustering& cl = result.clustering;

  std::vector<WeightedEdge> edges;
  for (const Edge& e : cl.edges) edges.push_back({e.u, e.v, 1});
  std::size_t shortcuts = 0;
  for (Vertex s : sources.vertices()) {
    const auto dist = bfs_distances(g, s);
    for (const auto& cluster : cl.clusters) {
      Vertex z = kNoVertex;
      for (Vertex m : cluster) {
        if (dist[m] != kUnreachable && (z == kNoVertex || dist[m] < dist[z])) z = m;
      }
      if (z == kNoVertex || z == s) continue;
      edges.push_back({s, z, dist[z]});
      ++shortcuts;
    }
  }
  result.emulator = Emulator::from_edges(g.num_vertices(), edges);
  result.meta.construction = "emulator";
  result.meta.params = {{"epsilon", eps},
                        {"gamma", eps / 2.0},
                        {"cluster_size", cl.cluster_size},
                        {"clusters", static_cast<double>(cl.clusters.size())},
                        {"sources", static_cast<double>(sources.size())}};
  const std::size_t total = result.emulator.num_edges();
  result.meta.phase_edges = {{"g_c", cl.edges.size()}, {"source_cluster", total - cl.edges.size()}};
  return result;
}

Spanner build_subsetwise_plus2(const Graph& g, std::span<const Vertex> subset) {
  const Vertex n = g.num_vertices();
  std::vector<Vertex> z(subset.begin(), subset.end());
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  const double kappa = (n >= 2 && !z.empty()) ? log_ratio(static_cast<double>(z.size()), n) : 0.0;
  const CgkClustering cl = cgk_clustering(g, std::clamp(kappa / 2.0, 0.0, 1.0));

  MutableGraph h(n);
  for (const Edge& e : cl.edges) h.add_edge(e);
  const std::size_t from_gc = h.num_edges();

  std::vector<BfsResult> from_g;
  from_g.reserve(z.size());
  for (Vertex a : z) from_g.push_back(bfs(g, a));
  struct Job {
    int dist;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      if (from_g[i].reached(z[j])) jobs.push_back({from_g[i].dist[z[j]], i, j});
    }
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return std::tie(a.dist, a.i, a.j) < std::tie(b.dist, b.i, b.j); });

  std::uint64_t version = 0;
  std::vector<std::uint64_t> cached_at(z.size(), ~std::uint64_t{0});
  std::vector<std::vector<int>> h_dist(z.size());
  std::size_t bought = 0;
  for (const Job& job : jobs) {
    if (cached_at[job.i] != version) {
      h_dist[job.i] = bfs_distances(h, z[job.i]);
      cached_at[job.i] = version;
    }
    const int dh = h_dist[job.i][z[job.j]];
    if (dh != kUnreachable && dh <= job.dist + 2) continue;
    bool grew = false;
    for (Edge e : path_to(from_g[job.i], z[job.j]).edges()) grew = h.add_edge(e) || grew;
    if (grew) ++version;
    ++bought;
  }

  Spanner out;
  out.n = n;
  out.edges = h.edges();
  out.meta.construction = "subsetwise2";
  out.meta.params = {{"kappa", kappa}, {"subset", static_cast<double>(z.size())}, {"paths_bought", static_cast<double>(bought)}};
  out.meta.phase_edges = {{"g_c", from_gc}, {"bought", out.edges.size() - from_gc}};
  return out;
}

Spanner build_sourcewise_additive4(const Graph& g, const SourceSet& sources) {
  const Vertex n = g.num_vertices();
  const double eps = sources.epsilon();
  const CgkClustering cl = cgk_clustering(g, eps / 2.0);
  std::vector<Vertex> z(sources.vertices().begin(), sources.vertices().end());
  z.insert(z.end(), cl.hubs.begin(), cl.hubs.end());
  const Spanner sub = build_subsetwise_plus2(g, z);

  EdgeCollector h;
  Spanner out;
  out.meta.phase_edges = {{"g_c", h.insert_all(cl.edges)}, {"subsetwise", h.insert_all(sub.edges)}};
  out.n = n;
  out.edges = h.sorted();
  out.meta.construction = "sw4";
  out.meta.params = {{"epsilon", eps},
                     {"gamma", eps / 2.0},
                     {"hubs", static_cast<double>(cl.hubs.size())},
                     {"subset", sub.meta.param("subset")}};
  if (static_cast<double>(sources.size()) < std::pow(static_cast<double>(n), 2.0 / 3.0) * (1.0 - 1e-9)) {
    out.meta.warnings.push_back("|S| = " + std::to_string(sources.size()) +
                                " is below n^(2/3); the +4 bound holds but the size bound is not intended here");
  }
  return out;
}

}  // namespace spanlab
