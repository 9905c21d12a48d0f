#include "spanlab/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <tuple>

#include "spanlab/rng.hpp"

namespace spanlab {

Graph::Graph(Vertex n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0) {
  if (n < 0) throw GraphError("negative vertex count");
}

Graph Graph::from_edges(Vertex n, std::span<const Edge> edges) {
  Graph g(n);
  std::vector<std::size_t> deg(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       ") has a vertex id outside [0," + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
    ++deg[e.u];
    ++deg[e.v];
  }
  for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.targets_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.targets_[fill[e.u]++] = e.v;
    g.targets_[fill[e.v]++] = e.u;
  }
  for (Vertex v = 0; v < n; ++v) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw GraphError("duplicate edge (" + std::to_string(std::min(v, *dup)) + "," +
                       std::to_string(std::max(v, *dup)) + ")");
    }
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

bool MutableGraph::add_edge(Edge e) {
  if (!keys_.insert(edge_key(e)).second) return false;
  adj_[e.u].push_back(e.v);
  adj_[e.v].push_back(e.u);
  return true;
}

std::vector<Edge> MutableGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(keys_.size());
  for (std::uint64_t key : keys_) {
    out.push_back({static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffU)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> Path::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 1; i < vertices.size(); ++i) out.push_back(Edge::of(vertices[i - 1], vertices[i]));
  return out;
}

BfsResult bfs(const Graph& g, std::span<const Vertex> roots, int max_depth) {
  return bfs_on(g, roots, max_depth);
}

BfsResult bfs(const Graph& g, Vertex root, int max_depth) {
  const Vertex roots[] = {root};
  return bfs_on(g, std::span<const Vertex>(roots), max_depth);
}

Path path_to(const BfsResult& result, Vertex v) {
  Path p;
  for (Vertex x = v; x != kNoVertex; x = result.tree_parent[x]) p.vertices.push_back(x);
  std::reverse(p.vertices.begin(), p.vertices.end());
  return p;
}

std::optional<Path> canonical_path(const Graph& g, Vertex u, Vertex v) {
  if (u == v) return Path{{u}};
  BfsResult r = bfs(g, u);
  if (!r.reached(v)) return std::nullopt;
  return path_to(r, v);
}

bool is_path_in(const Graph& g, const Path& p) {
  if (p.vertices.empty()) return false;
  std::vector<Vertex> seen = p.vertices;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    if (!g.has_edge(p.vertices[i - 1], p.vertices[i])) return false;
  }
  return true;
}

Emulator Emulator::from_edges(Vertex n, std::span<const WeightedEdge> edges) {
  Emulator h(n);
  h.edges_.reserve(edges.size());
  for (WeightedEdge e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw GraphError("emulator edge outside vertex range");
    if (e.u == e.v) throw GraphError("emulator self-loop at vertex " + std::to_string(e.u));
    if (e.w < 1) throw GraphError("emulator weight must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
    h.edges_.push_back(e);
  }
  std::sort(h.edges_.begin(), h.edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
  });
  auto last = std::unique(h.edges_.begin(), h.edges_.end(),
                          [](const WeightedEdge& a, const WeightedEdge& b) { return a.u == b.u && a.v == b.v; });
  h.edges_.erase(last, h.edges_.end());
  return h;
}

std::vector<std::int64_t> weighted_sssp(const Emulator& h, Vertex root) {
  const auto n = static_cast<std::size_t>(h.num_vertices());
  std::vector<std::vector<std::pair<Vertex, std::int64_t>>> adj(n);
  for (const WeightedEdge& e : h.edges()) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  std::vector<std::int64_t> dist(n, kUnreachableWeight);
  using Item = std::pair<std::int64_t, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[root] = 0;
  heap.emplace(0, root);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    for (auto [w, len] : adj[u]) {
      if (d + len < dist[w]) {
        dist[w] = d + len;
        heap.emplace(dist[w], w);
      }
    }
  }
  return dist;
}

Graph random_graph(Vertex n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("random_graph: p must lie in [0,1]");
  Rng rng(derive_seed(seed, "gnp"));
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, edges);
}

namespace {

// Line-oriented tokenizer shared by the readers. Skips blank and '#' lines.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string_view>& tokens) {
    while (std::getline(in_, line_)) {
      ++number_;
      tokens.clear();
      std::size_t i = 0;
      while (i < line_.size()) {
        while (i < line_.size() && std::isspace(static_cast<unsigned char>(line_[i]))) ++i;
        std::size_t j = i;
        while (j < line_.size() && !std::isspace(static_cast<unsigned char>(line_[j]))) ++j;
        if (j > i) tokens.emplace_back(line_.data() + i, j - i);
        i = j;
      }
      if (tokens.empty() || tokens.front().front() == '#') continue;
      return true;
    }
    return false;
  }
  std::size_t number() const noexcept { return number_; }

 private:
  std::istream& in_;
  std::string line_;
  std::size_t number_ = 0;
};

template <class Int>
Int parse_int(std::string_view tok, std::size_t line) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return value;
}

struct Header {
  Vertex n;
  std::size_t m;
};

Header read_header(LineReader& reader, std::string_view tag) {
  std::vector<std::string_view> tok;
  if (!reader.next(tok)) throw ParseError(reader.number(), "missing header line");
  if (tok.size() != 3 || tok[0] != tag) {
    throw ParseError(reader.number(), "expected header '" + std::string(tag) + " <n> <m>'");
  }
  const auto n = parse_int<std::int64_t>(tok[1], reader.number());
  const auto m = parse_int<std::int64_t>(tok[2], reader.number());
  if (n < 0 || n > std::numeric_limits<Vertex>::max() || m < 0) {
    throw ParseError(reader.number(), "header counts out of range");
  }
  return {static_cast<Vertex>(n), static_cast<std::size_t>(m)};
}

Vertex parse_vertex(std::string_view tok, Vertex n, std::size_t line) {
  const auto v = parse_int<std::int64_t>(tok, line);
  if (v < 0 || v >= n) {
    throw ParseError(line, "vertex id " + std::string(tok) + " outside [0," + std::to_string(n) + ")");
  }
  return static_cast<Vertex>(v);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  LineReader reader(in);
  const Header h = read_header(reader, "p");
  std::vector<Edge> edges;
  edges.reserve(h.m);
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::string_view> tok;
  while (reader.next(tok)) {
    if (tok.size() != 2) throw ParseError(reader.number(), "expected '<u> <v>'");
    const Vertex u = parse_vertex(tok[0], h.n, reader.number());
    const Vertex v = parse_vertex(tok[1], h.n, reader.number());
    if (u == v) throw ParseError(reader.number(), "self-loop at vertex " + std::to_string(u));
    const Edge e = Edge::of(u, v);
    if (!seen.insert(edge_key(e)).second) {
      throw ParseError(reader.number(), "duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    edges.push_back(e);
  }
  if (edges.size() != h.m) {
    throw ParseError(reader.number(), "header declares " + std::to_string(h.m) + " edges, found " +
                                          std::to_string(edges.size()));
  }
  return Graph::from_edges(h.n, edges);
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, Vertex n, std::span<const Edge> edges) {
  out << "p " << n << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const auto edges = g.edges();
  write_edge_list(out, g.num_vertices(), edges);
}

Emulator read_emulator(std::istream& in) {
  LineReader reader(in);
  const Header h = read_header(reader, "e");
  std::vector<WeightedEdge> edges;
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::string_view> tok;
  while (reader.next(tok)) {
    if (tok.size() != 3) throw ParseError(reader.number(), "expected '<u> <v> <w>'");
    const Vertex u = parse_vertex(tok[0], h.n, reader.number());
    const Vertex v = parse_vertex(tok[1], h.n, reader.number());
    const auto w = parse_int<std::int64_t>(tok[2], reader.number());
    if (u == v) throw ParseError(reader.number(), "self-loop at vertex " + std::to_string(u));
    if (w < 1) throw ParseError(reader.number(), "weight must be a positive integer");
    if (!seen.insert(edge_key(Edge::of(u, v))).second) throw ParseError(reader.number(), "duplicate edge");
    edges.push_back({u, v, w});
  }
  if (edges.size() != h.m) throw ParseError(reader.number(), "edge count does not match header");
  return Emulator::from_edges(h.n, edges);
}

void write_emulator(std::ostream& out, const Emulator& h) {
  out << "e " << h.num_vertices() << ' ' << h.num_edges() << '\n';
  for (const WeightedEdge& e : h.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

std::vector<Vertex> read_vertex_list(std::istream& in, Vertex n) {
  LineReader reader(in);
  std::vector<Vertex> out;
  std::unordered_set<Vertex> seen;
  std::vector<std::string_view> tok;
  while (reader.next(tok)) {
    if (tok.size() != 1) throw ParseError(reader.number(), "expected one vertex id per line");
    const Vertex v = parse_vertex(tok[0], n, reader.number());
    if (!seen.insert(v).second) throw ParseError(reader.number(), "repeated vertex " + std::to_string(v));
    out.push_back(v);
  }
  return out;
}

void write_vertex_list(std::ostream& out, std::span<const Vertex> vertices) {
  for (Vertex v : vertices) out << v << '\n';
}

}  // namespace spanlab
