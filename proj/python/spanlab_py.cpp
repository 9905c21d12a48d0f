#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "json.hpp"
#include "spanlab/additive.hpp"
#include "spanlab/cli.hpp"
#include "spanlab/hybrid.hpp"
#include "spanlab/lowerbound.hpp"
#include "spanlab/sourcewise.hpp"
#include "spanlab/verify.hpp"

namespace py = pybind11;
using namespace spanlab;

namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

std::vector<Edge> to_edges(const EdgeList& in) {
  std::vector<Edge> out;
  out.reserve(in.size());
  for (auto [u, v] : in) out.push_back(Edge::of(u, v));
  return out;
}

EdgeList from_edges(std::span<const Edge> in) {
  EdgeList out;
  out.reserve(in.size());
  for (Edge e : in) out.emplace_back(e.u, e.v);
  return out;
}

Graph make_graph(Vertex n, const EdgeList& edges) { return Graph::from_edges(n, to_edges(edges)); }

py::dict spanner_dict(const Spanner& s) {
  py::dict d;
  d["n"] = s.n;
  d["edges"] = from_edges(s.edges);
  d["meta"] = to_json(s.meta).dump();
  return d;
}

}  // namespace

PYBIND11_MODULE(_spanlab, m) {
  m.doc() = "Hybrid and sourcewise spanner constructions";

  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);

  m.def("random_graph", [](Vertex n, double p, std::uint64_t seed) { return from_edges(random_graph(n, p, seed).edges()); },
        py::arg("n"), py::arg("p"), py::arg("seed"));

  m.def("sample_sources", [](Vertex n, std::size_t count, std::uint64_t seed) {
    const SourceSet s = sample_sources(n, count, seed);
    return std::vector<Vertex>(s.vertices().begin(), s.vertices().end());
  }, py::arg("n"), py::arg("count"), py::arg("seed"));

  m.def("build_hybrid", [](Vertex n, const EdgeList& edges, int k, std::uint64_t seed, bool suffix_both) {
    return spanner_dict(build_hybrid(make_graph(n, edges), k, seed, {suffix_both}).spanner);
  }, py::arg("n"), py::arg("edges"), py::arg("k"), py::arg("seed") = 1, py::arg("suffix_both") = false);

  m.def("build_sourcewise_mult", [](Vertex n, const EdgeList& edges, std::vector<Vertex> sources, int k, std::uint64_t seed) {
    const Graph g = make_graph(n, edges);
    return spanner_dict(build_sourcewise_mult(g, SourceSet(n, std::move(sources)), k, seed).spanner);
  }, py::arg("n"), py::arg("edges"), py::arg("sources"), py::arg("k"), py::arg("seed") = 1);

  m.def("build_sourcewise_additive", [](Vertex n, const EdgeList& edges, std::vector<Vertex> sources, int k,
                                        std::uint64_t seed, int retries) {
    const Graph g = make_graph(n, edges);
    AdditiveOptions opt;
    opt.retries = retries;
    const AdditiveResult r = build_sourcewise_additive(g, SourceSet(n, std::move(sources)), k, seed, opt);
    py::dict d = spanner_dict(r.spanner);
    d["draws"] = r.draws;
    d["verified"] = r.verified;
    return d;
  }, py::arg("n"), py::arg("edges"), py::arg("sources"), py::arg("k"), py::arg("seed") = 1, py::arg("retries") = 0);

  m.def("build_emulator", [](Vertex n, const EdgeList& edges, std::vector<Vertex> sources) {
    const EmulatorResult r = build_sourcewise_emulator2(make_graph(n, edges), SourceSet(n, std::move(sources)));
    std::vector<std::tuple<Vertex, Vertex, std::int64_t>> out;
    for (const WeightedEdge& e : r.emulator.edges()) out.emplace_back(e.u, e.v, e.w);
    py::dict d;
    d["n"] = n;
    d["edges"] = out;
    d["meta"] = to_json(r.meta).dump();
    return d;
  }, py::arg("n"), py::arg("edges"), py::arg("sources"));

  m.def("build_sourcewise_additive4", [](Vertex n, const EdgeList& edges, std::vector<Vertex> sources) {
    return spanner_dict(build_sourcewise_additive4(make_graph(n, edges), SourceSet(n, std::move(sources))));
  }, py::arg("n"), py::arg("edges"), py::arg("sources"));

  m.def("verify", [](Vertex n, const EdgeList& edges, const EdgeList& candidate, std::optional<std::vector<Vertex>> sources,
                     const std::string& spec) {
    const Graph g = make_graph(n, edges);
    const StretchSpec parsed = StretchSpec::parse(spec);
    std::optional<SourceSet> s;
    if (sources) s.emplace(n, std::move(*sources));
    return to_json(verify_spanner(g, to_edges(candidate), s ? &*s : nullptr, parsed)).dump();
  }, py::arg("n"), py::arg("edges"), py::arg("candidate"), py::arg("sources") = py::none(), py::arg("spec"));

  m.def("verify_emulator", [](Vertex n, const EdgeList& edges, const std::vector<std::tuple<Vertex, Vertex, std::int64_t>>& h,
                              std::vector<Vertex> sources, int beta) {
    std::vector<WeightedEdge> we;
    for (auto [u, v, w] : h) we.push_back({u, v, w});
    const Graph g = make_graph(n, edges);
    return to_json(verify_emulator(g, Emulator::from_edges(n, we), SourceSet(n, std::move(sources)), beta)).dump();
  }, py::arg("n"), py::arg("edges"), py::arg("emulator"), py::arg("sources"), py::arg("beta"));

  m.def("build_lb_graph", [](int r, int k, double eps, std::int64_t max_vertices) {
    const LayeredGraph lg = build_lb_graph(r, k, eps, max_vertices);
    py::dict d;
    d["n"] = lg.graph.num_vertices();
    d["edges"] = from_edges(lg.graph.edges());
    d["sources"] = lg.sources;
    d["levels"] = lg.levels;
    d["n1"] = lg.n1;
    d["n2"] = lg.n2;
    d["warnings"] = lg.warnings;
    return d;
  }, py::arg("r"), py::arg("k"), py::arg("epsilon"), py::arg("max_vertices") = kLayeredSizeCap);

  m.def("lb_audit", [](int r, int k, double eps, const EdgeList& candidate) {
    const LayeredGraph lg = build_lb_graph(r, k, eps);
    const LbAudit a = lb_audit(lg, to_edges(candidate));
    py::dict d;
    if (a.chain) d["chain"] = a.chain->chain; else d["chain"] = py::none();
    d["dist_g"] = a.dist_g;
    d["dist_h"] = a.dist_h == kUnreachable ? py::object(py::none()) : py::int_(a.dist_h);
    d["distortion_confirmed"] = a.distortion_confirmed;
    return d;
  }, py::arg("r"), py::arg("k"), py::arg("epsilon"), py::arg("candidate"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
