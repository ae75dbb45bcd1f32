#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netform/dynamics.hpp"
#include "netform/experiment.hpp"
#include "netform/io.hpp"
#include "netform/reductions.hpp"
#include "netform/stability.hpp"
#include "netform/welfare.hpp"

namespace py = pybind11;
using namespace netform;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

Topology to_topology(int n, const EdgeList& edges) {
  Topology g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

EdgeList to_edges(const Topology& g) {
  EdgeList out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

TrafficMatrix to_traffic(const std::vector<std::vector<double>>& rows) {
  TrafficMatrix t(static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw DomainError("traffic matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (i != j && rows[i][j] != 0) t.set(static_cast<NodeId>(i), static_cast<NodeId>(j), rows[i][j]);
  }
  return t;
}

}  // namespace

PYBIND11_MODULE(_netform, m) {
  m.doc() = "Network formation games with contracts";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BoundExceeded>(m, "BoundExceeded", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<GameSetting>(m, "GameSetting")
      .def(py::init([](const std::vector<std::vector<double>>& traffic, double pi, std::vector<double> costs,
                       std::optional<double> beta) {
             return GameSetting(to_traffic(traffic), pi, std::move(costs), std::make_shared<DefaultRule>(), beta);
           }),
           py::arg("traffic"), py::arg("pi") = 1.0, py::arg("costs") = std::vector<double>{},
           py::arg("beta") = std::nullopt)
      .def_property_readonly("size", &GameSetting::size)
      .def_property_readonly("pi", &GameSetting::pi)
      .def_property_readonly("beta", &GameSetting::beta)
      .def_property_readonly("routing_costs", &GameSetting::routing_costs)
      .def("social_cost", [](const GameSetting& s, const EdgeList& edges) {
        return social_cost(s, to_topology(s.size(), edges));
      });

  m.def("read_instance", [](const std::string& path) { return read_instance(path).setting; });

  m.def("is_pne_topology", [](const GameSetting& s, const EdgeList& edges) {
    return is_pne_topology(to_topology(s.size(), edges), s.traffic()).ok;
  });

  m.def("optimal_topology", [](const GameSetting& s, int max_nodes) {
    auto opt = optimal_topology(s, {max_nodes, 0});
    return py::make_tuple(to_edges(opt.topology), opt.social_cost);
  }, py::arg("setting"), py::arg("max_nodes") = 7);

  m.def("pos_poa", [](const GameSetting& s, int max_nodes) {
    auto r = pos_poa(s, {max_nodes, 0});
    py::dict d;
    d["pos"] = r.pos;
    d["poa"] = r.poa;
    d["sc_opt"] = r.sc_opt;
    d["pne_count"] = r.pne_count;
    d["best_pne"] = to_edges(r.best_pne);
    d["worst_pne"] = to_edges(r.worst_pne);
    return d;
  }, py::arg("setting"), py::arg("max_nodes") = 7);

  m.def("simulate", [](const GameSetting& s, std::uint64_t seed, long max_rounds) {
    RunOptions opt;
    opt.max_rounds = max_rounds;
    opt.record_trace = false;
    Rng rng = trial_rng(seed, 0);
    RunResult r;
    {
      py::gil_scoped_release release;
      r = run(Configuration(s.size()), s, ActivationProcess(s.size()), rng, opt);
    }
    const auto d = degree_of(r.final_config, s);
    py::dict out;
    out["converged"] = r.converged;
    out["rounds"] = r.rounds;
    out["settle_round"] = r.settle_round;
    out["edges"] = to_edges(r.final_config.topology());
    out["degree"] = py::make_tuple(d.c_f, d.c_e, d.a_e, d.a_p);
    out["sink"] = is_sink(r.final_config, s);
    return out;
  }, py::arg("setting"), py::arg("seed") = 0, py::arg("max_rounds") = 1'000'000);

  m.def("independence_number", [](int n, const EdgeList& edges) {
    return brute_independent_set(to_topology(n, edges));
  });

  m.def("decide_independent_set_via_br", [](int n, const EdgeList& edges, int threshold) {
    return decide_br(reduce_is_to_br(to_topology(n, edges), threshold));
  });
}
