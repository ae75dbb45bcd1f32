#include "netform/stability.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "netform/dynamics.hpp"

namespace netform {

PneReport is_pne_topology(const Topology& topology, const TrafficMatrix& traffic) {
  if (topology.size() != traffic.size())
    throw DomainError("topology and traffic matrix disagree on node count");
  const int n = topology.size();
  PneReport report;
  const auto labels = topology.component_labels();

  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (traffic.demands(u, v) && labels[u] != labels[v]) {
        report.ok = false;
        report.violations.push_back(
            fmt::format("condition 1: participants {} and {} are disconnected", u, v));
      }

  if (!topology.is_forest()) {
    report.ok = false;
    report.violations.push_back(fmt::format("condition 2: topology has {} edge(s) beyond a forest",
                                            static_cast<int>(topology.edge_count()) - n +
                                                topology.component_count()));
  }

  auto has_participant_in = [&](NodeId who, const std::vector<int>& lab, int component) {
    for (NodeId j = 0; j < n; ++j)
      if (lab[j] == component && traffic.demands(who, j)) return true;
    return false;
  };
  for (const Edge& e : topology.edges()) {
    const auto split = topology.without_edge(e.u, e.v).component_labels();
    // C'_u must hold a participant of v, and C'_v one of u.
    bool u_side = has_participant_in(e.v, split, split[e.u]);
    bool v_side = has_participant_in(e.u, split, split[e.v]);
    if (!u_side || !v_side) {
      report.ok = false;
      report.violations.push_back(fmt::format(
          "condition 3: removing {}-{} leaves no participant of {} on {}'s side", e.u, e.v,
          u_side ? e.u : e.v, u_side ? e.v : e.u));
    }
  }
  return report;
}

PairwiseVerdict is_pairwise_stable(const Configuration& config, const GameSetting& setting) {
  const auto base = utilities(setting, config);
  const int n = config.size();

  for (const Arc& arc : config.contracts().arcs()) {
    const auto after = utilities(setting, apply_deviation(config, setting, BreakContract{arc}));
    for (NodeId who : {arc.from, arc.to})
      if (after[who] > base[who] + kTolerance)
        return {false, fmt::format("node {} gains {} by deleting link {}-{}", who,
                                   after[who] - base[who], arc.from, arc.to)};
  }

  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      if (config.topology().has_edge(u, v)) continue;
      for (Arc arc : {Arc{u, v}, Arc{v, u}}) {
        const auto after = utilities(setting, apply_deviation(config, setting, ProposeContract{arc}));
        if (after[u] > base[u] + kTolerance && after[v] > base[v] + kTolerance)
          return {false, fmt::format("nodes {} and {} both gain by adding link {}-{} as ({},{})", u,
                                     v, u, v, arc.from, arc.to)};
      }
    }
  return {};
}

NashVerdict is_nash(const Configuration& config, const GameSetting& setting, int max_degree) {
  const auto base = utilities(setting, config);
  for (NodeId u = 0; u < config.size(); ++u) {
    const auto arcs = config.incident_arcs(u);
    if (static_cast<int>(arcs.size()) > max_degree)
      throw BoundExceeded(fmt::format("node {} has degree {} above the brute-force bound {}", u,
                                      arcs.size(), max_degree));
    const std::uint64_t subsets = std::uint64_t{1} << arcs.size();
    std::vector<Arc> chosen;
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      chosen.clear();
      for (std::size_t b = 0; b < arcs.size(); ++b)
        if (mask >> b & 1U) chosen.push_back(arcs[b]);
      double gain = utility(setting, break_contracts(config, chosen), u) - base[u];
      if (gain > kTolerance) return {false, u, chosen, gain};
    }
  }
  return {};
}

NashVerdict is_nash_single_break(const Configuration& config, const GameSetting& setting) {
  const auto base = utilities(setting, config);
  for (const Arc& arc : config.contracts().arcs()) {
    const auto after = utilities(setting, apply_deviation(config, setting, BreakContract{arc}));
    for (NodeId who : {arc.from, arc.to})
      if (after[who] - base[who] > kTolerance) return {false, who, {arc}, after[who] - base[who]};
  }
  return {};
}

bool is_pairwise_nash(const Configuration& config, const GameSetting& setting, int max_degree) {
  return is_nash(config, setting, max_degree).stable && is_pairwise_stable(config, setting).stable;
}

std::string DegreeTuple::to_string() const {
  return fmt::format("({}, {}, {}, {})", c_f, c_e, a_e, a_p);
}

int max_nonparticipant_forest_edges(const Topology& topology, const TrafficMatrix& traffic) {
  // Graphic matroid with 0/1 weights: taking every useful non-participant edge
  // first yields a maximum-weight spanning forest.
  DisjointSets sets(topology.size());
  int count = 0;
  const auto edges = topology.edges();
  for (const Edge& e : edges)
    if (!traffic.demands(e.u, e.v) && sets.unite(e.u, e.v)) ++count;
  for (const Edge& e : edges)
    if (traffic.demands(e.u, e.v)) sets.unite(e.u, e.v);
  return count;
}

int missing_connections(const Topology& topology, const TrafficMatrix& traffic) {
  const int n = topology.size();
  DisjointSets sets(n);
  for (const Edge& e : topology.edges()) sets.unite(e.u, e.v);
  const int components = sets.count();
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (traffic.demands(u, v)) sets.unite(u, v);
  return components - sets.count();
}

DegreeTuple degree_of(const Configuration& config, const GameSetting& setting,
                      double payment_tolerance) {
  const Topology& g = config.topology();
  DegreeTuple d;
  d.c_f = static_cast<int>(g.edge_count()) - (g.size() - g.component_count());
  d.c_e = max_nonparticipant_forest_edges(g, setting.traffic());
  d.a_e = missing_connections(g, setting.traffic());
  for (const auto& [arc, p] : config.payments().entries()) {
    double q = setting.contract_value(arc.from, arc.to, g);
    bool stale = payment_tolerance > 0.0 ? std::abs(p - q) > payment_tolerance : p != q;
    if (stale) ++d.a_p;
  }
  return d;
}

bool is_sink(const Configuration& config, const GameSetting& setting) {
  return is_sink(config, setting, DynamicsOptions{});
}

}  // namespace netform
