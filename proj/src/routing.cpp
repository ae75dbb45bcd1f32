#include "netform/routing.hpp"

#include <cstdint>

namespace netform {
namespace {

// Forward pass counts shortest paths from the source in BFS order; the
// backward pass accumulates, for every node w, the demand that passes through
// it towards nodes farther away (weighted dependency accumulation).
template <typename Scalar, typename Count, typename Demand>
std::vector<Scalar> accumulate_loads(const Topology& g, Demand&& demand) {
  const int n = g.size();
  std::vector<Scalar> load(static_cast<std::size_t>(n), Scalar(0));
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<Count> sigma(static_cast<std::size_t>(n));
  std::vector<Scalar> delta(static_cast<std::size_t>(n));
  std::vector<NodeId> order;
  order.reserve(static_cast<std::size_t>(n));

  for (NodeId s = 0; s < n; ++s) {
    bool any = false;
    for (NodeId t = 0; t < n && !any; ++t) any = demand(s, t) != Scalar(0);
    if (!any) continue;

    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), Count(0));
    std::fill(delta.begin(), delta.end(), Scalar(0));
    order.clear();
    dist[s] = 0;
    sigma[s] = Count(1);
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      NodeId x = order[head];
      for (NodeId y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          order.push_back(y);
        }
        if (dist[y] == dist[x] + 1) sigma[y] += sigma[x];
      }
    }

    Scalar sent(0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      if (w == s) break;
      Scalar through = demand(s, w) + delta[w];
      sent += demand(s, w);
      for (NodeId v : g.neighbors(w))
        if (dist[v] == dist[w] - 1) delta[v] += Scalar(sigma[v]) / Scalar(sigma[w]) * through;
      load[w] += through;
    }
    load[s] += sent;
  }
  return load;
}

}  // namespace

std::vector<double> transit_loads(const Topology& topology, const TrafficMatrix& traffic) {
  if (topology.size() != traffic.size())
    throw DomainError("topology and traffic matrix disagree on node count");
  return accumulate_loads<double, double>(topology,
                                          [&](NodeId s, NodeId t) { return traffic(s, t); });
}

double transit_load(const Topology& topology, const TrafficMatrix& traffic, NodeId i) {
  if (i < 0 || i >= topology.size()) throw DomainError("node out of range");
  return transit_loads(topology, traffic)[static_cast<std::size_t>(i)];
}

std::vector<Rational> transit_loads_exact(const Topology& topology, const TrafficMatrix& traffic) {
  if (topology.size() != traffic.size())
    throw DomainError("topology and traffic matrix disagree on node count");
  if (!traffic.is_integral()) throw DomainError("exact routing requires integral traffic");
  return accumulate_loads<Rational, std::int64_t>(topology, [&](NodeId s, NodeId t) {
    return Rational(static_cast<std::int64_t>(traffic(s, t)));
  });
}

std::vector<int> hop_distances(const Topology& topology, NodeId source) {
  std::vector<int> dist(static_cast<std::size_t>(topology.size()), -1);
  std::vector<NodeId> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId x = queue[head];
    for (NodeId y : topology.neighbors(x))
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  return dist;
}

}  // namespace netform
