#pragma once

#include <vector>

#include "netform/common.hpp"
#include "netform/topology.hpp"
#include "netform/traffic.hpp"

namespace netform {

// Shortest-path routing with equal splitting among all shortest paths.
//
// f(i;G) sums, over connected ordered pairs (s,t), t_st times the fraction of
// shortest s-t paths that visit i. Endpoints count: s and t each accrue t_st.
// Demand between disconnected nodes contributes nothing.

std::vector<double> transit_loads(const Topology& topology, const TrafficMatrix& traffic);

double transit_load(const Topology& topology, const TrafficMatrix& traffic, NodeId i);

/// Same quantity in exact arithmetic. Requires integral traffic.
std::vector<Rational> transit_loads_exact(const Topology& topology, const TrafficMatrix& traffic);

/// BFS hop distances from source; -1 for unreachable nodes.
std::vector<int> hop_distances(const Topology& topology, NodeId source);

}  // namespace netform
