#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "netform/game.hpp"

namespace netform {

/// Outcome of the topology characterization; `violations` names each failed
/// condition (1: participants share a component, 2: acyclic, 3: every edge
/// separates a participant of each endpoint).
struct PneReport {
  bool ok = true;
  std::vector<std::string> violations;
  explicit operator bool() const { return ok; }
};

PneReport is_pne_topology(const Topology& topology, const TrafficMatrix& traffic);

struct PairwiseVerdict {
  bool stable = true;
  std::string witness;
  explicit operator bool() const { return stable; }
};

/// No endpoint gains by deleting a link; no non-adjacent pair both gain by
/// adding one at payment Q(u,v;G+uv) (either orientation).
PairwiseVerdict is_pairwise_stable(const Configuration& config, const GameSetting& setting);

struct NashVerdict {
  bool stable = true;
  NodeId node = -1;
  std::vector<Arc> deviation;
  double gain = 0.0;
  explicit operator bool() const { return stable; }
};

inline constexpr int kNashDegreeBound = 20;

/// No node gains by breaking any subset of its contracts. Exponential in the
/// degree; throws BoundExceeded above `max_degree`.
NashVerdict is_nash(const Configuration& config, const GameSetting& setting,
                    int max_degree = kNashDegreeBound);

/// Single-break shortcut; agrees with is_nash on sink configurations.
NashVerdict is_nash_single_break(const Configuration& config, const GameSetting& setting);

bool is_pairwise_nash(const Configuration& config, const GameSetting& setting,
                      int max_degree = kNashDegreeBound);

struct DegreeTuple {
  int c_f = 0;  // edges beyond a spanning forest
  int c_e = 0;  // max non-participant edges over spanning forests
  int a_e = 0;  // edges missing to connect every participant pair
  int a_p = 0;  // contracts whose payment differs from Q

  auto operator<=>(const DegreeTuple&) const = default;
  std::string to_string() const;
};

/// Greedy max over spanning forests of the non-participant edge count.
int max_nonparticipant_forest_edges(const Topology& topology, const TrafficMatrix& traffic);

/// Components of G minus components of the requirement graph over them.
int missing_connections(const Topology& topology, const TrafficMatrix& traffic);

DegreeTuple degree_of(const Configuration& config, const GameSetting& setting,
                      double payment_tolerance = 0.0);

/// Every node's selected action would be DoNothing.
bool is_sink(const Configuration& config, const GameSetting& setting);

}  // namespace netform
