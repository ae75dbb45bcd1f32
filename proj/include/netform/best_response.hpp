#pragma once

#include <vector>

#include "netform/game.hpp"

namespace netform {

inline constexpr int kBestResponseDegreeBound = 25;

struct BestResponse {
  double value = 0.0;        // best reachable utility of the node
  double current = 0.0;      // utility before deviating
  std::vector<Arc> broken;   // witness: contracts broken simultaneously
};

/// Exact best response over every subset of the node's contracts (the whole
/// unilateral deviation space: a node cannot create links on its own).
/// Throws BoundExceeded when the degree exceeds `max_degree`.
BestResponse best_response_value(const GameSetting& setting, const Configuration& config, NodeId u,
                                 int max_degree = kBestResponseDegreeBound);

struct BRInstance {
  GameSetting setting;
  Configuration config;
  NodeId node = 0;
  double threshold = 0.0;
};

/// Is there a deviation that leaves the node with utility >= threshold?
bool decide_br(const BRInstance& instance);

}  // namespace netform
