#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "netform/game.hpp"

namespace netform {

/// Sum of node costs. Payments cancel, so this depends on the topology only.
double social_cost(const GameSetting& setting, const Topology& topology);

/// Exact social cost; pi, routing costs, beta and traffic must all be integers.
Rational social_cost_exact(const GameSetting& setting, const Topology& topology);

/// Caps for the exhaustive searches. Both are flags, not constants.
struct EnumerationLimits {
  int max_nodes = 7;
  int threads = 0;  // 0: NETFORM_THREADS or hardware concurrency
};

struct Optimum {
  Topology topology;
  double social_cost = 0.0;
};

/// Global minimizer over all 2^(n(n-1)/2) topologies; ties go to the
/// lexicographically smallest edge list.
Optimum optimal_topology(const GameSetting& setting, const EnumerationLimits& limits = {});

/// Every topology accepted by is_pne_topology (all are forests), in
/// lexicographic edge order.
std::vector<Topology> pne_topologies(const TrafficMatrix& traffic,
                                     const EnumerationLimits& limits = {});

/// SC(G)/SC(G_opt), with 0/0 read as 1.
double price(double sc, double sc_opt);

struct WelfareReport {
  double sc_opt = 0.0;
  Topology optimum;
  double pos = 0.0;
  double poa = 0.0;
  Topology best_pne;
  Topology worst_pne;
  std::size_t pne_count = 0;
  std::vector<Topology> pne;  // every PNE topology found
  // Filled when a topology is queried.
  std::optional<double> sc;
  std::optional<double> queried_price;
};

/// Extremal prices over PNE topologies. Throws DomainError if none exists.
WelfareReport pos_poa(const GameSetting& setting, const EnumerationLimits& limits = {},
                      const std::optional<Topology>& query = std::nullopt);

/// Some topology has SC <= threshold (exact near the threshold when the
/// setting is integral).
bool decide_lower_sc(const GameSetting& setting, double threshold,
                     const EnumerationLimits& limits = {});

/// Some PNE topology has SC <= threshold.
bool decide_lower_sc_equilibrium(const GameSetting& setting, double threshold,
                                 const EnumerationLimits& limits = {});

/// Social cost of the topology whose edges are the set bits of `mask` over the
/// pairs (0,1), (0,2), ..., (n-2,n-1). Fast path for n <= 16, used by the
/// enumerations; tests check it against social_cost.
class MaskEvaluator {
 public:
  explicit MaskEvaluator(const GameSetting& setting);

  double operator()(std::uint64_t mask) const;
  Topology topology(std::uint64_t mask) const;
  std::size_t pair_count() const { return pairs_.size(); }

  /// 2*pi*|E| plus the unavoidable endpoint routing cost; a lower bound on SC
  /// whenever beta dominates routing.
  double lower_bound(std::uint64_t mask) const;

 private:
  const GameSetting& setting_;
  int n_;
  std::vector<Edge> pairs_;
  std::vector<std::uint32_t> participants_;
  double endpoint_routing_ = 0.0;
};

int resolve_threads(int requested);

}  // namespace netform
