#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include "netform/common.hpp"
#include "netform/contracting.hpp"
#include "netform/topology.hpp"
#include "netform/traffic.hpp"

namespace netform {

/// Contract (from, to): `from` sought the link, `to` accepted it.
struct Arc {
  NodeId from = 0;
  NodeId to = 0;

  auto operator<=>(const Arc&) const = default;
};

/// Directed record of who sought each link.
class ContractGraph {
 public:
  bool contains(Arc a) const { return arcs_.contains(a); }
  std::size_t size() const { return arcs_.size(); }
  const std::set<Arc>& arcs() const { return arcs_; }
  void insert(Arc a) { arcs_.insert(a); }
  void erase(Arc a) { arcs_.erase(a); }

  bool operator==(const ContractGraph&) const = default;

 private:
  std::set<Arc> arcs_;
};

/// p_ij, payment from i to j. Missing entries are zero.
class PaymentMatrix {
 public:
  double operator()(NodeId i, NodeId j) const;
  void set(Arc a, double value) { entries_[a] = value; }
  void erase(Arc a) { entries_.erase(a); }
  const std::map<Arc, double>& entries() const { return entries_; }

  bool operator==(const PaymentMatrix&) const = default;

 private:
  std::map<Arc, double> entries_;
};

/// (G, Gamma, P). Every mutator keeps the three in step: each edge carries
/// exactly one arc, and only arcs carry payments.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(int n) : topology_(n) {}

  int size() const { return topology_.size(); }
  const Topology& topology() const { return topology_; }
  const ContractGraph& contracts() const { return contracts_; }
  const PaymentMatrix& payments() const { return payments_; }

  double payment(NodeId i, NodeId j) const { return payments_(i, j); }

  /// Arc covering edge uv, whichever direction it has.
  std::optional<Arc> arc_between(NodeId u, NodeId v) const;

  /// Arcs with u at either end, sorted.
  std::vector<Arc> incident_arcs(NodeId u) const;

  /// Adds edge and arc together; throws if the edge exists.
  void add_contract(Arc a, double payment);
  void remove_contract(Arc a);
  void set_payment(Arc a, double payment);

  /// Throws DomainError when an invariant is broken.
  void validate() const;

  bool operator==(const Configuration&) const = default;

 private:
  Topology topology_;
  ContractGraph contracts_;
  PaymentMatrix payments_;
};

struct SettingOptions {
  /// Permit pi <= 0 for exploratory use.
  bool allow_nonpositive_pi = false;
  /// Permit a disconnection weight below the dominance bound.
  bool allow_weak_beta = false;
};

/// pi, per-node routing costs, traffic, contracting rule and the disconnection
/// weight beta (D(i;G) = beta * unreachable participants of i).
class GameSetting {
 public:
  GameSetting(TrafficMatrix traffic, double pi, std::vector<double> routing_costs, RulePtr rule,
              std::optional<double> beta = std::nullopt, SettingOptions options = {});

  int size() const { return traffic_.size(); }
  const TrafficMatrix& traffic() const { return traffic_; }
  double pi() const { return pi_; }
  double routing_cost(NodeId i) const { return routing_costs_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& routing_costs() const { return routing_costs_; }
  const ContractingRule& rule() const { return *rule_; }
  const RulePtr& rule_ptr() const { return rule_; }
  double beta() const { return beta_; }
  bool beta_is_auto() const { return beta_auto_; }
  const SettingOptions& options() const { return options_; }

  /// Q(i,j;G) through the checked entry point.
  double contract_value(NodeId i, NodeId j, const Topology& g) const;

  /// Smallest beta that still makes one more reachable participant worth more
  /// than any swing in maintenance, routing and payments combined (exclusive).
  double beta_floor() const;

  /// Default: pi*n + max(c)*total(T)*n + 2*max|Q|*n + 1.
  double default_beta() const;

 private:
  TrafficMatrix traffic_;
  double pi_;
  std::vector<double> routing_costs_;
  RulePtr rule_;
  double beta_ = 0.0;
  bool beta_auto_ = true;
  SettingOptions options_;
};

/// Number of participants of i outside i's component.
int unreachable_participants(const GameSetting& setting, const std::vector<int>& labels, NodeId i);

/// C(i;G) = pi*deg(i) + c_i*f(i;G) + D(i;G) for every node.
std::vector<double> node_costs(const GameSetting& setting, const Topology& topology);
double node_cost(const GameSetting& setting, const Topology& topology, NodeId i);

/// Net payments received minus node cost, for every node.
std::vector<double> utilities(const GameSetting& setting, const Configuration& config);
double utility(const GameSetting& setting, const Configuration& config, NodeId i);

/// Configuration on `topology` with arcs oriented low id -> high id and every
/// payment equal to Q on the topology.
Configuration updated_configuration(const GameSetting& setting, const Topology& topology);

struct BreakContract {
  Arc arc;
  bool operator==(const BreakContract&) const = default;
};
struct ProposeContract {
  Arc arc;
  bool operator==(const ProposeContract&) const = default;
};
struct UpdatePayment {
  Arc arc;
  bool operator==(const UpdatePayment&) const = default;
};
using Change = std::variant<BreakContract, ProposeContract, UpdatePayment>;

/// Successor configuration. Surviving contracts keep their payment, a new
/// contract gets Q on the new topology, an update resets the payment to Q on
/// the current topology, removed contracts pay nothing.
Configuration apply_deviation(const Configuration& config, const GameSetting& setting,
                              const Change& change);

/// Simultaneous removal of several contracts (a unilateral deviation).
Configuration break_contracts(const Configuration& config, std::span<const Arc> arcs);

}  // namespace netform
