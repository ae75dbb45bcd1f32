#include "netform/game.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "netform/routing.hpp"

namespace netform {

double PaymentMatrix::operator()(NodeId i, NodeId j) const {
  auto it = entries_.find(Arc{i, j});
  return it == entries_.end() ? 0.0 : it->second;
}

std::optional<Arc> Configuration::arc_between(NodeId u, NodeId v) const {
  if (contracts_.contains(Arc{u, v})) return Arc{u, v};
  if (contracts_.contains(Arc{v, u})) return Arc{v, u};
  return std::nullopt;
}

std::vector<Arc> Configuration::incident_arcs(NodeId u) const {
  std::vector<Arc> out;
  for (NodeId v : topology_.neighbors(u))
    if (auto a = arc_between(u, v)) out.push_back(*a);
  std::sort(out.begin(), out.end());
  return out;
}

void Configuration::add_contract(Arc a, double payment) {
  if (!std::isfinite(payment)) throw DomainError("payment must be finite");
  topology_.add_edge(a.from, a.to);
  contracts_.insert(a);
  payments_.set(a, payment);
}

void Configuration::remove_contract(Arc a) {
  if (!contracts_.contains(a))
    throw DomainError(fmt::format("no contract ({},{}) to break", a.from, a.to));
  topology_.remove_edge(a.from, a.to);
  contracts_.erase(a);
  payments_.erase(a);
}

void Configuration::set_payment(Arc a, double payment) {
  if (!contracts_.contains(a))
    throw DomainError(fmt::format("no contract ({},{}) to update", a.from, a.to));
  if (!std::isfinite(payment)) throw DomainError("payment must be finite");
  payments_.set(a, payment);
}

void Configuration::validate() const {
  for (const Arc& a : contracts_.arcs()) {
    if (a.from == a.to) throw DomainError("contract with itself");
    if (contracts_.contains(Arc{a.to, a.from}))
      throw DomainError(fmt::format("contracts ({0},{1}) and ({1},{0}) both present", a.from, a.to));
    if (!topology_.has_edge(a.from, a.to))
      throw DomainError(fmt::format("contract ({},{}) without a link", a.from, a.to));
  }
  if (contracts_.size() != topology_.edge_count())
    throw DomainError("some link has no contract");
  for (const auto& [arc, p] : payments_.entries())
    if (p != 0.0 && !contracts_.contains(arc))
      throw DomainError(fmt::format("payment on absent contract ({},{})", arc.from, arc.to));
}

GameSetting::GameSetting(TrafficMatrix traffic, double pi, std::vector<double> routing_costs,
                         RulePtr rule, std::optional<double> beta, SettingOptions options)
    : traffic_(std::move(traffic)),
      pi_(pi),
      routing_costs_(std::move(routing_costs)),
      rule_(std::move(rule)),
      options_(options) {
  const int n = traffic_.size();
  if (!rule_) throw DomainError("game setting needs a contracting rule");
  if (!std::isfinite(pi_)) throw DomainError("pi must be finite");
  if (pi_ <= 0.0 && !options_.allow_nonpositive_pi)
    throw DomainError("pi must be positive (pass allow_nonpositive_pi to override)");
  if (routing_costs_.empty()) routing_costs_.assign(static_cast<std::size_t>(n), 1.0);
  if (static_cast<int>(routing_costs_.size()) != n)
    throw DomainError("routing cost vector length differs from node count");
  for (double c : routing_costs_)
    if (!std::isfinite(c) || c < 0.0) throw DomainError("routing costs must be nonnegative");

  if (beta) {
    if (!std::isfinite(*beta) || *beta < 0.0) throw DomainError("beta must be nonnegative");
    beta_ = *beta;
    beta_auto_ = false;
    if (!options_.allow_weak_beta && traffic_.total() > 0.0 && !(beta_ > beta_floor()))
      throw DomainError(fmt::format(
          "beta = {} does not dominate connection incentives (needs > {})", beta_, beta_floor()));
  } else {
    beta_ = default_beta();
  }
}

double GameSetting::contract_value(NodeId i, NodeId j, const Topology& g) const {
  return evaluate(*rule_, i, j, g, traffic_);
}

double GameSetting::beta_floor() const {
  const double n = size();
  const double c_max =
      routing_costs_.empty() ? 0.0 : *std::max_element(routing_costs_.begin(), routing_costs_.end());
  const double span = std::max(n - 1.0, 0.0);
  return std::abs(pi_) * span + c_max * traffic_.total() + 2.0 * rule_->magnitude_bound() * span;
}

double GameSetting::default_beta() const {
  const double n = size();
  const double c_max =
      routing_costs_.empty() ? 0.0 : *std::max_element(routing_costs_.begin(), routing_costs_.end());
  return std::abs(pi_) * n + c_max * traffic_.total() * n + 2.0 * rule_->magnitude_bound() * n + 1.0;
}

int unreachable_participants(const GameSetting& setting, const std::vector<int>& labels, NodeId i) {
  int count = 0;
  const auto& t = setting.traffic();
  for (NodeId j = 0; j < setting.size(); ++j)
    if (t.demands(i, j) && labels[j] != labels[i]) ++count;
  return count;
}

std::vector<double> node_costs(const GameSetting& setting, const Topology& topology) {
  if (topology.size() != setting.size())
    throw DomainError("topology and setting disagree on node count");
  const auto load = transit_loads(topology, setting.traffic());
  const auto labels = topology.component_labels();
  std::vector<double> cost(static_cast<std::size_t>(setting.size()));
  for (NodeId i = 0; i < setting.size(); ++i)
    cost[i] = setting.pi() * topology.degree(i) + setting.routing_cost(i) * load[i] +
              setting.beta() * unreachable_participants(setting, labels, i);
  return cost;
}

double node_cost(const GameSetting& setting, const Topology& topology, NodeId i) {
  if (i < 0 || i >= setting.size()) throw DomainError("node out of range");
  return node_costs(setting, topology)[i];
}

std::vector<double> utilities(const GameSetting& setting, const Configuration& config) {
  auto u = node_costs(setting, config.topology());
  for (double& x : u) x = -x;
  for (const auto& [arc, p] : config.payments().entries()) {
    u[arc.from] -= p;
    u[arc.to] += p;
  }
  return u;
}

double utility(const GameSetting& setting, const Configuration& config, NodeId i) {
  if (i < 0 || i >= setting.size()) throw DomainError("node out of range");
  return utilities(setting, config)[i];
}

Configuration updated_configuration(const GameSetting& setting, const Topology& topology) {
  Configuration config(topology.size());
  for (const Edge& e : topology.edges())
    config.add_contract(Arc{e.u, e.v}, setting.contract_value(e.u, e.v, topology));
  return config;
}

Configuration apply_deviation(const Configuration& config, const GameSetting& setting,
                              const Change& change) {
  Configuration next = config;
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, BreakContract>) {
          next.remove_contract(c.arc);
        } else if constexpr (std::is_same_v<T, ProposeContract>) {
          if (config.topology().has_edge(c.arc.from, c.arc.to))
            throw DomainError(fmt::format("link {}-{} already exists", c.arc.from, c.arc.to));
          Topology grown = config.topology().with_edge(c.arc.from, c.arc.to);
          next.add_contract(c.arc, setting.contract_value(c.arc.from, c.arc.to, grown));
        } else {
          next.set_payment(c.arc, setting.contract_value(c.arc.from, c.arc.to, config.topology()));
        }
      },
      change);
  return next;
}

Configuration break_contracts(const Configuration& config, std::span<const Arc> arcs) {
  Configuration next = config;
  for (const Arc& a : arcs) next.remove_contract(a);
  return next;
}

}  // namespace netform
