#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "netform/common.hpp"
#include "netform/topology.hpp"
#include "netform/traffic.hpp"

namespace netform {

/// Contracting function Q(i,j;G): transfer from seeker i to acceptor j when the
/// topology is G. Negative values flow from j to i. Implementations are pure.
class ContractingRule {
 public:
  virtual ~ContractingRule() = default;

  virtual double evaluate(NodeId i, NodeId j, const Topology& topology,
                          const TrafficMatrix& traffic) const = 0;

  virtual std::string name() const = 0;

  /// Instance-file form, e.g. "default q_p=2 q_n=1".
  virtual std::string describe() const = 0;

  /// Upper bound on |Q| over all inputs.
  virtual double magnitude_bound() const = 0;
};

using RulePtr = std::shared_ptr<const ContractingRule>;

/// sgn(i,j) * (q_p if j is a participant of i, q_n otherwise), sgn = +1 iff i < j.
class DefaultRule final : public ContractingRule {
 public:
  explicit DefaultRule(double q_participant = 2.0, double q_other = 1.0);

  double evaluate(NodeId i, NodeId j, const Topology&, const TrafficMatrix& traffic) const override;
  std::string name() const override { return "default"; }
  std::string describe() const override;
  double magnitude_bound() const override { return q_participant_; }

  double q_participant() const { return q_participant_; }
  double q_other() const { return q_other_; }

 private:
  double q_participant_;
  double q_other_;
};

/// sgn(i,j) * value regardless of topology and traffic. With the hub given the
/// largest id, every spoke pays the hub `value`.
class ConstantRule final : public ContractingRule {
 public:
  explicit ConstantRule(double value = 2.0);

  double evaluate(NodeId i, NodeId j, const Topology&, const TrafficMatrix&) const override;
  std::string name() const override { return "constant"; }
  std::string describe() const override;
  double magnitude_bound() const override { return value_ < 0 ? -value_ : value_; }

 private:
  double value_;
};

/// Wraps an arbitrary callable; for experiments and for exercising the validators.
class FunctionRule final : public ContractingRule {
 public:
  using Fn = std::function<double(NodeId, NodeId, const Topology&, const TrafficMatrix&)>;

  FunctionRule(std::string name, Fn fn, double magnitude_bound);

  double evaluate(NodeId i, NodeId j, const Topology& topology,
                  const TrafficMatrix& traffic) const override {
    return fn_(i, j, topology, traffic);
  }
  std::string name() const override { return name_; }
  std::string describe() const override { return name_; }
  double magnitude_bound() const override { return bound_; }

 private:
  std::string name_;
  Fn fn_;
  double bound_;
};

/// Checked evaluation; throws DomainError when i == j or a node is out of range.
double evaluate(const ContractingRule& rule, NodeId i, NodeId j, const Topology& topology,
                const TrafficMatrix& traffic);

/// Builds a rule from its instance-file name and key=value parameters.
RulePtr make_rule(const std::string& name, const std::map<std::string, double>& params);

struct RuleViolation {
  NodeId i = 0;
  NodeId j = 0;
  NodeId k = -1;  // affinity only: the non-participant
  Topology topology;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string message;
};

struct RuleCheck {
  bool ok = true;
  std::optional<RuleViolation> violation;
  long cases = 0;
  bool exhaustive = false;

  explicit operator bool() const { return ok; }
};

/// Q(i,j;G) == -Q(j,i;G). Exhaustive over pairs and topologies when n <= 4,
/// otherwise `sample_budget` random (pair, topology) draws.
RuleCheck check_antisymmetry(const ContractingRule& rule, const TrafficMatrix& traffic,
                             long sample_budget, std::uint64_t seed = 1);

/// |Q(i,j;G+ij)| > |Q(i,k;G+ik)| for j a participant of i and k not. Vacuous
/// when no node has both kinds of partner.
RuleCheck check_affinity(const ContractingRule& rule, const TrafficMatrix& traffic,
                         long sample_budget, std::uint64_t seed = 1);

}  // namespace netform
