#include "netform/contracting.hpp"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <fmt/format.h>

namespace netform {

namespace {

double sign(NodeId i, NodeId j) { return i < j ? 1.0 : -1.0; }

std::vector<Edge> all_pairs(int n) {
  std::vector<Edge> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

Topology from_mask(int n, const std::vector<Edge>& pairs, std::uint64_t mask) {
  Topology g(n);
  for (std::size_t b = 0; b < pairs.size(); ++b)
    if (mask >> b & 1U) g.add_edge(pairs[b].u, pairs[b].v);
  return g;
}

Topology random_topology(int n, const std::vector<Edge>& pairs, std::mt19937_64& rng) {
  Topology g(n);
  std::bernoulli_distribution coin(0.5);
  for (const Edge& e : pairs)
    if (coin(rng)) g.add_edge(e.u, e.v);
  return g;
}

Topology plus(const Topology& g, NodeId a, NodeId b) {
  return g.has_edge(a, b) ? g : g.with_edge(a, b);
}

constexpr int kExhaustiveNodes = 4;

}  // namespace

DefaultRule::DefaultRule(double q_participant, double q_other)
    : q_participant_(q_participant), q_other_(q_other) {
  if (!(q_participant > q_other) || q_other < 0.0)
    throw DomainError("default rule requires q_p > q_n >= 0");
}

double DefaultRule::evaluate(NodeId i, NodeId j, const Topology&, const TrafficMatrix& traffic) const {
  return sign(i, j) * (traffic.demands(i, j) ? q_participant_ : q_other_);
}

std::string DefaultRule::describe() const {
  return fmt::format("default q_p={} q_n={}", q_participant_, q_other_);
}

ConstantRule::ConstantRule(double value) : value_(value) {}

double ConstantRule::evaluate(NodeId i, NodeId j, const Topology&, const TrafficMatrix&) const {
  return sign(i, j) * value_;
}

std::string ConstantRule::describe() const { return fmt::format("constant v={}", value_); }

FunctionRule::FunctionRule(std::string name, Fn fn, double magnitude_bound)
    : name_(std::move(name)), fn_(std::move(fn)), bound_(magnitude_bound) {
  if (!fn_) throw DomainError("function rule needs a callable");
}

double evaluate(const ContractingRule& rule, NodeId i, NodeId j, const Topology& topology,
                const TrafficMatrix& traffic) {
  const int n = traffic.size();
  if (i < 0 || j < 0 || i >= n || j >= n) throw DomainError("contract endpoint out of range");
  if (i == j) throw DomainError("contracting function undefined for i == j");
  return rule.evaluate(i, j, topology, traffic);
}

RulePtr make_rule(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto reject_unknown = [&](std::initializer_list<const char*> known) {
    for (const auto& [key, value] : params) {
      bool ok = false;
      for (const char* k : known) ok = ok || key == k;
      if (!ok) throw DomainError(fmt::format("unknown parameter '{}' for rule '{}'", key, name));
    }
  };
  if (name == "default") {
    reject_unknown({"q_p", "q_n"});
    return std::make_shared<DefaultRule>(get("q_p", 2.0), get("q_n", 1.0));
  }
  if (name == "constant") {
    reject_unknown({"v"});
    return std::make_shared<ConstantRule>(get("v", 2.0));
  }
  throw DomainError(fmt::format("unknown contracting rule '{}'", name));
}

RuleCheck check_antisymmetry(const ContractingRule& rule, const TrafficMatrix& traffic,
                             long sample_budget, std::uint64_t seed) {
  if (sample_budget < 1) throw DomainError("sample budget must be >= 1");
  const int n = traffic.size();
  const auto pairs = all_pairs(n);
  RuleCheck result;

  auto test = [&](NodeId i, NodeId j, const Topology& g) {
    ++result.cases;
    double forward = rule.evaluate(i, j, g, traffic);
    double backward = rule.evaluate(j, i, g, traffic);
    if (std::abs(forward + backward) > kTolerance) {
      result.ok = false;
      result.violation = RuleViolation{i, j, -1, g, forward, backward,
                                       fmt::format("Q({},{}) = {} but Q({},{}) = {}", i, j,
                                                   forward, j, i, backward)};
      return false;
    }
    return true;
  };

  if (n <= kExhaustiveNodes) {
    result.exhaustive = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      Topology g = from_mask(n, pairs, mask);
      for (const Edge& e : pairs)
        if (!test(e.u, e.v, g)) return result;
    }
    return result;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  for (long s = 0; s < sample_budget; ++s) {
    Topology g = random_topology(n, pairs, rng);
    const Edge& e = pairs[pick(rng)];
    if (!test(e.u, e.v, g)) return result;
  }
  return result;
}

RuleCheck check_affinity(const ContractingRule& rule, const TrafficMatrix& traffic,
                         long sample_budget, std::uint64_t seed) {
  if (sample_budget < 1) throw DomainError("sample budget must be >= 1");
  const int n = traffic.size();
  const auto pairs = all_pairs(n);
  RuleCheck result;

  // (i, participant j, non-participant k) triples that make the property non-vacuous.
  struct Triple { NodeId i, j, k; };
  std::vector<Triple> triples;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j)
      for (NodeId k = 0; k < n; ++k)
        if (i != j && i != k && j != k && traffic.demands(i, j) && !traffic.demands(i, k))
          triples.push_back({i, j, k});
  if (triples.empty()) {
    result.exhaustive = true;
    return result;
  }

  auto test = [&](const Triple& t, const Topology& g) {
    ++result.cases;
    double with_participant = std::abs(rule.evaluate(t.i, t.j, plus(g, t.i, t.j), traffic));
    double with_other = std::abs(rule.evaluate(t.i, t.k, plus(g, t.i, t.k), traffic));
    if (!(with_participant > with_other + kTolerance)) {
      result.ok = false;
      result.violation = RuleViolation{
          t.i, t.j, t.k, g, with_participant, with_other,
          fmt::format("|Q({},{};G+{}{})| = {} is not above |Q({},{};G+{}{})| = {}", t.i, t.j,
                      t.i, t.j, with_participant, t.i, t.k, t.i, t.k, with_other)};
      return false;
    }
    return true;
  };

  if (n <= kExhaustiveNodes) {
    result.exhaustive = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      Topology g = from_mask(n, pairs, mask);
      for (const Triple& t : triples)
        if (!test(t, g)) return result;
    }
    return result;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, triples.size() - 1);
  for (long s = 0; s < sample_budget; ++s) {
    Topology g = random_topology(n, pairs, rng);
    if (!test(triples[pick(rng)], g)) return result;
  }
  return result;
}

}  // namespace netform
