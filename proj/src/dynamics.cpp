#include "netform/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace netform {

std::string to_string(const Action& action) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, DoNothing>) return "nothing";
        else if constexpr (std::is_same_v<T, BreakContract>)
          return fmt::format("break({},{})", a.arc.from, a.arc.to);
        else if constexpr (std::is_same_v<T, UpdatePayment>)
          return fmt::format("update({},{})", a.arc.from, a.arc.to);
        else return fmt::format("propose({},{})", a.arc.from, a.arc.to);
      },
      action);
}

std::vector<Candidate> enumerate_actions(const Configuration& config, const GameSetting& setting,
                                         NodeId u, const DynamicsOptions& options) {
  if (u < 0 || u >= config.size()) throw DomainError("active node out of range");
  const auto base = utilities(setting, config);
  std::vector<Candidate> out;
  out.push_back(Candidate{DoNothing{}, 0.0, 0.0, config});

  auto add = [&](Action action, const Change& change, NodeId partner) {
    Configuration next = apply_deviation(config, setting, change);
    const auto after = utilities(setting, next);
    out.push_back(Candidate{std::move(action), after[u] - base[u],
                            after[partner] - base[partner], std::move(next)});
  };

  const auto arcs = config.incident_arcs(u);
  for (const Arc& arc : arcs) {
    NodeId partner = arc.from == u ? arc.to : arc.from;
    add(BreakContract{arc}, BreakContract{arc}, partner);
  }
  for (const Arc& arc : arcs) {
    if (config.payment(arc.from, arc.to) == setting.contract_value(arc.from, arc.to, config.topology()))
      continue;
    NodeId partner = arc.from == u ? arc.to : arc.from;
    add(UpdatePayment{arc}, UpdatePayment{arc}, partner);
  }
  for (NodeId v = 0; v < config.size(); ++v) {
    if (v == u || config.topology().has_edge(u, v)) continue;
    Arc arc{u, v};
    Configuration next = apply_deviation(config, setting, ProposeContract{arc});
    const auto after = utilities(setting, next);
    double partner_gain = after[v] - base[v];
    bool accepted = options.acceptance == Acceptance::Strict ? partner_gain > kTolerance
                                                              : partner_gain >= -kTolerance;
    if (accepted)
      out.push_back(Candidate{ProposeContract{arc}, after[u] - base[u], partner_gain, std::move(next)});
  }
  return out;
}

std::vector<Candidate> best_actions(const Configuration& config, const GameSetting& setting,
                                    NodeId u, const DynamicsOptions& options) {
  auto all = enumerate_actions(config, setting, u, options);
  double best = 0.0;
  for (const auto& c : all) best = std::max(best, c.gain);
  if (best <= kTolerance) {
    all.resize(1);  // DoNothing
    return all;
  }
  std::vector<Candidate> out;
  for (auto& c : all)
    if (c.gain >= best - kTolerance) out.push_back(std::move(c));
  return out;
}

bool is_sink(const Configuration& config, const GameSetting& setting, const DynamicsOptions& options) {
  for (NodeId u = 0; u < config.size(); ++u) {
    const auto best = best_actions(config, setting, u, options);
    if (!std::holds_alternative<DoNothing>(best.front().action)) return false;
  }
  return true;
}

bool creates_participant_link(const Action& action, const TrafficMatrix& traffic) {
  const auto* p = std::get_if<ProposeContract>(&action);
  return p != nullptr && traffic.demands(p->arc.from, p->arc.to);
}

ActivationProcess::ActivationProcess(int n) : n_(n) {
  if (n <= 0) throw DomainError("activation process needs at least one node");
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  dist_ = std::discrete_distribution<NodeId>(w.begin(), w.end());
}

ActivationProcess::ActivationProcess(std::vector<double> weights)
    : n_(static_cast<int>(weights.size())) {
  if (weights.empty()) throw DomainError("activation process needs at least one node");
  for (double w : weights)
    if (!(w > 0.0)) throw DomainError("activation weights must all be positive");
  dist_ = std::discrete_distribution<NodeId>(weights.begin(), weights.end());
}

NodeId ActivationProcess::draw(Rng& rng) { return dist_(rng); }

StepResult step(const Configuration& config, const GameSetting& setting, NodeId u, Rng& rng,
                const DynamicsOptions& options) {
  auto best = best_actions(config, setting, u, options);
  std::size_t pick = 0;
  if (best.size() > 1) pick = std::uniform_int_distribution<std::size_t>(0, best.size() - 1)(rng);
  Candidate& chosen = best[pick];
  bool changed = !std::holds_alternative<DoNothing>(chosen.action);
  return StepResult{std::move(chosen.successor), chosen.action, chosen.gain, changed};
}

RunResult run(const Configuration& start, const GameSetting& setting, ActivationProcess activation,
              Rng& rng, const RunOptions& options) {
  start.validate();
  if (start.size() != setting.size() || activation.size() != setting.size())
    throw DomainError("configuration, setting and activation process disagree on node count");
  const int n = setting.size();
  RunResult result;
  Configuration current = start;
  std::vector<char> quiet(static_cast<std::size_t>(n), 0);
  int quiet_count = 0;
  const bool detailed = options.record_trace || static_cast<bool>(options.observer);

  while (result.rounds < options.max_rounds) {
    const NodeId u = activation.draw(rng);
    StepResult s = step(current, setting, u, rng, options.dynamics);
    const long round = result.rounds++;

    if (detailed) {
      TraceRecord record{round, u, s.action, degree_of(s.config, setting), 0.0, {}};
      const auto costs = node_costs(setting, s.config.topology());
      record.social_cost = std::accumulate(costs.begin(), costs.end(), 0.0);
      if (options.record_utilities) record.utilities = utilities(setting, s.config);
      if (options.observer) options.observer(StepEvent{current, s.config, record});
      if (options.record_trace) result.trace.push_back(std::move(record));
    }

    if (s.changed) {
      current = std::move(s.config);
      std::fill(quiet.begin(), quiet.end(), 0);
      quiet_count = 0;
      result.settle_round = result.rounds;
    } else if (!quiet[u]) {
      quiet[u] = 1;
      ++quiet_count;
    }
    if (quiet_count == n) {
      result.converged = true;
      break;
    }
  }

  if (result.converged && !is_sink(current, setting, options.dynamics))
    throw std::logic_error("quiescent configuration is not a sink");
  result.final_config = std::move(current);
  return result;
}

}  // namespace netform
