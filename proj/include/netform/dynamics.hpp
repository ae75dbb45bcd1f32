#pragma once

#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "netform/game.hpp"
#include "netform/stability.hpp"

namespace netform {

using Rng = std::mt19937_64;

struct DoNothing {
  bool operator==(const DoNothing&) const = default;
};

/// One move of the restricted myopic dynamics.
using Action = std::variant<DoNothing, BreakContract, UpdatePayment, ProposeContract>;

std::string to_string(const Action& action);

/// Whether the counterparty of a proposal needs a strictly positive gain.
enum class Acceptance { Strict, Weak };

struct DynamicsOptions {
  Acceptance acceptance = Acceptance::Strict;
};

struct Candidate {
  Action action;
  double gain = 0.0;           // change in the active node's utility
  double partner_gain = 0.0;   // change for the counterparty (proposals)
  Configuration successor;
};

/// Every action available to u, with u's exact utility change. Proposals are
/// included only when the target would accept; DoNothing is always first.
std::vector<Candidate> enumerate_actions(const Configuration& config, const GameSetting& setting,
                                         NodeId u, const DynamicsOptions& options = {});

/// Candidates that u would pick from: the maximal-gain ones when the maximum is
/// strictly positive, otherwise just DoNothing.
std::vector<Candidate> best_actions(const Configuration& config, const GameSetting& setting,
                                    NodeId u, const DynamicsOptions& options = {});

/// Sink test under the given acceptance rule.
bool is_sink(const Configuration& config, const GameSetting& setting, const DynamicsOptions& options);

/// True when the action links u to one of its participants.
bool creates_participant_link(const Action& action, const TrafficMatrix& traffic);

/// i.i.d. draws over the nodes with full support.
class ActivationProcess {
 public:
  explicit ActivationProcess(int n);
  explicit ActivationProcess(std::vector<double> weights);

  NodeId draw(Rng& rng);
  int size() const { return n_; }

 private:
  int n_;
  std::discrete_distribution<NodeId> dist_;
};

struct TraceRecord {
  long round = 0;
  NodeId actor = 0;
  Action action;
  DegreeTuple degree;
  double social_cost = 0.0;
  std::vector<double> utilities;  // empty unless requested
};

struct StepResult {
  Configuration config;
  Action action;
  double gain = 0.0;
  bool changed = false;
};

/// Executes one round for the activated node u; ties are broken uniformly.
StepResult step(const Configuration& config, const GameSetting& setting, NodeId u, Rng& rng,
                const DynamicsOptions& options = {});

struct StepEvent {
  const Configuration& before;
  const Configuration& after;
  const TraceRecord& record;
};

struct RunOptions {
  long max_rounds = 1'000'000;
  bool record_trace = true;
  bool record_utilities = false;
  DynamicsOptions dynamics;
  /// Called after every round, with degree and social cost filled in.
  std::function<void(const StepEvent&)> observer;
};

struct RunResult {
  Configuration final_config;
  std::vector<TraceRecord> trace;
  bool converged = false;
  long rounds = 0;         // rounds executed, including the quiescence check
  long settle_round = 0;   // rounds until the final configuration was reached
};

/// Iterates rounds until every node has been activated at least once since the
/// last change without acting (then the state is asserted to be a sink), or
/// until max_rounds.
RunResult run(const Configuration& start, const GameSetting& setting, ActivationProcess activation,
              Rng& rng, const RunOptions& options = {});

}  // namespace netform
