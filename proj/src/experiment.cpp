#include "netform/experiment.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "netform/welfare.hpp"

namespace netform {

namespace {

// Runs fn(0..count-1) on `threads` workers pulling indices from a shared counter.
void for_each_index(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i; !failed && (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

int small_demand(Rng& rng) { return std::uniform_int_distribution<int>(1, 3)(rng); }

void set_random_direction(TrafficMatrix& t, NodeId u, NodeId v, Rng& rng) {
  const int d = small_demand(rng);
  if (std::bernoulli_distribution(0.5)(rng)) t.set(u, v, d);
  else t.set(v, u, d);
}

}  // namespace

TrafficPattern parse_pattern(const std::string& name) {
  if (name == "all-to-all") return TrafficPattern::AllToAll;
  if (name == "random-tree" || name == "tree") return TrafficPattern::RandomTree;
  if (name == "random") return TrafficPattern::Random;
  throw DomainError("unknown traffic pattern '" + name + "'");
}

std::string to_string(TrafficPattern pattern) {
  switch (pattern) {
    case TrafficPattern::AllToAll: return "all-to-all";
    case TrafficPattern::RandomTree: return "random-tree";
    case TrafficPattern::Random: return "random";
  }
  return "?";
}

Topology random_tree(int n, Rng& rng) {
  if (n <= 0) throw DomainError("tree needs at least one node");
  Topology g(n);
  if (n == 1) return g;
  if (n == 2) {
    g.add_edge(0, 1);
    return g;
  }
  std::vector<int> code(static_cast<std::size_t>(n - 2));
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int& c : code) c = pick(rng);
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int c : code) ++degree[c];
  for (int c : code) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    g.add_edge(leaf, c);
    --degree[leaf];
    --degree[c];
  }
  int a = -1;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) {
      if (a < 0) a = v;
      else g.add_edge(a, v);
    }
  return g;
}

TrafficMatrix make_traffic(TrafficPattern pattern, int n, Rng& rng, double density) {
  TrafficMatrix t(n);
  switch (pattern) {
    case TrafficPattern::AllToAll:
      for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
          if (i != j) t.set(i, j, 1.0);
      break;
    case TrafficPattern::RandomTree:
      for (const Edge& e : random_tree(n, rng).edges()) set_random_direction(t, e.u, e.v, rng);
      break;
    case TrafficPattern::Random: {
      std::bernoulli_distribution coin(density);
      for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
          if (coin(rng)) set_random_direction(t, i, j, rng);
      break;
    }
  }
  return t;
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

std::vector<RunResult> run_trials(const GameSetting& setting, const Configuration& start, int trials,
                                  std::uint64_t seed, const RunOptions& options, int threads) {
  if (trials < 0) throw DomainError("trial count must be nonnegative");
  std::vector<RunResult> results(static_cast<std::size_t>(trials));
  for_each_index(trials, resolve_threads(threads), [&](int trial) {
    Rng rng = trial_rng(seed, static_cast<std::uint64_t>(trial));
    results[static_cast<std::size_t>(trial)] = run(start, setting, ActivationProcess(setting.size()), rng, options);
  });
  return results;
}

std::vector<StudyRow> convergence_study(const std::vector<int>& sizes,
                                        const std::vector<TrafficPattern>& patterns, int trials,
                                        std::uint64_t seed, long max_rounds, int threads) {
  std::vector<StudyRow> rows;
  for (int n : sizes) {
    if (n < 2) throw DomainError("study sizes must be at least 2");
    for (TrafficPattern p : patterns)
      for (int trial = 0; trial < trials; ++trial) rows.push_back(StudyRow{n, p, trial});
  }
  for_each_index(static_cast<int>(rows.size()), resolve_threads(threads), [&](int index) {
    StudyRow& row = rows[static_cast<std::size_t>(index)];
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(row.n), static_cast<std::uint32_t>(row.pattern),
                      static_cast<std::uint32_t>(row.trial)};
    Rng rng(seq);
    GameSetting setting(make_traffic(row.pattern, row.n, rng), 1.0, {}, std::make_shared<DefaultRule>());
    RunOptions options;
    options.record_trace = false;
    const double scale = std::pow(row.n, 4) * std::log(static_cast<double>(row.n));
    options.max_rounds = max_rounds > 0 ? max_rounds : static_cast<long>(std::ceil(10.0 * scale));
    RunResult r = run(Configuration(row.n), setting, ActivationProcess(row.n), rng, options);
    row.rounds = r.settle_round;
    row.total_rounds = r.rounds;
    row.converged = r.converged;
    row.ratio = static_cast<double>(row.rounds) / scale;
  });
  return rows;
}

}  // namespace netform
