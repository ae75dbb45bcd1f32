#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netform/dynamics.hpp"
#include "netform/game.hpp"

namespace netform {

enum class TrafficPattern { AllToAll, RandomTree, Random };

TrafficPattern parse_pattern(const std::string& name);
std::string to_string(TrafficPattern pattern);

/// all-to-all: unit demand between every ordered pair.
/// random-tree: a uniform labelled tree (Pruefer code) as G_T, integer demand
/// 1..3 in a random direction per edge.
/// random: each unordered pair demands with probability `density`, integer
/// demand 1..3 in a random direction.
TrafficMatrix make_traffic(TrafficPattern pattern, int n, Rng& rng, double density = 0.4);

/// Uniform labelled tree on n nodes.
Topology random_tree(int n, Rng& rng);

/// Engine for trial `trial` of a run seeded with `seed`.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Runs `trials` independent trajectories from `start` on a worker pool.
/// Results are indexed by trial, whatever the completion order.
std::vector<RunResult> run_trials(const GameSetting& setting, const Configuration& start, int trials,
                                  std::uint64_t seed, const RunOptions& options, int threads = 0);

struct StudyRow {
  int n = 0;
  TrafficPattern pattern = TrafficPattern::AllToAll;
  int trial = 0;
  long rounds = 0;        // round of the last change
  long total_rounds = 0;  // including the quiescence window
  bool converged = false;
  double ratio = 0.0;     // rounds / (n^4 ln n)
};

/// One row per (n, pattern, trial); pi = 1, unit routing costs, default rule,
/// uniform activation, empty start.
std::vector<StudyRow> convergence_study(const std::vector<int>& sizes,
                                        const std::vector<TrafficPattern>& patterns, int trials,
                                        std::uint64_t seed, long max_rounds, int threads = 0);

}  // namespace netform
