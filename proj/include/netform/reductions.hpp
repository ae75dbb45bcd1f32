#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netform/best_response.hpp"
#include "netform/game.hpp"

namespace netform {

inline constexpr int kIndependentSetBound = 20;
inline constexpr int kExactCoverBound = 20;

/// Size of a maximum independent set, by subset enumeration.
int brute_independent_set(const Topology& graph);

/// Star over V + {u} with u = |V| the hub, contracts (v,u), constant rule 2,
/// pi = 1, unit routing costs and t_vw = t_wv = |V|+1 on the graph's edges.
/// The hub keeps U = |I| when it keeps an independent set I of leaves.
BRInstance reduce_is_to_br(const Topology& graph, int threshold);

/// Terminals are named; triples index into `terminals`.
struct X3CInstance {
  std::vector<std::string> terminals;
  std::vector<std::array<int, 3>> triples;

  int t() const { return static_cast<int>(terminals.size()) / 3; }
  int s() const { return static_cast<int>(triples.size()); }

  /// Throws DomainError unless |terminals| = 3t with unique names and every
  /// triple holds three distinct valid indices.
  void validate() const;
};

/// X3C whose distinct triples share at most one terminal.
struct RX3CInstance : X3CInstance {
  RX3CInstance() = default;
  /// Validates, including the intersection bound.
  explicit RX3CInstance(X3CInstance base);

  void validate() const;
};

/// Indices of triples forming an exact cover, if any (s <= kExactCoverBound).
std::optional<std::vector<int>> find_exact_cover(const X3CInstance& instance);
bool brute_exact_cover(const X3CInstance& instance);

/// Pads every triple with six fresh terminals so that the output has 5s
/// triples meeting pairwise in at most one terminal.
RX3CInstance reduce_x3c_to_rx3c(const X3CInstance& instance);

/// Generated welfare instance: integral traffic, pi and routing costs, and an
/// integral threshold on the social cost.
struct WelfareInstance {
  GameSetting setting;
  std::int64_t threshold = 0;
  std::map<std::string, std::int64_t> constants;
};

/// Node layout: root 0, triples 1..s, terminals s+1..s+3t.
WelfareInstance reduce_rx3c_to_lsce(const RX3CInstance& instance);
/// Node layout: triples 0..s-1, terminals s..s+3t-1.
WelfareInstance reduce_rx3c_to_lsc(const RX3CInstance& instance);

/// The tree G(S') built from a cover: root to every triple, cover triples to
/// their terminals.
Topology cover_topology_lsce(const RX3CInstance& instance, const std::vector<int>& cover);
/// Complete graph on the triples plus cover triples to their terminals.
Topology cover_topology_lsc(const RX3CInstance& instance, const std::vector<int>& cover);

}  // namespace netform
