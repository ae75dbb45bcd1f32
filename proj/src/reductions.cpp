#include "netform/reductions.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include <fmt/format.h>

namespace netform {

namespace {

std::int64_t at_least_one(std::int64_t v) { return std::max<std::int64_t>(v, 1); }

bool exact_cover_search(const X3CInstance& inst, std::vector<char>& covered,
                        const std::vector<std::vector<int>>& containing, std::vector<int>& chosen) {
  auto first = std::find(covered.begin(), covered.end(), 0);
  if (first == covered.end()) return true;
  const int x = static_cast<int>(first - covered.begin());
  for (int tri : containing[static_cast<std::size_t>(x)]) {
    const auto& t = inst.triples[static_cast<std::size_t>(tri)];
    if (covered[t[0]] || covered[t[1]] || covered[t[2]]) continue;
    for (int e : t) covered[e] = 1;
    chosen.push_back(tri);
    if (exact_cover_search(inst, covered, containing, chosen)) return true;
    chosen.pop_back();
    for (int e : t) covered[e] = 0;
  }
  return false;
}

// No exact cover can exist: too few triples, or a terminal in no triple.
bool trivially_uncoverable(const X3CInstance& inst) {
  if (inst.s() < inst.t()) return true;
  std::vector<char> hit(inst.terminals.size(), 0);
  for (const auto& t : inst.triples)
    for (int e : t) hit[e] = 1;
  return std::find(hit.begin(), hit.end(), 0) != hit.end();
}

void check_cover(const RX3CInstance& instance, const std::vector<int>& cover) {
  for (int c : cover)
    if (c < 0 || c >= instance.s()) throw DomainError(fmt::format("cover index {} out of range", c));
}

}  // namespace

int brute_independent_set(const Topology& graph) {
  const int n = graph.size();
  if (n > kIndependentSetBound)
    throw BoundExceeded(fmt::format("independent set oracle capped at {} nodes", kIndependentSetBound));
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (const Edge& e : graph.edges()) {
    adj[e.u] |= 1U << e.v;
    adj[e.v] |= 1U << e.u;
  }
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (std::uint32_t m = mask; m && independent; m &= m - 1)
      independent = (adj[std::countr_zero(m)] & mask) == 0;
    if (independent) best = size;
  }
  return best;
}

BRInstance reduce_is_to_br(const Topology& graph, int threshold) {
  const int n = graph.size();
  if (threshold > n) throw DomainError("threshold exceeds the number of vertices");
  const NodeId hub = n;
  TrafficMatrix traffic(n + 1);
  for (const Edge& e : graph.edges()) {
    traffic.set(e.u, e.v, n + 1);
    traffic.set(e.v, e.u, n + 1);
  }
  GameSetting setting(traffic, 1.0, std::vector<double>(static_cast<std::size_t>(n + 1), 1.0),
                      std::make_shared<ConstantRule>(2.0));
  Configuration config(n + 1);
  for (NodeId v = 0; v < n; ++v)
    config.add_contract(Arc{v, hub}, setting.contract_value(v, hub, config.topology().with_edge(v, hub)));
  return BRInstance{std::move(setting), std::move(config), hub, static_cast<double>(threshold)};
}

void X3CInstance::validate() const {
  if (terminals.size() % 3 != 0) throw DomainError("terminal count is not a multiple of 3");
  std::set<std::string> names(terminals.begin(), terminals.end());
  if (names.size() != terminals.size()) throw DomainError("duplicate terminal name");
  const int m = static_cast<int>(terminals.size());
  for (const auto& t : triples) {
    for (int e : t)
      if (e < 0 || e >= m) throw DomainError("triple refers to an unknown terminal");
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
      throw DomainError("triple repeats a terminal");
  }
}

RX3CInstance::RX3CInstance(X3CInstance base) : X3CInstance(std::move(base)) { validate(); }

void RX3CInstance::validate() const {
  X3CInstance::validate();
  for (std::size_t a = 0; a < triples.size(); ++a)
    for (std::size_t b = a + 1; b < triples.size(); ++b) {
      int shared = 0;
      for (int x : triples[a])
        shared += static_cast<int>(std::count(triples[b].begin(), triples[b].end(), x));
      if (shared > 1)
        throw DomainError(fmt::format("triples {} and {} share {} terminals", a, b, shared));
    }
}

std::optional<std::vector<int>> find_exact_cover(const X3CInstance& instance) {
  instance.validate();
  if (instance.s() > kExactCoverBound)
    throw BoundExceeded(fmt::format("exact cover oracle capped at {} triples", kExactCoverBound));
  std::vector<std::vector<int>> containing(instance.terminals.size());
  for (int i = 0; i < instance.s(); ++i)
    for (int e : instance.triples[static_cast<std::size_t>(i)]) containing[e].push_back(i);
  std::vector<char> covered(instance.terminals.size(), 0);
  std::vector<int> chosen;
  if (!exact_cover_search(instance, covered, containing, chosen)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

bool brute_exact_cover(const X3CInstance& instance) { return find_exact_cover(instance).has_value(); }

RX3CInstance reduce_x3c_to_rx3c(const X3CInstance& instance) {
  instance.validate();
  X3CInstance out;
  out.terminals = instance.terminals;
  for (int i = 0; i < instance.s(); ++i) {
    const int base = static_cast<int>(out.terminals.size());
    for (int j = 0; j < 3; ++j) out.terminals.push_back(fmt::format("h{}_{}", i, j));
    for (int j = 0; j < 3; ++j) out.terminals.push_back(fmt::format("h'{}_{}", i, j));
    const auto& t = instance.triples[static_cast<std::size_t>(i)];
    for (int j = 0; j < 3; ++j) out.triples.push_back({base + j, base + 3 + j, t[j]});
    out.triples.push_back({base, base + 1, base + 2});
    out.triples.push_back({base + 3, base + 4, base + 5});
  }
  return RX3CInstance(std::move(out));
}

WelfareInstance reduce_rx3c_to_lsce(const RX3CInstance& instance) {
  instance.validate();
  const std::int64_t s = instance.s(), t = instance.t();
  const std::int64_t pi = 1;
  const std::int64_t c_tt = 4 * (6 * s - 3 * t);
  const std::int64_t k1 = at_least_one(c_tt);
  const std::int64_t c_st = 6 * k1 * (3 * s - 2 * t);
  const std::int64_t k = at_least_one(c_st + k1);
  const std::int64_t c_rs = 2 * s * k;
  // Exact social cost of the tree built from any cover.
  std::int64_t threshold = 2 * s * k + 6 * k1 * (2 * s - t) + 3 * (5 * s - 2 * t) + 2 * pi * (s + 3 * t);

  // Social cost is never negative, so -1 makes a fixed no-instance.
  if (trivially_uncoverable(instance)) threshold = -1;

  const int n = static_cast<int>(1 + s + 3 * t);
  TrafficMatrix traffic(n);
  for (int i = 0; i < s; ++i) {
    const NodeId sigma = 1 + i;
    traffic.set(0, sigma, static_cast<double>(k));
    const auto& tri = instance.triples[static_cast<std::size_t>(i)];
    for (int e : tri) traffic.set(sigma, static_cast<NodeId>(1 + s + e), static_cast<double>(k1));
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        NodeId x = static_cast<NodeId>(1 + s + std::min(tri[a], tri[b]));
        NodeId y = static_cast<NodeId>(1 + s + std::max(tri[a], tri[b]));
        traffic.set(x, y, 1.0);
      }
  }
  GameSetting setting(std::move(traffic), static_cast<double>(pi),
                      std::vector<double>(static_cast<std::size_t>(n), 1.0), std::make_shared<DefaultRule>());
  return WelfareInstance{std::move(setting), threshold,
                         {{"s", s}, {"t", t}, {"pi", pi}, {"C_TT", c_tt}, {"k'", k1},
                          {"C_ST", c_st}, {"k", k}, {"C_RS", c_rs}, {"C_sum", c_rs + c_st + c_tt + 2 * pi * (s + t)},
                          {"C", threshold}}};
}

WelfareInstance reduce_rx3c_to_lsc(const RX3CInstance& instance) {
  instance.validate();
  const std::int64_t s = instance.s(), t = instance.t();
  const std::int64_t k2 = 1;
  const std::int64_t c_tt = 6 * k2 * (3 * s - t);
  const std::int64_t k1 = at_least_one(c_tt);
  const std::int64_t c_st = 6 * k1 * (2 * s - t);
  const std::int64_t pi = at_least_one(c_st + c_tt);
  const std::int64_t k = at_least_one(c_st + c_tt + pi * (6 * t + s * s));
  const std::int64_t c_ss = k * (s * s - s);
  std::int64_t threshold = k * (s * s - s) + 3 * k1 * (3 * s - t) + 3 * k2 * (4 * s - t) + pi * (s * s - s + 6 * t);

  if (trivially_uncoverable(instance)) threshold = -1;

  const int n = static_cast<int>(s + 3 * t);
  TrafficMatrix traffic(n);
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) traffic.set(i, j, static_cast<double>(k));
  for (int i = 0; i < s; ++i) {
    const auto& tri = instance.triples[static_cast<std::size_t>(i)];
    for (int e : tri) traffic.set(i, static_cast<NodeId>(s + e), static_cast<double>(k1));
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        traffic.set(static_cast<NodeId>(s + std::min(tri[a], tri[b])),
                    static_cast<NodeId>(s + std::max(tri[a], tri[b])), static_cast<double>(k2));
  }
  GameSetting setting(std::move(traffic), static_cast<double>(pi),
                      std::vector<double>(static_cast<std::size_t>(n), 1.0), std::make_shared<DefaultRule>());
  return WelfareInstance{std::move(setting), threshold,
                         {{"s", s}, {"t", t}, {"pi", pi}, {"k''", k2}, {"C_TT", c_tt}, {"k'", k1},
                          {"C_ST", c_st}, {"k", k}, {"C_SS", c_ss}, {"C_sum", c_ss + c_st + c_tt + pi * (6 * t + s * s - s)},
                          {"C", threshold}}};
}

Topology cover_topology_lsce(const RX3CInstance& instance, const std::vector<int>& cover) {
  check_cover(instance, cover);
  const int s = instance.s();
  Topology g(1 + s + 3 * instance.t());
  for (int i = 0; i < s; ++i) g.add_edge(0, 1 + i);
  for (int i : cover)
    for (int e : instance.triples[static_cast<std::size_t>(i)])
      if (!g.has_edge(1 + i, 1 + s + e)) g.add_edge(1 + i, 1 + s + e);
  return g;
}

Topology cover_topology_lsc(const RX3CInstance& instance, const std::vector<int>& cover) {
  check_cover(instance, cover);
  const int s = instance.s();
  Topology g(s + 3 * instance.t());
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) g.add_edge(i, j);
  for (int i : cover)
    for (int e : instance.triples[static_cast<std::size_t>(i)])
      if (!g.has_edge(i, s + e)) g.add_edge(i, s + e);
  return g;
}

}  // namespace netform
