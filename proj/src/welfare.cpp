#include "netform/welfare.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "netform/routing.hpp"
#include "netform/stability.hpp"

namespace netform {

namespace {

constexpr int kMaskNodes = 16;

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15; }

bool integral_setting(const GameSetting& s) {
  if (!s.traffic().is_integral() || !is_integer(s.pi()) || !is_integer(s.beta())) return false;
  return std::all_of(s.routing_costs().begin(), s.routing_costs().end(), is_integer);
}

void check_size(const GameSetting& setting, const EnumerationLimits& limits) {
  if (setting.size() > limits.max_nodes)
    throw BoundExceeded(fmt::format("exhaustive enumeration capped at {} nodes, instance has {}",
                                    limits.max_nodes, setting.size()));
  if (setting.size() > 11) throw BoundExceeded("exhaustive enumeration supports at most 11 nodes");
}

// SC(topology) <= threshold, exactly when the setting allows it.
bool within(const GameSetting& setting, const Topology& g, double sc, double threshold) {
  const double slack = 1e-6 * std::max(1.0, std::abs(threshold));
  if (sc < threshold - slack) return true;
  if (sc > threshold + slack) return false;
  if (integral_setting(setting) && is_integer(threshold))
    return social_cost_exact(setting, g) <= Rational(static_cast<std::int64_t>(threshold));
  return sc <= threshold + kTolerance;
}

bool edges_less(const Topology& a, const Topology& b) { return a.edges() < b.edges(); }

struct Best {
  double sc = std::numeric_limits<double>::infinity();
  std::uint64_t mask = 0;
  bool found = false;
};

// Lower SC wins; ties (within tolerance) go to the lexicographically smaller edge list.
bool better(const MaskEvaluator& eval, double sc, std::uint64_t mask, const Best& best) {
  if (!best.found || sc < best.sc - kTolerance) return true;
  if (sc > best.sc + kTolerance) return false;
  return edges_less(eval.topology(mask), eval.topology(best.mask));
}

template <typename Fn>
void parallel_chunks(std::uint64_t total, int threads, Fn&& fn) {
  threads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), total));
  if (threads <= 1) {
    fn(0, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t step = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::uint64_t lo = step * static_cast<std::uint64_t>(t);
    std::uint64_t hi = std::min(total, lo + step);
    pool.emplace_back([&fn, t, lo, hi] { fn(t, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

void collect_forests(int n, const std::vector<Edge>& pairs, std::size_t index,
                     std::vector<int>& label, std::uint64_t mask, std::vector<std::uint64_t>& out) {
  if (index == pairs.size()) {
    out.push_back(mask);
    return;
  }
  collect_forests(n, pairs, index + 1, label, mask, out);
  const Edge e = pairs[index];
  const int a = label[e.u], b = label[e.v];
  if (a == b) return;
  std::vector<int> saved = label;
  for (int& l : label)
    if (l == b) l = a;
  collect_forests(n, pairs, index + 1, label, mask | (std::uint64_t{1} << index), out);
  label = std::move(saved);
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NETFORM_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

double social_cost(const GameSetting& setting, const Topology& topology) {
  const auto costs = node_costs(setting, topology);
  return std::accumulate(costs.begin(), costs.end(), 0.0);
}

Rational social_cost_exact(const GameSetting& setting, const Topology& topology) {
  if (!integral_setting(setting))
    throw DomainError("exact social cost needs integral traffic, pi, routing costs and beta");
  const auto load = transit_loads_exact(topology, setting.traffic());
  const auto labels = topology.component_labels();
  auto as_int = [](double x) { return Rational(static_cast<std::int64_t>(x)); };
  Rational total(0);
  for (NodeId i = 0; i < setting.size(); ++i) {
    total += as_int(setting.pi()) * Rational(topology.degree(i));
    total += as_int(setting.routing_cost(i)) * load[i];
    total += as_int(setting.beta()) * Rational(unreachable_participants(setting, labels, i));
  }
  return total;
}

MaskEvaluator::MaskEvaluator(const GameSetting& setting) : setting_(setting), n_(setting.size()) {
  if (n_ > kMaskNodes) throw BoundExceeded("mask evaluator supports at most 16 nodes");
  for (NodeId u = 0; u < n_; ++u)
    for (NodeId v = u + 1; v < n_; ++v) pairs_.emplace_back(u, v);
  const auto& t = setting.traffic();
  participants_.assign(static_cast<std::size_t>(n_), 0);
  for (NodeId i = 0; i < n_; ++i)
    for (NodeId j = 0; j < n_; ++j) {
      if (t.demands(i, j)) participants_[i] |= 1U << j;
      endpoint_routing_ += t(i, j) * (setting.routing_cost(i) + setting.routing_cost(j));
    }
}

Topology MaskEvaluator::topology(std::uint64_t mask) const {
  Topology g(n_);
  for (std::size_t b = 0; b < pairs_.size(); ++b)
    if (mask >> b & 1U) g.add_edge(pairs_[b].u, pairs_[b].v);
  return g;
}

double MaskEvaluator::lower_bound(std::uint64_t mask) const {
  return 2.0 * setting_.pi() * std::popcount(mask) + endpoint_routing_;
}

double MaskEvaluator::operator()(std::uint64_t mask) const {
  std::uint32_t adj[kMaskNodes] = {};
  for (std::uint64_t m = mask; m; m &= m - 1) {
    const Edge& e = pairs_[static_cast<std::size_t>(std::countr_zero(m))];
    adj[e.u] |= 1U << e.v;
    adj[e.v] |= 1U << e.u;
  }
  const auto& t = setting_.traffic();
  double sc = 2.0 * setting_.pi() * std::popcount(mask);

  std::uint32_t component[kMaskNodes] = {};
  std::uint32_t seen = 0;
  for (int s = 0; s < n_; ++s) {
    if (seen >> s & 1U) continue;
    std::uint32_t comp = 1U << s, frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
      frontier = next & ~comp;
      comp |= next;
    }
    for (std::uint32_t c = comp; c; c &= c - 1) component[std::countr_zero(c)] = comp;
    seen |= comp;
  }
  for (int i = 0; i < n_; ++i)
    sc += setting_.beta() * std::popcount(participants_[i] & ~component[i]);

  double load[kMaskNodes] = {};
  int dist[kMaskNodes];
  double sigma[kMaskNodes], delta[kMaskNodes];
  int order[kMaskNodes];
  for (int s = 0; s < n_; ++s) {
    bool any = false;
    for (int d = 0; d < n_ && !any; ++d) any = t(s, d) > 0.0;
    if (!any) continue;
    for (int i = 0; i < n_; ++i) dist[i] = -1;
    int len = 0;
    dist[s] = 0;
    sigma[s] = 1.0;
    delta[s] = 0.0;
    order[len++] = s;
    for (int h = 0; h < len; ++h) {
      int x = order[h];
      for (std::uint32_t m = adj[x]; m; m &= m - 1) {
        int y = std::countr_zero(m);
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          sigma[y] = 0.0;
          delta[y] = 0.0;
          order[len++] = y;
        }
        if (dist[y] == dist[x] + 1) sigma[y] += sigma[x];
      }
    }
    double sent = 0.0;
    for (int h = len - 1; h >= 1; --h) {
      int w = order[h];
      double through = t(s, w) + delta[w];
      sent += t(s, w);
      for (std::uint32_t m = adj[w]; m; m &= m - 1) {
        int v = std::countr_zero(m);
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * through;
      }
      load[w] += through;
    }
    load[s] += sent;
  }
  for (int i = 0; i < n_; ++i) sc += setting_.routing_cost(i) * load[i];
  return sc;
}

Optimum optimal_topology(const GameSetting& setting, const EnumerationLimits& limits) {
  check_size(setting, limits);
  const MaskEvaluator eval(setting);
  const std::uint64_t total = std::uint64_t{1} << eval.pair_count();
  // The pruning bound needs beta to dominate the routing cost of any pair.
  const bool prune = setting.beta() > setting.beta_floor();
  const int threads = resolve_threads(limits.threads);
  std::vector<Best> partial(static_cast<std::size_t>(threads));

  parallel_chunks(total, threads, [&](int t, std::uint64_t lo, std::uint64_t hi) {
    Best best;
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      if (prune && best.found && eval.lower_bound(mask) > best.sc + kTolerance) continue;
      double sc = eval(mask);
      if (better(eval, sc, mask, best)) best = Best{sc, mask, true};
    }
    partial[t] = best;
  });

  Best best;
  for (const Best& b : partial)
    if (b.found && better(eval, b.sc, b.mask, best)) best = b;
  return Optimum{eval.topology(best.mask), best.sc};
}

std::vector<Topology> pne_topologies(const TrafficMatrix& traffic, const EnumerationLimits& limits) {
  const int n = traffic.size();
  if (n > limits.max_nodes)
    throw BoundExceeded(fmt::format("PNE enumeration capped at {} nodes, instance has {}",
                                    limits.max_nodes, n));
  if (n > 11) throw BoundExceeded("PNE enumeration supports at most 11 nodes");
  std::vector<Edge> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<int> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 0);
  std::vector<std::uint64_t> forests;
  collect_forests(n, pairs, 0, label, 0, forests);

  std::vector<Topology> out;
  for (std::uint64_t mask : forests) {
    Topology g(n);
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1U) g.add_edge(pairs[b].u, pairs[b].v);
    if (is_pne_topology(g, traffic)) out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(), edges_less);
  return out;
}

double price(double sc, double sc_opt) {
  if (sc_opt == 0.0) return sc == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return sc / sc_opt;
}

WelfareReport pos_poa(const GameSetting& setting, const EnumerationLimits& limits,
                      const std::optional<Topology>& query) {
  check_size(setting, limits);
  WelfareReport report;
  const Optimum opt = optimal_topology(setting, limits);
  report.sc_opt = opt.social_cost;
  report.optimum = opt.topology;
  report.pne = pne_topologies(setting.traffic(), limits);
  report.pne_count = report.pne.size();
  if (report.pne.empty()) throw DomainError("no pairwise Nash equilibrium topology exists");

  double best = std::numeric_limits<double>::infinity();
  double worst = -best;
  for (const Topology& g : report.pne) {
    double p = price(social_cost(setting, g), report.sc_opt);
    if (p < best - kTolerance) {
      best = p;
      report.best_pne = g;
    }
    if (p > worst + kTolerance) {
      worst = p;
      report.worst_pne = g;
    }
  }
  report.pos = best;
  report.poa = worst;
  if (query) {
    report.sc = social_cost(setting, *query);
    report.queried_price = price(*report.sc, report.sc_opt);
  }
  return report;
}

bool decide_lower_sc(const GameSetting& setting, double threshold, const EnumerationLimits& limits) {
  check_size(setting, limits);
  const MaskEvaluator eval(setting);
  const std::uint64_t total = std::uint64_t{1} << eval.pair_count();
  const bool prune = setting.beta() > setting.beta_floor();
  std::atomic<bool> found{false};
  parallel_chunks(total, resolve_threads(limits.threads),
                  [&](int, std::uint64_t lo, std::uint64_t hi) {
                    for (std::uint64_t mask = lo; mask < hi && !found.load(); ++mask) {
                      if (prune && eval.lower_bound(mask) > threshold + 1e-6 * std::max(1.0, std::abs(threshold)))
                        continue;
                      double sc = eval(mask);
                      if (within(setting, eval.topology(mask), sc, threshold)) found = true;
                    }
                  });
  return found.load();
}

bool decide_lower_sc_equilibrium(const GameSetting& setting, double threshold,
                                 const EnumerationLimits& limits) {
  check_size(setting, limits);
  for (const Topology& g : pne_topologies(setting.traffic(), limits))
    if (within(setting, g, social_cost(setting, g), threshold)) return true;
  return false;
}

}  // namespace netform
