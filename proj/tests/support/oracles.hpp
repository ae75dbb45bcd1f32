// Independent brute-force oracles shared by the test binaries. Deliberately
// naive: they must not reuse the library's algorithms.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <queue>
#include <random>
#include <vector>

#include "netform/game.hpp"
#include "netform/reductions.hpp"

namespace oracle {

using netform::Edge;
using netform::NodeId;
using netform::Topology;
using netform::TrafficMatrix;

inline std::vector<std::vector<int>> adjacency(const Topology& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.size()));
  for (const Edge& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

inline std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int s) {
  std::vector<int> d(adj.size(), -1);
  std::queue<int> q;
  d[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : adj[x])
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push(y);
      }
  }
  return d;
}

/// Every shortest s-t path, as node sequences.
inline std::vector<std::vector<int>> shortest_paths(const Topology& g, int s, int t) {
  auto adj = adjacency(g);
  auto to_t = bfs(adj, t);
  std::vector<std::vector<int>> out;
  if (to_t[s] < 0) return out;
  std::vector<int> path{s};
  std::function<void(int)> walk = [&](int x) {
    if (x == t) {
      out.push_back(path);
      return;
    }
    for (int y : adj[x])
      if (to_t[y] == to_t[x] - 1) {
        path.push_back(y);
        walk(y);
        path.pop_back();
      }
  };
  walk(s);
  return out;
}

/// f(i;G) by enumerating every shortest path of every demand pair.
inline std::vector<double> transit_loads(const Topology& g, const TrafficMatrix& t) {
  std::vector<double> load(static_cast<std::size_t>(g.size()), 0.0);
  for (int s = 0; s < g.size(); ++s)
    for (int d = 0; d < g.size(); ++d) {
      if (s == d || t(s, d) == 0.0) continue;
      auto paths = shortest_paths(g, s, d);
      if (paths.empty()) continue;
      for (const auto& p : paths)
        for (int x : p) load[x] += t(s, d) / static_cast<double>(paths.size());
    }
  return load;
}

inline int components(const Topology& g) {
  auto adj = adjacency(g);
  std::vector<char> seen(adj.size(), 0);
  int c = 0;
  for (int s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    ++c;
    for (int i = 0; i < g.size(); ++i)
      if (bfs(adj, s)[i] >= 0) seen[i] = 1;
  }
  return c;
}

inline bool connected(const Topology& g, int a, int b) { return bfs(adjacency(g), a)[b] >= 0; }

inline bool is_spanning_tree(const Topology& g) {
  return static_cast<int>(g.edge_count()) == g.size() - 1 && components(g) == 1;
}

inline Topology from_mask(int n, std::uint64_t mask) {
  Topology g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1U) g.add_edge(u, v);
  return g;
}

inline void for_each_graph(int n, const std::function<void(const Topology&)>& fn) {
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs); ++m) fn(from_mask(n, m));
}

/// Maximum non-participant edge count over spanning forests of g, by trying
/// every edge subset of the right size.
inline int max_nonparticipant_forest(const Topology& g, const TrafficMatrix& t) {
  const auto edges = g.edges();
  const int want = g.size() - components(g);
  int best = -1;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << edges.size()); ++m) {
    if (std::popcount(m) != want) continue;
    Topology f(g.size());
    int score = 0;
    for (std::size_t b = 0; b < edges.size(); ++b)
      if (m >> b & 1U) {
        f.add_edge(edges[b].u, edges[b].v);
        if (!t.demands(edges[b].u, edges[b].v)) ++score;
      }
    if (components(f) == components(g)) best = std::max(best, score);
  }
  return best;
}

/// Fewest extra edges after which every participant pair is connected.
inline int min_edges_to_connect(const Topology& g, const TrafficMatrix& t) {
  const int n = g.size();
  auto satisfied = [&](const Topology& h) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (t.demands(i, j) && !connected(h, i, j)) return false;
    return true;
  };
  std::vector<Edge> missing;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) missing.emplace_back(u, v);
  for (int k = 0; k <= n; ++k) {
    // every k-subset of missing edges
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::function<bool(int, int)> rec = [&](int pos, int start) {
      if (pos == k) {
        Topology h = g;
        for (int i : idx) h.add_edge(missing[i].u, missing[i].v);
        return satisfied(h);
      }
      for (int i = start; i < static_cast<int>(missing.size()); ++i) {
        idx[pos] = i;
        if (rec(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return k;
  }
  return -1;
}

/// Largest independent set by recursive branching on the first vertex.
inline int independence_number(const Topology& g) {
  std::function<int(std::vector<int>)> rec = [&](std::vector<int> vs) -> int {
    if (vs.empty()) return 0;
    int v = vs.back();
    vs.pop_back();
    int skip = rec(vs);
    std::vector<int> rest;
    for (int w : vs)
      if (!g.has_edge(v, w)) rest.push_back(w);
    return std::max(skip, 1 + rec(rest));
  };
  std::vector<int> all(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) all[i] = i;
  return rec(all);
}

/// Exact cover by trying every subset of t triples.
inline bool has_exact_cover(const netform::X3CInstance& x) {
  const int s = x.s(), t = x.t();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << s); ++m) {
    if (std::popcount(m) != t) continue;
    std::vector<int> hits(x.terminals.size(), 0);
    for (int i = 0; i < s; ++i)
      if (m >> i & 1U)
        for (int e : x.triples[i]) ++hits[e];
    if (std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) return true;
  }
  return false;
}

/// Uniform labelled tree by the Pruefer bijection, drawn independently of the library.
inline Topology random_tree(int n, std::mt19937_64& rng) {
  Topology g(n);
  if (n < 2) return g;
  std::vector<int> code(static_cast<std::size_t>(std::max(0, n - 2)));
  for (int& c : code) c = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  std::vector<int> deg(static_cast<std::size_t>(n), 1);
  for (int c : code) ++deg[c];
  for (int c : code)
    for (int leaf = 0; leaf < n; ++leaf)
      if (deg[leaf] == 1) {
        g.add_edge(leaf, c);
        --deg[leaf];
        --deg[c];
        break;
      }
  std::vector<int> last;
  for (int v = 0; v < n; ++v)
    if (deg[v] == 1) last.push_back(v);
  g.add_edge(last[0], last[1]);
  return g;
}

}  // namespace oracle
