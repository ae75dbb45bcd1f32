#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "netform/common.hpp"

namespace netform {

/// Undirected link, stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

/// Simple undirected graph on nodes [0, n): no self-loops, no parallel edges.
class Topology {
 public:
  Topology() = default;
  explicit Topology(int n);
  Topology(int n, std::span<const Edge> edges);

  int size() const { return n_; }
  std::size_t edge_count() const { return m_; }

  bool has_edge(NodeId u, NodeId v) const;
  void add_edge(NodeId u, NodeId v);
  void remove_edge(NodeId u, NodeId v);
  Topology with_edge(NodeId u, NodeId v) const;
  Topology without_edge(NodeId u, NodeId v) const;

  int degree(NodeId u) const { return static_cast<int>(adj_[u].size()); }
  const std::vector<NodeId>& neighbors(NodeId u) const { return adj_[u]; }

  /// Sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Component label per node. Labels are dense and numbered by smallest member.
  std::vector<int> component_labels() const;
  int component_count() const;
  bool is_forest() const { return static_cast<int>(m_) == n_ - component_count(); }

  bool operator==(const Topology& other) const { return n_ == other.n_ && adj_ == other.adj_; }

  std::string to_string() const;

 private:
  void check_pair(NodeId u, NodeId v) const;

  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<NodeId>> adj_;
};

/// Union-find over [0, n) with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(int n);
  int find(int x);
  bool unite(int a, int b);
  int count() const { return count_; }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  int count_;
};

}  // namespace netform
