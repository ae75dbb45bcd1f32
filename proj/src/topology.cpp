#include "netform/topology.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

namespace netform {

Topology::Topology(int n) : n_(n) {
  if (n < 0) throw DomainError("topology: negative node count");
  adj_.resize(static_cast<std::size_t>(n));
}

Topology::Topology(int n, std::span<const Edge> edges) : Topology(n) {
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

void Topology::check_pair(NodeId u, NodeId v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw DomainError(fmt::format("edge {}-{} out of range [0, {})", u, v, n_));
  if (u == v) throw DomainError(fmt::format("self-loop at node {}", u));
}

bool Topology::has_edge(NodeId u, NodeId v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return false;
  const auto& a = adj_[u];
  return std::binary_search(a.begin(), a.end(), v);
}

void Topology::add_edge(NodeId u, NodeId v) {
  check_pair(u, v);
  if (has_edge(u, v)) throw DomainError(fmt::format("duplicate edge {}-{}", u, v));
  adj_[u].insert(std::upper_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::upper_bound(adj_[v].begin(), adj_[v].end(), u), u);
  ++m_;
}

void Topology::remove_edge(NodeId u, NodeId v) {
  check_pair(u, v);
  if (!has_edge(u, v)) throw DomainError(fmt::format("no edge {}-{} to remove", u, v));
  adj_[u].erase(std::lower_bound(adj_[u].begin(), adj_[u].end(), v));
  adj_[v].erase(std::lower_bound(adj_[v].begin(), adj_[v].end(), u));
  --m_;
}

Topology Topology::with_edge(NodeId u, NodeId v) const {
  Topology g = *this;
  g.add_edge(u, v);
  return g;
}

Topology Topology::without_edge(NodeId u, NodeId v) const {
  Topology g = *this;
  g.remove_edge(u, v);
  return g;
}

std::vector<Edge> Topology::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (NodeId u = 0; u < n_; ++u)
    for (NodeId v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<int> Topology::component_labels() const {
  std::vector<int> label(static_cast<std::size_t>(n_), -1);
  std::vector<NodeId> stack;
  int next = 0;
  for (NodeId s = 0; s < n_; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : adj_[x])
        if (label[y] < 0) {
          label[y] = next;
          stack.push_back(y);
        }
    }
    ++next;
  }
  return label;
}

int Topology::component_count() const {
  auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

std::string Topology::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const Edge& e : edges()) {
    out += fmt::format("{}{}-{}", first ? "" : ", ", e.u, e.v);
    first = false;
  }
  return out + "}";
}

DisjointSets::DisjointSets(int n)
    : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0), count_(n) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSets::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  --count_;
  return true;
}

}  // namespace netform
