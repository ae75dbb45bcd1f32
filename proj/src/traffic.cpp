#include "netform/traffic.hpp"

#include <cmath>
#include <string>

namespace netform {

TrafficMatrix::TrafficMatrix(int n) : n_(n) {
  if (n < 0) throw DomainError("traffic matrix: negative node count");
  t_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
}

void TrafficMatrix::check_node(NodeId i) const {
  if (i < 0 || i >= n_)
    throw DomainError("node " + std::to_string(i) + " out of range [0, " + std::to_string(n_) + ")");
}

void TrafficMatrix::set(NodeId i, NodeId j, double value) {
  check_node(i);
  check_node(j);
  if (!std::isfinite(value) || value < 0.0)
    throw DomainError("traffic must be finite and nonnegative");
  if (i == j && value != 0.0) throw DomainError("traffic t_ii must be zero");
  t_[index(i, j)] = value;
}

bool TrafficMatrix::demands(NodeId i, NodeId j) const {
  return i != j && (*this)(i, j) + (*this)(j, i) > 0.0;
}

std::vector<NodeId> TrafficMatrix::participants(NodeId i) const {
  check_node(i);
  std::vector<NodeId> out;
  for (NodeId j = 0; j < n_; ++j)
    if (demands(i, j)) out.push_back(j);
  return out;
}

double TrafficMatrix::total() const {
  double sum = 0.0;
  for (double t : t_) sum += t;
  return sum;
}

bool TrafficMatrix::is_integral() const {
  for (double t : t_)
    if (t != std::floor(t) || t > 9.0e15) return false;
  return true;
}

std::vector<NodeId> participants(const TrafficMatrix& traffic, NodeId i) {
  return traffic.participants(i);
}

}  // namespace netform
