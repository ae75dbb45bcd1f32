#pragma once

#include <vector>

#include "netform/common.hpp"

namespace netform {

/// Nonnegative demand t_ij from node i to node j. Absent entries are zero.
class TrafficMatrix {
 public:
  TrafficMatrix() = default;
  explicit TrafficMatrix(int n);

  int size() const { return n_; }

  double operator()(NodeId i, NodeId j) const { return t_[index(i, j)]; }

  /// Throws DomainError on a negative or non-finite value, or on i == j with t != 0.
  void set(NodeId i, NodeId j, double value);

  /// True when t_ij + t_ji > 0, i.e. ij is an edge of the demand graph G_T.
  bool demands(NodeId i, NodeId j) const;

  /// {j != i : t_ij + t_ji > 0}, ascending.
  std::vector<NodeId> participants(NodeId i) const;

  double total() const;
  bool is_integral() const;
  bool operator==(const TrafficMatrix&) const = default;

 private:
  std::size_t index(NodeId i, NodeId j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }
  void check_node(NodeId i) const;

  int n_ = 0;
  std::vector<double> t_;
};

/// Free-function form; throws DomainError when i is out of range.
std::vector<NodeId> participants(const TrafficMatrix& traffic, NodeId i);

}  // namespace netform
