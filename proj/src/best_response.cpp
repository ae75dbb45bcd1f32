#include "netform/best_response.hpp"

#include <fmt/format.h>

namespace netform {

BestResponse best_response_value(const GameSetting& setting, const Configuration& config, NodeId u,
                                 int max_degree) {
  if (u < 0 || u >= config.size()) throw DomainError("node out of range");
  const auto arcs = config.incident_arcs(u);
  if (static_cast<int>(arcs.size()) > max_degree)
    throw BoundExceeded(fmt::format("degree {} of node {} exceeds the best-response bound {}",
                                    arcs.size(), u, max_degree));

  BestResponse best;
  best.current = utility(setting, config, u);
  best.value = best.current;
  std::vector<Arc> chosen;
  const std::uint64_t subsets = std::uint64_t{1} << arcs.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    chosen.clear();
    for (std::size_t b = 0; b < arcs.size(); ++b)
      if (mask >> b & 1U) chosen.push_back(arcs[b]);
    double value = utility(setting, break_contracts(config, chosen), u);
    if (value > best.value + kTolerance) {
      best.value = value;
      best.broken = chosen;
    }
  }
  return best;
}

bool decide_br(const BRInstance& instance) {
  instance.config.validate();
  const auto br = best_response_value(instance.setting, instance.config, instance.node);
  return br.value >= instance.threshold - kTolerance;
}

}  // namespace netform
