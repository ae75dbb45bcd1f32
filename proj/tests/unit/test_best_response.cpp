#include <doctest.h>

#include "../support/oracles.hpp"
#include "netform/best_response.hpp"
#include "netform/reductions.hpp"

using namespace netform;

namespace {

Topology k3() {
  Topology g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  return g;
}

Topology c4() {
  Topology g(4);
  for (int i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4);
  return g;
}

}  // namespace

TEST_CASE("best response on reduced instances") {
  auto a = reduce_is_to_br(k3(), 1);
  auto br = best_response_value(a.setting, a.config, a.node);
  CHECK(br.value == 1.0);
  CHECK(br.broken.size() == 2);
  CHECK(decide_br(a));
  CHECK_FALSE(decide_br(reduce_is_to_br(k3(), 2)));

  auto b = reduce_is_to_br(c4(), 2);
  CHECK(best_response_value(b.setting, b.config, b.node).value == 2.0);
  CHECK(decide_br(b));

  auto e = reduce_is_to_br(Topology(4), 4);
  CHECK(decide_br(e));
  CHECK(best_response_value(e.setting, e.config, e.node).broken.empty());
}

TEST_CASE("keeping a set of leaves is worth its size only when independent") {
  const auto g = c4();
  const auto inst = reduce_is_to_br(g, 0);
  const auto arcs = inst.config.incident_arcs(inst.node);
  for (unsigned keep = 0; keep < 16; ++keep) {
    std::vector<Arc> broken;
    bool independent = true;
    for (int v = 0; v < 4; ++v) {
      if (!(keep >> v & 1U)) broken.push_back(arcs[v]);
      for (int w = v + 1; w < 4; ++w)
        if ((keep >> v & 1U) && (keep >> w & 1U) && g.has_edge(v, w)) independent = false;
    }
    double u = utility(inst.setting, break_contracts(inst.config, broken), inst.node);
    if (independent) CHECK(u == static_cast<double>(std::popcount(keep)));
    else CHECK(u < 0.0);
  }
}

TEST_CASE("isolated node and threshold at current utility") {
  TrafficMatrix t(3);
  t.set(0, 1, 1);
  GameSetting s(t, 1.0, {}, std::make_shared<DefaultRule>());
  Configuration c(3);
  c.add_contract(Arc{0, 1}, 2.0);
  auto br = best_response_value(s, c, 2);
  CHECK(br.value == br.current);
  CHECK(br.broken.empty());
  for (NodeId u = 0; u < 3; ++u) {
    BRInstance inst{s, c, u, utility(s, c, u)};
    CHECK(decide_br(inst));
  }
}

TEST_CASE("degree bound is enforced") {
  auto inst = reduce_is_to_br(Topology(6), 0);
  CHECK_THROWS_AS(best_response_value(inst.setting, inst.config, inst.node, 5), BoundExceeded);
}

TEST_CASE("reduction agrees with independence number on small graphs") {
  for (int n = 1; n <= 5; ++n)
    oracle::for_each_graph(n, [&](const Topology& g) {
      const int alpha = oracle::independence_number(g);
      CHECK(brute_independent_set(g) == alpha);
      for (int c = 0; c <= n; ++c) CHECK(decide_br(reduce_is_to_br(g, c)) == (alpha >= c));
    });
}
