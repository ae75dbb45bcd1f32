#include <doctest.h>

#include <numeric>
#include <random>

#include "../support/oracles.hpp"
#include "netform/game.hpp"
#include "netform/routing.hpp"
#include "netform/welfare.hpp"

using namespace netform;

namespace {

GameSetting unit_setting(const TrafficMatrix& t, std::optional<double> beta = std::nullopt) {
  return GameSetting(t, 1.0, {}, std::make_shared<DefaultRule>(), beta);
}

TrafficMatrix random_traffic(int n, std::mt19937_64& rng, double density = 0.5) {
  TrafficMatrix t(n);
  std::bernoulli_distribution coin(density);
  std::uniform_int_distribution<int> w(1, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && coin(rng)) t.set(i, j, w(rng));
  return t;
}

}  // namespace

TEST_CASE("participants") {
  TrafficMatrix t(4);
  t.set(0, 2, 1);
  CHECK(participants(t, 0) == std::vector<NodeId>{2});
  CHECK(participants(t, 2) == std::vector<NodeId>{0});

  TrafficMatrix fig(4);
  fig.set(0, 2, 1);
  fig.set(0, 3, 1);
  fig.set(1, 2, 1);
  fig.set(1, 3, 1);
  CHECK(participants(fig, 0) == std::vector<NodeId>{2, 3});

  TrafficMatrix zero(3);
  for (int i = 0; i < 3; ++i) CHECK(participants(zero, i).empty());
  CHECK_THROWS_AS(participants(zero, 3), DomainError);
  CHECK_THROWS_AS(zero.set(0, 1, -1.0), DomainError);
  CHECK_THROWS_AS(zero.set(1, 1, 2.0), DomainError);
}

TEST_CASE("participants relation is symmetric") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = random_traffic(6, rng, 0.3);
    for (int i = 0; i < 6; ++i)
      for (int j : participants(t, i)) {
        auto back = participants(t, j);
        CHECK(std::find(back.begin(), back.end(), i) != back.end());
      }
  }
}

TEST_CASE("transit load examples") {
  Topology path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  TrafficMatrix t(3);
  t.set(0, 2, 4);
  CHECK(transit_loads(path, t) == std::vector<double>{4, 4, 4});

  Topology cycle(4);
  cycle.add_edge(0, 1);
  cycle.add_edge(1, 2);
  cycle.add_edge(2, 3);
  cycle.add_edge(3, 0);
  TrafficMatrix t2(4);
  t2.set(0, 2, 2);
  CHECK(transit_loads(cycle, t2) == std::vector<double>{2, 1, 2, 1});

  TrafficMatrix zero(4);
  CHECK(transit_loads(cycle, zero) == std::vector<double>(4, 0.0));

  // disconnected demand carries no load
  Topology split(4);
  split.add_edge(0, 1);
  TrafficMatrix t3(4);
  t3.set(0, 3, 5);
  CHECK(transit_loads(split, t3) == std::vector<double>(4, 0.0));
}

TEST_CASE("transit loads match path enumeration") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const auto g = oracle::from_mask(n, rng() & ((std::uint64_t{1} << (n * (n - 1) / 2)) - 1));
    const auto t = random_traffic(n, rng);
    const auto fast = transit_loads(g, t);
    const auto slow = oracle::transit_loads(g, t);
    const auto exact = transit_loads_exact(g, t);
    double total = 0.0, expected = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
      CHECK(to_double(exact[i]) == doctest::Approx(slow[i]).epsilon(1e-12));
      total += fast[i];
    }
    // each unit of demand visits dist+1 nodes
    for (int s = 0; s < n; ++s) {
      const auto d = hop_distances(g, s);
      for (int u = 0; u < n; ++u)
        if (u != s && d[u] >= 0) expected += t(s, u) * (d[u] + 1);
    }
    CHECK(total == doctest::Approx(expected));
  }
}

TEST_CASE("transit load is invariant under relabelling") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 6;
    const auto g = oracle::from_mask(n, rng() & ((1U << 15) - 1));
    const auto t = random_traffic(n, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Topology pg(n);
    for (const Edge& e : g.edges()) pg.add_edge(perm[e.u], perm[e.v]);
    TrafficMatrix pt(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (t(i, j) > 0) pt.set(perm[i], perm[j], t(i, j));
    const auto a = transit_loads(g, t);
    const auto b = transit_loads(pg, pt);
    for (int i = 0; i < n; ++i) CHECK(a[i] == doctest::Approx(b[perm[i]]));
  }
}

TEST_CASE("node cost examples") {
  Topology path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  TrafficMatrix t(3);
  t.set(0, 2, 4);
  GameSetting s(t, 1.0, {}, std::make_shared<DefaultRule>(), 100.0);
  CHECK(node_cost(s, path, 1) == 6.0);

  TrafficMatrix t2(2);
  t2.set(0, 1, 1);
  GameSetting s2(t2, 1.0, {}, std::make_shared<DefaultRule>(), 100.0);
  CHECK(node_cost(s2, Topology(2), 0) == 100.0);

  TrafficMatrix t3(3);
  t3.set(0, 1, 1);
  GameSetting s3(t3, 1.0, {}, std::make_shared<DefaultRule>());
  CHECK(node_cost(s3, Topology(3), 2) == 0.0);
}

TEST_CASE("utility arithmetic") {
  GameSetting s(TrafficMatrix(2), 1.0, {}, std::make_shared<DefaultRule>());
  Configuration c(2);
  c.add_contract(Arc{0, 1}, 2.0);
  CHECK(utility(s, c, 0) == -3.0);
  CHECK(utility(s, c, 1) == 1.0);
}

TEST_CASE("utilities sum to minus the social cost") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pay(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5;
    const auto t = random_traffic(n, rng);
    const auto setting = unit_setting(t);
    const auto g = oracle::from_mask(n, rng() & 1023U);
    Configuration c(n);
    for (const Edge& e : g.edges()) {
      if (rng() % 2) c.add_contract(Arc{e.u, e.v}, pay(rng));
      else c.add_contract(Arc{e.v, e.u}, pay(rng));
    }
    const auto u = utilities(setting, c);
    CHECK(std::accumulate(u.begin(), u.end(), 0.0) == doctest::Approx(-social_cost(setting, g)));
  }
}

TEST_CASE("apply deviation") {
  TrafficMatrix t(3);
  t.set(0, 1, 1);
  const auto setting = unit_setting(t);
  Configuration c(3);
  c.add_contract(Arc{0, 1}, 2.0);

  auto broken = apply_deviation(c, setting, BreakContract{Arc{0, 1}});
  CHECK(broken.contracts().size() == 0);
  CHECK(broken.payments().entries().empty());
  CHECK(broken.topology().edge_count() == 0);

  auto added = apply_deviation(Configuration(3), setting, ProposeContract{Arc{0, 1}});
  CHECK(added.payment(0, 1) == 2.0);
  auto other = apply_deviation(Configuration(3), setting, ProposeContract{Arc{2, 0}});
  CHECK(other.payment(2, 0) == -1.0);

  c.set_payment(Arc{0, 1}, 7.0);
  auto updated = apply_deviation(c, setting, UpdatePayment{Arc{0, 1}});
  CHECK(updated.payment(0, 1) == 2.0);

  CHECK_THROWS_AS(apply_deviation(c, setting, BreakContract{Arc{1, 2}}), DomainError);
  CHECK_THROWS_AS(apply_deviation(c, setting, ProposeContract{Arc{1, 0}}), DomainError);
  CHECK_THROWS_AS(apply_deviation(c, setting, UpdatePayment{Arc{1, 0}}), DomainError);
}

TEST_CASE("configuration invariants") {
  Configuration c(3);
  c.add_contract(Arc{0, 1}, 1.0);
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(c.add_contract(Arc{1, 0}, 1.0), DomainError);
  CHECK(c.arc_between(1, 0) == Arc{0, 1});
  CHECK(c.incident_arcs(1) == std::vector<Arc>{Arc{0, 1}});
}

TEST_CASE("beta dominance") {
  TrafficMatrix t(3);
  t.set(0, 1, 2);
  const auto auto_beta = unit_setting(t);
  CHECK(auto_beta.beta() > auto_beta.beta_floor());
  CHECK_THROWS_AS(unit_setting(t, 1.0), DomainError);
  CHECK_NOTHROW(GameSetting(t, 1.0, {}, std::make_shared<DefaultRule>(), 1.0, SettingOptions{false, true}));
  CHECK_THROWS_AS(GameSetting(t, 0.0, {}, std::make_shared<DefaultRule>()), DomainError);
  CHECK_THROWS_AS(GameSetting(t, 1.0, {1.0, -1.0, 1.0}, std::make_shared<DefaultRule>()), DomainError);
}

TEST_CASE("more reachable participants means strictly higher utility") {
  // Connecting a node to one more participant beats any swing in the other terms.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5;
    const auto t = random_traffic(n, rng, 0.4);
    const auto setting = unit_setting(t);
    const auto g = oracle::from_mask(n, rng() & 1023U);
    const auto h = oracle::from_mask(n, rng() & 1023U);
    const auto cg = updated_configuration(setting, g);
    const auto ch = updated_configuration(setting, h);
    for (int i = 0; i < n; ++i) {
      int reach_g = 0, reach_h = 0;
      bool subset = true;
      for (int j : participants(t, i)) {
        bool a = oracle::connected(g, i, j), b = oracle::connected(h, i, j);
        reach_g += a;
        reach_h += b;
        subset = subset && (!a || b);
      }
      if (subset && reach_h > reach_g) CHECK(utility(setting, ch, i) > utility(setting, cg, i));
    }
  }
}
