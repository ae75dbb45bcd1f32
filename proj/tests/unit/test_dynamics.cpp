#include <doctest.h>

#include "../support/oracles.hpp"
#include "netform/dynamics.hpp"
#include "netform/experiment.hpp"
#include "netform/stability.hpp"

using namespace netform;

namespace {

GameSetting setting_for(const TrafficMatrix& t) { return GameSetting(t, 1.0, {}, std::make_shared<DefaultRule>()); }

TrafficMatrix complete_traffic(int n) {
  TrafficMatrix t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) t.set(i, j, 1);
  return t;
}

}  // namespace

TEST_CASE("candidate list shape") {
  TrafficMatrix t(3);
  t.set(0, 1, 1);
  const auto s = setting_for(t);
  auto cands = enumerate_actions(Configuration(3), s, 0);
  REQUIRE(!cands.empty());
  CHECK(std::holds_alternative<DoNothing>(cands.front().action));
  CHECK(cands.front().gain == 0.0);
  // node 1 accepts (it gains a participant); node 2 would only pay maintenance
  bool to1 = false, to2 = false;
  for (const auto& c : cands)
    if (auto p = std::get_if<ProposeContract>(&c.action)) {
      to1 = to1 || p->arc.to == 1;
      to2 = to2 || p->arc.to == 2;
    }
  CHECK(to1);
  CHECK_FALSE(to2);
}

TEST_CASE("update candidate gains the overpayment") {
  TrafficMatrix t(2);
  t.set(0, 1, 1);
  const auto s = setting_for(t);
  Configuration c(2);
  c.add_contract(Arc{0, 1}, 5.0);
  for (const auto& cand : enumerate_actions(c, s, 0))
    if (std::holds_alternative<UpdatePayment>(cand.action)) CHECK(cand.gain == doctest::Approx(3.0));
  auto best = best_actions(c, s, 0);
  REQUIRE(best.size() == 1);
  CHECK(std::holds_alternative<UpdatePayment>(best.front().action));
}

TEST_CASE("participant proposal is the best action when one component is missing") {
  // Two components {0,1} and {2}; 0 and 2 are participants; Q(0,2) > 0 so 2 is the payee side.
  TrafficMatrix t(3);
  t.set(0, 1, 1);
  t.set(0, 2, 1);
  const auto s = setting_for(t);
  Topology g(3);
  g.add_edge(0, 1);
  const auto c = updated_configuration(s, g);
  CHECK(degree_of(c, s).a_e == 1);
  auto best = best_actions(c, s, 2);
  REQUIRE(best.size() == 1);
  CHECK(creates_participant_link(best.front().action, t));
  Rng rng(1);
  auto r = step(c, s, 2, rng);
  CHECK(r.changed);
  const auto before = degree_of(c, s), after = degree_of(r.config, s);
  CHECK(after.a_e == 0);
  CHECK(after.c_f == before.c_f);
}

TEST_CASE("losing-only node does nothing") {
  const auto t = complete_traffic(3);
  const auto s = setting_for(t);
  Topology path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  const auto c = updated_configuration(s, path);
  Rng rng(3);
  for (int u = 0; u < 3; ++u) {
    auto r = step(c, s, u, rng);
    CHECK_FALSE(r.changed);
    CHECK(r.config == c);
  }
}

TEST_CASE("cycle edge with net negative payment gets broken") {
  const auto t = complete_traffic(3);
  const auto s = setting_for(t);
  Topology tri(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  const auto c = updated_configuration(s, tri);
  // node 0 pays on both its arcs; breaking one saves 1 + 2 and costs only routing
  Rng rng(5);
  auto r = step(c, s, 0, rng);
  CHECK(r.changed);
  CHECK(std::holds_alternative<BreakContract>(r.action));
  CHECK(degree_of(r.config, s).c_f == degree_of(c, s).c_f - 1);
}

TEST_CASE("run to convergence") {
  SUBCASE("all-to-all reaches a spanning tree") {
    const auto s = setting_for(complete_traffic(6));
    Rng rng(7);
    auto r = run(Configuration(6), s, ActivationProcess(6), rng);
    CHECK(r.converged);
    CHECK(oracle::is_spanning_tree(r.final_config.topology()));
    CHECK(is_sink(r.final_config, s));
    CHECK(r.trace.size() == static_cast<std::size_t>(r.rounds));
  }
  SUBCASE("tree demand from a random start") {
    Rng traffic_rng(1);
    const auto t = make_traffic(TrafficPattern::RandomTree, 6, traffic_rng);
    const auto s = setting_for(t);
    Configuration start = updated_configuration(s, oracle::from_mask(6, 0x5A5AU));
    Rng rng(2);
    auto r = run(start, s, ActivationProcess(6), rng);
    CHECK(r.converged);
    CHECK(r.final_config.topology().is_forest());
    CHECK(is_pne_topology(r.final_config.topology(), t).ok);
  }
  SUBCASE("zero traffic converges without acting") {
    const auto s = setting_for(TrafficMatrix(4));
    Rng rng(3);
    auto r = run(Configuration(4), s, ActivationProcess(4), rng);
    CHECK(r.converged);
    CHECK(r.settle_round == 0);
    CHECK(r.final_config == Configuration(4));
  }
}

TEST_CASE("trace degrees replay and trajectories are reproducible") {
  const auto s = setting_for(complete_traffic(5));
  RunOptions opt;
  std::vector<Configuration> states;
  opt.observer = [&](const StepEvent& e) { states.push_back(e.after); };
  Rng a(42), b(42);
  auto r1 = run(Configuration(5), s, ActivationProcess(5), a, opt);
  auto r2 = run(Configuration(5), s, ActivationProcess(5), b);
  REQUIRE(states.size() == r1.trace.size());
  for (std::size_t k = 0; k < states.size(); ++k) CHECK(r1.trace[k].degree == degree_of(states[k], s));
  CHECK(r1.final_config == r2.final_config);
  CHECK(r1.rounds == r2.rounds);
}

TEST_CASE("weighted activation and round cap") {
  CHECK_THROWS_AS(ActivationProcess(std::vector<double>{1.0, 0.0}), DomainError);
  const auto s = setting_for(complete_traffic(4));
  RunOptions opt;
  opt.max_rounds = 3;
  Rng rng(1);
  auto r = run(Configuration(4), s, ActivationProcess(std::vector<double>{1, 2, 3, 4}), rng, opt);
  CHECK(r.rounds == 3);
  CHECK_FALSE(r.converged);
}

TEST_CASE("weak acceptance still converges") {
  const auto s = setting_for(complete_traffic(5));
  RunOptions opt;
  opt.dynamics.acceptance = Acceptance::Weak;
  Rng rng(9);
  auto r = run(Configuration(5), s, ActivationProcess(5), rng, opt);
  CHECK(r.converged);
}
