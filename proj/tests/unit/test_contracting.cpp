#include <doctest.h>

#include <random>

#include "netform/contracting.hpp"

using namespace netform;

namespace {

TrafficMatrix path_traffic() {
  TrafficMatrix t(4);
  t.set(0, 1, 1);
  t.set(1, 2, 1);
  return t;
}

}  // namespace

TEST_CASE("default rule values") {
  const auto t = path_traffic();
  DefaultRule rule;
  Topology g(4);
  CHECK(evaluate(rule, 0, 1, g, t) == 2.0);
  CHECK(evaluate(rule, 1, 0, g, t) == -2.0);
  CHECK(evaluate(rule, 0, 2, g, t) == 1.0);
  CHECK(evaluate(rule, 3, 0, g, t) == -1.0);
  CHECK_THROWS_AS(evaluate(rule, 1, 1, g, t), DomainError);
  CHECK_THROWS_AS(DefaultRule(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(DefaultRule(2.0, -1.0), DomainError);
}

TEST_CASE("constant rule pays the larger id") {
  ConstantRule rule(2.0);
  TrafficMatrix t(5);
  Topology g(5);
  for (int v = 0; v < 4; ++v) {
    CHECK(evaluate(rule, v, 4, g, t) == 2.0);
    CHECK(evaluate(rule, 4, v, g, t) == -2.0);
  }
}

TEST_CASE("antisymmetry checker") {
  const auto t = path_traffic();
  auto ok = check_antisymmetry(DefaultRule(), t, 100);
  CHECK(ok.ok);
  CHECK(ok.exhaustive);
  CHECK(check_antisymmetry(ConstantRule(2.0), t, 100).ok);

  FunctionRule bad("plus-one", [](NodeId, NodeId, const Topology&, const TrafficMatrix&) { return 1.0; }, 1.0);
  auto fail = check_antisymmetry(bad, t, 100);
  REQUIRE_FALSE(fail.ok);
  REQUIRE(fail.violation.has_value());
  CHECK(fail.violation->i != fail.violation->j);

  // sampled path for larger n
  TrafficMatrix big(7);
  big.set(0, 6, 2);
  auto sampled = check_antisymmetry(DefaultRule(), big, 500);
  CHECK(sampled.ok);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.cases == 500);
  CHECK_FALSE(check_antisymmetry(bad, big, 500).ok);
}

TEST_CASE("affinity checker") {
  const auto t = path_traffic();
  CHECK(check_affinity(DefaultRule(2, 1), t, 100).ok);

  FunctionRule flat("flat", [](NodeId i, NodeId j, const Topology&, const TrafficMatrix&) { return i < j ? 1.0 : -1.0; },
                    1.0);
  auto fail = check_affinity(flat, t, 100);
  REQUIRE_FALSE(fail.ok);
  CHECK(fail.violation->k >= 0);

  TrafficMatrix all(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) all.set(i, j, 1);
  auto vacuous = check_affinity(flat, all, 100);
  CHECK(vacuous.ok);
  CHECK(vacuous.cases == 0);
}

TEST_CASE("default rule passes both checkers on random traffic") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    TrafficMatrix t(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j && rng() % 3 == 0) t.set(i, j, 1 + static_cast<double>(rng() % 3));
    CHECK(check_antisymmetry(DefaultRule(), t, 10).ok);
    CHECK(check_affinity(DefaultRule(), t, 10).ok);
  }
}

TEST_CASE("exactly one direction is non-positive") {
  DefaultRule rule;
  const auto t = path_traffic();
  Topology g(4);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) {
      int nonpositive = (evaluate(rule, u, v, g, t) <= 0) + (evaluate(rule, v, u, g, t) <= 0);
      CHECK(nonpositive == 1);
    }
}

TEST_CASE("rule factory") {
  auto d = make_rule("default", {{"q_p", 3}, {"q_n", 1}});
  CHECK(d->describe() == "default q_p=3 q_n=1");
  CHECK(make_rule("constant", {{"v", 2}})->name() == "constant");
  CHECK_THROWS_AS(make_rule("default", {{"bogus", 1}}), DomainError);
  CHECK_THROWS_AS(make_rule("nash", {}), DomainError);
}
