#include <catch2/catch_amalgamated.hpp>

#include "asylum/examples.hpp"
#include "asylum/generator.hpp"
#include "asylum/io.hpp"
#include "asylum/mechanism.hpp"
#include "asylum/stability.hpp"

using namespace asylum;

TEST_CASE("cumulative offer reproduces the unique stable allocation of the bundled market") {
  auto ex = bundled_example6();
  MechanismTrace trace = run_with_rule_variants(ex.instance, RuleVariant::base);
  CHECK(trace.outcome == ex.allocations.at("Y1"));
  CHECK_FALSE(trace.multi_hold);
}

TEST_CASE("mechanism traces grow the cumulative offer sets one contract at a time") {
  auto ex = bundled_example6();
  MechanismTrace trace = cumulative_offer(ex.instance, base_rules(ex.instance));
  std::size_t previous = 0;
  for (const auto& round : trace.rounds) {
    std::size_t total = 0;
    for (const auto& offers : round.cumulative_offers) total += offers.size();
    CHECK(total == previous + 1);
    previous = total;
    CHECK(contains(round.cumulative_offers[round.proposed.state], round.proposed));
  }
  // outcome equals the union of the final held sets here (no truncation)
  ContractSet all;
  for (const auto& held : trace.rounds.back().tentatively_held)
    for (const Contract& x : held) insert(all, x);
  CHECK(all == trace.outcome);
}

TEST_CASE("a single seeker gets her top contract when everything is slack") {
  InstanceData data;
  data.seekers = {{"a1", 1}};
  data.waits = {Rational(1), Rational(2)};
  data.states = {{"m1", 1, {{Rational(1), 1}, {Rational(2), 1}}, {"a1"}}};
  data.preferences = {{"a1", {{"m1", Rational(2)}, {"m1", Rational(1)}}}};
  Instance inst = validated(bind_instance(data));

  MechanismTrace trace = run_with_rule_variants(inst, RuleVariant::base);
  REQUIRE(trace.outcome.size() == 1);
  CHECK(trace.outcome[0] == inst.preferences[0].ranking[0]);
}

TEST_CASE("the empty market terminates with an empty outcome") {
  Instance inst;
  CHECK(cumulative_offer(inst, base_rules(inst)).outcome.empty());
}

TEST_CASE("low-wait-first preferences on the two-seeker market settle as enumeration says") {
  auto ex = bundled_example1();
  MechanismTrace trace = run_with_rule_variants(ex.instance, RuleVariant::base);
  CHECK(trace.outcome == ex.contract_set({"x1", "x4"}));

  auto stable = enumerate_stable(ex.instance, base_rules(ex.instance));
  REQUIRE(stable.size() == 1);
  CHECK(stable[0] == trace.outcome);
}

TEST_CASE("base and completed variants agree under homogeneous burdens") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = generate_instance(seed, GenProfile::homogeneous, {4, 3, 2, 3, 3});
    CAPTURE(seed);
    CHECK(run_with_rule_variants(inst, RuleVariant::base).outcome ==
          run_with_rule_variants(inst, RuleVariant::completed).outcome);
  }
}

TEST_CASE("proposal order does not change homogeneous outcomes") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = generate_instance(seed, GenProfile::homogeneous, {4, 3, 2, 3, 3});
    auto a = cumulative_offer(inst, base_rules(inst), OrderPolicy::round_robin).outcome;
    auto b = cumulative_offer(inst, base_rules(inst), OrderPolicy::lowest_id).outcome;
    auto c = cumulative_offer(inst, base_rules(inst), OrderPolicy::highest_id).outcome;
    CAPTURE(seed);
    CHECK(a == b);
    CHECK(a == c);
  }
}

TEST_CASE("every run stays within the proposal budget and yields a valid allocation") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = generate_instance(seed, GenProfile::unrestricted, {4, 3, 3, 3, 4});
    MechanismTrace trace = run_with_rule_variants(inst, RuleVariant::base);
    CAPTURE(seed);
    CHECK(static_cast<int>(trace.rounds.size()) <=
          inst.n_seekers() * inst.n_states() * inst.n_waits());
    CHECK(is_allocation(inst, trace.outcome));
  }
}
