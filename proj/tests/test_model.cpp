#include <catch2/catch_amalgamated.hpp>

#include "asylum/examples.hpp"
#include "asylum/generator.hpp"
#include "asylum/io.hpp"
#include "asylum/model.hpp"
#include "oracles.hpp"

using namespace asylum;

TEST_CASE("rational parsing and ordering") {
  CHECK(*parse_rational("3/2") == Rational(3, 2));
  CHECK(*parse_rational("2") == Rational(2));
  CHECK(*parse_rational("4/2") == Rational(2));
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK_FALSE(parse_rational("").has_value());
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("x").has_value());
}

TEST_CASE("validate_instance accepts the bundled markets that fit the model") {
  for (const auto& name : {"example1", "example2", "example5", "example6"}) {
    auto ex = bundled_example(name);
    CAPTURE(name);
    CHECK(validate_instance(ex.instance).empty());
  }
}

TEST_CASE("the completion-impossibility menus knowingly break the aggregate bounds") {
  for (const auto& name : {"example3", "example4"}) {
    auto ex = bundled_example(name);
    CAPTURE(name);
    bool quota = false;
    bool capacity = false;
    for (const auto& issue : ex.known_issues) {
      quota |= issue.code == ValidationIssue::Code::quota_deficit;
      capacity |= issue.code == ValidationIssue::Code::capacity_deficit;
    }
    CHECK(quota);
    CHECK(capacity);
  }
}

TEST_CASE("an empty market with one idle state is valid") {
  InstanceData data;
  data.states.push_back({"m1", 0, {}, {}});
  Instance inst = bind_instance(data);
  CHECK(validate_instance(inst).empty());
}

TEST_CASE("quota deficit is reported when the single quota drops below total burden") {
  auto ex = bundled_example1();
  ex.instance.states[0].quota = 1;  // total burden is 2
  auto issues = validate_instance(ex.instance);
  REQUIRE_FALSE(issues.empty());
  bool quota = false;
  for (const auto& issue : issues) quota |= issue.code == ValidationIssue::Code::quota_deficit;
  CHECK(quota);
  CHECK_THROWS_AS(validated(ex.instance), ValidationError);
}

TEST_CASE("validated() is the identity on clean instances") {
  auto ex = bundled_example5();
  Instance same = validated(ex.instance);
  CHECK(serialize_instance(same) == serialize_instance(ex.instance));
}

TEST_CASE("full contract universe is the cartesian product") {
  auto ex1 = bundled_example1();
  ContractSet u = full_contract_universe(ex1.instance);
  CHECK(u.size() == 4);
  CHECK(u == ex1.contract_set({"x1", "x2", "x3", "x4"}));

  auto ex3 = bundled_example3();
  CHECK(full_contract_universe(ex3.instance).size() == 6);

  Instance empty;
  CHECK(full_contract_universe(empty).empty());
}

TEST_CASE("preferences order contracts, unmatched, and unlisted as documented") {
  auto ex = bundled_example6();
  const Preference& p2 = ex.instance.preferences[*ex.instance.seeker_index("a2")];

  Contract x4 = ex.contract("x4");
  Contract x5 = ex.contract("x5");
  Contract x6 = ex.contract("x6");

  CHECK(prefers(p2, x4, x5));
  CHECK_FALSE(prefers(p2, x5, x4));
  CHECK_FALSE(prefers(p2, x4, x4));  // irreflexive

  CHECK(prefers(p2, x6, std::nullopt));       // listed beats unmatched
  CHECK_FALSE(prefers(p2, std::nullopt, x6));

  Contract unlisted{x4.seeker, x4.state, 1};  // (a2, m2, wh) is not ranked
  CHECK(prefers(p2, std::nullopt, unlisted));  // unmatched beats unlisted
  CHECK(prefers(p2, x6, unlisted));
  Contract unlisted2{x5.seeker, x5.state, 1};
  CHECK_FALSE(prefers(p2, unlisted, unlisted2));  // unlisted pair: incomparable
  CHECK_FALSE(prefers(p2, unlisted2, unlisted));

  Contract other = ex.contract("x1");  // belongs to a1
  CHECK_THROWS_AS(prefers(p2, other, x4), LookupError);
}

TEST_CASE("prefers is a strict total order on listed plus unmatched") {
  auto ex = bundled_example6();
  const Preference& pref = ex.instance.preferences[*ex.instance.seeker_index("a1")];
  std::vector<std::optional<Contract>> pool;
  for (const Contract& x : pref.ranking) pool.push_back(x);
  pool.push_back(std::nullopt);

  for (const auto& x : pool)
    for (const auto& y : pool) {
      if (x == y) {
        CHECK_FALSE(prefers(pref, x, y));
        continue;
      }
      CHECK(prefers(pref, x, y) != prefers(pref, y, x));  // total + asymmetric
      for (const auto& z : pool)
        if (prefers(pref, x, y) && prefers(pref, y, z)) CHECK(prefers(pref, x, z));
    }
}

TEST_CASE("allocation checker agrees with the naive counting oracle") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Instance inst = generate_instance(seed, GenProfile::unrestricted, {4, 2, 3, 3, 4});
    asylum::detail::Rng rng(seed * 977);
    for (int trial = 0; trial < 20; ++trial) {
      // random subsets of the universe, valid or not
      ContractSet set;
      for (const Contract& x : full_contract_universe(inst))
        if (rng.below(4) == 0) insert(set, x);
      CAPTURE(seed, trial);
      CHECK(allocation_violations(inst, set).empty() == oracles::naive_allocation_ok(inst, set));
    }
  }
}

TEST_CASE("contract sets stay sorted and unique") {
  ContractSet s;
  insert(s, {1, 0, 1});
  insert(s, {0, 0, 0});
  insert(s, {1, 0, 1});
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Contract{0, 0, 0});
  CHECK(contains(s, {1, 0, 1}));
  erase(s, {0, 0, 0});
  CHECK(s.size() == 1);
  CHECK(sequence_less({}, s));
  CHECK(sequence_less({{0, 0, 0}}, {{0, 0, 0}, {1, 0, 1}}));
  CHECK(sequence_less({{0, 0, 0}, {1, 0, 1}}, {{1, 0, 1}}));
}
