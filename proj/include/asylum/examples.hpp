#pragma once

#include <map>
#include <string>
#include <vector>

#include "asylum/io.hpp"
#include "asylum/manipulation.hpp"
#include "asylum/model.hpp"

namespace asylum {

// A bundled instance with its published contract labels, the allocations and
// misreports its claims talk about, and any model invariants it knowingly
// breaks (the two completion-impossibility menus run a single state with a
// deliberately short quota).
struct BundledExample {
  std::string name;
  Instance instance;
  std::vector<ValidationIssue> known_issues;
  std::map<std::string, Contract> contracts;
  std::map<std::string, Allocation> allocations;
  std::map<std::string, Ranking> misreports;

  Contract contract(const std::string& label) const {
    auto it = contracts.find(label);
    if (it == contracts.end())
      throw LookupError("UnknownContractLabel", name + " has no contract " + label);
    return it->second;
  }

  ContractSet contract_set(const std::vector<std::string>& labels) const {
    ContractSet out;
    for (const auto& label : labels) insert(out, contract(label));
    return out;
  }
};

// The two-seeker, one-state menu in which the base rule fails both
// substitutability and the law of aggregate demand. Preferences walk each
// seeker from her low-wait contract to the high-wait one.
inline BundledExample bundled_example1() {
  InstanceData data;
  data.seekers = {{"a1", 1}, {"a2", 1}};
  data.waits = {Rational(1), Rational(2)};
  data.states = {{"m1", 2, {{Rational(1), 1}, {Rational(2), 1}}, {"a1", "a2"}}};
  data.preferences = {
      {"a1", {{"m1", Rational(1)}, {"m1", Rational(2)}}},
      {"a2", {{"m1", Rational(1)}, {"m1", Rational(2)}}},
  };

  BundledExample ex;
  ex.name = "example1";
  ex.instance = bind_instance(data);
  ex.known_issues = validate_instance(ex.instance);
  auto c = [&](const char* a, const char* m, long long w) {
    return Contract{*ex.instance.seeker_index(a), *ex.instance.state_index(m),
                    *ex.instance.wait_index(Rational(w))};
  };
  ex.contracts = {{"x1", c("a1", "m1", 1)},
                  {"x2", c("a1", "m1", 2)},
                  {"x3", c("a2", "m1", 1)},
                  {"x4", c("a2", "m1", 2)}};
  return ex;
}

// Same instance; the published claims about it concern the completed rule.
inline BundledExample bundled_example2() {
  BundledExample ex = bundled_example1();
  ex.name = "example2";
  return ex;
}

// Three seekers with burdens (1,2,2) on one state, quota 2, one slot per
// wait. No completion of the choice rule can be substitutable here.
inline BundledExample bundled_example3() {
  InstanceData data;
  data.seekers = {{"a1", 1}, {"a2", 2}, {"a3", 2}};
  data.waits = {Rational(1), Rational(2)};
  data.states = {{"m1", 2, {{Rational(1), 1}, {Rational(2), 1}}, {"a1", "a2", "a3"}}};
  data.preferences = {
      {"a1", {{"m1", Rational(1)}}},
      {"a2", {{"m1", Rational(1)}}},
      {"a3", {{"m1", Rational(2)}}},
  };

  BundledExample ex;
  ex.name = "example3";
  ex.instance = bind_instance(data);
  ex.known_issues = validate_instance(ex.instance);
  auto c = [&](const char* a, long long w) {
    return Contract{*ex.instance.seeker_index(a), 0, *ex.instance.wait_index(Rational(w))};
  };
  ex.contracts = {{"x1", c("a1", 1)}, {"x2", c("a2", 1)}, {"x3", c("a3", 2)}};
  return ex;
}

// Burdens (2,1,1) on one state with a single wait time and two slots. No
// completion can satisfy the law of aggregate demand.
inline BundledExample bundled_example4() {
  InstanceData data;
  data.seekers = {{"a1", 2}, {"a2", 1}, {"a3", 1}};
  data.waits = {Rational(1)};
  data.states = {{"m1", 2, {{Rational(1), 2}}, {"a1", "a2", "a3"}}};
  data.preferences = {
      {"a1", {{"m1", Rational(1)}}},
      {"a2", {{"m1", Rational(1)}}},
      {"a3", {{"m1", Rational(1)}}},
  };

  BundledExample ex;
  ex.name = "example4";
  ex.instance = bind_instance(data);
  ex.known_issues = validate_instance(ex.instance);
  auto c = [&](const char* a) { return Contract{*ex.instance.seeker_index(a), 0, 0}; };
  ex.contracts = {{"x1", c("a1")}, {"x2", c("a2")}, {"x3", c("a3")}};
  return ex;
}

// The market with no stable outcome: burdens s(a1) <= s(a3) < s(a2), tight
// low/high-wait slots at m1..m3 and a catch-all fourth state for the one
// generic extra seeker. Unspecified slot counts at m4 are instantiated to
// |A|, and the open priority tails follow id order.
inline BundledExample bundled_example5() {
  InstanceData data;
  data.seekers = {{"a1", 1}, {"a2", 2}, {"a3", 1}, {"a4", 1}};
  data.waits = {Rational(1), Rational(2), Rational(3)};
  auto tight = [](const char* id, int quota) {
    return InstanceData::State{
        id, quota, {{Rational(1), 1}, {Rational(2), 4}, {Rational(3), 1}}, {}};
  };
  InstanceData::State m1 = tight("m1", 2);
  m1.priority = {"a1", "a2", "a3", "a4"};
  InstanceData::State m2 = tight("m2", 1);
  m2.priority = {"a3", "a2", "a1", "a4"};
  InstanceData::State m3 = tight("m3", 1);
  m3.priority = {"a1", "a2", "a3", "a4"};
  InstanceData::State m4{
      "m4", 5, {{Rational(1), 4}, {Rational(2), 4}, {Rational(3), 4}}, {"a1", "a2", "a3", "a4"}};
  data.states = {m1, m2, m3, m4};
  data.preferences = {
      {"a1", {{"m2", Rational(1)}, {"m1", Rational(1)}}},
      {"a2", {{"m1", Rational(1)}, {"m3", Rational(1)}}},
      {"a3", {{"m1", Rational(3)}, {"m2", Rational(3)}}},
      {"a4", {{"m4", Rational(1)}}},
  };

  BundledExample ex;
  ex.name = "example5";
  ex.instance = bind_instance(data);
  ex.known_issues = validate_instance(ex.instance);
  auto c = [&](const char* a, const char* m, long long w) {
    return Contract{*ex.instance.seeker_index(a), *ex.instance.state_index(m),
                    *ex.instance.wait_index(Rational(w))};
  };
  ex.contracts = {{"x1", c("a1", "m2", 1)}, {"x2", c("a1", "m1", 1)}, {"x3", c("a2", "m1", 1)},
                  {"x4", c("a2", "m3", 1)}, {"x5", c("a3", "m1", 3)}, {"x6", c("a3", "m2", 3)},
                  {"x10", c("a4", "m4", 1)}};
  return ex;
}

// The market on which every stable-outcome-selecting mechanism is
// manipulable: s(a1) > s(a2) >= s(a3), two slots at the low wait everywhere
// and ample high-wait capacity.
inline BundledExample bundled_example6() {
  InstanceData data;
  data.seekers = {{"a1", 2}, {"a2", 1}, {"a3", 1}, {"a4", 1}};
  data.waits = {Rational(1), Rational(2)};
  auto caps = std::vector<InstanceData::Capacity>{{Rational(1), 2}, {Rational(2), 5}};
  data.states = {
      {"m1", 2, caps, {"a1", "a2", "a3", "a4"}},
      {"m2", 1, caps, {"a3", "a2", "a1", "a4"}},
      {"m3", 1, caps, {"a1", "a2", "a3", "a4"}},
      {"m4", 5, caps, {"a1", "a2", "a3", "a4"}},
  };
  data.preferences = {
      {"a1", {{"m2", Rational(1)}, {"m1", Rational(1)}, {"m3", Rational(1)}}},
      {"a2", {{"m2", Rational(1)}, {"m1", Rational(1)}, {"m3", Rational(1)}}},
      {"a3", {{"m1", Rational(1)}, {"m2", Rational(1)}}},
      {"a4", {{"m4", Rational(2)}}},
  };

  BundledExample ex;
  ex.name = "example6";
  ex.instance = bind_instance(data);
  ex.known_issues = validate_instance(ex.instance);
  auto c = [&](const char* a, const char* m, long long w) {
    return Contract{*ex.instance.seeker_index(a), *ex.instance.state_index(m),
                    *ex.instance.wait_index(Rational(w))};
  };
  ex.contracts = {{"x1", c("a1", "m2", 1)}, {"x2", c("a1", "m1", 1)}, {"x3", c("a1", "m3", 1)},
                  {"x4", c("a2", "m2", 1)}, {"x5", c("a2", "m1", 1)}, {"x6", c("a2", "m3", 1)},
                  {"x7", c("a3", "m1", 1)}, {"x8", c("a3", "m2", 1)}, {"x12", c("a4", "m4", 2)}};
  ex.allocations = {
      {"Y1", ex.contract_set({"x2", "x6", "x8", "x12"})},
      {"Y2", ex.contract_set({"x1", "x5", "x7", "x12"})},
  };
  ex.misreports = {
      {"a2_hat", {ex.contract("x5"), ex.contract("x6"), ex.contract("x4")}},
      {"a1_hat", {ex.contract("x1"), ex.contract("x3"), ex.contract("x2")}},
  };
  return ex;
}

// Names follow the published labels; "example7" is accepted as an alias for
// the strategy-proofness market, which some cross references count under
// that number.
inline BundledExample bundled_example(const std::string& name) {
  if (name == "example1") return bundled_example1();
  if (name == "example2") return bundled_example2();
  if (name == "example3") return bundled_example3();
  if (name == "example4") return bundled_example4();
  if (name == "example5") return bundled_example5();
  if (name == "example6" || name == "example7") return bundled_example6();
  throw LookupError("UnknownExample", name);
}

inline std::vector<std::string> bundled_example_names() {
  return {"example1", "example2", "example3", "example4", "example5", "example6"};
}

}  // namespace asylum
