#include <catch2/catch_amalgamated.hpp>

#include "asylum/audit.hpp"
#include "asylum/completion.hpp"
#include "asylum/examples.hpp"

using namespace asylum;

TEST_CASE("the base rule fails substitutability with the published witness") {
  auto ex = bundled_example1();
  ContractSet universe = full_contract_universe(ex.instance);
  AuditReport report =
      is_substitutable(ex.instance, 0, make_choice_rule(ex.instance, 0), universe);

  REQUIRE_FALSE(report.passed());
  REQUIRE(report.witnesses.size() == 1);
  CHECK(report.witnesses[0].field("X'") == set_str(ex.instance, ex.contract_set({"x2"})));
  CHECK(report.witnesses[0].field("x") == ex.instance.contract_str(ex.contract("x4")));
  CHECK(report.witnesses[0].field("x'") == ex.instance.contract_str(ex.contract("x1")));
}

TEST_CASE("the base rule fails the law of aggregate demand with the published witness") {
  auto ex = bundled_example1();
  ContractSet universe = full_contract_universe(ex.instance);
  AuditReport report = satisfies_LAD(ex.instance, 0, make_choice_rule(ex.instance, 0), universe);

  REQUIRE_FALSE(report.passed());
  REQUIRE(report.witnesses.size() == 1);
  CHECK(report.witnesses[0].field("X'") == set_str(ex.instance, ex.contract_set({"x2", "x3"})));
  CHECK(report.witnesses[0].field("x") == ex.instance.contract_str(ex.contract("x1")));
}

TEST_CASE("the completed rule repairs both properties on the same universe") {
  auto ex = bundled_example2();
  ContractSet universe = full_contract_universe(ex.instance);
  ChoiceRule completed = make_completed_rule(ex.instance, 0);

  CHECK(is_substitutable(ex.instance, 0, completed, universe).passed());
  CHECK(satisfies_LAD(ex.instance, 0, completed, universe).passed());
  CHECK(satisfies_IRC(ex.instance, 0, completed, universe).passed());
}

TEST_CASE("unilateral substitutability also fails where published") {
  auto ex1 = bundled_example1();
  AuditReport r1 = is_unilaterally_substitutable(ex1.instance, 0, make_choice_rule(ex1.instance, 0),
                                                 full_contract_universe(ex1.instance));
  REQUIRE_FALSE(r1.passed());
  CHECK(r1.witnesses[0].field("X'") == set_str(ex1.instance, ex1.contract_set({"x2"})));
  CHECK(r1.witnesses[0].field("x") == ex1.instance.contract_str(ex1.contract("x4")));

  auto ex3 = bundled_example3();
  AuditReport r3 = is_unilaterally_substitutable(ex3.instance, 0, make_choice_rule(ex3.instance, 0),
                                                 ex3.contract_set({"x1", "x2", "x3"}));
  REQUIRE_FALSE(r3.passed());
  CHECK(r3.witnesses[0].field("X'") == set_str(ex3.instance, ex3.contract_set({"x2"})));
  CHECK(r3.witnesses[0].field("x") == ex3.instance.contract_str(ex3.contract("x3")));

  // a one-contract universe leaves nothing to remove
  CHECK(is_unilaterally_substitutable(ex1.instance, 0, make_choice_rule(ex1.instance, 0),
                                      ex1.contract_set({"x1"}))
            .passed());
  CHECK(is_substitutable(ex1.instance, 0, make_choice_rule(ex1.instance, 0),
                         ex1.contract_set({"x1"}))
            .passed());
}

TEST_CASE("irrelevance of rejected contracts holds for both rules and bites for a rigged one") {
  auto ex1 = bundled_example1();
  CHECK(satisfies_IRC(ex1.instance, 0, make_choice_rule(ex1.instance, 0),
                      full_contract_universe(ex1.instance))
            .passed());

  auto ex3 = bundled_example3();
  CHECK(satisfies_IRC(ex3.instance, 0, make_completed_rule(ex3.instance, 0),
                      full_contract_universe(ex3.instance))
            .passed());

  // a rule that forgets everything once a poison contract shows up
  Contract poison = ex1.contract("x4");
  const Instance& inst = ex1.instance;
  ChoiceRule rigged = [&inst, poison](const ContractSet& offered) {
    if (contains(offered, poison)) return ContractSet{};
    return choose_result(inst, 0, offered);
  };
  AuditReport report = satisfies_IRC(ex1.instance, 0, rigged, full_contract_universe(ex1.instance));
  REQUIRE_FALSE(report.passed());
  CHECK(report.witnesses[0].field("x") == ex1.instance.contract_str(poison));
}

TEST_CASE("pinned menus rule out substitutable completions in the published market") {
  auto ex = bundled_example3();
  ContractSet universe = ex.contract_set({"x1", "x2", "x3"});
  AuditReport report =
      pinned_completion_witness(ex.instance, 0, PinnedProperty::substitutability, universe);

  REQUIRE_FALSE(report.passed());
  REQUIRE(report.witnesses.size() == 1);
  const AuditWitness& w = report.witnesses[0];
  CHECK(w.field("X1") == set_str(ex.instance, ex.contract_set({"x2", "x3"})));
  CHECK(w.field("X2") == set_str(ex.instance, ex.contract_set({"x1", "x2", "x3"})));
  CHECK(w.field("chose-X1") == set_str(ex.instance, ex.contract_set({"x2"})));
  CHECK(w.field("chose-X2") == set_str(ex.instance, ex.contract_set({"x1", "x3"})));
}

TEST_CASE("pinned menus rule out aggregate-demand completions in the published market") {
  auto ex = bundled_example4();
  ContractSet universe = ex.contract_set({"x1", "x2", "x3"});
  AuditReport report = pinned_completion_witness(ex.instance, 0, PinnedProperty::lad, universe);

  REQUIRE_FALSE(report.passed());
  REQUIRE(report.witnesses.size() == 1);
  const AuditWitness& w = report.witnesses[0];
  CHECK(w.field("X1") == set_str(ex.instance, ex.contract_set({"x2", "x3"})));
  CHECK(w.field("X2") == set_str(ex.instance, ex.contract_set({"x1", "x2", "x3"})));
  CHECK(w.field("chose-X1") == set_str(ex.instance, ex.contract_set({"x2", "x3"})));
  CHECK(w.field("chose-X2") == set_str(ex.instance, ex.contract_set({"x1"})));
}

TEST_CASE("no pinned witness where a substitutable completion exists") {
  auto ex = bundled_example1();
  CHECK(pinned_completion_witness(ex.instance, 0, PinnedProperty::substitutability,
                                  full_contract_universe(ex.instance))
            .passed());
}
