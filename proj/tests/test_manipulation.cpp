#include <catch2/catch_amalgamated.hpp>

#include "asylum/examples.hpp"
#include "asylum/generator.hpp"
#include "asylum/io.hpp"
#include "asylum/manipulation.hpp"
#include "asylum/stability.hpp"

using namespace asylum;

TEST_CASE("the misreport domain enumerates ordered subsets of the true list") {
  auto ex = bundled_example6();
  MisreportDomain dom = truncation_permutation_domain(ex.instance);

  int a2 = *ex.instance.seeker_index("a2");
  // 3 listed contracts: 1 empty + 3 singles + 6 pairs + 6 full orderings
  CHECK(dom.rankings[a2].size() == 16);
  CHECK(dom.rankings[a2][dom.true_index[a2]] == ex.instance.preferences[a2].ranking);
  bool has_hat = false;
  for (const auto& r : dom.rankings[a2]) has_hat |= r == ex.misreports.at("a2_hat");
  CHECK(has_hat);

  // a cap below the list length still readmits the true ranking
  MisreportDomain capped = truncation_permutation_domain(ex.instance, 1);
  CHECK(capped.rankings[a2].size() == 5);  // empty + 3 singles + the true ranking
  CHECK(capped.rankings[a2][capped.true_index[a2]] == ex.instance.preferences[a2].ranking);
}

TEST_CASE("the misreport domain is deterministic") {
  auto ex = bundled_example6();
  MisreportDomain a = truncation_permutation_domain(ex.instance);
  MisreportDomain b = truncation_permutation_domain(ex.instance);
  CHECK(a.rankings == b.rankings);
  CHECK(a.true_index == b.true_index);
}

TEST_CASE("each selection branch of a stable mechanism is manipulable as published") {
  auto ex = bundled_example6();
  MisreportDomain dom = truncation_permutation_domain(ex.instance);

  // branch that favors the rival allocation: the middle seeker gains directly
  auto y2_branch = audit_strategy_proofness(ex.instance, stable_selecting_mechanism(StableSelection::lex_max), dom);
  bool a2_found = false;
  int a2 = *ex.instance.seeker_index("a2");
  for (const auto& rep : y2_branch)
    a2_found |= rep.seeker == a2 && rep.misreport == ex.misreports.at("a2_hat") &&
                rep.manipulated_outcome == ex.contract("x5") &&
                rep.truthful_outcome == ex.contract("x6");
  CHECK(a2_found);

  // branch that clings to the original allocation: once the middle seeker's
  // misreport is on file, the large seeker gains
  Instance shifted = ex.instance;
  shifted.preferences[a2].ranking = ex.misreports.at("a2_hat");
  MisreportDomain dom2 = truncation_permutation_domain(shifted);
  auto y1_branch =
      audit_strategy_proofness(shifted, stable_selecting_mechanism(StableSelection::lex_min), dom2);
  bool a1_found = false;
  int a1 = *ex.instance.seeker_index("a1");
  for (const auto& rep : y1_branch)
    a1_found |= rep.seeker == a1 && rep.misreport == ex.misreports.at("a1_hat") &&
                rep.manipulated_outcome == ex.contract("x1") &&
                rep.truthful_outcome == ex.contract("x2");
  CHECK(a1_found);
}

TEST_CASE("a lone seeker cannot manipulate anything") {
  InstanceData data;
  data.seekers = {{"a1", 1}};
  data.waits = {Rational(1), Rational(2)};
  data.states = {{"m1", 1, {{Rational(1), 1}, {Rational(2), 1}}, {"a1"}}};
  data.preferences = {{"a1", {{"m1", Rational(1)}, {"m1", Rational(2)}}}};
  Instance inst = validated(bind_instance(data));

  MisreportDomain dom = truncation_permutation_domain(inst, -1);
  CHECK(audit_strategy_proofness(inst, cumulative_offer_mechanism(), dom).empty());
  CHECK(audit_nom(inst, cumulative_offer_mechanism(), dom).empty());
}

TEST_CASE("best-case outcomes match a direct sweep") {
  // For every seeker: her best truthful outcome across the others' reports is
  // her top listed contract exactly when some profile leaves it reachable.
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Instance inst = generate_instance(seed, GenProfile::large_priority, {3, 2, 2, 3, 2});
    MisreportDomain dom = truncation_permutation_domain(inst, 2);
    Mechanism mech = cumulative_offer_mechanism();

    for (int a = 0; a < inst.n_seekers(); ++a) {
      // direct sweep over the full profile grid with a truthful
      std::optional<Contract> best;
      bool top_reachable = false;
      std::vector<std::size_t> digits(inst.n_seekers(), 0);
      for (;;) {
        std::vector<Preference> prefs = inst.preferences;
        for (int s = 0; s < inst.n_seekers(); ++s)
          if (s != a) prefs[s].ranking = dom.rankings[s][digits[s]];
        auto mine = contract_of(mech(inst, prefs), a);
        if (!best || prefers(inst.preferences[a], mine, best)) best = mine;
        if (mine && !inst.preferences[a].ranking.empty() &&
            *mine == inst.preferences[a].ranking[0])
          top_reachable = true;

        int s = inst.n_seekers() - 1;
        for (; s >= 0; --s) {
          if (s == a) continue;
          if (++digits[s] < dom.rankings[s].size()) break;
          digits[s] = 0;
        }
        if (s < 0) break;
      }
      CAPTURE(seed, a);
      bool best_is_top = best && !inst.preferences[a].ranking.empty() &&
                         *best == inst.preferences[a].ranking[0];
      CHECK(best_is_top == top_reachable);
    }
  }
}

TEST_CASE("obvious manipulations imply profitable ones and respect the flag invariant") {
  // scan a few unrestricted markets; whatever the sweep reports must be
  // internally consistent
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Instance inst = generate_instance(seed, GenProfile::unrestricted, {3, 2, 2, 3, 2});
    MisreportDomain dom = truncation_permutation_domain(inst, 2);
    auto reports = audit_nom(inst, cumulative_offer_mechanism(), dom);
    for (const auto& rep : reports) {
      CHECK(rep.profitable);
      bool worst_better = prefers(inst.preferences[rep.seeker], rep.worst_misreport, rep.worst_truthful);
      bool best_better = prefers(inst.preferences[rep.seeker], rep.best_misreport, rep.best_truthful);
      CHECK(rep.obvious == (worst_better || best_better));
      if (rep.truthful_outcome || rep.manipulated_outcome)
        CHECK(prefers(inst.preferences[rep.seeker], rep.manipulated_outcome, rep.truthful_outcome));
    }
  }
}

TEST_CASE("the profile guard trips before the sweep blows up") {
  Instance inst = generate_instance(9, GenProfile::unrestricted, {4, 3, 3, 2, 4});
  MisreportDomain dom = truncation_permutation_domain(inst);
  CHECK_THROWS_AS(audit_nom(inst, cumulative_offer_mechanism(), dom, 100), GuardError);
}
