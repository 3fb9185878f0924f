#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asylum/audit_report.hpp"
#include "asylum/model.hpp"

namespace asylum {

// A choice rule bound to one member state: offered contracts in, chosen
// contracts out. Audits treat rules as opaque functions.
using ChoiceRule = std::function<ContractSet(const ContractSet&)>;

enum class StopReason { continued, quota_reached, no_candidates };

inline const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::continued: return "continued";
    case StopReason::quota_reached: return "quota-reached";
    case StopReason::no_candidates: return "no-candidates";
  }
  return "?";
}

// One loop iteration of the choice algorithm: the state of play at the start
// of step k plus what was picked (nothing on the stopping step).
struct ChoiceStep {
  int k = 1;
  ContractSet accepted_so_far;
  ContractSet candidates;
  std::optional<int> picked_seeker;
  std::optional<Contract> picked_contract;
  StopReason reason = StopReason::continued;
};

struct ChoiceTrace {
  std::vector<ChoiceStep> steps;
  ContractSet result;
  StopReason stop = StopReason::no_candidates;
  bool duplicated_seeker = false;  // only the completed rule can set this

  const ContractSet& chosen() const { return result; }
};

namespace detail {

enum class RuleVariant { base, completed };

struct ChoiceRunOptions {
  RuleVariant variant = RuleVariant::base;
  bool quota_stop = true;  // displacement alignment runs with the quota stop off
};

struct ChoiceRun {
  ContractSet result;
  std::vector<Contract> order;  // acceptance order, one contract per step
  StopReason stop = StopReason::no_candidates;
};

// The shared step loop. The base rule drops every contract of an accepted
// seeker from the candidate pool; the completed rule drops accepted
// contracts only, keeping the seeker in the race.
template <typename StepObserver>
ChoiceRun run_choice(const Instance& inst, int m, const ContractSet& offered,
                     ChoiceRunOptions opts, StepObserver&& observe) {
  const MemberState& state = inst.states[m];
  ContractSet menu = restrict_to_state(offered, m);

  ChoiceRun run;
  std::vector<int> wait_count(inst.n_waits(), 0);
  std::vector<char> seeker_accepted(inst.n_seekers(), 0);
  long long burden = 0;

  for (int k = 1;; ++k) {
    ContractSet candidates;
    for (const Contract& x : menu) {
      if (state.capacity[x.wait] <= wait_count[x.wait]) continue;
      if (opts.variant == RuleVariant::base) {
        if (seeker_accepted[x.seeker]) continue;
      } else {
        if (contains(run.result, x)) continue;
      }
      candidates.push_back(x);
    }

    StopReason reason = StopReason::continued;
    if (opts.quota_stop && burden >= state.quota)
      reason = StopReason::quota_reached;
    else if (candidates.empty())
      reason = StopReason::no_candidates;

    if (reason != StopReason::continued) {
      observe(k, run.result, candidates, std::optional<Contract>{}, reason);
      run.stop = reason;
      return run;
    }

    // Highest-priority seeker in A(Z), then her lowest-wait candidate.
    const Contract* pick = nullptr;
    for (const Contract& x : candidates) {
      if (!pick) {
        pick = &x;
        continue;
      }
      int rx = state.priority_rank[x.seeker];
      int rp = state.priority_rank[pick->seeker];
      if (rx < rp || (rx == rp && x.wait < pick->wait))
        pick = &x;
      else
        // the lowest-wait pick is unique: equal rank means the same seeker,
        // and one seeker's contracts at one state all differ in wait
        assert(rx != rp || x.wait != pick->wait);
    }

    Contract accepted = *pick;
    observe(k, run.result, candidates, std::optional<Contract>{accepted}, StopReason::continued);
    insert(run.result, accepted);
    run.order.push_back(accepted);
    wait_count[accepted.wait] += 1;
    seeker_accepted[accepted.seeker] = 1;
    burden += inst.burden(accepted.seeker);
  }
}

inline ChoiceRun run_choice(const Instance& inst, int m, const ContractSet& offered,
                            ChoiceRunOptions opts) {
  return run_choice(inst, m, offered, opts,
                    [](int, const ContractSet&, const ContractSet&,
                       const std::optional<Contract>&, StopReason) {});
}

inline ChoiceTrace run_choice_trace(const Instance& inst, int m, const ContractSet& offered,
                                    ChoiceRunOptions opts) {
  ChoiceTrace trace;
  auto run = run_choice(inst, m, offered, opts,
                        [&](int k, const ContractSet& accepted, const ContractSet& candidates,
                            const std::optional<Contract>& pick, StopReason reason) {
                          ChoiceStep step;
                          step.k = k;
                          step.accepted_so_far = accepted;
                          step.candidates = candidates;
                          step.picked_contract = pick;
                          if (pick) step.picked_seeker = pick->seeker;
                          step.reason = reason;
                          trace.steps.push_back(std::move(step));
                        });
  trace.result = std::move(run.result);
  trace.stop = run.stop;
  std::vector<char> seen(inst.n_seekers(), 0);
  for (const Contract& x : trace.result) {
    if (seen[x.seeker]) trace.duplicated_seeker = true;
    seen[x.seeker] = 1;
  }
  return trace;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Qualification predicates. Both take the chosen set explicitly, the way the
// step-indexed sets are used when reasoning about the rule.

// True iff the total burden of seekers in `chosen` ranked above `a` is still
// below the state's quota. The sum is per seeker, not per contract.
inline bool qualifies_for_acceptance(const Instance& inst, int m, const ContractSet& offered,
                                     const ContractSet& chosen, int a) {
  if (a < 0 || a >= inst.n_seekers())
    throw LookupError("UnknownSeeker", "seeker index " + std::to_string(a));
  (void)offered;
  const MemberState& state = inst.states[m];
  long long sum = 0;
  int last_seeker = -1;  // chosen is sorted, so one seeker's contracts are adjacent
  for (const Contract& x : chosen) {
    if (x.state != m || x.seeker == last_seeker) continue;
    last_seeker = x.seeker;
    if (state.ranks_above(x.seeker, a)) sum += inst.burden(x.seeker);
  }
  return sum < state.quota;
}

// True iff `a` has an offered contract at wait `w` and the slots for `w` are
// not yet filled by higher-priority seekers in `chosen`.
inline bool qualifies_for_wait_time(const Instance& inst, int m, const ContractSet& offered,
                                    const ContractSet& chosen, int a, int w) {
  if (a < 0 || a >= inst.n_seekers())
    throw LookupError("UnknownSeeker", "seeker index " + std::to_string(a));
  if (w < 0 || w >= inst.n_waits())
    throw LookupError("UnknownWaitTime", "wait index " + std::to_string(w));
  const MemberState& state = inst.states[m];

  bool offered_here = false;
  for (const Contract& x : offered)
    if (x.state == m && x.seeker == a && x.wait == w) {
      offered_here = true;
      break;
    }
  if (!offered_here) return false;

  int higher = 0;  // a seeker appears at most once per (state, wait)
  for (const Contract& x : chosen)
    if (x.state == m && x.wait == w && state.ranks_above(x.seeker, a)) ++higher;
  return higher < state.capacity[w];
}

// ---------------------------------------------------------------------------
// The member state choice rule: process seekers in priority order, give each
// her lowest offered wait with free capacity, stop once the quota is covered.

inline ChoiceTrace choose(const Instance& inst, int m, const ContractSet& offered) {
  return detail::run_choice_trace(inst, m, offered, {detail::RuleVariant::base, true});
}

inline ContractSet choose_result(const Instance& inst, int m, const ContractSet& offered) {
  return detail::run_choice(inst, m, offered, {detail::RuleVariant::base, true}).result;
}

inline ChoiceRule make_choice_rule(const Instance& inst, int m) {
  return [&inst, m](const ContractSet& offered) { return choose_result(inst, m, offered); };
}

// ---------------------------------------------------------------------------
// Axiom checking over an enumerable universe.

namespace detail {

inline void check_guard(std::size_t universe_size, std::size_t bound, const char* caller) {
  if (universe_size > bound)
    throw GuardError("UniverseTooLarge", std::string(caller) + ": universe of " +
                                             std::to_string(universe_size) +
                                             " contracts exceeds bound " + std::to_string(bound));
}

inline ContractSet mask_to_set(const ContractSet& universe, std::uint32_t mask) {
  ContractSet out;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (mask & (1u << i)) out.push_back(universe[i]);
  return out;
}

// Axiom evaluation for one menu and one candidate selection. All three
// axioms are local to (menu, chosen), which is what makes the brute-force
// uniqueness oracle below possible.
struct AxiomFinding {
  std::string axiom;  // "selection", "feasibility", "early-filling", "respecting-priorities"
  std::vector<std::pair<std::string, std::string>> fields;
};

inline std::vector<AxiomFinding> axiom_findings(const Instance& inst, int m,
                                                const ContractSet& menu,
                                                const ContractSet& chosen) {
  const MemberState& state = inst.states[m];
  std::vector<AxiomFinding> findings;

  for (const Contract& x : chosen)
    if (!contains(menu, x) || x.state != m) {
      findings.push_back({"selection",
                          {{"X'", set_str(inst, menu)},
                           {"chosen", set_str(inst, chosen)},
                           {"offending", inst.contract_str(x)}}});
      return findings;  // nothing else is meaningful for a non-selection
    }

  std::vector<int> per_seeker(inst.n_seekers(), 0);
  std::vector<int> per_wait(inst.n_waits(), 0);
  for (const Contract& x : chosen) {
    if (++per_seeker[x.seeker] == 2)
      findings.push_back({"feasibility",
                          {{"X'", set_str(inst, menu)},
                           {"seeker", inst.seekers[x.seeker].id},
                           {"reason", "more than one contract per seeker"}}});
    if (++per_wait[x.wait] == state.capacity[x.wait] + 1)
      findings.push_back({"feasibility",
                          {{"X'", set_str(inst, menu)},
                           {"wait", to_string(inst.waits[x.wait])},
                           {"reason", "bureaucratic capacity exceeded"}}});
  }

  for (const Contract& x : chosen)
    for (const Contract& y : menu) {
      if (y.seeker != x.seeker || y.wait >= x.wait || contains(chosen, y)) continue;
      if (qualifies_for_wait_time(inst, m, menu, chosen, x.seeker, y.wait))
        findings.push_back({"early-filling",
                            {{"X'", set_str(inst, menu)},
                             {"accepted", inst.contract_str(x)},
                             {"rejected", inst.contract_str(y)}}});
    }

  std::vector<char> in_menu(inst.n_seekers(), 0);
  std::vector<char> holds(inst.n_seekers(), 0);
  for (const Contract& x : menu) in_menu[x.seeker] = 1;
  for (const Contract& x : chosen) holds[x.seeker] = 1;
  for (int a = 0; a < inst.n_seekers(); ++a) {
    if (!in_menu[a]) continue;
    bool q_accept = qualifies_for_acceptance(inst, m, menu, chosen, a);
    bool q_wait = false;
    for (int w = 0; w < inst.n_waits() && !q_wait; ++w)
      q_wait = qualifies_for_wait_time(inst, m, menu, chosen, a, w);
    bool qualified = q_accept && q_wait;
    if (qualified != static_cast<bool>(holds[a]))
      findings.push_back({"respecting-priorities",
                          {{"X'", set_str(inst, menu)},
                           {"seeker", inst.seekers[a].id},
                           {"holds-contract", holds[a] ? "yes" : "no"},
                           {"qualifies", qualified ? "yes" : "no"}}});
  }

  return findings;
}

// Keeps, per witness kind, the violation whose key is smallest in the
// canonical order; enumeration order then does not matter. A key is a tuple
// of contract sets (menu first, then the pivots), compared component-wise
// with sequence-lex inside each component.
struct CanonicalWitnessPicker {
  using Key = std::vector<ContractSet>;

  static bool key_less(const Key& a, const Key& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (sequence_less(a[i], b[i])) return true;
      if (sequence_less(b[i], a[i])) return false;
    }
    return a.size() < b.size();
  }

  struct Entry {
    Key key;
    AuditWitness witness;
  };
  std::vector<Entry> best;  // at most one entry per witness kind

  void offer(Key key, AuditWitness witness) {
    for (auto& entry : best) {
      if (entry.witness.kind != witness.kind) continue;
      if (key_less(key, entry.key)) entry = {std::move(key), std::move(witness)};
      return;
    }
    best.push_back({std::move(key), std::move(witness)});
  }

  void emit(AuditReport& report, const std::vector<std::string>& kind_order) {
    for (const auto& kind : kind_order)
      for (auto& entry : best)
        if (entry.witness.kind == kind) report.add_witness(std::move(entry.witness));
  }
};

}  // namespace detail

// Enumerates every menu X' from the universe (restricted to state m) and
// checks feasibility, early filling, and respect of priorities against the
// rule's own output. Reports the canonically smallest witness per violated
// axiom.
inline AuditReport check_axioms(const Instance& inst, int m, const ChoiceRule& rule,
                                const ContractSet& universe, std::size_t guard = 16) {
  ContractSet column = restrict_to_state(universe, m);
  detail::check_guard(column.size(), guard, "check_axioms");

  AuditReport report;
  detail::CanonicalWitnessPicker picker;
  const std::uint32_t n_masks = std::uint32_t(1) << column.size();
  for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
    ContractSet menu = detail::mask_to_set(column, mask);
    ContractSet chosen = rule(menu);
    report.stats.cases_examined += 1;
    std::vector<std::string> seen;  // first finding per axiom within this menu
    for (auto& finding : detail::axiom_findings(inst, m, menu, chosen)) {
      if (std::find(seen.begin(), seen.end(), finding.axiom) != seen.end()) continue;
      seen.push_back(finding.axiom);
      AuditWitness witness;
      witness.kind = finding.axiom;
      witness.fields = std::move(finding.fields);
      witness.fields.emplace_back("rule-chose", set_str(inst, chosen));
      picker.offer({menu}, std::move(witness));
    }
  }
  picker.emit(report, {"selection", "feasibility", "early-filling", "respecting-priorities"});
  return report;
}

// Brute-force Theorem-1 oracle: for every menu, every selection from it is
// scored against the three axioms; the axioms must pin down exactly the
// member state choice rule. Any second passing selection is a uniqueness
// counterexample.
inline AuditReport unique_axiom_rule_oracle(const Instance& inst, int m,
                                            const ContractSet& universe,
                                            std::size_t guard = 6) {
  ContractSet column = restrict_to_state(universe, m);
  detail::check_guard(column.size(), guard, "unique_axiom_rule_oracle");

  AuditReport report;
  const std::uint32_t n_masks = std::uint32_t(1) << column.size();
  for (std::uint32_t menu_mask = 0; menu_mask < n_masks; ++menu_mask) {
    ContractSet menu = detail::mask_to_set(column, menu_mask);
    ContractSet expected = choose_result(inst, m, menu);

    std::vector<ContractSet> passing;
    for (std::uint32_t sel = menu_mask;; sel = (sel - 1) & menu_mask) {
      ContractSet chosen = detail::mask_to_set(column, sel);
      report.stats.cases_examined += 1;
      if (detail::axiom_findings(inst, m, menu, chosen).empty()) passing.push_back(chosen);
      if (sel == 0) break;
    }

    bool expected_passes = false;
    for (const auto& s : passing) expected_passes |= s == expected;
    if (!expected_passes)
      report.add_witness({"rule-fails-axioms",
                          {{"X'", set_str(inst, menu)}, {"chosen", set_str(inst, expected)}}});
    for (const auto& s : passing)
      if (s != expected)
        report.add_witness({"second-rule",
                            {{"X'", set_str(inst, menu)},
                             {"expected", set_str(inst, expected)},
                             {"also-passes", set_str(inst, s)}}});
  }
  return report;
}

}  // namespace asylum
