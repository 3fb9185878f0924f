#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asylum/choice.hpp"
#include "asylum/model.hpp"

namespace asylum {

// ---------------------------------------------------------------------------
// The completed member state choice rule: identical loop, but a seeker who
// already holds a contract stays in the race, so only accepted contracts
// (not accepted seekers) leave the candidate pool. The output may hold
// several contracts of one seeker; ChoiceTrace flags that.

inline ChoiceTrace choose_completed(const Instance& inst, int m, const ContractSet& offered) {
  return detail::run_choice_trace(inst, m, offered, {detail::RuleVariant::completed, true});
}

inline ContractSet choose_completed_result(const Instance& inst, int m,
                                           const ContractSet& offered) {
  return detail::run_choice(inst, m, offered, {detail::RuleVariant::completed, true}).result;
}

inline ChoiceRule make_completed_rule(const Instance& inst, int m) {
  return [&inst, m](const ContractSet& offered) {
    return choose_completed_result(inst, m, offered);
  };
}

// ---------------------------------------------------------------------------
// Completion test: on every menu the candidate rule must either agree with
// the base rule or hold two contracts of one seeker.

inline AuditReport is_completion_on(const Instance& inst, int m, const ChoiceRule& completed,
                                    const ChoiceRule& base, const ContractSet& universe,
                                    std::size_t guard = 16) {
  ContractSet column = restrict_to_state(universe, m);
  detail::check_guard(column.size(), guard, "is_completion_on");

  AuditReport report;
  detail::CanonicalWitnessPicker picker;
  const std::uint32_t n_masks = std::uint32_t(1) << column.size();
  for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
    ContractSet menu = detail::mask_to_set(column, mask);
    ContractSet wide = completed(menu);
    report.stats.cases_examined += 1;

    bool duplicated = false;
    for (std::size_t i = 1; i < wide.size(); ++i)
      duplicated |= wide[i].seeker == wide[i - 1].seeker;  // sorted by seeker
    if (duplicated) continue;

    ContractSet narrow = base(menu);
    if (wide == narrow) continue;
    picker.offer({menu},
                 {"completion",
                  {{"X'", set_str(inst, menu)},
                   {"completed", set_str(inst, wide)},
                   {"base", set_str(inst, narrow)}}});
  }
  picker.emit(report, {"completion"});
  return report;
}

// ---------------------------------------------------------------------------
// One-displacement structure of the completed rule. Adding x* to a menu
// shifts the acceptance sequence by exactly one slot between the step where
// x* lands and the step where the capacity at x*'s wait time runs out, and
// evicts at most that one contract. The alignment ignores the quota stop
// (the hypothesis makes the quota cutoff irrelevant); the report records
// whether the burden-sum hypothesis itself holds so both readings of the
// precondition stay visible.

inline AuditReport lemma1_displacement_check(const Instance& inst, int m,
                                             const ContractSet& offered, const Contract& extra) {
  if (contains(offered, extra))
    throw GuardError("PreconditionUnmet", "x* must not be part of X'");
  if (extra.state != m)
    throw GuardError("PreconditionUnmet", "x* must belong to the audited member state");

  detail::ChoiceRunOptions opts{detail::RuleVariant::completed, false};
  auto former = detail::run_choice(inst, m, offered, opts);
  auto latter = detail::run_choice(inst, m, with(offered, extra), opts);

  if (!contains(latter.result, extra))
    throw GuardError("PreconditionUnmet", "x* was not accepted from X' + {x*}");

  const auto& f = former.order;
  const auto& l = latter.order;

  std::size_t l1 = 0;  // 0-based position of x* in the latter sequence
  while (l1 < l.size() && l[l1] != extra) ++l1;

  AuditReport report;
  long long burden_with_extra = 0;  // per contract, the way the hypothesis sums
  for (const Contract& x : with(offered, extra))
    if (x.state == m) burden_with_extra += inst.burden(x.seeker);
  report.notes.push_back(std::string("burden hypothesis sum(s) >= q_m ") +
                         (burden_with_extra >= inst.states[m].quota ? "holds" : "does not hold"));
  report.notes.push_back("alignment computed with the quota stop disabled");

  auto order_str = [&](const std::vector<Contract>& order) {
    std::string out = "[";
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i) out += ",";
      out += inst.contract_str(order[i]);
    }
    return out + "]";
  };
  auto fail = [&](const std::string& reason) {
    report.add_witness({"displacement",
                        {{"X'", set_str(inst, offered)},
                         {"x*", inst.contract_str(extra)},
                         {"former-order", order_str(f)},
                         {"latter-order", order_str(l)},
                         {"reason", reason}}});
  };

  // identical prefix before x* lands
  bool prefix_ok = l1 <= f.size();
  for (std::size_t i = 0; prefix_ok && i < l1; ++i) prefix_ok = l[i] == f[i];
  if (!prefix_ok) {
    fail("sequences differ before x* is accepted");
    return report;
  }

  if (l.size() == f.size() + 1) {
    // no displacement: the tail is shifted by one all the way
    for (std::size_t i = l1 + 1; i < l.size(); ++i)
      if (l[i] != f[i - 1]) {
        fail("tail not shifted by exactly one step");
        return report;
      }
    report.notes.push_back("no contract displaced (l1 = " + std::to_string(l1 + 1) + ")");
  } else if (l.size() == f.size()) {
    // shifted tail until the displaced contract's step, identical after
    std::size_t i = l1 + 1;
    while (i < l.size() && l[i] == f[i - 1]) ++i;
    std::size_t l2 = i;  // 0-based step in the former run of the displaced contract
    for (; i < l.size(); ++i)
      if (l[i] != f[i]) {
        fail("tail realigns with more than one displacement");
        return report;
      }
    const Contract& displaced = f[l2 - 1];
    if (contains(latter.result, displaced)) {
      fail("supposedly displaced contract still accepted");
      return report;
    }
    if (displaced.wait != extra.wait) {
      fail("displaced contract has a different wait time than x*");
      return report;
    }
    report.notes.push_back("displaced " + inst.contract_str(displaced) + " (l1 = " +
                           std::to_string(l1 + 1) + ", l2 = " + std::to_string(l2) + ")");
  } else {
    fail("acceptance counts differ by more than one");
    return report;
  }

  report.stats.cases_examined = 1;
  return report;
}

}  // namespace asylum
