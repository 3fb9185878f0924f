#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asylum/choice.hpp"
#include "asylum/completion.hpp"
#include "asylum/model.hpp"

namespace asylum {

// Per-state choice rules for the mechanism and the stability audits.
using PerStateRule = std::function<ContractSet(int state, const ContractSet& offered)>;

inline PerStateRule base_rules(const Instance& inst) {
  return [&inst](int m, const ContractSet& offered) { return choose_result(inst, m, offered); };
}

inline PerStateRule completed_rules(const Instance& inst) {
  return [&inst](int m, const ContractSet& offered) {
    return choose_completed_result(inst, m, offered);
  };
}

// Who proposes next among the seekers that currently hold nothing. The
// outcome provably cannot depend on this only in the homogeneous case, so
// the policy stays pluggable and auditable.
enum class OrderPolicy { round_robin, lowest_id, highest_id };

struct MechanismRound {
  int proposer = -1;
  Contract proposed;
  std::vector<ContractSet> cumulative_offers;  // per state, after the proposal
  std::vector<ContractSet> tentatively_held;   // per state, after the proposal
};

struct MechanismTrace {
  std::vector<MechanismRound> rounds;
  Allocation outcome;
  // Contracts dropped because one seeker ended up tentatively held more than
  // once (she keeps her most preferred one). Empty in the ordinary case.
  ContractSet truncated;
  bool multi_hold = false;
};

namespace detail {

struct CumulativeOfferRun {
  Allocation outcome;
  ContractSet truncated;
  bool multi_hold = false;
  int rounds = 0;
};

template <typename RoundObserver>
CumulativeOfferRun run_cumulative_offer(const Instance& inst,
                                        const std::vector<Preference>& prefs,
                                        const PerStateRule& rules, OrderPolicy policy,
                                        RoundObserver&& observe) {
  const int n = inst.n_seekers();
  std::vector<ContractSet> offers(inst.n_states());
  std::vector<ContractSet> held(inst.n_states());
  std::vector<int> next_rank(n, 0);
  std::vector<char> held_flag(n, 0);

  const long long round_guard =
      static_cast<long long>(n) * inst.n_states() * inst.n_waits() + 1;
  CumulativeOfferRun run;
  int cursor = 0;

  for (;;) {
    auto eligible = [&](int a) {
      return !held_flag[a] && next_rank[a] < static_cast<int>(prefs[a].ranking.size());
    };
    int proposer = -1;
    switch (policy) {
      case OrderPolicy::round_robin:
        for (int step = 0; step < n; ++step) {
          int a = (cursor + step) % n;
          if (eligible(a)) {
            proposer = a;
            cursor = (a + 1) % n;
            break;
          }
        }
        break;
      case OrderPolicy::lowest_id:
        for (int a = 0; a < n && proposer < 0; ++a)
          if (eligible(a)) proposer = a;
        break;
      case OrderPolicy::highest_id:
        for (int a = n - 1; a >= 0 && proposer < 0; --a)
          if (eligible(a)) proposer = a;
        break;
    }
    if (proposer < 0) break;

    Contract x = prefs[proposer].ranking[next_rank[proposer]++];
    insert(offers[x.state], x);
    held[x.state] = rules(x.state, offers[x.state]);

    std::fill(held_flag.begin(), held_flag.end(), 0);
    for (const auto& chosen : held)
      for (const Contract& h : chosen) held_flag[h.seeker] = 1;

    observe(proposer, x, offers, held);
    if (++run.rounds > round_guard)
      throw Error("NonTermination: cumulative offer exceeded " + std::to_string(round_guard) +
                  " proposals; the supplied choice rule is not finite");
  }

  // Outcome: the union of the final per-state chosen sets. If a seeker is
  // held more than once she keeps her most preferred contract.
  ContractSet all;
  for (const auto& chosen : held)
    for (const Contract& h : chosen) insert(all, h);
  for (int a = 0; a < n; ++a) {
    std::optional<Contract> best;
    for (const Contract& h : all) {
      if (h.seeker != a) continue;
      if (!best || prefers(prefs[a], h, best)) best = h;
    }
    for (const Contract& h : all) {
      if (h.seeker != a || h == *best) continue;
      insert(run.truncated, h);
      run.multi_hold = true;
    }
    if (best) insert(run.outcome, *best);
  }
  return run;
}

}  // namespace detail

inline MechanismTrace cumulative_offer(const Instance& inst, const PerStateRule& rules,
                                       OrderPolicy policy = OrderPolicy::round_robin) {
  MechanismTrace trace;
  auto run = detail::run_cumulative_offer(
      inst, inst.preferences, rules, policy,
      [&](int proposer, const Contract& x, const std::vector<ContractSet>& offers,
          const std::vector<ContractSet>& held) {
        trace.rounds.push_back({proposer, x, offers, held});
      });
  trace.outcome = std::move(run.outcome);
  trace.truncated = std::move(run.truncated);
  trace.multi_hold = run.multi_hold;
  return trace;
}

// Outcome only, with an explicit preference profile; the workhorse of the
// misreport sweeps.
inline Allocation cumulative_offer_outcome(const Instance& inst,
                                           const std::vector<Preference>& prefs,
                                           const PerStateRule& rules,
                                           OrderPolicy policy = OrderPolicy::round_robin) {
  return detail::run_cumulative_offer(inst, prefs, rules, policy,
                                      [](int, const Contract&, const std::vector<ContractSet>&,
                                         const std::vector<ContractSet>&) {})
      .outcome;
}

enum class RuleVariant { base, completed };

inline MechanismTrace run_with_rule_variants(const Instance& inst, RuleVariant variant,
                                             OrderPolicy policy = OrderPolicy::round_robin) {
  return cumulative_offer(inst, variant == RuleVariant::base ? base_rules(inst) : completed_rules(inst),
                          policy);
}

// A mechanism maps a reported preference profile to an allocation; the rest
// of the problem data rides along in the instance.
using Mechanism = std::function<Allocation(const Instance&, const std::vector<Preference>&)>;

inline Mechanism cumulative_offer_mechanism(RuleVariant variant = RuleVariant::base,
                                            OrderPolicy policy = OrderPolicy::round_robin) {
  return [variant, policy](const Instance& inst, const std::vector<Preference>& prefs) {
    return cumulative_offer_outcome(
        inst, prefs, variant == RuleVariant::base ? base_rules(inst) : completed_rules(inst),
        policy);
  };
}

}  // namespace asylum
