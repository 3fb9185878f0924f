#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asylum/audit_report.hpp"
#include "asylum/mechanism.hpp"
#include "asylum/model.hpp"

namespace asylum {

namespace detail {

// Shared by the audit (which wants all witnesses) and the enumerator (which
// wants a fast yes/no).
inline bool blocks(const Instance& inst, const PerStateRule& rules, const Allocation& alloc,
                   const Contract& x) {
  (void)inst;
  ContractSet chosen = rules(x.state, with(alloc, x));
  return contains(chosen, x);
}

inline bool has_blocking_contract(const Instance& inst, const std::vector<Preference>& prefs,
                                  const PerStateRule& rules, const Allocation& alloc) {
  for (int a = 0; a < inst.n_seekers(); ++a) {
    std::optional<Contract> current = contract_of(alloc, a);
    for (const Contract& x : prefs[a].ranking) {
      if (contains(alloc, x)) continue;
      if (!prefers(prefs[a], x, current)) continue;
      if (blocks(inst, rules, alloc, x)) return true;
    }
  }
  return false;
}

// Full stability predicate: every held contract is acceptable to its seeker,
// every state re-chooses exactly what it holds, and nothing blocks.
inline bool stable_ok(const Instance& inst, const std::vector<Preference>& prefs,
                      const PerStateRule& rules, const Allocation& alloc) {
  for (const Contract& x : alloc)
    if (prefs[x.seeker].rank_of(x) < 0) return false;
  for (int m = 0; m < inst.n_states(); ++m) {
    ContractSet held = restrict_to_state(alloc, m);
    if (rules(m, held) != held) return false;
  }
  return !has_blocking_contract(inst, prefs, rules, alloc);
}

}  // namespace detail

// Stability audit. An allocation stands iff it is individually rational on
// both sides (held contracts are listed; each state re-chooses exactly its
// held set) and no seeker prefers a listed contract her member state would
// pick up when offered alongside the allocation. Witnesses list every
// violation, blocking contracts canonically sorted.
inline AuditReport is_stable(const Instance& inst, const std::vector<Preference>& prefs,
                             const PerStateRule& rules, const Allocation& alloc) {
  AuditReport report;

  for (const Contract& x : alloc) {
    report.stats.cases_examined += 1;
    if (prefs[x.seeker].rank_of(x) < 0)
      report.add_witness({"unacceptable-contract",
                          {{"seeker", inst.seekers[x.seeker].id},
                           {"contract", inst.contract_str(x)}}});
  }

  for (int m = 0; m < inst.n_states(); ++m) {
    ContractSet held = restrict_to_state(alloc, m);
    ContractSet rechosen = rules(m, held);
    report.stats.cases_examined += 1;
    if (rechosen != held)
      report.add_witness({"state-rejects",
                          {{"state", inst.states[m].id},
                           {"holds", set_str(inst, held)},
                           {"would-choose", set_str(inst, rechosen)}}});
  }

  std::vector<Contract> blockers;
  for (int a = 0; a < inst.n_seekers(); ++a) {
    std::optional<Contract> current = contract_of(alloc, a);
    for (const Contract& x : prefs[a].ranking) {
      if (contains(alloc, x)) continue;
      if (!prefers(prefs[a], x, current)) continue;
      report.stats.cases_examined += 1;
      if (detail::blocks(inst, rules, alloc, x)) blockers.push_back(x);
    }
  }
  std::sort(blockers.begin(), blockers.end());
  for (const Contract& x : blockers) {
    std::optional<Contract> current = contract_of(alloc, x.seeker);
    report.add_witness({"blocking",
                        {{"seeker", inst.seekers[x.seeker].id},
                         {"contract", inst.contract_str(x)},
                         {"holds", current ? inst.contract_str(*current) : "unmatched"}}});
  }
  return report;
}

inline AuditReport is_stable(const Instance& inst, const PerStateRule& rules,
                             const Allocation& alloc) {
  return is_stable(inst, inst.preferences, rules, alloc);
}

// ---------------------------------------------------------------------------
// Brute-force stable set enumeration: every assignment of each seeker to one
// of her listed contracts or to nothing, filtered by capacity feasibility
// and then by stability. Output in canonical order.

inline std::vector<Allocation> enumerate_stable(const Instance& inst,
                                                const std::vector<Preference>& prefs,
                                                const PerStateRule& rules,
                                                std::uint64_t guard = 2'000'000) {
  std::uint64_t space = 1;
  for (const auto& pref : prefs) {
    space *= pref.ranking.size() + 1;
    if (space > guard)
      throw GuardError("SpaceTooLarge", "allocation space exceeds " + std::to_string(guard));
  }

  std::vector<Allocation> stable;
  std::vector<int> pick(inst.n_seekers(), 0);  // ranking position; len == unmatched
  for (;;) {
    Allocation alloc;
    bool feasible = true;
    std::vector<int> cell_count(static_cast<std::size_t>(inst.n_states()) * inst.n_waits(), 0);
    for (int a = 0; a < inst.n_seekers() && feasible; ++a) {
      if (pick[a] == static_cast<int>(prefs[a].ranking.size())) continue;
      Contract x = prefs[a].ranking[pick[a]];
      int cell = x.state * inst.n_waits() + x.wait;
      if (++cell_count[cell] > inst.states[x.state].capacity[x.wait]) feasible = false;
      insert(alloc, x);
    }
    if (feasible && detail::stable_ok(inst, prefs, rules, alloc))
      stable.push_back(std::move(alloc));

    int a = inst.n_seekers() - 1;
    for (; a >= 0; --a) {
      if (pick[a] < static_cast<int>(prefs[a].ranking.size())) {
        ++pick[a];
        break;
      }
      pick[a] = 0;
    }
    if (a < 0) break;
  }
  std::sort(stable.begin(), stable.end(), sequence_less);
  return stable;
}

inline std::vector<Allocation> enumerate_stable(const Instance& inst, const PerStateRule& rules,
                                                std::uint64_t guard = 2'000'000) {
  return enumerate_stable(inst, inst.preferences, rules, guard);
}

// ---------------------------------------------------------------------------
// A deterministic mechanism that picks a stable allocation whenever one
// exists (everyone unmatched otherwise). The two selections pick opposite
// ends of the canonically ordered stable set, which is what lets a test
// exercise both branches of a selection-dependent argument.

enum class StableSelection { lex_min, lex_max };

inline Mechanism stable_selecting_mechanism(StableSelection selection,
                                            std::uint64_t guard = 2'000'000) {
  return [selection, guard](const Instance& inst, const std::vector<Preference>& prefs) {
    auto stable = enumerate_stable(inst, prefs, base_rules(inst), guard);
    if (stable.empty()) return Allocation{};
    return selection == StableSelection::lex_min ? stable.front() : stable.back();
  };
}

}  // namespace asylum
