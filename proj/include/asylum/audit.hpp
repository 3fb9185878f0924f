#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asylum/audit_report.hpp"
#include "asylum/choice.hpp"
#include "asylum/model.hpp"

namespace asylum {

namespace detail {

// Rule outputs memoized over every subset of the audited universe. The rule
// stays opaque: it is evaluated once per menu and only its outputs are
// inspected.
struct RuleTable {
  ContractSet column;              // universe restricted to the state
  std::vector<ContractSet> out;    // indexed by menu mask

  RuleTable(const Instance& inst, int m, const ChoiceRule& rule, const ContractSet& universe,
            std::size_t guard, const char* caller) {
    column = restrict_to_state(universe, m);
    check_guard(column.size(), guard, caller);
    out.resize(std::size_t(1) << column.size());
    for (std::uint32_t mask = 0; mask < out.size(); ++mask)
      out[mask] = rule(mask_to_set(column, mask));
  }

  std::size_t size() const { return column.size(); }
  std::uint32_t n_masks() const { return std::uint32_t(out.size()); }

  std::optional<std::size_t> index_of(const Contract& x) const {
    auto it = std::lower_bound(column.begin(), column.end(), x);
    if (it == column.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - column.begin());
  }
};

inline void require(bool ok, const char* what) {
  if (!ok) throw Error(std::string("witness failed self-validation: ") + what);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Substitutability: a contract chosen from a larger menu is still chosen
// after an unrelated contract disappears. Witness: the canonically smallest
// (X', x, x') with x in rule(X' + {x, x'}) but x not in rule(X' + {x}).

inline AuditReport is_substitutable(const Instance& inst, int m, const ChoiceRule& rule,
                                    const ContractSet& universe, std::size_t guard = 16) {
  detail::RuleTable table(inst, m, rule, universe, guard, "is_substitutable");
  AuditReport report;
  detail::CanonicalWitnessPicker picker;

  for (std::uint32_t menu = 0; menu < table.n_masks(); ++menu) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (!(menu & (1u << i))) continue;
      const Contract& removed = table.column[i];
      std::uint32_t reduced = menu & ~(1u << i);
      for (const Contract& x : table.out[menu]) {
        if (x == removed) continue;
        auto xi = table.index_of(x);
        if (!xi || !(reduced & (1u << *xi))) continue;  // x must sit in the reduced menu
        report.stats.cases_examined += 1;
        if (contains(table.out[reduced], x)) continue;

        ContractSet base = detail::mask_to_set(table.column, reduced);
        erase(base, x);  // X' = menu minus {x, x'}
        detail::require(contains(rule(detail::mask_to_set(table.column, menu)), x) &&
                            !contains(rule(with(base, x)), x),
                        "substitutability");
        AuditWitness witness{"substitutability",
                             {{"X'", set_str(inst, base)},
                              {"x", inst.contract_str(x)},
                              {"x'", inst.contract_str(removed)}}};
        picker.offer({base, {x}, {removed}}, std::move(witness));
      }
    }
  }
  picker.emit(report, {"substitutability"});
  return report;
}

// Same scan restricted to pivots whose seeker is absent from X'.
inline AuditReport is_unilaterally_substitutable(const Instance& inst, int m,
                                                 const ChoiceRule& rule,
                                                 const ContractSet& universe,
                                                 std::size_t guard = 16) {
  detail::RuleTable table(inst, m, rule, universe, guard, "is_unilaterally_substitutable");
  AuditReport report;
  detail::CanonicalWitnessPicker picker;

  for (std::uint32_t menu = 0; menu < table.n_masks(); ++menu) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (!(menu & (1u << i))) continue;
      const Contract& removed = table.column[i];
      std::uint32_t reduced = menu & ~(1u << i);
      for (const Contract& x : table.out[menu]) {
        if (x == removed) continue;
        auto xi = table.index_of(x);
        if (!xi || !(reduced & (1u << *xi))) continue;
        ContractSet base = detail::mask_to_set(table.column, reduced);
        erase(base, x);
        bool seeker_in_base = false;
        for (const Contract& y : base) seeker_in_base |= y.seeker == x.seeker;
        if (seeker_in_base) continue;
        report.stats.cases_examined += 1;
        if (contains(table.out[reduced], x)) continue;

        AuditWitness witness{"unilateral-substitutability",
                             {{"X'", set_str(inst, base)},
                              {"x", inst.contract_str(x)},
                              {"x'", inst.contract_str(removed)}}};
        picker.offer({base, {x}, {removed}}, std::move(witness));
      }
    }
  }
  picker.emit(report, {"unilateral-substitutability"});
  return report;
}

// ---------------------------------------------------------------------------
// Law of aggregate demand: offering one more contract never shrinks the
// number of chosen contracts.

inline AuditReport satisfies_LAD(const Instance& inst, int m, const ChoiceRule& rule,
                                 const ContractSet& universe, std::size_t guard = 16) {
  detail::RuleTable table(inst, m, rule, universe, guard, "satisfies_LAD");
  AuditReport report;
  detail::CanonicalWitnessPicker picker;

  for (std::uint32_t menu = 0; menu < table.n_masks(); ++menu) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (menu & (1u << i)) continue;
      std::uint32_t larger = menu | (1u << i);
      report.stats.cases_examined += 1;
      if (table.out[larger].size() >= table.out[menu].size()) continue;

      ContractSet base = detail::mask_to_set(table.column, menu);
      detail::require(rule(with(base, table.column[i])).size() < rule(base).size(), "lad");
      AuditWitness witness{"lad",
                           {{"X'", set_str(inst, base)},
                            {"x", inst.contract_str(table.column[i])},
                            {"chose-before", set_str(inst, table.out[menu])},
                            {"chose-after", set_str(inst, table.out[larger])}}};
      picker.offer({base, {table.column[i]}}, std::move(witness));
    }
  }
  picker.emit(report, {"lad"});
  return report;
}

// ---------------------------------------------------------------------------
// Irrelevance of rejected contracts: adding a contract that ends up rejected
// leaves the chosen set untouched.

inline AuditReport satisfies_IRC(const Instance& inst, int m, const ChoiceRule& rule,
                                 const ContractSet& universe, std::size_t guard = 16) {
  detail::RuleTable table(inst, m, rule, universe, guard, "satisfies_IRC");
  AuditReport report;
  detail::CanonicalWitnessPicker picker;

  for (std::uint32_t menu = 0; menu < table.n_masks(); ++menu) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (menu & (1u << i)) continue;
      std::uint32_t larger = menu | (1u << i);
      report.stats.cases_examined += 1;
      if (contains(table.out[larger], table.column[i])) continue;
      if (table.out[larger] == table.out[menu]) continue;

      ContractSet base = detail::mask_to_set(table.column, menu);
      AuditWitness witness{"irc",
                           {{"X'", set_str(inst, base)},
                            {"x", inst.contract_str(table.column[i])},
                            {"without-x", set_str(inst, table.out[menu])},
                            {"with-x", set_str(inst, table.out[larger])}}};
      picker.offer({base, {table.column[i]}}, std::move(witness));
    }
  }
  picker.emit(report, {"irc"});
  return report;
}

// ---------------------------------------------------------------------------
// Impossibility witnesses for completions. On menus with at most one
// contract per seeker every completion is forced to agree with the base
// rule, so a property violation between two such menus rules out every
// completion with that property.

enum class PinnedProperty { substitutability, lad };

inline AuditReport pinned_completion_witness(const Instance& inst, int m,
                                             PinnedProperty property,
                                             const ContractSet& universe,
                                             std::size_t guard = 16) {
  ContractSet column = restrict_to_state(universe, m);
  detail::check_guard(column.size(), guard, "pinned_completion_witness");

  auto pinned = [&](std::uint32_t mask) {
    std::vector<char> seen(inst.n_seekers(), 0);
    for (std::size_t i = 0; i < column.size(); ++i) {
      if (!(mask & (1u << i))) continue;
      if (seen[column[i].seeker]) return false;
      seen[column[i].seeker] = 1;
    }
    return true;
  };

  const std::uint32_t n_masks = std::uint32_t(1) << column.size();
  std::vector<ContractSet> out(n_masks);
  std::vector<char> is_pinned(n_masks, 0);
  for (std::uint32_t mask = 0; mask < n_masks; ++mask) {
    is_pinned[mask] = pinned(mask);
    if (is_pinned[mask]) out[mask] = choose_result(inst, m, detail::mask_to_set(column, mask));
  }

  AuditReport report;
  detail::CanonicalWitnessPicker picker;
  for (std::uint32_t menu = 0; menu < n_masks; ++menu) {
    if (!is_pinned[menu]) continue;
    for (std::size_t i = 0; i < column.size(); ++i) {
      if (menu & (1u << i)) continue;
      std::uint32_t larger = menu | (1u << i);
      if (!is_pinned[larger]) continue;
      report.stats.cases_examined += 1;

      bool violated = false;
      std::string detail_str;
      if (property == PinnedProperty::lad) {
        violated = out[larger].size() < out[menu].size();
      } else {
        for (const Contract& x : out[larger])
          if (x != column[i] && contains(detail::mask_to_set(column, menu), x) &&
              !contains(out[menu], x)) {
            violated = true;
            detail_str = inst.contract_str(x);
            break;
          }
      }
      if (!violated) continue;

      ContractSet small_menu = detail::mask_to_set(column, menu);
      ContractSet large_menu = detail::mask_to_set(column, larger);
      AuditWitness witness{property == PinnedProperty::lad ? "pinned-lad" : "pinned-substitutability",
                           {{"X1", set_str(inst, small_menu)},
                            {"X2", set_str(inst, large_menu)},
                            {"chose-X1", set_str(inst, out[menu])},
                            {"chose-X2", set_str(inst, out[larger])}}};
      if (!detail_str.empty()) witness.fields.emplace_back("re-chosen", detail_str);
      picker.offer({small_menu, {column[i]}}, std::move(witness));
    }
  }
  picker.emit(report, {"pinned-substitutability", "pinned-lad"});
  report.notes.push_back("a witness pins every completion on both menus, so no completion can satisfy the property");
  return report;
}

}  // namespace asylum
