#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "asylum/audit_report.hpp"
#include "asylum/choice.hpp"
#include "asylum/manipulation.hpp"
#include "asylum/mechanism.hpp"
#include "asylum/model.hpp"

namespace asylum {

inline std::string render_allocation(const Instance& inst, const Allocation& alloc) {
  std::ostringstream out;
  for (int a = 0; a < inst.n_seekers(); ++a) {
    auto x = contract_of(alloc, a);
    out << "  " << inst.seekers[a].id << " -> ";
    if (x)
      out << inst.states[x->state].id << " at wait " << to_string(inst.waits[x->wait]);
    else
      out << "unmatched";
    out << "\n";
  }
  return out.str();
}

inline std::string render_choice_trace(const Instance& inst, const ChoiceTrace& trace) {
  std::ostringstream out;
  out << "step | accepted so far | candidates | picked | note\n";
  for (const auto& step : trace.steps) {
    out << step.k << " | " << set_str(inst, step.accepted_so_far) << " | "
        << set_str(inst, step.candidates) << " | ";
    if (step.picked_contract)
      out << inst.contract_str(*step.picked_contract);
    else
      out << "-";
    out << " | " << to_string(step.reason) << "\n";
  }
  out << "chosen: " << set_str(inst, trace.result) << "\n";
  if (trace.duplicated_seeker) out << "note: some seeker holds several contracts\n";
  return out.str();
}

inline std::string render_mechanism_trace(const Instance& inst, const MechanismTrace& trace) {
  std::ostringstream out;
  out << "round | proposer | contract | held per state\n";
  int round = 1;
  for (const auto& r : trace.rounds) {
    out << round++ << " | " << inst.seekers[r.proposer].id << " | "
        << inst.contract_str(r.proposed) << " |";
    for (int m = 0; m < inst.n_states(); ++m)
      out << " " << inst.states[m].id << "=" << set_str(inst, r.tentatively_held[m]);
    out << "\n";
  }
  out << "outcome:\n" << render_allocation(inst, trace.outcome);
  if (trace.multi_hold)
    out << "note: a seeker was held more than once; kept her preferred contract, dropped "
        << set_str(inst, trace.truncated) << "\n";
  return out.str();
}

inline std::string render_audit_report(const AuditReport& report) {
  std::ostringstream out;
  for (const auto& note : report.notes) out << "note: " << note << "\n";
  out << "cases examined: " << report.stats.cases_examined << "\n";
  for (const auto& w : report.witnesses) {
    out << "witness [" << w.kind << "]";
    for (const auto& [k, v] : w.fields) out << " " << k << "=" << v;
    out << "\n";
  }
  out << "VERDICT: " << (report.passed() ? "pass" : "fail") << " " << report.witnesses.size()
      << "\n";
  return out.str();
}

inline std::string render_manipulations(const Instance& inst,
                                        const std::vector<ManipulationReport>& reports,
                                        bool obvious_only_fails) {
  std::ostringstream out;
  auto contract_or_unmatched = [&](const std::optional<Contract>& x) {
    return x ? inst.contract_str(*x) : std::string("unmatched");
  };
  auto ranking_str = [&](const Ranking& r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += ",";
      s += inst.contract_str(r[i]);
    }
    return s + "]";
  };
  std::size_t failures = 0;
  for (const auto& r : reports) {
    bool fails = obvious_only_fails ? r.obvious : r.profitable;
    if (fails) ++failures;
    out << (r.obvious ? "obvious manipulation" : "manipulation") << " by "
        << inst.seekers[r.seeker].id << ": report " << ranking_str(r.misreport);
    if (r.truthful_outcome || r.manipulated_outcome)
      out << " turns " << contract_or_unmatched(r.truthful_outcome) << " into "
          << contract_or_unmatched(r.manipulated_outcome);
    if (r.worst_truthful || r.worst_misreport)
      out << " | worst " << contract_or_unmatched(r.worst_truthful) << " -> "
          << contract_or_unmatched(r.worst_misreport) << ", best "
          << contract_or_unmatched(r.best_truthful) << " -> "
          << contract_or_unmatched(r.best_misreport);
    if (!r.note.empty()) out << " (" << r.note << ")";
    out << "\n";
  }
  out << "VERDICT: " << (failures == 0 ? "pass" : "fail") << " " << failures << "\n";
  return out.str();
}

}  // namespace asylum
