#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asylum/mechanism.hpp"
#include "asylum/model.hpp"

namespace asylum {

using Ranking = std::vector<Contract>;

// Candidate reports per seeker. The true ranking is always a member, so
// worst/best-case baselines and the P_{-a} sweeps are well defined.
struct MisreportDomain {
  std::vector<std::vector<Ranking>> rankings;
  std::vector<int> true_index;
  std::string description;

  std::uint64_t profile_count() const {
    std::uint64_t total = 1;
    for (const auto& r : rankings) total *= r.size();
    return total;
  }
};

// All ordered sub-rankings of the true listed set with length <= max_len
// (max_len < 0 lifts the cap), emitted by length and then lexicographically
// by index sequence. The full true ranking is appended when the cap cut it
// off.
inline MisreportDomain truncation_permutation_domain(const Instance& inst, int max_len = 4,
                                                     std::uint64_t per_seeker_guard = 100000) {
  MisreportDomain dom;
  dom.rankings.resize(inst.n_seekers());
  dom.true_index.assign(inst.n_seekers(), 0);
  dom.description = max_len < 0
                        ? "all orderings of subsets of the true listed set"
                        : "orderings of subsets of the true listed set up to length " +
                              std::to_string(max_len);

  for (int a = 0; a < inst.n_seekers(); ++a) {
    const Ranking& truth = inst.preferences[a].ranking;
    const int n = static_cast<int>(truth.size());
    const int cap = max_len < 0 ? n : std::min(max_len, n);

    auto& out = dom.rankings[a];
    std::vector<int> seq;
    std::vector<char> used(n, 0);
    auto emit = [&]() {
      Ranking r;
      r.reserve(seq.size());
      for (int i : seq) r.push_back(truth[i]);
      out.push_back(std::move(r));
    };
    // depth-first by target length keeps the emission order stable
    auto build = [&](auto&& self, int len) -> void {
      if (static_cast<int>(seq.size()) == len) {
        emit();
        return;
      }
      for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        used[i] = 1;
        seq.push_back(i);
        self(self, len);
        seq.pop_back();
        used[i] = 0;
      }
    };
    for (int len = 0; len <= cap; ++len) {
      build(build, len);
      if (out.size() > per_seeker_guard)
        throw GuardError("DomainTooLarge", "misreport domain for " + inst.seekers[a].id +
                                               " exceeds " + std::to_string(per_seeker_guard));
    }

    int truth_at = -1;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i] == truth) truth_at = static_cast<int>(i);
    if (truth_at < 0) {
      out.push_back(truth);
      truth_at = static_cast<int>(out.size()) - 1;
    }
    dom.true_index[a] = truth_at;
  }
  return dom;
}

// ---------------------------------------------------------------------------

struct ManipulationReport {
  int seeker = -1;
  Ranking true_ranking;
  Ranking misreport;
  std::optional<Contract> truthful_outcome;     // at the profile where the profit shows
  std::optional<Contract> manipulated_outcome;
  std::optional<Contract> worst_truthful, worst_misreport;  // NOM sweep only
  std::optional<Contract> best_truthful, best_misreport;
  bool profitable = false;
  bool obvious = false;
  std::string note;
};

// Fixes everyone else at the instance's reported profile and tries every
// candidate misreport; returns the profitable ones.
inline std::vector<ManipulationReport> audit_strategy_proofness(const Instance& inst,
                                                                const Mechanism& mechanism,
                                                                const MisreportDomain& domain) {
  std::vector<ManipulationReport> reports;
  Allocation truthful = mechanism(inst, inst.preferences);

  for (int a = 0; a < inst.n_seekers(); ++a) {
    std::optional<Contract> truth_out = contract_of(truthful, a);
    for (std::size_t r = 0; r < domain.rankings[a].size(); ++r) {
      if (static_cast<int>(r) == domain.true_index[a]) continue;
      std::vector<Preference> prefs = inst.preferences;
      prefs[a].ranking = domain.rankings[a][r];
      std::optional<Contract> out = contract_of(mechanism(inst, prefs), a);
      if (!prefers(inst.preferences[a], out, truth_out)) continue;

      ManipulationReport rep;
      rep.seeker = a;
      rep.true_ranking = inst.preferences[a].ranking;
      rep.misreport = domain.rankings[a][r];
      rep.truthful_outcome = truth_out;
      rep.manipulated_outcome = out;
      rep.profitable = true;
      rep.note = "others fixed at the instance profile";
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Non-obvious manipulability sweep. Outcomes are tabulated over the full
// profile product of the domain; worst and best cases are taken under the
// manipulator's true ranking. Reported manipulations are the profitable
// ones, each flagged obvious when it strictly improves the worst or the
// best case.

inline std::vector<ManipulationReport> audit_nom(const Instance& inst, const Mechanism& mechanism,
                                                 const MisreportDomain& domain,
                                                 std::uint64_t profile_guard = 300000) {
  const int n = inst.n_seekers();
  std::uint64_t total = domain.profile_count();
  if (total > profile_guard)
    throw GuardError("DomainTooLarge", "profile space " + std::to_string(total) + " exceeds " +
                                           std::to_string(profile_guard));

  std::vector<std::uint64_t> stride(n, 1);
  for (int a = n - 2; a >= 0; --a)
    stride[a] = stride[a + 1] * domain.rankings[a + 1].size();

  auto prefs_at = [&](std::uint64_t p) {
    std::vector<Preference> prefs = inst.preferences;
    for (int a = 0; a < n; ++a)
      prefs[a].ranking = domain.rankings[a][(p / stride[a]) % domain.rankings[a].size()];
    return prefs;
  };

  // keys[a][p]: position of a's outcome in her true ranking (len = unmatched)
  std::vector<std::vector<int>> keys(n, std::vector<int>(total));
  for (std::uint64_t p = 0; p < total; ++p) {
    Allocation out = mechanism(inst, prefs_at(p));
    for (int a = 0; a < n; ++a)
      keys[a][p] = detail::outcome_key(inst.preferences[a], contract_of(out, a));
  }

  auto outcome_at = [&](std::uint64_t p, int a) {
    return contract_of(mechanism(inst, prefs_at(p)), a);
  };

  std::vector<ManipulationReport> reports;
  for (int a = 0; a < n; ++a) {
    const std::uint64_t size_a = domain.rankings[a].size();
    const std::uint64_t others = total / size_a;
    // profile index for report r of seeker a and others-combo j
    auto profile = [&](std::uint64_t r, std::uint64_t j) {
      std::uint64_t low = j % stride[a];
      std::uint64_t high = j / stride[a];
      return high * stride[a] * size_a + r * stride[a] + low;
    };

    const std::uint64_t rt = domain.true_index[a];
    std::uint64_t worst_truth_j = 0, best_truth_j = 0;
    int worst_truth = -1, best_truth = -1;
    for (std::uint64_t j = 0; j < others; ++j) {
      int k = keys[a][profile(rt, j)];
      if (worst_truth < 0 || k > worst_truth) {
        worst_truth = k;
        worst_truth_j = j;
      }
      if (best_truth < 0 || k < best_truth) {
        best_truth = k;
        best_truth_j = j;
      }
    }

    for (std::uint64_t r = 0; r < size_a; ++r) {
      if (r == rt) continue;
      int worst = -1, best = -1;
      std::uint64_t worst_j = 0, best_j = 0, profit_j = 0;
      bool profitable = false;
      for (std::uint64_t j = 0; j < others; ++j) {
        int k = keys[a][profile(r, j)];
        if (worst < 0 || k > worst) {
          worst = k;
          worst_j = j;
        }
        if (best < 0 || k < best) {
          best = k;
          best_j = j;
        }
        if (!profitable && k < keys[a][profile(rt, j)]) {
          profitable = true;
          profit_j = j;
        }
      }
      bool obvious = worst < worst_truth || best < best_truth;
      if (!profitable && !obvious) continue;
      assert(profitable);  // an obvious improvement is profitable at the arg profile

      ManipulationReport rep;
      rep.seeker = a;
      rep.true_ranking = inst.preferences[a].ranking;
      rep.misreport = domain.rankings[a][r];
      rep.profitable = profitable;
      rep.obvious = obvious;
      rep.truthful_outcome = outcome_at(profile(rt, profit_j), a);
      rep.manipulated_outcome = outcome_at(profile(r, profit_j), a);
      rep.worst_truthful = outcome_at(profile(rt, worst_truth_j), a);
      rep.best_truthful = outcome_at(profile(rt, best_truth_j), a);
      rep.worst_misreport = outcome_at(profile(r, worst_j), a);
      rep.best_misreport = outcome_at(profile(r, best_j), a);
      rep.note = "sweep over " + std::to_string(others) + " profiles of the others; domain: " +
                 domain.description;
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

inline bool any_obvious(const std::vector<ManipulationReport>& reports) {
  for (const auto& r : reports)
    if (r.obvious) return true;
  return false;
}

}  // namespace asylum
