#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "asylum/rational.hpp"

namespace asylum {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an id or a value does not refer to anything in the instance
// (unknown seeker, unknown wait time, contract handed to the wrong
// preference, unknown bundled example, ...).
class LookupError : public Error {
 public:
  LookupError(std::string code, const std::string& what)
      : Error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Raised when an enumeration guard trips (UniverseTooLarge, SpaceTooLarge,
// DomainTooLarge).
class GuardError : public Error {
 public:
  GuardError(std::string code, const std::string& what)
      : Error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

struct AsylumSeeker {
  std::string id;
  int burden = 1;  // units consumed from a state's quota
};

// A contract (seeker, state, wait) stored as indices into the instance's
// entity vectors. Entities are sorted by id and waits ascend, so the derived
// ordering is the canonical one used for every serialized set.
struct Contract {
  int seeker = -1;
  int state = -1;
  int wait = -1;

  friend auto operator<=>(const Contract&, const Contract&) = default;
};

// Sorted, duplicate-free vector. All set algebra below preserves that.
using ContractSet = std::vector<Contract>;

// An allocation is just a contract set that happens to satisfy the
// feasibility invariants; see allocation_violations().
using Allocation = ContractSet;

struct MemberState {
  std::string id;
  int quota = 0;               // q_m, soft burden target
  std::vector<int> capacity;   // slots per wait index (aligned with Instance::waits)
  std::vector<int> priority;   // seeker indices, best first; permutation of all seekers
  std::vector<int> priority_rank;  // rank per seeker index, 0 = best

  bool ranks_above(int a, int b) const {
    return priority_rank[a] < priority_rank[b];
  }
};

struct Preference {
  int seeker = -1;
  std::vector<Contract> ranking;  // best first, possibly truncated

  // Position in the ranking, or -1 when the contract is not listed.
  int rank_of(const Contract& x) const {
    for (std::size_t i = 0; i < ranking.size(); ++i)
      if (ranking[i] == x) return static_cast<int>(i);
    return -1;
  }
};

struct Instance {
  std::vector<AsylumSeeker> seekers;   // sorted by id
  std::vector<MemberState> states;     // sorted by id
  std::vector<Rational> waits;         // strictly ascending
  std::vector<Preference> preferences; // indexed by seeker

  int n_seekers() const { return static_cast<int>(seekers.size()); }
  int n_states() const { return static_cast<int>(states.size()); }
  int n_waits() const { return static_cast<int>(waits.size()); }

  std::optional<int> seeker_index(std::string_view id) const {
    for (int i = 0; i < n_seekers(); ++i)
      if (seekers[i].id == id) return i;
    return std::nullopt;
  }
  std::optional<int> state_index(std::string_view id) const {
    for (int i = 0; i < n_states(); ++i)
      if (states[i].id == id) return i;
    return std::nullopt;
  }
  std::optional<int> wait_index(const Rational& w) const {
    for (int i = 0; i < n_waits(); ++i)
      if (waits[i] == w) return i;
    return std::nullopt;
  }

  int burden(int seeker) const { return seekers[seeker].burden; }

  long long total_burden() const {
    long long sum = 0;
    for (const auto& a : seekers) sum += a.burden;
    return sum;
  }

  std::string contract_str(const Contract& x) const {
    return "(" + seekers[x.seeker].id + "," + states[x.state].id + "," +
           to_string(waits[x.wait]) + ")";
  }
};

// ---------------------------------------------------------------------------
// Contract set algebra.

inline bool contains(const ContractSet& set, const Contract& x) {
  return std::binary_search(set.begin(), set.end(), x);
}

inline void insert(ContractSet& set, const Contract& x) {
  auto it = std::lower_bound(set.begin(), set.end(), x);
  if (it == set.end() || *it != x) set.insert(it, x);
}

inline void erase(ContractSet& set, const Contract& x) {
  auto it = std::lower_bound(set.begin(), set.end(), x);
  if (it != set.end() && *it == x) set.erase(it);
}

inline ContractSet with(ContractSet set, const Contract& x) {
  insert(set, x);
  return set;
}

inline ContractSet without(ContractSet set, const Contract& x) {
  erase(set, x);
  return set;
}

inline ContractSet set_union(const ContractSet& a, const ContractSet& b) {
  ContractSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ContractSet make_set(std::vector<Contract> contracts) {
  std::sort(contracts.begin(), contracts.end());
  contracts.erase(std::unique(contracts.begin(), contracts.end()), contracts.end());
  return contracts;
}

inline ContractSet restrict_to_state(const ContractSet& set, int state) {
  ContractSet out;
  for (const auto& x : set)
    if (x.state == state) out.push_back(x);
  return out;
}

inline std::optional<Contract> contract_of(const ContractSet& set, int seeker) {
  for (const auto& x : set)
    if (x.seeker == seeker) return x;
  return std::nullopt;
}

// Lexicographic order on the sorted element sequences; the tie-break used to
// pick canonical first witnesses and serialize allocation sets.
inline bool sequence_less(const ContractSet& a, const ContractSet& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------
// Preferences over contracts-or-unmatched.
//
// Rankings may be truncated. A listed contract beats being unmatched,
// unmatched beats any unlisted contract, and unlisted contracts are mutually
// incomparable. Only listed contracts are ever proposed or counted as blocks.

namespace detail {

// Smaller key = better. Listed contracts take their ranking position,
// unmatched sits right below the listed ones, unlisted below that.
inline int outcome_key(const Preference& pref, const std::optional<Contract>& x) {
  int listed = static_cast<int>(pref.ranking.size());
  if (!x.has_value()) return listed;
  if (x->seeker != pref.seeker)
    throw LookupError("WrongSeeker", "contract belongs to a different asylum seeker");
  int rank = pref.rank_of(*x);
  return rank >= 0 ? rank : listed + 1;
}

}  // namespace detail

// Strict preference: true iff `x` is strictly better than `y` for the owner
// of `pref`.
inline bool prefers(const Preference& pref, const std::optional<Contract>& x,
                    const std::optional<Contract>& y) {
  int kx = detail::outcome_key(pref, x);
  int ky = detail::outcome_key(pref, y);
  if (kx == static_cast<int>(pref.ranking.size()) + 1 && kx == ky)
    return false;  // two unlisted contracts: incomparable
  return kx < ky;
}

inline bool prefers(const Instance& inst, int seeker, const std::optional<Contract>& x,
                    const std::optional<Contract>& y) {
  return prefers(inst.preferences[seeker], x, y);
}

// ---------------------------------------------------------------------------
// Validation.

struct ValidationIssue {
  enum class Code {
    quota_deficit,               // aggregate quota < aggregate burden
    capacity_deficit,            // some state's slots sum below quota or |A|
    dangling_reference,
    duplicate_preference_entry,
    duplicate_id,
    invalid_axis,                // waits not strictly ascending / negative
    invalid_burden,              // burden < 1
    invalid_priority,            // not a permutation of all seekers
    invalid_count,               // negative quota or slot count
    missing_preference,          // not exactly one ranking per seeker
  };
  Code code;
  std::string detail;
};

inline const char* to_string(ValidationIssue::Code code) {
  switch (code) {
    case ValidationIssue::Code::quota_deficit: return "QuotaDeficit";
    case ValidationIssue::Code::capacity_deficit: return "CapacityDeficit";
    case ValidationIssue::Code::dangling_reference: return "DanglingReference";
    case ValidationIssue::Code::duplicate_preference_entry: return "DuplicatePreferenceEntry";
    case ValidationIssue::Code::duplicate_id: return "DuplicateId";
    case ValidationIssue::Code::invalid_axis: return "InvalidAxis";
    case ValidationIssue::Code::invalid_burden: return "InvalidBurden";
    case ValidationIssue::Code::invalid_priority: return "InvalidPriority";
    case ValidationIssue::Code::invalid_count: return "InvalidCount";
    case ValidationIssue::Code::missing_preference: return "MissingPreference";
  }
  return "?";
}

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<ValidationIssue>& issues) {
    std::string out = "instance validation failed:";
    for (const auto& i : issues) {
      out += "\n  ";
      out += to_string(i.code);
      out += ": ";
      out += i.detail;
    }
    return out;
  }
  std::vector<ValidationIssue> issues_;
};

// Checks every model invariant and reports all violations. Structurally
// broken instances (bad indices) are rejected by bind_instance() in io.hpp
// before they ever become an Instance, so this only sees indexable data.
inline std::vector<ValidationIssue> validate_instance(const Instance& inst) {
  std::vector<ValidationIssue> issues;
  auto add = [&](ValidationIssue::Code code, std::string detail) {
    issues.push_back({code, std::move(detail)});
  };

  for (int i = 1; i < inst.n_seekers(); ++i)
    if (!(inst.seekers[i - 1].id < inst.seekers[i].id))
      add(ValidationIssue::Code::duplicate_id, "seeker ids not strictly sorted: " + inst.seekers[i].id);
  for (int i = 1; i < inst.n_states(); ++i)
    if (!(inst.states[i - 1].id < inst.states[i].id))
      add(ValidationIssue::Code::duplicate_id, "state ids not strictly sorted: " + inst.states[i].id);

  for (const auto& a : inst.seekers)
    if (a.burden < 1)
      add(ValidationIssue::Code::invalid_burden, "seeker " + a.id + " has burden < 1");

  for (int i = 0; i < inst.n_waits(); ++i) {
    if (inst.waits[i] < Rational(0))
      add(ValidationIssue::Code::invalid_axis, "negative wait time " + to_string(inst.waits[i]));
    if (i > 0 && !(inst.waits[i - 1] < inst.waits[i]))
      add(ValidationIssue::Code::invalid_axis, "wait times not strictly ascending at " + to_string(inst.waits[i]));
  }

  long long total_quota = 0;
  for (const auto& m : inst.states) {
    if (m.quota < 0)
      add(ValidationIssue::Code::invalid_count, "state " + m.id + " has negative quota");
    total_quota += m.quota;

    long long slots = 0;
    if (static_cast<int>(m.capacity.size()) != inst.n_waits())
      add(ValidationIssue::Code::dangling_reference, "state " + m.id + " capacity table does not match wait axis");
    for (int c : m.capacity) {
      if (c < 0) add(ValidationIssue::Code::invalid_count, "state " + m.id + " has negative slot count");
      slots += c;
    }
    if (slots < m.quota)
      add(ValidationIssue::Code::capacity_deficit,
          "state " + m.id + " schedules " + std::to_string(slots) + " slots < quota " + std::to_string(m.quota));
    if (slots < inst.n_seekers())
      add(ValidationIssue::Code::capacity_deficit,
          "state " + m.id + " schedules " + std::to_string(slots) + " slots < " + std::to_string(inst.n_seekers()) + " seekers");

    std::vector<bool> seen(inst.n_seekers(), false);
    bool ok = static_cast<int>(m.priority.size()) == inst.n_seekers();
    for (int a : m.priority) {
      if (a < 0 || a >= inst.n_seekers() || seen[a]) {
        ok = false;
        break;
      }
      seen[a] = true;
    }
    if (!ok)
      add(ValidationIssue::Code::invalid_priority, "state " + m.id + " priority is not a permutation of all seekers");
  }

  if (total_quota < inst.total_burden())
    add(ValidationIssue::Code::quota_deficit,
        "aggregate quota " + std::to_string(total_quota) + " < aggregate burden " + std::to_string(inst.total_burden()));

  if (static_cast<int>(inst.preferences.size()) != inst.n_seekers()) {
    add(ValidationIssue::Code::missing_preference, "expected exactly one ranking per seeker");
  } else {
    for (int a = 0; a < inst.n_seekers(); ++a) {
      const auto& pref = inst.preferences[a];
      if (pref.seeker != a) {
        add(ValidationIssue::Code::missing_preference, "ranking list not aligned with seekers");
        continue;
      }
      for (std::size_t i = 0; i < pref.ranking.size(); ++i) {
        const Contract& x = pref.ranking[i];
        if (x.seeker != a || x.state < 0 || x.state >= inst.n_states() || x.wait < 0 || x.wait >= inst.n_waits()) {
          add(ValidationIssue::Code::dangling_reference, "ranking of " + inst.seekers[a].id + " references undeclared entities");
          continue;
        }
        for (std::size_t j = 0; j < i; ++j)
          if (pref.ranking[j].state == x.state && pref.ranking[j].wait == x.wait)
            add(ValidationIssue::Code::duplicate_preference_entry,
                "ranking of " + inst.seekers[a].id + " lists " + inst.contract_str(x) + " twice");
      }
    }
  }

  return issues;
}

// The spec's validate_instance: hand back the instance iff it is invariant
// clean, otherwise throw with the full violation list.
inline Instance validated(Instance inst) {
  auto issues = validate_instance(inst);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return inst;
}

// X = A x M x W in canonical order.
inline ContractSet full_contract_universe(const Instance& inst) {
  ContractSet out;
  out.reserve(static_cast<std::size_t>(inst.n_seekers()) * inst.n_states() * inst.n_waits());
  for (int a = 0; a < inst.n_seekers(); ++a)
    for (int m = 0; m < inst.n_states(); ++m)
      for (int w = 0; w < inst.n_waits(); ++w)
        out.push_back(Contract{a, m, w});
  return out;
}

// The contracts of one state, i.e. the universe a choice-rule audit ranges
// over.
inline ContractSet state_contract_universe(const Instance& inst, int state) {
  ContractSet out;
  for (int a = 0; a < inst.n_seekers(); ++a)
    for (int w = 0; w < inst.n_waits(); ++w)
      out.push_back(Contract{a, state, w});
  return out;
}

// ---------------------------------------------------------------------------
// Allocation feasibility: at most one contract per seeker, per-(state, wait)
// counts within bureaucratic capacity.

struct AllocationViolation {
  enum class Code { duplicate_seeker, capacity_exceeded };
  Code code;
  std::string detail;
};

inline std::vector<AllocationViolation> allocation_violations(const Instance& inst,
                                                              const Allocation& alloc) {
  std::vector<AllocationViolation> issues;
  std::vector<int> per_seeker(inst.n_seekers(), 0);
  std::vector<int> per_state_wait(static_cast<std::size_t>(inst.n_states()) * inst.n_waits(), 0);
  for (const auto& x : alloc) {
    assert(x.seeker >= 0 && x.seeker < inst.n_seekers());
    assert(x.state >= 0 && x.state < inst.n_states());
    assert(x.wait >= 0 && x.wait < inst.n_waits());
    if (++per_seeker[x.seeker] == 2)
      issues.push_back({AllocationViolation::Code::duplicate_seeker,
                        "seeker " + inst.seekers[x.seeker].id + " holds more than one contract"});
    int cell = x.state * inst.n_waits() + x.wait;
    if (++per_state_wait[cell] == inst.states[x.state].capacity[x.wait] + 1)
      issues.push_back({AllocationViolation::Code::capacity_exceeded,
                        "slot (" + inst.states[x.state].id + "," + to_string(inst.waits[x.wait]) + ") over capacity"});
  }
  return issues;
}

inline bool is_allocation(const Instance& inst, const Allocation& alloc) {
  return allocation_violations(inst, alloc).empty();
}

// ---------------------------------------------------------------------------
// Burden-size monotonicity of priority orders; the hypotheses that split the
// completed rule's substitutability from its law-of-aggregate-demand side.

inline bool large_burden_size_priority(const Instance& inst, int m) {
  const auto& prio = inst.states[m].priority;
  for (std::size_t i = 1; i < prio.size(); ++i)
    if (inst.burden(prio[i - 1]) < inst.burden(prio[i])) return false;
  return true;
}

inline bool small_burden_size_priority(const Instance& inst, int m) {
  const auto& prio = inst.states[m].priority;
  for (std::size_t i = 1; i < prio.size(); ++i)
    if (inst.burden(prio[i - 1]) > inst.burden(prio[i])) return false;
  return true;
}

inline bool homogeneous_burden_sizes(const Instance& inst) {
  for (int a = 1; a < inst.n_seekers(); ++a)
    if (inst.seekers[a].burden != inst.seekers[0].burden) return false;
  return true;
}

}  // namespace asylum
