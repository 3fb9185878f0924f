#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "asylum/model.hpp"

namespace asylum {

// One counterexample. `fields` carries the inputs and the expected/observed
// values in canonical serialization so reports are byte-stable and directly
// comparable in tests.
struct AuditWitness {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  std::string field(const std::string& name) const {
    for (const auto& [k, v] : fields)
      if (k == name) return v;
    return {};
  }
};

struct AuditStats {
  std::uint64_t cases_examined = 0;
};

struct AuditReport {
  enum class Verdict { pass, fail };

  Verdict verdict = Verdict::pass;
  std::vector<AuditWitness> witnesses;
  AuditStats stats;
  std::vector<std::string> notes;

  bool passed() const { return verdict == Verdict::pass; }

  void add_witness(AuditWitness witness) {
    witnesses.push_back(std::move(witness));
    verdict = Verdict::fail;
  }
};

inline std::string set_str(const Instance& inst, const ContractSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ",";
    out += inst.contract_str(set[i]);
  }
  out += "}";
  return out;
}

}  // namespace asylum
