#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "asylum/model.hpp"

namespace asylum {

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("SyntaxError: " + what) {}
};

// Id-based instance description, the in-memory mirror of the file format.
// Bundled examples and the generator build this too, so every construction
// path funnels through the same binding and validation.
struct InstanceData {
  struct Seeker {
    std::string id;
    int burden = 1;
  };
  struct Capacity {
    Rational wait;
    int slots = 0;
  };
  struct State {
    std::string id;
    int quota = 0;
    std::vector<Capacity> capacities;
    std::vector<std::string> priority;  // seeker ids, best first
  };
  struct RankingEntry {
    std::string state;
    Rational wait;
  };
  struct PreferenceRow {
    std::string seeker;
    std::vector<RankingEntry> ranking;
  };

  std::vector<Seeker> seekers;
  std::vector<State> states;
  std::vector<Rational> waits;
  std::vector<PreferenceRow> preferences;
};

// Resolves ids to indices and normalizes ordering (entities by id, waits
// ascending). Unresolvable structure throws; numeric invariant deficits are
// left for validate_instance so deliberately out-of-model menus can still be
// loaded with Validation::lenient.
inline Instance bind_instance(const InstanceData& data) {
  std::vector<ValidationIssue> fatal;
  auto err = [&](ValidationIssue::Code code, std::string what) {
    fatal.push_back({code, std::move(what)});
  };

  Instance inst;
  for (const auto& s : data.seekers) inst.seekers.push_back({s.id, s.burden});
  std::sort(inst.seekers.begin(), inst.seekers.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < inst.seekers.size(); ++i)
    if (inst.seekers[i].id == inst.seekers[i - 1].id)
      err(ValidationIssue::Code::duplicate_id, "seeker id " + inst.seekers[i].id);

  inst.waits = data.waits;
  std::sort(inst.waits.begin(), inst.waits.end());
  for (std::size_t i = 1; i < inst.waits.size(); ++i)
    if (inst.waits[i] == inst.waits[i - 1])
      err(ValidationIssue::Code::invalid_axis, "duplicate wait time " + to_string(inst.waits[i]));

  std::vector<InstanceData::State> states = data.states;
  std::sort(states.begin(), states.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < states.size(); ++i)
    if (states[i].id == states[i - 1].id)
      err(ValidationIssue::Code::duplicate_id, "state id " + states[i].id);
  if (!fatal.empty()) throw ValidationError(std::move(fatal));

  for (const auto& s : states) {
    MemberState m;
    m.id = s.id;
    m.quota = s.quota;
    m.capacity.assign(inst.waits.size(), 0);
    for (const auto& cap : s.capacities) {
      auto w = inst.wait_index(cap.wait);
      if (!w) {
        err(ValidationIssue::Code::dangling_reference,
            "state " + s.id + " capacity for undeclared wait " + to_string(cap.wait));
        continue;
      }
      m.capacity[*w] += cap.slots;
    }
    m.priority_rank.assign(inst.seekers.size(), -1);
    for (const auto& id : s.priority) {
      auto a = inst.seeker_index(id);
      if (!a) {
        err(ValidationIssue::Code::dangling_reference,
            "state " + s.id + " priority over undeclared seeker " + id);
        continue;
      }
      if (m.priority_rank[*a] >= 0) {
        err(ValidationIssue::Code::invalid_priority,
            "state " + s.id + " ranks seeker " + id + " twice");
        continue;
      }
      m.priority_rank[*a] = static_cast<int>(m.priority.size());
      m.priority.push_back(*a);
    }
    for (std::size_t a = 0; a < inst.seekers.size(); ++a)
      if (m.priority_rank[a] < 0)
        err(ValidationIssue::Code::invalid_priority,
            "state " + s.id + " does not rank seeker " + inst.seekers[a].id);
    inst.states.push_back(std::move(m));
  }

  inst.preferences.resize(inst.seekers.size());
  for (auto& p : inst.preferences) p.seeker = -1;
  for (const auto& row : data.preferences) {
    auto a = inst.seeker_index(row.seeker);
    if (!a) {
      err(ValidationIssue::Code::dangling_reference,
          "ranking for undeclared seeker " + row.seeker);
      continue;
    }
    if (inst.preferences[*a].seeker >= 0) {
      err(ValidationIssue::Code::missing_preference, "two rankings for seeker " + row.seeker);
      continue;
    }
    Preference pref;
    pref.seeker = *a;
    for (const auto& entry : row.ranking) {
      auto m = inst.state_index(entry.state);
      auto w = inst.wait_index(entry.wait);
      if (!m || !w) {
        err(ValidationIssue::Code::dangling_reference,
            "ranking of " + row.seeker + " references undeclared (" + entry.state + "," +
                to_string(entry.wait) + ")");
        continue;
      }
      pref.ranking.push_back(Contract{*a, *m, *w});
    }
    inst.preferences[*a] = std::move(pref);
  }
  for (std::size_t a = 0; a < inst.preferences.size(); ++a)
    if (inst.preferences[a].seeker < 0)
      err(ValidationIssue::Code::missing_preference,
          "no ranking for seeker " + inst.seekers[a].id);

  if (!fatal.empty()) throw ValidationError(std::move(fatal));
  return inst;
}

// ---------------------------------------------------------------------------
// Canonical text format (JSON). Parsers reject unknown fields; writers emit
// fields in a fixed order with entities sorted by id, so serialization is
// byte-stable.

enum class Validation { strict, lenient };

namespace detail {

using json = nlohmann::json;

inline void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok |= it.key() == k;
    if (!ok) throw ParseError("unknown field '" + it.key() + "' in " + where);
  }
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

inline int int_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer())
    throw ParseError("field '" + std::string(key) + "' in " + where + " must be an integer");
  return v.get<int>();
}

inline std::string str_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string())
    throw ParseError("field '" + std::string(key) + "' in " + where + " must be a string");
  return v.get<std::string>();
}

inline Rational rational_field(const json& obj, const char* key, const std::string& where) {
  auto parsed = parse_rational(str_field(obj, key, where));
  if (!parsed)
    throw ParseError("field '" + std::string(key) + "' in " + where +
                     " is not a rational (\"p/q\" or integer string)");
  return *parsed;
}

inline const json& array_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_array())
    throw ParseError("field '" + std::string(key) + "' in " + where + " must be an array");
  return v;
}

}  // namespace detail

inline Instance parse_instance(std::string_view text, Validation mode = Validation::strict) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("instance document must be an object");
  detail::reject_unknown(doc, {"seekers", "states", "waits", "preferences"}, "instance");

  InstanceData data;

  int i = 0;
  for (const json& s : detail::array_field(doc, "seekers", "instance")) {
    std::string where = "seekers[" + std::to_string(i++) + "]";
    if (!s.is_object()) throw ParseError(where + " must be an object");
    detail::reject_unknown(s, {"id", "burden"}, where);
    data.seekers.push_back({detail::str_field(s, "id", where), detail::int_field(s, "burden", where)});
  }

  i = 0;
  for (const json& m : detail::array_field(doc, "states", "instance")) {
    std::string where = "states[" + std::to_string(i++) + "]";
    if (!m.is_object()) throw ParseError(where + " must be an object");
    detail::reject_unknown(m, {"id", "quota", "capacities", "priority"}, where);
    InstanceData::State state;
    state.id = detail::str_field(m, "id", where);
    state.quota = detail::int_field(m, "quota", where);
    int j = 0;
    for (const json& cap : detail::array_field(m, "capacities", where)) {
      std::string cw = where + ".capacities[" + std::to_string(j++) + "]";
      if (!cap.is_object()) throw ParseError(cw + " must be an object");
      detail::reject_unknown(cap, {"wait", "slots"}, cw);
      state.capacities.push_back(
          {detail::rational_field(cap, "wait", cw), detail::int_field(cap, "slots", cw)});
    }
    for (const json& id : detail::array_field(m, "priority", where)) {
      if (!id.is_string()) throw ParseError(where + ".priority entries must be seeker ids");
      state.priority.push_back(id.get<std::string>());
    }
    data.states.push_back(std::move(state));
  }

  i = 0;
  for (const json& w : detail::array_field(doc, "waits", "instance")) {
    std::string where = "waits[" + std::to_string(i++) + "]";
    if (!w.is_string()) throw ParseError(where + " must be a rational string");
    auto parsed = parse_rational(w.get<std::string>());
    if (!parsed) throw ParseError(where + " is not a rational (\"p/q\" or integer string)");
    data.waits.push_back(*parsed);
  }

  i = 0;
  for (const json& p : detail::array_field(doc, "preferences", "instance")) {
    std::string where = "preferences[" + std::to_string(i++) + "]";
    if (!p.is_object()) throw ParseError(where + " must be an object");
    detail::reject_unknown(p, {"seeker", "ranking"}, where);
    InstanceData::PreferenceRow row;
    row.seeker = detail::str_field(p, "seeker", where);
    int j = 0;
    for (const json& entry : detail::array_field(p, "ranking", where)) {
      std::string ew = where + ".ranking[" + std::to_string(j++) + "]";
      if (!entry.is_object()) throw ParseError(ew + " must be an object");
      detail::reject_unknown(entry, {"state", "wait"}, ew);
      row.ranking.push_back(
          {detail::str_field(entry, "state", ew), detail::rational_field(entry, "wait", ew)});
    }
    data.preferences.push_back(std::move(row));
  }

  Instance inst = bind_instance(data);
  if (mode == Validation::strict) return validated(std::move(inst));
  return inst;
}

inline std::string serialize_instance(const Instance& inst) {
  using ordered = nlohmann::ordered_json;
  ordered doc;

  doc["seekers"] = ordered::array();
  for (const auto& a : inst.seekers)
    doc["seekers"].push_back({{"id", a.id}, {"burden", a.burden}});

  doc["states"] = ordered::array();
  for (const auto& m : inst.states) {
    ordered caps = ordered::array();
    for (int w = 0; w < inst.n_waits(); ++w)
      caps.push_back({{"wait", to_string(inst.waits[w])}, {"slots", m.capacity[w]}});
    ordered prio = ordered::array();
    for (int a : m.priority) prio.push_back(inst.seekers[a].id);
    doc["states"].push_back(
        {{"id", m.id}, {"quota", m.quota}, {"capacities", caps}, {"priority", prio}});
  }

  doc["waits"] = ordered::array();
  for (const auto& w : inst.waits) doc["waits"].push_back(to_string(w));

  doc["preferences"] = ordered::array();
  for (const auto& pref : inst.preferences) {
    ordered ranking = ordered::array();
    for (const Contract& x : pref.ranking)
      ranking.push_back(
          {{"state", inst.states[x.state].id}, {"wait", to_string(inst.waits[x.wait])}});
    doc["preferences"].push_back({{"seeker", inst.seekers[pref.seeker].id}, {"ranking", ranking}});
  }

  return doc.dump(2) + "\n";
}

}  // namespace asylum
