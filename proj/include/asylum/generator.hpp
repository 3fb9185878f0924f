#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "asylum/io.hpp"
#include "asylum/model.hpp"

namespace asylum {

enum class GenProfile { homogeneous, large_priority, small_priority, unrestricted };

inline const char* to_string(GenProfile p) {
  switch (p) {
    case GenProfile::homogeneous: return "homogeneous";
    case GenProfile::large_priority: return "large-priority";
    case GenProfile::small_priority: return "small-priority";
    case GenProfile::unrestricted: return "unrestricted";
  }
  return "?";
}

struct GenDims {
  int seekers = 3;
  int states = 2;
  int waits = 2;
  int max_burden = 3;
  int max_ranking = 3;  // listed (state, wait) pairs per seeker, at least 1
};

namespace detail {

// splitmix64; fixed constants keep generated instances identical across
// standard libraries.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(static_cast<int>(i))]);
  }
};

inline std::string make_id(const char* prefix, int index, int count) {
  std::string num = std::to_string(index + 1);
  std::size_t width = std::to_string(count).size();
  while (num.size() < width) num.insert(num.begin(), '0');  // keep lex order = numeric order
  return prefix + num;
}

}  // namespace detail

// Deterministic pseudo-random valid instance. `homogeneous` forces one
// burden size; the priority profiles sort every state's order by burden
// (largest or smallest first) with seed-dependent tie-breaking, and nudge
// the sampled burdens heterogeneous so the hypothesis has bite.
inline Instance generate_instance(std::uint64_t seed, GenProfile profile, GenDims dims) {
  if (dims.seekers < 0 || dims.states < 0 || dims.waits < 0 || dims.max_burden < 1 ||
      dims.max_ranking < 0)
    throw GuardError("InfeasibleDims", "dimensions must be non-negative");
  if (dims.seekers > 0 && (dims.states < 1 || dims.waits < 1 || dims.max_ranking < 1))
    throw GuardError("InfeasibleDims",
                     "seekers need at least one state, wait time, and ranking slot");
  if (dims.seekers > 56 || dims.states > 56 || dims.waits > 56)
    throw GuardError("InfeasibleDims", "desk-scale generator; keep dimensions small");

  detail::Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  InstanceData data;

  std::vector<int> burden(dims.seekers, 1);
  if (profile == GenProfile::homogeneous) {
    int b = 1 + rng.below(dims.max_burden);
    std::fill(burden.begin(), burden.end(), b);
  } else {
    for (int& b : burden) b = 1 + rng.below(dims.max_burden);
    bool same = std::all_of(burden.begin(), burden.end(), [&](int b) { return b == burden[0]; });
    if (same && dims.seekers > 1 && dims.max_burden > 1 &&
        (profile == GenProfile::large_priority || profile == GenProfile::small_priority))
      burden[0] = burden[0] == dims.max_burden ? burden[0] - 1 : burden[0] + 1;
  }
  long long total_burden = std::accumulate(burden.begin(), burden.end(), 0LL);

  for (int a = 0; a < dims.seekers; ++a)
    data.seekers.push_back({detail::make_id("a", a, dims.seekers), burden[a]});

  long long half_units = rng.below(2);
  for (int i = 0; i < dims.waits; ++i) {
    half_units += 1 + rng.below(3);  // +1/2, +1 or +3/2
    data.waits.push_back(Rational(half_units, 2));
  }

  std::vector<int> quota(dims.states, 0);
  if (dims.states > 0) {
    int spread = static_cast<int>(total_burden / dims.states) + dims.max_burden + 1;
    for (int& q : quota) q = rng.below(spread + 1);
    long long sum = std::accumulate(quota.begin(), quota.end(), 0LL);
    while (sum < total_burden) {
      quota[rng.below(dims.states)] += 1;
      ++sum;
    }
  }

  for (int m = 0; m < dims.states; ++m) {
    InstanceData::State state;
    state.id = detail::make_id("m", m, dims.states);
    state.quota = quota[m];

    std::vector<int> slots(dims.waits, 0);
    for (int& s : slots) s = rng.below(3);
    long long have = std::accumulate(slots.begin(), slots.end(), 0LL);
    long long need = std::max<long long>(quota[m], dims.seekers);
    while (have < need) {
      slots[rng.below(dims.waits)] += 1;
      ++have;
    }
    for (int i = 0; i < dims.waits; ++i) state.capacities.push_back({data.waits[i], slots[i]});

    std::vector<int> order(dims.seekers);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    if (profile == GenProfile::large_priority || profile == GenProfile::small_priority) {
      std::vector<int> pos(dims.seekers);
      for (int i = 0; i < dims.seekers; ++i) pos[order[i]] = i;
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (burden[a] != burden[b])
          return profile == GenProfile::large_priority ? burden[a] > burden[b]
                                                       : burden[a] < burden[b];
        return pos[a] < pos[b];
      });
    }
    for (int a : order) state.priority.push_back(data.seekers[a].id);
    data.states.push_back(std::move(state));
  }

  std::vector<std::pair<int, int>> pairs;
  for (int m = 0; m < dims.states; ++m)
    for (int i = 0; i < dims.waits; ++i) pairs.emplace_back(m, i);
  for (int a = 0; a < dims.seekers; ++a) {
    InstanceData::PreferenceRow row;
    row.seeker = data.seekers[a].id;
    int len = std::min<int>(1 + rng.below(std::max(dims.max_ranking, 1)),
                            static_cast<int>(pairs.size()));
    std::vector<std::pair<int, int>> deck = pairs;
    rng.shuffle(deck);
    for (int i = 0; i < len; ++i)
      row.ranking.push_back({data.states[deck[i].first].id, data.waits[deck[i].second]});
    data.preferences.push_back(std::move(row));
  }

  return validated(bind_instance(data));
}

}  // namespace asylum
