#pragma once

#include "sv/strata.hpp"

#include <functional>
#include <map>
#include <vector>

namespace sv::detail {

// Calls f for every vector of `parts` non-negative integers summing to `total`.
inline void for_each_composition(int total, int parts, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> v(parts, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == parts - 1) {
      v[i] = left;
      f(v);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      v[i] = x;
      rec(i + 1, left - x);
    }
  };
  if (parts == 0) {
    if (total == 0) f(v);
    return;
  }
  rec(0, total);
}

// Calls f for every way of splitting the multiset `pool` into `parts` labelled
// sub-multisets.
inline void for_each_distribution(const Partition& pool, int parts,
                                  const std::function<void(const std::vector<Partition>&)>& f) {
  std::map<int, int> mult;
  for (int e : pool.entries()) ++mult[e];
  std::vector<std::pair<int, int>> values(mult.begin(), mult.end());
  std::vector<std::vector<int>> bins(parts);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == values.size()) {
      std::vector<Partition> out;
      out.reserve(parts);
      for (auto& b : bins) out.emplace_back(b);
      f(out);
      return;
    }
    auto [value, count] = values[k];
    for_each_composition(count, parts, [&](const std::vector<int>& c) {
      for (int i = 0; i < parts; ++i) bins[i].insert(bins[i].end(), c[i], value);
      rec(k + 1);
      for (int i = 0; i < parts; ++i) bins[i].resize(bins[i].size() - c[i]);
    });
  };
  rec(0);
}

}  // namespace sv::detail
