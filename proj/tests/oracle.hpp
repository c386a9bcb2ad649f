#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rsum/groups.hpp"

namespace oracle {

using rsum::AbelianGroup;
using rsum::GroupSubset;

// Sums of h distinct elements, by walking every h-combination.
inline std::set<std::uint32_t> restricted(const GroupSubset& a, std::uint32_t h) {
  const auto elems = a.elements();
  const auto& g = a.group();
  std::set<std::uint32_t> out;
  if (h > elems.size()) return out;
  std::vector<bool> pick(elems.size(), false);
  std::fill(pick.begin(), pick.begin() + h, true);
  do {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (pick[i]) s = g.add(s, elems[i]);
    out.insert(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

// Sums of h elements with repetition.
inline std::set<std::uint32_t> unrestricted(const GroupSubset& a, std::uint32_t h) {
  const auto elems = a.elements();
  const auto& g = a.group();
  std::set<std::uint32_t> cur{0};
  for (std::uint32_t i = 0; i < h; ++i) {
    std::set<std::uint32_t> next;
    for (auto s : cur)
      for (auto e : elems) next.insert(g.add(s, e));
    cur = std::move(next);
  }
  return cur;
}

inline std::set<std::uint32_t> as_set(const GroupSubset& s) {
  const auto e = s.elements();
  return {e.begin(), e.end()};
}

// Calls f on every m-subset of {0..n-1}.
inline void for_each_subset(std::uint32_t n, std::uint32_t m, const std::function<void(const GroupSubset&)>& f) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + m, true);
  do {
    std::vector<std::uint32_t> elems;
    for (std::uint32_t i = 0; i < n; ++i)
      if (pick[i]) elems.push_back(i);
    f(GroupSubset::from_elements(rsum::CyclicGroup(n), elems));
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

// rho^ by plain enumeration of every m-subset.
inline std::int64_t rho_hat(std::uint32_t n, std::uint32_t m, std::uint32_t h) {
  std::int64_t best = -1;
  for_each_subset(n, m, [&](const GroupSubset& a) {
    const auto v = static_cast<std::int64_t>(rsum::restricted_sumset(a, h).size());
    if (best < 0 || v < best) best = v;
  });
  return best;
}

inline GroupSubset random_subset(std::mt19937_64& rng, const AbelianGroup& g, std::uint32_t size) {
  std::vector<std::uint32_t> all(g.order());
  for (std::uint32_t i = 0; i < g.order(); ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(size);
  return GroupSubset::from_elements(g, all);
}

inline std::uint32_t gcd(std::uint32_t a, std::uint32_t b) { return b == 0 ? a : gcd(b, a % b); }

// A fresh path under the system temp directory; removed on destruction.
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& stem) {
    static std::mt19937_64 rng{std::random_device{}()};
    path = std::filesystem::temp_directory_path() / (stem + "_" + std::to_string(rng()) + ".jsonl");
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  [[nodiscard]] std::string str() const { return path.string(); }
};

}  // namespace oracle
