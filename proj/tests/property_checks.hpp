#pragma once

// Property checks shared by the gtest suite and the acceptance binary. Each
// returns a list of failure descriptions (empty on success) and never uses
// the search or a cache.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "rsum/constructions.hpp"
#include "rsum/formulas.hpp"
#include "rsum/groups.hpp"

namespace checks {

using namespace rsum;
using Failures = std::vector<std::string>;

inline std::string cell(std::int64_t n, std::int64_t m, std::int64_t h, std::int64_t d = 0) {
  std::string s = "(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(h) + ")";
  if (d) s += " d=" + std::to_string(d);
  return s;
}

inline GroupSubset random_cyclic(std::mt19937_64& rng, std::uint32_t n) {
  return oracle::random_subset(rng, CyclicGroup(n), 1 + static_cast<std::uint32_t>(rng() % n));
}

inline std::uint32_t random_unit(std::mt19937_64& rng, std::uint32_t n) {
  std::uint32_t u = 1;
  do u = 1 + static_cast<std::uint32_t>(rng() % n);
  while (oracle::gcd(u % n, n) != 1);
  return u;
}

inline Failures monotonicity(std::uint64_t seed = 1, int trials = 400) {
  Failures f;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto n = 1 + static_cast<std::uint32_t>(rng() % 40);
    const auto big = random_cyclic(rng, n);
    auto elems = big.elements();
    std::shuffle(elems.begin(), elems.end(), rng);
    elems.resize(1 + rng() % elems.size());
    const auto small = GroupSubset::from_elements(CyclicGroup(n), elems);
    for (std::uint32_t h = 1; h <= small.size(); ++h)
      if (!restricted_sumset(small, h).is_subset_of(restricted_sumset(big, h)))
        f.push_back("monotonicity n=" + std::to_string(n) + " h=" + std::to_string(h));
  }
  return f;
}

inline Failures containment(std::uint64_t seed = 2, int trials = 400) {
  Failures f;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto n = 1 + static_cast<std::uint32_t>(rng() % 60);
    const auto a = random_cyclic(rng, n);
    for (std::uint32_t h = 1; h <= a.size() + 1; ++h)
      if (!restricted_sumset(a, h).is_subset_of(unrestricted_sumset(a, h)))
        f.push_back("containment n=" + std::to_string(n) + " h=" + std::to_string(h));
  }
  return f;
}

inline Failures complement_duality(std::uint64_t seed = 3, int trials = 400) {
  Failures f;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto n = 1 + static_cast<std::uint32_t>(rng() % 60);
    const auto a = random_cyclic(rng, n);
    const auto m = static_cast<std::uint32_t>(a.size());
    for (std::uint32_t h = 0; h <= m; ++h)
      if (restricted_sumset(a, h).size() != restricted_sumset(a, m - h).size())
        f.push_back("duality n=" + std::to_string(n) + " h=" + std::to_string(h));
  }
  return f;
}

inline Failures affine_equivariance(std::uint64_t seed = 4, int trials = 300) {
  Failures f;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto n = 1 + static_cast<std::uint32_t>(rng() % 30);
    const auto a = random_cyclic(rng, n);
    const auto unit = random_unit(rng, n);
    const auto shift = static_cast<std::uint32_t>(rng() % n);
    for (std::uint32_t h = 0; h <= a.size(); ++h) {
      const auto lhs = restricted_sumset(affine_image(a, unit, shift), h);
      const auto rhs =
          affine_image(restricted_sumset(a, h), unit, static_cast<std::uint32_t>((std::uint64_t{h} * shift) % n));
      if (!(lhs == rhs)) f.push_back("affine n=" + std::to_string(n) + " h=" + std::to_string(h));
    }
  }
  return f;
}

inline Failures lemma_subset_valid(std::int64_t d_max = 20) {
  Failures f;
  for (std::int64_t d = 2; d <= d_max; ++d)
    for (std::int64_t t = 1; t <= d - 1; ++t)
      for (std::int64_t j = 0; j < d; ++j) {
        const auto out = lemma_subset(d, t, j);
        std::set<std::int64_t> residues;
        std::int64_t sum = 0;
        for (auto x : out) {
          residues.insert(((x % d) + d) % d);
          sum += x;
        }
        if (static_cast<std::int64_t>(out.size()) != t || static_cast<std::int64_t>(residues.size()) != t ||
            ((sum % d) + d) % d != j)
          f.push_back("lemma_subset d=" + std::to_string(d) + " t=" + std::to_string(t) + " j=" + std::to_string(j));
      }
  return f;
}

inline Failures span_coset_count(std::int64_t n_max = 24) {
  Failures f;
  for (std::int64_t n = 2; n <= n_max; ++n)
    for (auto d : divisors(n))
      for (std::int64_t m = 2; m <= n; ++m)
        for (std::int64_t h = 1; h <= m - 1; ++h) {
          const auto s = span_quantities({n, m, h}, d);
          const auto sum = restricted_sumset(construct_A(n, m, d), static_cast<std::uint32_t>(h));
          std::set<std::int64_t> cosets;
          for (auto e : sum.elements()) cosets.insert(e % (n / d));
          if (static_cast<std::int64_t>(cosets.size()) != std::min(n / d, s.i_max - s.i_min + 1))
            f.push_back("span " + cell(n, m, h, d));
        }
  return f;
}

inline Failures dp_matches_enumeration(std::uint32_t n_max = 12) {
  Failures f;
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    const std::uint32_t limit = 1U << n;
    for (std::uint32_t bits = 0; bits < limit; ++bits) {
      std::vector<std::uint32_t> elems;
      for (std::uint32_t i = 0; i < n; ++i)
        if (bits >> i & 1U) elems.push_back(i);
      const auto a = GroupSubset::from_elements(CyclicGroup(n), elems);
      for (std::uint32_t h = 0; h <= a.size(); ++h) {
        const auto expect = h == 0 ? std::set<std::uint32_t>{0} : oracle::restricted(a, h);
        if (oracle::as_set(restricted_sumset(a, h)) != expect)
          f.push_back("dp n=" + std::to_string(n) + " mask=" + std::to_string(bits) + " h=" + std::to_string(h));
      }
    }
  }
  return f;
}

/// |h^A_d| = f^_d and |hA_d| = min{n, f_d, hm-h+1} for every cell up to n_max.
inline Failures formula_matches_construction(std::int64_t n_max, std::size_t* cells = nullptr) {
  Failures f;
  std::size_t count = 0;
  for (std::int64_t n = 1; n <= n_max; ++n)
    for (auto d : divisors(n))
      for (std::int64_t m = 1; m <= n; ++m) {
        const auto a = construct_A(n, m, d);
        for (std::int64_t h = 1; h <= m; ++h) {
          ++count;
          const Params p{n, m, h};
          const auto hs = static_cast<std::uint32_t>(h);
          if (static_cast<std::int64_t>(restricted_sumset(a, hs).size()) != f_hat_d(p, d))
            f.push_back("restricted " + cell(n, m, h, d));
          if (static_cast<std::int64_t>(unrestricted_sumset(a, hs).size()) != std::min({n, f_d(p, d), h * m - h + 1}))
            f.push_back("unrestricted " + cell(n, m, h, d));
        }
      }
  if (cells) *cells = count;
  return f;
}

}  // namespace checks
