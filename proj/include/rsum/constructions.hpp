#pragma once

// Explicit witness sets: the coset-progression sets A_d(n,m), the two-partial-
// coset sets B_d(n,m; k1,k2,g,j0), the special B families, the named sets
// C1..C3, and the two counterexample families.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsum/formulas.hpp"
#include "rsum/groups.hpp"

namespace rsum {

namespace detail {

inline std::uint32_t checked_order(std::int64_t n) {
  if (n < 1 || n > kMaxOrder)
    throw std::domain_error("group order " + std::to_string(n) + " outside 1.." + std::to_string(kMaxOrder));
  return static_cast<std::uint32_t>(n);
}

inline std::size_t residue(std::int64_t x, std::int64_t n) { return static_cast<std::size_t>(((x % n) + n) % n); }

}  // namespace detail

/// c full cosets i + H (0 <= i < c) followed by the first k elements of c + H,
/// where H is the order-d subgroup of Z_n.
inline GroupSubset construct_A(std::int64_t n, std::int64_t m, std::int64_t d) {
  const auto order = detail::checked_order(n);
  Params{n, m, 1}.validate();
  if (d < 1 || n % d != 0) throw std::domain_error(std::to_string(d) + " does not divide " + std::to_string(n));
  const std::int64_t step = n / d;
  const std::int64_t c = ceil_div(m, d) - 1;
  const std::int64_t k = m - c * d;
  Mask mask;
  for (std::int64_t i = 0; i < c; ++i)
    for (std::int64_t j = 0; j < d; ++j) mask.set(detail::residue(i + j * step, n));
  for (std::int64_t j = 0; j < k; ++j) mask.set(detail::residue(c + j * step, n));
  if (static_cast<std::int64_t>(mask.count()) != m) throw std::logic_error("construct_A produced a set of the wrong size");
  return GroupSubset(CyclicGroup(order), mask);
}

struct ConstructionB {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t d = 0;
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;
  std::int64_t g = 0;
  std::int64_t j0 = 0;
  std::int64_t c = 0;

  /// Fills c from m = k1 + (c-1)d + k2 and checks every structural requirement.
  static ConstructionB make(std::int64_t n, std::int64_t m, std::int64_t d, std::int64_t k1, std::int64_t k2,
                            std::int64_t g, std::int64_t j0) {
    ConstructionB b{n, m, d, k1, k2, g, j0, 0};
    if (d >= 1 && (m - k1 - k2) % d == 0) b.c = (m - k1 - k2) / d + 1;
    b.validate();
    return b;
  }

  void validate() const {
    detail::checked_order(n);
    Params{n, m, 1}.validate();
    if (d < 1 || n % d != 0) throw std::domain_error("B: d must divide n");
    if (k1 < 1 || k2 < 1 || k1 >= d || k2 >= d || k1 + k2 <= d)
      throw std::domain_error("B: need 1 <= k1,k2 < d and k1 + k2 > d");
    if (j0 < 0 || j0 >= d) throw std::domain_error("B: need 0 <= j0 <= d-1");
    if (c < 1 || c != ceil_div(m, d) - 1 || m != k1 + (c - 1) * d + k2)
      throw std::domain_error("B: m must equal k1 + (c-1)d + k2 with c = ceil(m/d) - 1 >= 1");
  }

  friend bool operator==(const ConstructionB&, const ConstructionB&) = default;
};

struct BlockedElement {
  std::uint32_t value;
  std::int64_t block;  // coset index i of the coset i*g + H the element came from
};

namespace detail {

inline std::vector<BlockedElement> b_elements(const ConstructionB& b) {
  b.validate();
  const std::int64_t step = b.n / b.d;
  std::vector<BlockedElement> out;
  auto push = [&](std::int64_t x, std::int64_t block) {
    out.push_back({static_cast<std::uint32_t>(residue(x, b.n)), block});
  };
  for (std::int64_t j = 0; j < b.k1; ++j) push(j * step, 0);
  for (std::int64_t i = 1; i < b.c; ++i)
    for (std::int64_t j = 0; j < b.d; ++j) push(i * b.g + j * step, i);
  for (std::int64_t j = 0; j < b.k2; ++j) push(b.c * b.g + (b.j0 + j) * step, b.c);
  return out;
}

}  // namespace detail

/// B' + the middle cosets i*g + H (1 <= i < c) + B''. Throws when elements collide.
inline GroupSubset construct_B(const ConstructionB& b) {
  Mask mask;
  for (const auto& e : detail::b_elements(b)) mask.set(e.value);
  if (static_cast<std::int64_t>(mask.count()) != b.m)
    throw std::domain_error("B: elements collide, set has " + std::to_string(mask.count()) + " elements instead of " +
                            std::to_string(b.m));
  return GroupSubset(CyclicGroup(static_cast<std::uint32_t>(b.n)), mask);
}

inline GroupSubset named_set_c1() { return construct_B(ConstructionB::make(12, 7, 3, 2, 2, 1, 1)); }
inline GroupSubset named_set_c2() { return construct_B(ConstructionB::make(10, 6, 5, 4, 2, 1, 3)); }
inline GroupSubset named_set_c3() { return construct_B(ConstructionB::make(15, 8, 5, 4, 4, 1, 3)); }

enum class SpecialFamily { h2, h3_m6, h_odd };

inline const char* to_string(SpecialFamily f) {
  switch (f) {
    case SpecialFamily::h2: return "h2";
    case SpecialFamily::h3_m6: return "h3m6";
    case SpecialFamily::h_odd: return "hodd";
  }
  return "?";
}

struct SpecialInstance {
  SpecialFamily family;
  ConstructionB params;
  std::int64_t claimed_size;
};

/// The special B set for (h, n, m) when one of the three families applies.
/// For h = 2 the subgroup order is the largest odd divisor of m - 1.
inline std::optional<SpecialInstance> special_family(std::int64_t h, std::int64_t n, std::int64_t m) {
  if (h < 2) throw std::domain_error("special_family needs h >= 2");
  if (m < 3 || m > n) throw std::domain_error("special_family needs 3 <= m <= n");
  if (h >= m) return std::nullopt;

  if (h == 2 && !is_power_of_two(m - 1) && n % (2 * m - 2) == 0) {
    std::int64_t d = m - 1;
    while (d % 2 == 0) d /= 2;
    auto b = ConstructionB::make(n, m, d, (d + 1) / 2, (d + 1) / 2, n / (2 * m - 2), (d - 1) / 2);
    return SpecialInstance{SpecialFamily::h2, b, 2 * m - 4};
  }
  if (h == 3 && m == 6 && n % 10 == 0) {
    auto b = ConstructionB::make(n, 6, 5, 4, 2, n / 10, 3);
    return SpecialInstance{SpecialFamily::h3_m6, b, 9};
  }
  if (h % 2 == 1 && (m + 2) % (h + 2) == 0 && m + 2 >= 2 * (h + 2) && n % (h * m - h * h) == 0) {
    auto b = ConstructionB::make(n, m, h + 2, h + 1, h + 1, n / (h * m - h * h), (h + 3) / 2);
    return SpecialInstance{SpecialFamily::h_odd, b, h * m - h * h - 1};
  }
  return std::nullopt;
}

struct SpecialAnalysis {
  std::int64_t i_min = 0;
  std::int64_t i_max = 0;
  bool g_condition_holds = false;
  bool is_special = false;
  GroupSubset bottom_slice{AbelianGroup(CyclicGroup(1))};
  GroupSubset top_slice{AbelianGroup(CyclicGroup(1))};
};

namespace detail {

/// Sums of h distinct elements whose block indices add up to target.
inline Mask restricted_slice(const std::vector<BlockedElement>& elems, std::int64_t h, std::int64_t target,
                             std::uint32_t n) {
  const std::int64_t max_sum = target;
  // layers[j][s]: sums of j distinct processed elements with block-index sum s.
  std::vector<std::vector<Mask>> layers(static_cast<std::size_t>(h + 1),
                                        std::vector<Mask>(static_cast<std::size_t>(max_sum + 1)));
  layers[0][0].set(0);
  for (const auto& e : elems) {
    for (std::int64_t j = h; j >= 1; --j) {
      for (std::int64_t s = max_sum; s >= e.block; --s) {
        const auto& src = layers[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(s - e.block)];
        if (src.none()) continue;
        layers[static_cast<std::size_t>(j)][static_cast<std::size_t>(s)] |= src.rotated(e.value, n);
      }
    }
  }
  return layers[static_cast<std::size_t>(h)][static_cast<std::size_t>(target)];
}

}  // namespace detail

/// i_min / i_max are the block-index sums of the first and last h elements
/// of B. The set is special when the restricted sums reaching i_min and those
/// reaching i_max nest one inside the other.
inline SpecialAnalysis analyze_special(const ConstructionB& b, std::int64_t h) {
  b.validate();
  if (h < 1 || h >= b.m) throw std::domain_error("analyze_special needs 1 <= h <= m-1");
  auto elems = detail::b_elements(b);
  std::vector<std::int64_t> blocks;
  blocks.reserve(elems.size());
  for (const auto& e : elems) blocks.push_back(e.block);
  std::sort(blocks.begin(), blocks.end());

  SpecialAnalysis a;
  for (std::int64_t i = 0; i < h; ++i) {
    a.i_min += blocks[static_cast<std::size_t>(i)];
    a.i_max += blocks[blocks.size() - 1 - static_cast<std::size_t>(i)];
  }
  const std::int64_t n = b.n;
  const auto lhs = detail::residue(a.i_max * b.g, n);
  const auto rhs = detail::residue(a.i_min * b.g + n / b.d, n);
  a.g_condition_holds = lhs == rhs;

  const auto order = static_cast<std::uint32_t>(n);
  const AbelianGroup group(CyclicGroup{order});
  a.bottom_slice = GroupSubset(group, detail::restricted_slice(elems, h, a.i_min, order));
  a.top_slice = GroupSubset(group, detail::restricted_slice(elems, h, a.i_max, order));
  a.is_special = a.top_slice.mask().is_subset_of(a.bottom_slice.mask()) ||
                 a.bottom_slice.mask().is_subset_of(a.top_slice.mask());
  return a;
}

struct HlsInstance {
  AbelianGroup group;
  GroupSubset set;
};

/// Z_2^k + {0,1} inside Z_2^k + Z_d.
inline HlsInstance hls_counterexample(std::int64_t k, std::int64_t d) {
  if (k < 1) throw std::domain_error("hls_counterexample needs k >= 1");
  if (d < 3 || d % 2 == 0) throw std::domain_error("hls_counterexample needs odd d >= 3");
  if ((std::int64_t{1} << std::min<std::int64_t>(k, 16)) * d > kMaxOrder)
    throw std::domain_error("hls_counterexample: group order exceeds mask capacity");
  std::vector<std::uint32_t> factors(static_cast<std::size_t>(k), 2);
  factors.push_back(static_cast<std::uint32_t>(d));
  AbelianGroup group(factors);
  Mask mask;
  // Last factor fastest: element (v, t) sits at v*d + t.
  for (std::uint32_t v = 0; v < (1U << k); ++v) {
    mask.set(v * static_cast<std::uint32_t>(d));
    mask.set(v * static_cast<std::uint32_t>(d) + 1);
  }
  return {group, GroupSubset(group, mask)};
}

struct PlagneInstance {
  Params params;  // (p^t, p^(t-1) + 1, 2)
  std::int64_t expected_rho;
  std::int64_t expected_u_hat;
};

inline PlagneInstance plagne_counterexample(std::int64_t p, std::int64_t t) {
  if (p % 2 == 0 || !is_prime(p)) throw std::domain_error("plagne_counterexample needs an odd prime p");
  if (t < 2) throw std::domain_error("plagne_counterexample needs t >= 2");
  std::int64_t base = 1;
  for (std::int64_t i = 0; i < t - 1; ++i) {
    base *= p;
    if (base > (std::int64_t{1} << 40)) throw std::domain_error("plagne_counterexample: p^t too large");
  }
  const std::int64_t m = base + 1;
  return {Params{base * p, m, 2}, 2 * m - 1, 2 * m - 3};
}

}  // namespace rsum
