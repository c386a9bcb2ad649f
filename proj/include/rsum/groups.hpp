#pragma once

// Cyclic and small finite abelian groups, subsets stored as bit masks, and
// the h-fold sumset kernels.
//
// An element (e_1, ..., e_t) of Z_{n_1} + ... + Z_{n_t} lives at bit
//   e_1 * (n_2 * ... * n_t) + ... + e_{t-1} * n_t + e_t
// so the last factor varies fastest. For a single factor this is just the
// residue itself.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsum/bitmask.hpp"

namespace rsum {

/// Largest group order a subset mask can hold.
inline constexpr std::uint32_t kMaxOrder = 256;

using Mask = BitMask<kMaxOrder / 64>;

class CyclicGroup {
 public:
  explicit CyclicGroup(std::uint32_t n) : n_(n) {
    if (n == 0) throw std::domain_error("cyclic group order must be positive");
  }
  [[nodiscard]] std::uint32_t order() const { return n_; }
  friend bool operator==(const CyclicGroup&, const CyclicGroup&) = default;

 private:
  std::uint32_t n_;
};

class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<std::uint32_t> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::domain_error("abelian group needs at least one factor");
    std::uint64_t order = 1;
    for (auto f : factors_) {
      if (f == 0) throw std::domain_error("abelian group factors must be positive");
      order *= f;
      if (order > kMaxOrder)
        throw std::domain_error("group order exceeds mask capacity of " + std::to_string(kMaxOrder));
    }
    order_ = static_cast<std::uint32_t>(order);
  }

  // Intentionally implicit: a cyclic group is the one-factor product.
  AbelianGroup(const CyclicGroup& g) : AbelianGroup(std::vector<std::uint32_t>{g.order()}) {}

  [[nodiscard]] std::uint32_t order() const { return order_; }
  [[nodiscard]] std::span<const std::uint32_t> factors() const { return factors_; }
  [[nodiscard]] bool is_cyclic() const { return factors_.size() == 1; }

  [[nodiscard]] std::uint32_t encode(std::span<const std::uint32_t> coords) const {
    if (coords.size() != factors_.size())
      throw std::domain_error("element has " + std::to_string(coords.size()) +
                              " coordinates, group has " + std::to_string(factors_.size()) +
                              " factors");
    std::uint32_t e = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (coords[i] >= factors_[i]) throw std::domain_error("coordinate out of range");
      e = e * factors_[i] + coords[i];
    }
    return e;
  }

  [[nodiscard]] std::vector<std::uint32_t> decode(std::uint32_t e) const {
    std::vector<std::uint32_t> coords(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      coords[i] = e % factors_[i];
      e /= factors_[i];
    }
    return coords;
  }

  [[nodiscard]] std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0;
    std::uint32_t place = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      const std::uint32_t f = factors_[i];
      out += ((a % f + b % f) % f) * place;
      a /= f;
      b /= f;
      place *= f;
    }
    return out;
  }

  [[nodiscard]] std::uint32_t scale(std::uint32_t a, std::uint64_t k) const {
    std::uint32_t out = 0;
    std::uint32_t place = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      const std::uint32_t f = factors_[i];
      out += static_cast<std::uint32_t>(((a % f) * (k % f)) % f) * place;
      a /= f;
      place *= f;
    }
    return out;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<std::uint32_t> factors_;
  std::uint32_t order_ = 1;
};

namespace detail {

/// x + S computed element by element; valid for any factorisation.
inline Mask translate_elementwise(const AbelianGroup& g, const Mask& s, std::uint32_t x) {
  Mask out;
  s.for_each([&](std::size_t e) { out.set(g.add(static_cast<std::uint32_t>(e), x)); });
  return out;
}

}  // namespace detail

/// x + S. Cyclic groups use a mask rotation; products rotate each factor.
inline Mask translate(const AbelianGroup& g, const Mask& s, std::uint32_t x) {
  if (g.is_cyclic()) return s.rotated(x % g.order(), g.order());
  return detail::translate_elementwise(g, s, x);
}

class GroupSubset {
 public:
  explicit GroupSubset(AbelianGroup group) : group_(std::move(group)) {}

  GroupSubset(AbelianGroup group, const Mask& mask) : group_(std::move(group)), mask_(mask) {
    if (mask_.any() && mask_.highest() >= group_.order())
      throw std::domain_error("mask has bits outside the group");
  }

  static GroupSubset from_elements(AbelianGroup group, std::span<const std::uint32_t> elements) {
    Mask mask;
    for (auto e : elements) {
      if (e >= group.order())
        throw std::domain_error("element " + std::to_string(e) + " is not in a group of order " +
                                std::to_string(group.order()));
      mask.set(e);
    }
    return GroupSubset(std::move(group), mask);
  }

  static GroupSubset from_elements(AbelianGroup group, std::initializer_list<std::uint32_t> elements) {
    std::vector<std::uint32_t> v(elements);
    return from_elements(std::move(group), v);
  }

  /// Residues taken modulo n; duplicates collapse.
  static GroupSubset from_residues(std::uint32_t n, std::span<const std::int64_t> residues) {
    CyclicGroup g(n);
    AbelianGroup group(g);
    Mask mask;
    for (auto r : residues) {
      const auto nn = static_cast<std::int64_t>(n);
      mask.set(static_cast<std::size_t>(((r % nn) + nn) % nn));
    }
    return GroupSubset(std::move(group), mask);
  }

  [[nodiscard]] const AbelianGroup& group() const { return group_; }
  [[nodiscard]] const Mask& mask() const { return mask_; }
  [[nodiscard]] std::size_t size() const { return mask_.count(); }
  [[nodiscard]] bool empty() const { return mask_.none(); }
  [[nodiscard]] bool contains(std::uint32_t e) const { return e < group_.order() && mask_.test(e); }

  [[nodiscard]] std::vector<std::uint32_t> elements() const {
    std::vector<std::uint32_t> out;
    out.reserve(size());
    mask_.for_each([&](std::size_t e) { out.push_back(static_cast<std::uint32_t>(e)); });
    return out;
  }

  [[nodiscard]] bool is_subset_of(const GroupSubset& other) const {
    return group_ == other.group_ && mask_.is_subset_of(other.mask_);
  }

  friend bool operator==(const GroupSubset&, const GroupSubset&) = default;

 private:
  AbelianGroup group_;
  Mask mask_;
};

/// hA: sums of h not-necessarily-distinct elements, by h-1 pointwise sums.
inline GroupSubset unrestricted_sumset(const GroupSubset& a, std::uint32_t h) {
  if (h == 0) throw std::domain_error("unrestricted sumset needs h >= 1");
  if (a.empty()) throw std::domain_error("unrestricted sumset of the empty set");
  const auto& g = a.group();
  Mask acc = a.mask();
  for (std::uint32_t step = 1; step < h; ++step) {
    Mask next;
    a.mask().for_each([&](std::size_t x) { next |= translate(g, acc, static_cast<std::uint32_t>(x)); });
    if (next == acc) break;
    acc = next;
  }
  return GroupSubset(g, acc);
}

/// Layered subset-sum DP: after processing a prefix of A, layers[j] holds
/// every sum of exactly j distinct processed elements.
inline GroupSubset restricted_sumset(const GroupSubset& a, std::uint32_t h) {
  const auto& g = a.group();
  const std::size_t m = a.size();
  if (h > m) return GroupSubset(g);
  std::vector<Mask> layers(h + 1);
  layers[0].set(0);
  std::size_t processed = 0;
  a.mask().for_each([&](std::size_t x) {
    ++processed;
    const std::size_t top = std::min<std::size_t>(processed, h);
    // Only layers that can still reach h matter.
    const std::size_t floor_j = (h + processed > m) ? h + processed - m : 1;
    for (std::size_t j = top; j >= std::max<std::size_t>(floor_j, 1); --j) {
      layers[j] |= translate(g, layers[j - 1], static_cast<std::uint32_t>(x));
      if (j == 1) break;
    }
  });
  return GroupSubset(g, layers[h]);
}

/// aA + b over Z_n.
inline GroupSubset affine_image(const GroupSubset& a, std::uint32_t mult, std::uint32_t shift) {
  if (!a.group().is_cyclic()) throw std::domain_error("affine_image is defined over Z_n only");
  const std::uint32_t n = a.group().order();
  if (std::gcd(mult % n, n) != 1) throw std::domain_error("affine multiplier must be a unit mod n");
  Mask out;
  a.mask().for_each([&](std::size_t x) {
    out.set(static_cast<std::size_t>((static_cast<std::uint64_t>(mult % n) * x + shift) % n));
  });
  return GroupSubset(a.group(), out);
}

namespace detail {

template <std::size_t W>
BitMask<W> canonical_mask(const BitMask<W>& mask, std::uint32_t n) {
  BitMask<W> best = mask;
  const std::uint32_t last_unit = n > 1 ? n - 1 : 1;
  for (std::uint32_t unit = 1; unit <= last_unit; ++unit) {
    if (std::gcd(unit, n) != 1) continue;
    BitMask<W> scaled;
    mask.for_each([&](std::size_t x) { scaled.set(static_cast<std::size_t>((std::uint64_t{unit} * x) % n)); });
    for (std::uint32_t b = 0; b < n; ++b) {
      auto cand = scaled.rotated(b, n);
      if (cand < best) best = cand;
    }
  }
  return best;
}

}  // namespace detail

/// Smallest mask (as an integer) over the full affine orbit {uA + b}.
inline GroupSubset canonical_form(const GroupSubset& a) {
  if (!a.group().is_cyclic()) throw std::domain_error("canonical_form is defined over Z_n only");
  if (a.empty()) throw std::domain_error("canonical_form of the empty set");
  return GroupSubset(a.group(), detail::canonical_mask(a.mask(), a.group().order()));
}

}  // namespace rsum
