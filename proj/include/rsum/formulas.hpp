#pragma once

// Closed forms for the sumset bounds over Z_n: f_d and u(n,m,h), the
// restricted analogue f^_d with its correction term, u^(n,m,h), and the
// specialised expressions for h = 2 and h = 3.
//
// All arithmetic is signed 64-bit. The correction term can be negative and
// hm - h^2 + 1 - delta can exceed n; only the final min clamps.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace rsum {

struct Params {
  std::int64_t n = 1;
  std::int64_t m = 1;
  std::int64_t h = 1;

  void validate() const {
    if (n < 1) throw std::domain_error("n must be positive");
    if (m < 1 || m > n)
      throw std::domain_error("m must satisfy 1 <= m <= n (n=" + std::to_string(n) +
                              ", m=" + std::to_string(m) + ")");
    if (h < 1) throw std::domain_error("h must be positive");
  }

  friend bool operator==(const Params&, const Params&) = default;
};

struct DivisorBreakdown {
  std::int64_t d = 1;
  std::int64_t c = 0;  // ceil(m/d) - 1
  std::int64_t k = 1;  // positive remainder of m mod d
  std::int64_t q = 0;  // ceil(h/d) - 1
  std::int64_t r = 1;  // positive remainder of h mod d
  std::int64_t f_d = 0;
  std::int64_t delta_d = 0;
  std::int64_t f_hat_d = 0;

  friend bool operator==(const DivisorBreakdown&, const DivisorBreakdown&) = default;
};

struct BoundResult {
  std::int64_t value = 0;
  std::int64_t argmin_divisor = 1;
  std::vector<DivisorBreakdown> table;
};

struct SpanQuantities {
  std::int64_t i_min = 0;
  std::int64_t i_max = 0;
  std::int64_t span_times_d = 0;
};

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

inline bool is_power_of_two(std::int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

inline bool is_prime(std::int64_t x) {
  if (x < 2) return false;
  for (std::int64_t p = 2; p * p <= x; ++p)
    if (x % p == 0) return false;
  return true;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw std::domain_error("divisors: n must be positive");
  std::vector<std::int64_t> low;
  std::vector<std::int64_t> high;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    low.push_back(d);
    if (d != n / d) high.push_back(n / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

namespace detail {

inline void require_divisor(const Params& p, std::int64_t d) {
  if (d < 1 || p.n % d != 0)
    throw std::domain_error(std::to_string(d) + " does not divide n=" + std::to_string(p.n));
}

}  // namespace detail

inline std::int64_t f_d(const Params& p, std::int64_t d) {
  p.validate();
  detail::require_divisor(p, d);
  return (p.h * ceil_div(p.m, d) - p.h + 1) * d;
}

/// The four-case correction term of the A_d restricted-sumset size.
inline std::int64_t correction_term(std::int64_t d, std::int64_t k, std::int64_t r) {
  if (r < k) return (k - r) * r - (d - 1);
  if (k < r && r < d) return (d - r) * (r - k) - (d - 1);
  if (k == r && r == d) return d - 1;
  return 0;
}

inline DivisorBreakdown breakdown(const Params& p, std::int64_t d) {
  p.validate();
  detail::require_divisor(p, d);
  DivisorBreakdown b;
  b.d = d;
  b.c = ceil_div(p.m, d) - 1;
  b.k = p.m - b.c * d;
  b.q = ceil_div(p.h, d) - 1;
  b.r = p.h - b.q * d;
  b.f_d = (p.h * (b.c + 1) - p.h + 1) * d;
  b.delta_d = correction_term(d, b.k, b.r);

  if (p.h == p.m) {
    b.f_hat_d = 1;
  } else if (p.h > p.m) {
    b.f_hat_d = 0;
  } else {
    // The case formula is only right for h <= m/2 (e.g. it gives 6 for
    // (6,5,4), d = 3, where the set has 5 sums); |h^A| = |(m-h)^A| covers the rest.
    // q, r and delta_d above stay those of h itself.
    const std::int64_t h = std::min(p.h, p.m - p.h);
    const std::int64_t r = h - (ceil_div(h, d) - 1) * d;
    const std::int64_t f = (h * (b.c + 1) - h + 1) * d;
    const std::int64_t base = h * p.m - h * h + 1;
    if (h <= std::min(b.k, d - 1)) {
      b.f_hat_d = std::min({p.n, f, base});
    } else {
      b.f_hat_d = std::min(p.n, base - correction_term(d, b.k, r));
    }
  }
  return b;
}

inline std::int64_t f_hat_d(const Params& p, std::int64_t d) { return breakdown(p, d).f_hat_d; }

namespace detail {

template <class Key>
BoundResult minimise_over_divisors(const Params& p, Key key) {
  p.validate();
  BoundResult out;
  bool first = true;
  for (auto d : divisors(p.n)) {
    auto b = breakdown(p, d);
    const std::int64_t v = key(b);
    // Strict comparison keeps the smallest divisor on ties.
    if (first || v < out.value) {
      out.value = v;
      out.argmin_divisor = d;
      first = false;
    }
    out.table.push_back(b);
  }
  return out;
}

}  // namespace detail

/// u(n,m,h) = min f_d over d | n; the minimum size of hA.
inline BoundResult u(const Params& p) {
  return detail::minimise_over_divisors(p, [](const DivisorBreakdown& b) { return b.f_d; });
}

/// u^(n,m,h) = min f^_d over d | n; the restricted-sumset size of the best A_d.
inline BoundResult u_hat(const Params& p) {
  return detail::minimise_over_divisors(p, [](const DivisorBreakdown& b) { return b.f_hat_d; });
}

inline std::int64_t u_hat_h2_closed(std::int64_t n, std::int64_t m) {
  if (m < 3 || m > n) throw std::domain_error("u_hat_h2_closed needs 3 <= m <= n");
  const std::int64_t uu = u({n, m, 2}).value;
  if (n % 2 == 0 && m % 2 == 0) return std::min(uu, 2 * m - 4);
  return std::min(uu, 2 * m - 3);
}

inline std::int64_t u_hat_h3_closed(std::int64_t n, std::int64_t m) {
  if (m < 4 || m > n) throw std::domain_error("u_hat_h3_closed needs 4 <= m <= n");
  const std::int64_t uu = u({n, m, 3}).value;
  const std::int64_t g = std::gcd(n, m - 1);
  if (g >= 8) return std::min(uu, 3 * m - 3 - g);
  if (g == 7 || (g <= 5 && n % 3 == 0 && m % 3 == 0)) return std::min(uu, 3 * m - 10);
  if (g == 6) return std::min(uu, 3 * m - 9);
  return std::min(uu, 3 * m - 8);
}

/// Upper bound on the minimum restricted 2-fold sumset size, including the
/// improvement from the special h = 2 family.
inline std::int64_t rho_hat_upper_h2(std::int64_t n, std::int64_t m) {
  if (m < 3 || m > n) throw std::domain_error("rho_hat_upper_h2 needs 3 <= m <= n");
  const std::int64_t uu = u({n, m, 2}).value;
  const bool even_pair = n % 2 == 0 && m % 2 == 0;
  const bool special = n % (2 * m - 2) == 0 && !is_power_of_two(m - 1);
  if (even_pair || special) return std::min(uu, 2 * m - 4);
  return std::min(uu, 2 * m - 3);
}

/// Upper bound on the minimum restricted 3-fold sumset size, including the
/// improvements from the two special h = 3 families.
inline std::int64_t rho_hat_upper_h3(std::int64_t n, std::int64_t m) {
  if (m < 4 || m > n) throw std::domain_error("rho_hat_upper_h3 needs 4 <= m <= n");
  const std::int64_t uu = u({n, m, 3}).value;
  const std::int64_t g = std::gcd(n, m - 1);
  if (g >= 8) return std::min(uu, 3 * m - 3 - g);
  const bool minus10 = g == 7 || (g <= 5 && n % 3 == 0 && m % 3 == 0) ||
                       (g <= 5 && n % (3 * m - 9) == 0 && (m - 3) % 5 == 0);
  if (minus10) return std::min(uu, 3 * m - 10);
  if (g == 6 || (m == 6 && n % 10 == 0 && n % 3 != 0)) return std::min(uu, 3 * m - 9);
  return std::min(uu, 3 * m - 8);
}

/// Constructive t-subset of Z_d with a prescribed sum j (mod d), 1 <= t <= d-1.
inline std::vector<std::int64_t> lemma_subset(std::int64_t d, std::int64_t t, std::int64_t j) {
  if (t < 1 || t >= d) throw std::domain_error("lemma_subset needs 1 <= t <= d-1");
  const std::int64_t jj = ((j % d) + d) % d;
  const std::int64_t j0 = (((jj - t * (t - 1) / 2) % d) + d) % d;
  std::vector<std::int64_t> out;
  if (j0 <= t - 1) {
    for (std::int64_t x = 0; x <= t; ++x)
      if (x != t - j0) out.push_back(x);
  } else {
    for (std::int64_t x = 1; x <= t - 1; ++x) out.push_back(x);
    out.push_back(j0);
  }
  return out;
}

/// Least and greatest coset index reached by h distinct elements of A_d(n,m),
/// and the number of covered elements (i_max - i_min + 1) * d.
inline SpanQuantities span_quantities(const Params& p, std::int64_t d) {
  p.validate();
  detail::require_divisor(p, d);
  if (p.h >= p.m) throw std::domain_error("span_quantities needs h <= m-1");
  const auto b = breakdown(p, d);
  // q(h + r - d)/2 written as d(0 + 1 + ... + (q-1)) + rq, which is integral.
  const std::int64_t half = d * b.q * (b.q - 1) / 2 + b.r * b.q;
  SpanQuantities s;
  s.i_min = half;
  s.i_max = p.h * b.c - p.h + b.k * b.q - half + std::min(b.r, b.k);
  s.span_times_d = p.h * p.m - p.h * p.h - b.r * (b.k - b.r) + d * std::min<std::int64_t>(0, b.k - b.r) + d;
  if ((s.i_max - s.i_min + 1) * d != s.span_times_d)
    throw std::logic_error("span quantities are inconsistent for n=" + std::to_string(p.n) +
                           " m=" + std::to_string(p.m) + " h=" + std::to_string(p.h) +
                           " d=" + std::to_string(d));
  return s;
}

}  // namespace rsum
