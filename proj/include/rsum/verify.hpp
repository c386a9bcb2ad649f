#pragma once

// Claim checks against the formula engine, the constructions, and exact
// search values. Every check returns a Report of flat rows; a row whose
// search value is missing is marked unknown rather than passed. A failed row
// in a conjecture report is a mathematical finding, not an error.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "rsum/cache.hpp"
#include "rsum/constructions.hpp"
#include "rsum/formulas.hpp"
#include "rsum/groups.hpp"
#include "rsum/search.hpp"

namespace rsum {

/// Supplies exact search values: cache first, then (optionally) a fresh
/// search whose record is appended to the cache.
class RhoProvider {
 public:
  RhoProvider(ResultsCache& cache, SearchOptions opts, bool compute_missing = true)
      : cache_(cache), opts_(opts), compute_missing_(compute_missing) {}

  std::optional<SearchRecord> exact(std::int64_t n, std::int64_t m, std::int64_t h) {
    if (auto hit = cache_.find_exact(n, m, h)) return hit;
    if (!compute_missing_ || n > kMaxOrder) return std::nullopt;
    auto rec = rho_hat_exact(n, m, h, opts_);
    cache_.append(rec);
    if (rec.status != SearchStatus::exact) return std::nullopt;
    return rec;
  }

  std::optional<std::int64_t> value(std::int64_t n, std::int64_t m, std::int64_t h) {
    auto r = exact(n, m, h);
    if (!r) return std::nullopt;
    return r->rho_hat;
  }

 private:
  ResultsCache& cache_;
  SearchOptions opts_;
  bool compute_missing_;
};

enum class Outcome { pass, fail, unknown };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::unknown: return "unknown";
  }
  return "?";
}

enum class ClaimKind { theorem, conjecture, corollary, construction, counterexample, audit };

inline const char* to_string(ClaimKind k) {
  switch (k) {
    case ClaimKind::theorem: return "theorem";
    case ClaimKind::conjecture: return "conjecture";
    case ClaimKind::corollary: return "corollary";
    case ClaimKind::construction: return "construction";
    case ClaimKind::counterexample: return "counterexample";
    case ClaimKind::audit: return "audit";
  }
  return "?";
}

struct ReportRow {
  nlohmann::ordered_json fields = nlohmann::ordered_json::object();
  Outcome outcome = Outcome::unknown;
};

struct Report {
  std::string name;
  ClaimKind kind = ClaimKind::theorem;
  std::string statement;
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;

  [[nodiscard]] std::size_t count(Outcome o) const {
    std::size_t c = 0;
    for (const auto& r : rows) c += r.outcome == o ? 1 : 0;
    return c;
  }
  [[nodiscard]] bool all_pass() const { return !rows.empty() && count(Outcome::pass) == rows.size(); }

  void add(nlohmann::ordered_json fields, Outcome outcome) { rows.push_back({std::move(fields), outcome}); }
};

namespace detail {

inline Outcome outcome_of(bool ok) { return ok ? Outcome::pass : Outcome::fail; }

inline nlohmann::ordered_json opt_json(const std::optional<std::int64_t>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

inline std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Audit of rho^ against u^
// ---------------------------------------------------------------------------

enum class Classification {
  equal,
  gap_one_prop16_h2,
  gap_one_prop16_h3m6,
  gap_one_prop16_hodd,
  gap_one_unexplained,
  gap_other,
  unknown
};

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::equal: return "equal";
    case Classification::gap_one_prop16_h2: return "gap_one_prop16_h2";
    case Classification::gap_one_prop16_h3m6: return "gap_one_prop16_h3m6";
    case Classification::gap_one_prop16_hodd: return "gap_one_prop16_hodd";
    case Classification::gap_one_unexplained: return "gap_one_unexplained";
    case Classification::gap_other: return "gap_other";
    case Classification::unknown: return "unknown";
  }
  return "?";
}

struct AuditRow {
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t h = 0;
  std::int64_t u_value = 0;
  std::int64_t u_hat_value = 0;
  std::optional<std::int64_t> rho_hat;
  std::optional<std::int64_t> gap;
  Classification classification = Classification::unknown;
};

/// Which special family (at h or at the dual fold m - h) realises rho_hat.
inline Classification classify_gap(std::int64_t n, std::int64_t m, std::int64_t h, std::int64_t rho_hat) {
  for (std::int64_t fold : {h, m - h}) {
    if (fold < 2 || m < 3 || fold >= m) continue;
    auto fam = special_family(fold, n, m);
    if (!fam || n > kMaxOrder) continue;
    const auto size = static_cast<std::int64_t>(
        restricted_sumset(construct_B(fam->params), static_cast<std::uint32_t>(fold)).size());
    if (size != rho_hat) continue;
    switch (fam->family) {
      case SpecialFamily::h2: return Classification::gap_one_prop16_h2;
      case SpecialFamily::h3_m6: return Classification::gap_one_prop16_h3m6;
      case SpecialFamily::h_odd: return Classification::gap_one_prop16_hodd;
    }
  }
  return Classification::gap_one_unexplained;
}

inline AuditRow audit_cell(std::int64_t n, std::int64_t m, std::int64_t h, RhoProvider& rho) {
  AuditRow row;
  row.n = n;
  row.m = m;
  row.h = h;
  row.u_value = u({n, m, h}).value;
  row.u_hat_value = u_hat({n, m, h}).value;
  row.rho_hat = rho.value(n, m, h);
  if (!row.rho_hat) return row;
  row.gap = row.u_hat_value - *row.rho_hat;
  if (*row.gap == 0) {
    row.classification = Classification::equal;
  } else if (*row.gap == 1) {
    row.classification = classify_gap(n, m, h, *row.rho_hat);
  } else {
    row.classification = Classification::gap_other;
  }
  return row;
}

inline std::vector<AuditRow> audit_range(std::int64_t n_max, RhoProvider& rho) {
  std::vector<AuditRow> rows;
  for (std::int64_t n = 1; n <= n_max; ++n)
    for (std::int64_t m = 1; m <= n; ++m)
      for (std::int64_t h = 1; h <= m; ++h) rows.push_back(audit_cell(n, m, h, rho));
  return rows;
}

inline Report audit_report(const std::vector<AuditRow>& rows) {
  Report rep{"audit",
             ClaimKind::audit,
             "rho_hat(Z_n,m,h) is u_hat or u_hat - 1, and every gap is realised by a special family",
             {"n", "m", "h", "u", "u_hat", "rho_hat", "gap", "classification"},
             {}};
  for (const auto& r : rows) {
    Outcome o = Outcome::unknown;
    switch (r.classification) {
      case Classification::equal:
      case Classification::gap_one_prop16_h2:
      case Classification::gap_one_prop16_h3m6:
      case Classification::gap_one_prop16_hodd: o = Outcome::pass; break;
      case Classification::gap_one_unexplained:
      case Classification::gap_other: o = Outcome::fail; break;
      case Classification::unknown: o = Outcome::unknown; break;
    }
    rep.add({{"n", r.n},
             {"m", r.m},
             {"h", r.h},
             {"u", r.u_value},
             {"u_hat", r.u_hat_value},
             {"rho_hat", detail::opt_json(r.rho_hat)},
             {"gap", detail::opt_json(r.gap)},
             {"classification", to_string(r.classification)}},
            o);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Known theorems, conjectures and corollaries
// ---------------------------------------------------------------------------

namespace detail {

inline void add_value_row(Report& rep, std::int64_t n, std::int64_t m, std::int64_t h, std::int64_t expected,
                          const std::optional<std::int64_t>& got) {
  rep.add({{"n", n}, {"m", m}, {"h", h}, {"expected", expected}, {"rho_hat", opt_json(got)}},
          got ? outcome_of(*got == expected) : Outcome::unknown);
}

}  // namespace detail

/// Prime moduli: rho^(Z_p, m, h) = min{p, hm - h^2 + 1}.
inline Report check_dias_da_silva_hamidoune(std::int64_t p_max, RhoProvider& rho) {
  Report rep{"dias-da-silva-hamidoune", ClaimKind::theorem, "rho_hat(Z_p,m,h) = min{p, hm - h^2 + 1} for prime p",
             {"n", "m", "h", "expected", "rho_hat"}, {}};
  for (std::int64_t p = 2; p <= p_max; ++p) {
    if (!is_prime(p)) continue;
    for (std::int64_t m = 1; m <= p; ++m)
      for (std::int64_t h = 1; h <= m; ++h)
        detail::add_value_row(rep, p, m, h, std::min(p, h * m - h * h + 1), rho.value(p, m, h));
  }
  return rep;
}

/// rho^(Z_n, floor(n/2) + 1, 2) is n - 1 for powers of two and n - 2 otherwise.
inline Report check_gallardo_grekos(std::int64_t n_max, RhoProvider& rho) {
  Report rep{"gallardo-grekos", ClaimKind::theorem,
             "rho_hat(Z_n, floor(n/2)+1, 2) = n-1 if n is a power of 2, else n-2",
             {"n", "m", "h", "expected", "rho_hat"}, {}};
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const std::int64_t m = n / 2 + 1;
    detail::add_value_row(rep, n, m, 2, is_power_of_two(n) ? n - 1 : n - 2, rho.value(n, m, 2));
  }
  return rep;
}

/// The restricted 2-critical number of Z_n is floor(n/2) + 2.
inline Report check_critical_number(std::int64_t n_max, RhoProvider& rho) {
  Report rep{"critical-number", ClaimKind::theorem,
             "rho_hat(Z_n, floor(n/2)+2, 2) = n and rho_hat(Z_n, floor(n/2)+1, 2) < n",
             {"n", "m", "h", "relation", "rho_hat"}, {}};
  for (std::int64_t n = 4; n <= n_max; ++n) {
    const std::int64_t at = n / 2 + 2;
    const std::int64_t below = n / 2 + 1;
    auto v_at = rho.value(n, at, 2);
    auto v_below = rho.value(n, below, 2);
    rep.add({{"n", n}, {"m", at}, {"h", 2}, {"relation", "= n"}, {"rho_hat", detail::opt_json(v_at)}},
            v_at ? detail::outcome_of(*v_at == n) : Outcome::unknown);
    rep.add({{"n", n}, {"m", below}, {"h", 2}, {"relation", "< n"}, {"rho_hat", detail::opt_json(v_below)}},
            v_below ? detail::outcome_of(*v_below < n) : Outcome::unknown);
  }
  return rep;
}

/// Conjectured exact value for h = 2; mismatches are findings.
inline Report check_conjecture_h2(std::int64_t n_max, RhoProvider& rho) {
  Report rep{"conjecture-h2", ClaimKind::conjecture,
             "rho_hat(Z_n,m,2) = min{u, 2m-4} if 2|n,2|m or (2m-2)|n with m-1 not a power of 2; min{u, 2m-3} "
             "otherwise",
             {"n", "m", "h", "expected", "rho_hat"}, {}};
  for (std::int64_t n = 3; n <= n_max; ++n)
    for (std::int64_t m = 3; m <= n; ++m) detail::add_value_row(rep, n, m, 2, rho_hat_upper_h2(n, m), rho.value(n, m, 2));
  return rep;
}

/// The h = 3 upper bound, checked for equality.
inline Report check_corollary_h3(std::int64_t n_max, RhoProvider& rho) {
  Report rep{"corollary-h3", ClaimKind::corollary, "rho_hat(Z_n,m,3) equals the four-case h = 3 upper bound",
             {"n", "m", "h", "expected", "rho_hat"}, {}};
  for (std::int64_t n = 4; n <= n_max; ++n)
    for (std::int64_t m = 4; m <= n; ++m) detail::add_value_row(rep, n, m, 3, rho_hat_upper_h3(n, m), rho.value(n, m, 3));
  return rep;
}

// ---------------------------------------------------------------------------
// Counterexamples and the unbounded-gap construction
// ---------------------------------------------------------------------------

inline Report check_counterexamples(RhoProvider& rho) {
  Report rep{"counterexamples", ClaimKind::counterexample,
             "C1 and Z_2^k + {0,1} violate |2^A| >= min{|G|-1, 3m/2}; n = p^t, m = p^(t-1)+1 violates "
             "rho_hat = min{rho, 2m-2}",
             {"case", "group", "m", "value", "bound", "detail"}, {}};

  {
    const auto c1 = named_set_c1();
    const auto size = static_cast<std::int64_t>(restricted_sumset(c1, 2).size());
    const std::int64_t m = static_cast<std::int64_t>(c1.size());
    // Compare 2|2^A| with min{2(|G|-1), 3m} to stay in integers.
    const bool ok = size == 10 && 2 * size < std::min<std::int64_t>(2 * (12 - 1), 3 * m);
    rep.add({{"case", "C1"}, {"group", "Z12"}, {"m", m}, {"value", size}, {"bound", "min{11, 21/2}"}, {"detail", ""}},
            detail::outcome_of(ok));
  }

  for (std::int64_t d : {3, 5, 7}) {
    for (std::int64_t k = 1; k <= 4; ++k) {
      if ((std::int64_t{1} << k) * d > kMaxOrder) continue;
      const auto inst = hls_counterexample(k, d);
      const auto m = static_cast<std::int64_t>(inst.set.size());
      const auto order = static_cast<std::int64_t>(inst.group.order());
      const auto size = static_cast<std::int64_t>(restricted_sumset(inst.set, 2).size());
      const std::int64_t expected = 3 * (std::int64_t{1} << k) - 2;
      const bool ok = m == 2 * (std::int64_t{1} << k) && size == expected &&
                      2 * size < std::min<std::int64_t>(2 * (order - 1), 3 * m);
      rep.add({{"case", "Z2^" + std::to_string(k) + "+{0,1}"},
               {"group", "Z2^" + std::to_string(k) + "+Z" + std::to_string(d)},
               {"m", m},
               {"value", size},
               {"bound", "min{" + std::to_string(order - 1) + ", " + std::to_string(3 * m) + "/2}"},
               {"detail", "expected " + std::to_string(expected)}},
              detail::outcome_of(ok));
    }
  }

  for (auto [p, t] : {std::pair<std::int64_t, std::int64_t>{3, 2}, {5, 2}, {3, 3}}) {
    const auto inst = plagne_counterexample(p, t);
    const auto& P = inst.params;
    const std::int64_t rho_u = u(P).value;
    const std::int64_t uh = u_hat(P).value;
    auto searched = rho.value(P.n, P.m, 2);
    const std::int64_t upper = searched ? *searched : uh;
    const bool ok = rho_u == inst.expected_rho && uh == inst.expected_u_hat && upper <= 2 * P.m - 3 &&
                    2 * P.m - 3 < std::min(rho_u, 2 * P.m - 2);
    rep.add({{"case", "p=" + std::to_string(p) + ",t=" + std::to_string(t)},
             {"group", "Z" + std::to_string(P.n)},
             {"m", P.m},
             {"value", upper},
             {"bound", "min{" + std::to_string(rho_u) + ", " + std::to_string(2 * P.m - 2) + "}"},
             {"detail", std::string(searched ? "search" : "u_hat") + ", u=" + std::to_string(rho_u) +
                            ", u_hat=" + std::to_string(uh)}},
            detail::outcome_of(ok));
  }
  return rep;
}

struct UnboundedGapResult {
  Params params;
  std::int64_t u_value;
  std::int64_t u_hat_value;
  std::int64_t f_hat_value;  // f^_d for d = p^(t-1)
  std::int64_t direct_size;  // |h^A_d| for d = p^(t-1)
  bool holds;
};

/// For n = p^t, m = p^(t-1) + 1 and h < p: u = h p^(t-1) + 1 while the A_d
/// set with d = p^(t-1) has a restricted h-fold sumset of size 2 p^(t-1), so
/// u_hat <= 2 p^(t-1). Equality can fail once h(m-h) + 1 < 2 p^(t-1).
inline UnboundedGapResult unbounded_gap_instance(std::int64_t h, std::int64_t p, std::int64_t t) {
  if (!is_prime(p)) throw std::domain_error("p must be prime");
  if (t < 2) throw std::domain_error("t must be at least 2");
  if (h < 1 || h >= p) throw std::domain_error("h must satisfy 1 <= h < p");
  std::int64_t base = 1;
  for (std::int64_t i = 0; i < t - 1; ++i) base *= p;
  const Params P{base * p, base + 1, h};
  if (P.n > kMaxOrder) throw std::domain_error("p^t exceeds mask capacity");
  UnboundedGapResult r{P, u(P).value, u_hat(P).value, f_hat_d(P, base), 0, false};
  r.direct_size = static_cast<std::int64_t>(
      restricted_sumset(construct_A(P.n, P.m, base), static_cast<std::uint32_t>(h)).size());
  r.holds = r.u_value == h * base + 1 && r.f_hat_value == 2 * base && r.direct_size == 2 * base &&
            r.u_hat_value <= 2 * base;
  return r;
}

inline Report check_unbounded_gap(const std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>>& cases) {
  Report rep{"unbounded-gap", ClaimKind::construction,
             "n = p^t, m = p^(t-1)+1, h < p: u = h p^(t-1) + 1 and |h^A_{p^(t-1)}| = f^_{p^(t-1)} = 2 p^(t-1) >= u_hat",
             {"h", "p", "t", "n", "m", "u", "u_hat", "f_hat", "direct"}, {}};
  for (auto [h, p, t] : cases) {
    auto r = unbounded_gap_instance(h, p, t);
    rep.add({{"h", h},
             {"p", p},
             {"t", t},
             {"n", r.params.n},
             {"m", r.params.m},
             {"u", r.u_value},
             {"u_hat", r.u_hat_value},
             {"f_hat", r.f_hat_value},
             {"direct", r.direct_size}},
            detail::outcome_of(r.holds));
  }
  return rep;
}

inline std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> default_unbounded_gap_cases() {
  return {{3, 5, 2}, {4, 5, 2}, {3, 7, 2}, {5, 7, 2}, {3, 5, 3}, {4, 5, 3}};
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

inline void write_csv(std::ostream& out, const Report& rep) {
  out << "claim,kind";
  for (const auto& c : rep.columns) out << ',' << c;
  out << ",outcome\n";
  for (const auto& row : rep.rows) {
    out << rep.name << ',' << to_string(rep.kind);
    for (const auto& c : rep.columns) {
      std::string cell = row.fields.contains(c) ? detail::csv_cell(row.fields.at(c)) : "";
      if (cell.find_first_of(",\"") != std::string::npos) {
        std::string quoted = "\"";
        for (char ch : cell) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        cell = quoted + "\"";
      }
      out << ',' << cell;
    }
    out << ',' << to_string(row.outcome) << '\n';
  }
}

inline void write_jsonl(std::ostream& out, const Report& rep) {
  for (const auto& row : rep.rows) {
    nlohmann::ordered_json j;
    j["claim"] = rep.name;
    j["kind"] = to_string(rep.kind);
    for (const auto& [k, v] : row.fields.items()) j[k] = v;
    j["outcome"] = to_string(row.outcome);
    out << j.dump() << '\n';
  }
}

inline void write_summary(std::ostream& out, const Report& rep) {
  out << rep.name << " [" << to_string(rep.kind) << "]: " << rep.count(Outcome::pass) << " pass, "
      << rep.count(Outcome::fail) << " fail, " << rep.count(Outcome::unknown) << " unknown\n";
  out << "  " << rep.statement << '\n';
  for (const auto& row : rep.rows) {
    if (row.outcome == Outcome::pass) continue;
    out << "  " << to_string(row.outcome) << ": " << nlohmann::ordered_json(row.fields).dump() << '\n';
  }
}

}  // namespace rsum
