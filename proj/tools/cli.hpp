#pragma once

// Command-line front end. run() takes the arguments after the program name
// so tests can drive it with string streams.
//
// Exit codes: 0 ok, 1 runtime failure (I/O, internal), 2 invalid usage or
// parameters, 3 a search stopped on its node budget (output is marked).

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rsum/cache.hpp"
#include "rsum/constructions.hpp"
#include "rsum/formulas.hpp"
#include "rsum/groups.hpp"
#include "rsum/search.hpp"
#include "rsum/table.hpp"
#include "rsum/verify.hpp"

namespace rsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

inline constexpr const char* kDefaultCache = "./rho_hat_cache.jsonl";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::int64_t parse_int(const std::string& tok, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    throw UsageError("bad integer '" + tok + "' in " + what);
  }
  if (used != tok.size()) throw UsageError("bad integer '" + tok + "' in " + what);
  return v;
}

inline AbelianGroup parse_group(const std::optional<std::int64_t>& n, const std::string& group) {
  if (!group.empty()) {
    if (n) throw UsageError("give either --n or --group, not both");
    std::vector<std::uint32_t> factors;
    for (const auto& tok : split(group, ',')) {
      const auto f = parse_int(tok, "--group");
      if (f < 1 || f > kMaxOrder) throw UsageError("group factor " + tok + " out of range");
      factors.push_back(static_cast<std::uint32_t>(f));
    }
    try {
      return AbelianGroup(factors);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  if (!n) throw UsageError("--n or --group is required");
  if (*n < 1 || *n > kMaxOrder) throw UsageError("--n must be in 1.." + std::to_string(kMaxOrder));
  return CyclicGroup(static_cast<std::uint32_t>(*n));
}

inline GroupSubset parse_set(const AbelianGroup& g, const std::string& text) {
  if (text.empty()) throw UsageError("--set is empty");
  std::vector<std::uint32_t> elems;
  for (const auto& tok : split(text, ',')) {
    if (tok.empty()) throw UsageError("empty element in --set");
    const auto parts = split(tok, ':');
    if (parts.size() != g.factors().size())
      throw UsageError("element '" + tok + "' needs " + std::to_string(g.factors().size()) + " coordinate(s)");
    std::vector<std::uint32_t> coords;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto v = parse_int(parts[i], "--set");
      const auto f = static_cast<std::int64_t>(g.factors()[i]);
      // Residues are taken mod each factor so negative entries are accepted.
      coords.push_back(static_cast<std::uint32_t>(((v % f) + f) % f));
    }
    const auto e = g.encode(coords);
    for (auto x : elems)
      if (x == e) throw UsageError("element '" + tok + "' repeated in --set");
    elems.push_back(e);
  }
  return GroupSubset::from_elements(g, elems);
}

inline std::string element_text(const AbelianGroup& g, std::uint32_t e) {
  if (g.is_cyclic()) return std::to_string(e);
  std::string s;
  for (auto c : g.decode(e)) s += (s.empty() ? "" : ":") + std::to_string(c);
  return s;
}

inline std::string set_text(const GroupSubset& s, const char* sep = ", ") {
  std::string out;
  bool first = true;
  for (auto e : s.elements()) {
    if (!first) out += sep;
    out += element_text(s.group(), e);
    first = false;
  }
  return out;
}

inline nlohmann::ordered_json set_json(const GroupSubset& s) {
  auto arr = nlohmann::ordered_json::array();
  for (auto e : s.elements()) {
    if (s.group().is_cyclic()) {
      arr.push_back(e);
    } else {
      arr.push_back(element_text(s.group(), e));
    }
  }
  return arr;
}

inline std::string group_text(const AbelianGroup& g) {
  std::string s;
  for (auto f : g.factors()) s += (s.empty() ? "Z" : "+Z") + std::to_string(f);
  return s;
}

inline std::string witness_text(const std::vector<std::uint32_t>& w, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? sep : "") + std::to_string(w[i]);
  return s;
}

inline std::uint32_t fold(std::int64_t h) {
  if (h < 1) throw UsageError("--h must be positive");
  if (h > kMaxOrder) throw UsageError("--h too large");
  return static_cast<std::uint32_t>(h);
}

inline Params checked_params(std::int64_t n, std::int64_t m, std::int64_t h) {
  Params p{n, m, h};
  try {
    p.validate();
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  return p;
}

inline void write_record(std::ostream& out, const std::string& format, const SearchRecord& r, bool header) {
  if (format == "jsonl") {
    out << to_line(r) << '\n';
  } else if (format == "csv") {
    if (header) out << "n,m,h,rho_hat,u_hat,witness,nodes,status\n";
    out << r.n << ',' << r.m << ',' << r.h << ',' << r.rho_hat << ',' << u_hat({r.n, r.m, r.h}).value << ','
        << witness_text(r.witness, " ") << ',' << r.nodes << ',' << to_string(r.status) << '\n';
  } else {
    if (header)
      out << std::setw(4) << "n" << std::setw(4) << "m" << std::setw(4) << "h" << std::setw(8) << "rho_hat"
          << std::setw(7) << "u_hat" << "  witness\n";
    out << std::setw(4) << r.n << std::setw(4) << r.m << std::setw(4) << r.h << std::setw(8) << r.rho_hat
        << std::setw(7) << u_hat({r.n, r.m, r.h}).value << "  {" << witness_text(r.witness, ",") << "}"
        << (r.status == SearchStatus::exact ? "" : "  [budget exhausted: upper bound]") << '\n';
  }
}

inline void write_reports(std::ostream& out, const std::string& format, const std::vector<Report>& reports) {
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (format == "csv") {
      if (i) out << '\n';
      write_csv(out, reports[i]);
    } else if (format == "jsonl") {
      write_jsonl(out, reports[i]);
    } else {
      write_summary(out, reports[i]);
    }
  }
}

inline bool any_unknown(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (r.count(Outcome::unknown)) return true;
  return false;
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"all",           "audit",         "dias-da-silva-hamidoune",
                                              "gallardo-grekos", "critical-number", "conjecture-h2",
                                              "corollary-h3",  "counterexamples", "unbounded-gap"};
  return names;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Restricted and unrestricted h-fold sumsets in Z_n: bounds, constructions, exhaustive search"};
  app.name("rsum");
  // -h would collide with --h; subcommands inherit this flag name.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::optional<std::int64_t> n_opt, m_opt, h_opt, d_opt, k1_opt, k2_opt, g_opt, j0_opt, p_opt, t_opt;
  std::optional<std::uint64_t> budget;
  std::string group, set_text, kind = "A", format = "table", suite = "all";
  std::int64_t n_max = 20;
  unsigned threads = 1;
  bool quick = false;
  std::string cache_path = kDefaultCache;
  if (const char* env = std::getenv("RHO_CACHE"); env && *env) cache_path = env;

  const auto formats = CLI::IsMember({"table", "csv", "jsonl"});
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format: table, csv or jsonl")->check(formats);
  };
  auto add_nmh = [&](CLI::App* sub) {
    sub->add_option("--n", n_opt, "Group order n")->required();
    sub->add_option("--m", m_opt, "Set size m")->required();
    sub->add_option("--h", h_opt, "Number of summands h")->required();
  };
  auto add_cache = [&](CLI::App* sub) {
    sub->add_option("--cache", cache_path, "Results cache (default ./rho_hat_cache.jsonl, env RHO_CACHE)");
  };

  auto* sumset = app.add_subcommand("sumset", "Unrestricted h-fold sumset hA");
  auto* rsumset = app.add_subcommand("rsumset", "Restricted h-fold sumset of distinct summands");
  for (auto* sub : {sumset, rsumset}) {
    sub->add_option("--n", n_opt, "Cyclic group order");
    sub->add_option("--group", group, "Product group factors, e.g. 2,2,3");
    sub->add_option("--set", set_text, "Elements: 0,4,1 (cyclic) or 1:0:2,0:1:1 (product)")->required();
    sub->add_option("--h", h_opt, "Number of summands")->required();
    add_format(sub);
    sub->footer("csv columns: n,h,kind,size,elements");
  }

  auto* ucmd = app.add_subcommand("u", "u(n,m,h) with its per-divisor table");
  auto* uhat = app.add_subcommand("uhat", "u^(n,m,h) with its per-divisor table");
  for (auto* sub : {ucmd, uhat}) {
    add_nmh(sub);
    add_format(sub);
    sub->footer("csv columns: n,m,h,d,c,k,q,r,f_d,delta_d,f_hat_d,argmin");
  }

  auto* construct = app.add_subcommand("construct", "Build A_d, B_d or a named set C1/C2/C3");
  construct->add_option("--kind", kind, "A, B, C1, C2 or C3")->check(CLI::IsMember({"A", "B", "C1", "C2", "C3"}));
  construct->add_option("--n", n_opt, "Group order");
  construct->add_option("--m", m_opt, "Set size");
  construct->add_option("--d", d_opt, "Subgroup order d | n");
  construct->add_option("--k1", k1_opt, "B: elements taken from the first coset");
  construct->add_option("--k2", k2_opt, "B: elements taken from the last coset");
  construct->add_option("--g", g_opt, "B: coset step g");
  construct->add_option("--j0", j0_opt, "B: offset of the last partial coset");
  construct->add_option("--h", h_opt, "Also report the restricted h-fold sumset");
  add_format(construct);
  construct->footer("csv columns: kind,n,m,size,elements[,h,rsumset_size]");

  auto* special = app.add_subcommand("special", "Special B family for (n,m,h), or analyse given B parameters");
  add_nmh(special);
  special->add_option("--d", d_opt, "B: subgroup order");
  special->add_option("--k1", k1_opt, "B: first partial coset size");
  special->add_option("--k2", k2_opt, "B: last partial coset size");
  special->add_option("--g", g_opt, "B: coset step");
  special->add_option("--j0", j0_opt, "B: offset of the last partial coset");
  add_format(special);

  auto* rho = app.add_subcommand("rho-hat", "Exact rho^(Z_n,m,h) by exhaustive search");
  add_nmh(rho);
  rho->add_option("--budget", budget, "Node budget; exit code 3 when exhausted");
  add_format(rho);
  rho->footer("csv columns: n,m,h,rho_hat,u_hat,witness,nodes,status");

  auto* table = app.add_subcommand("table", "Fill the results cache for all n <= n-max");
  table->add_option("--n-max", n_max, "Largest group order")->required();
  table->add_option("--threads", threads, "Worker threads (cells are searched in parallel)");
  table->add_option("--budget", budget, "Node budget per cell");
  table->add_flag("--quick", quick, "Stop a cell once |h^A| = m is reached");
  add_cache(table);
  add_format(table);
  table->footer("csv columns: n,m,h,rho_hat,u_hat,witness,nodes,status");

  auto* verify = app.add_subcommand("verify", "Check the known theorems, conjectures and constructions");
  std::string suites_help = "Suite:";
  for (const auto& s : suite_names()) suites_help += " " + s;
  verify->add_option("--suite", suite, suites_help)->check(CLI::IsMember(suite_names()));
  verify->add_option("--n-max", n_max, "Largest group order searched (default 20)");
  verify->add_option("--threads", threads, "Worker threads for filling the cache");
  verify->add_option("--budget", budget, "Node budget per cell");
  verify->add_option("--h", h_opt, "unbounded-gap: h (with --p and --t)");
  verify->add_option("--p", p_opt, "unbounded-gap: prime p");
  verify->add_option("--t", t_opt, "unbounded-gap: exponent t >= 2");
  add_cache(verify);
  add_format(verify);
  verify->footer("csv columns: claim,kind,<claim columns>,outcome");

  auto* cex = app.add_subcommand("counterexamples", "Replay the known counterexamples");
  cex->add_option("--budget", budget, "Node budget for the searches");
  add_cache(cex);
  add_format(cex);
  cex->footer("csv columns: claim,kind,case,group,m,value,bound,detail,outcome");

  std::vector<std::string> argv_store{"rsum"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    if (msg.empty()) msg = e.get_name();
    err << "error: " << msg << '\n';
    return kExitUsage;
  }

  try {
    if (sumset->parsed() || rsumset->parsed()) {
      const bool restricted = rsumset->parsed();
      const auto g = detail::parse_group(n_opt, group);
      const auto a = detail::parse_set(g, set_text);
      const auto h = detail::fold(*h_opt);
      const auto s = restricted ? restricted_sumset(a, h) : unrestricted_sumset(a, h);
      const char* kind_name = restricted ? "restricted" : "unrestricted";
      if (format == "csv") {
        out << "n,h,kind,size,elements\n"
            << g.order() << ',' << h << ',' << kind_name << ',' << s.size() << ',' << detail::set_text(s, " ") << '\n';
      } else if (format == "jsonl") {
        nlohmann::ordered_json j;
        j["group"] = detail::group_text(g);
        j["h"] = h;
        j["kind"] = kind_name;
        j["size"] = s.size();
        j["elements"] = detail::set_json(s);
        out << j.dump() << '\n';
      } else {
        out << (restricted ? "restricted " : "") << h << "-fold sumset in " << detail::group_text(g) << ": {"
            << detail::set_text(s) << "}\nsize: " << s.size() << '\n';
      }
      return kExitOk;
    }

    if (ucmd->parsed() || uhat->parsed()) {
      const bool hat = uhat->parsed();
      const auto p = detail::checked_params(*n_opt, *m_opt, *h_opt);
      const auto res = hat ? u_hat(p) : u(p);
      const char* name = hat ? "u_hat" : "u";
      if (format == "csv") {
        out << "n,m,h,d,c,k,q,r,f_d,delta_d,f_hat_d,argmin\n";
        for (const auto& b : res.table)
          out << p.n << ',' << p.m << ',' << p.h << ',' << b.d << ',' << b.c << ',' << b.k << ',' << b.q << ','
              << b.r << ',' << b.f_d << ',' << b.delta_d << ',' << b.f_hat_d << ','
              << (b.d == res.argmin_divisor ? 1 : 0) << '\n';
      } else if (format == "jsonl") {
        nlohmann::ordered_json j;
        j["quantity"] = name;
        j["n"] = p.n;
        j["m"] = p.m;
        j["h"] = p.h;
        j["value"] = res.value;
        j["argmin_divisor"] = res.argmin_divisor;
        auto rows = nlohmann::ordered_json::array();
        for (const auto& b : res.table)
          rows.push_back({{"d", b.d}, {"c", b.c}, {"k", b.k}, {"q", b.q}, {"r", b.r},
                          {"f_d", b.f_d}, {"delta_d", b.delta_d}, {"f_hat_d", b.f_hat_d}});
        j["table"] = rows;
        out << j.dump() << '\n';
      } else {
        out << name << '(' << p.n << ',' << p.m << ',' << p.h << ") = " << res.value
            << "  (argmin d = " << res.argmin_divisor << ")\n";
        out << std::setw(6) << "d" << std::setw(5) << "c" << std::setw(5) << "k" << std::setw(5) << "q"
            << std::setw(5) << "r" << std::setw(7) << "f_d" << std::setw(7) << "delta" << std::setw(7) << "f_hat"
            << '\n';
        for (const auto& b : res.table)
          out << std::setw(6) << b.d << std::setw(5) << b.c << std::setw(5) << b.k << std::setw(5) << b.q
              << std::setw(5) << b.r << std::setw(7) << b.f_d << std::setw(7) << b.delta_d << std::setw(7)
              << b.f_hat_d << (b.d == res.argmin_divisor ? "  *" : "") << '\n';
      }
      return kExitOk;
    }

    if (construct->parsed()) {
      GroupSubset s{AbelianGroup(CyclicGroup(1))};
      std::string label;
      auto need = [](const std::optional<std::int64_t>& v, const char* flag) {
        if (!v) throw UsageError(std::string(flag) + " is required for this --kind");
        return *v;
      };
      if (kind == "A") {
        const auto n = need(n_opt, "--n"), m = need(m_opt, "--m"), d = need(d_opt, "--d");
        detail::checked_params(n, m, 1);
        s = construct_A(n, m, d);
        label = "A_" + std::to_string(d) + "(" + std::to_string(n) + "," + std::to_string(m) + ")";
      } else if (kind == "B") {
        const auto n = need(n_opt, "--n"), m = need(m_opt, "--m");
        detail::checked_params(n, m, 1);
        s = construct_B(ConstructionB::make(n, m, need(d_opt, "--d"), need(k1_opt, "--k1"), need(k2_opt, "--k2"),
                                            need(g_opt, "--g"), need(j0_opt, "--j0")));
        label = "B_" + std::to_string(*d_opt) + "(" + std::to_string(n) + "," + std::to_string(m) + ")";
      } else {
        s = kind == "C1" ? named_set_c1() : kind == "C2" ? named_set_c2() : named_set_c3();
        label = kind;
      }
      std::optional<std::size_t> hsize;
      if (h_opt) hsize = restricted_sumset(s, detail::fold(*h_opt)).size();
      if (format == "csv") {
        out << "kind,n,m,size,elements" << (hsize ? ",h,rsumset_size" : "") << '\n';
        out << kind << ',' << s.group().order() << ',' << s.size() << ',' << s.size() << ','
            << detail::set_text(s, " ");
        if (hsize) out << ',' << *h_opt << ',' << *hsize;
        out << '\n';
      } else if (format == "jsonl") {
        nlohmann::ordered_json j;
        j["kind"] = kind;
        j["n"] = s.group().order();
        j["m"] = s.size();
        j["elements"] = detail::set_json(s);
        if (hsize) {
          j["h"] = *h_opt;
          j["rsumset_size"] = *hsize;
        }
        out << j.dump() << '\n';
      } else {
        out << label << " = {" << detail::set_text(s) << "}\nsize: " << s.size() << '\n';
        if (hsize) out << "restricted " << *h_opt << "-fold sumset size: " << *hsize << '\n';
      }
      return kExitOk;
    }

    if (special->parsed()) {
      const auto p = detail::checked_params(*n_opt, *m_opt, *h_opt);
      if (p.n > kMaxOrder) throw UsageError("--n exceeds " + std::to_string(kMaxOrder));
      if (p.h < 2 || p.m < 3 || p.h >= p.m) throw UsageError("special needs 2 <= h < m and m >= 3");
      std::optional<ConstructionB> b;
      std::string family = "none";
      std::optional<std::int64_t> claimed;
      const bool explicit_b = d_opt || k1_opt || k2_opt || g_opt || j0_opt;
      if (explicit_b) {
        if (!(d_opt && k1_opt && k2_opt && g_opt && j0_opt))
          throw UsageError("explicit B needs all of --d --k1 --k2 --g --j0");
        b = ConstructionB::make(p.n, p.m, *d_opt, *k1_opt, *k2_opt, *g_opt, *j0_opt);
        family = "explicit";
      } else if (auto inst = special_family(p.h, p.n, p.m)) {
        b = inst->params;
        family = to_string(inst->family);
        claimed = inst->claimed_size;
      }
      const auto uh = u_hat(p).value;
      nlohmann::ordered_json j;
      j["n"] = p.n;
      j["m"] = p.m;
      j["h"] = p.h;
      j["family"] = family;
      j["u_hat"] = uh;
      if (b) {
        const auto set = construct_B(*b);
        const auto a = analyze_special(*b, p.h);
        j["d"] = b->d;
        j["k1"] = b->k1;
        j["k2"] = b->k2;
        j["g"] = b->g;
        j["j0"] = b->j0;
        j["c"] = b->c;
        j["set"] = detail::set_json(set);
        j["rsumset_size"] = restricted_sumset(set, detail::fold(p.h)).size();
        j["claimed_size"] = claimed ? nlohmann::ordered_json(*claimed) : nlohmann::ordered_json(nullptr);
        j["i_min"] = a.i_min;
        j["i_max"] = a.i_max;
        j["g_condition"] = a.g_condition_holds;
        j["is_special"] = a.is_special;
      }
      if (format == "jsonl") {
        out << j.dump() << '\n';
      } else if (format == "csv") {
        std::string header, row;
        for (const auto& [k, v] : j.items()) {
          header += (header.empty() ? "" : ",") + k;
          std::string cell = v.is_array() ? "" : v.is_string() ? v.get<std::string>() : v.dump();
          if (v.is_array())
            for (const auto& e : v) cell += (cell.empty() ? "" : " ") + e.dump();
          row += (row.empty() ? "" : ",") + cell;
        }
        out << header << '\n' << row << '\n';
      } else {
        for (const auto& [k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
      return kExitOk;
    }

    if (rho->parsed()) {
      const auto p = detail::checked_params(*n_opt, *m_opt, *h_opt);
      if (p.n > kMaxOrder) throw UsageError("--n exceeds " + std::to_string(kMaxOrder));
      SearchOptions opts;
      opts.budget = budget;
      const auto rec = rho_hat_exact(p.n, p.m, p.h, opts);
      if (format == "table") {
        out << "rho_hat(Z_" << rec.n << ',' << rec.m << ',' << rec.h << ") "
            << (rec.status == SearchStatus::exact ? "= " : "<= ") << rec.rho_hat << '\n'
            << "u_hat: " << u_hat(p).value << '\n'
            << "witness: {" << detail::witness_text(rec.witness, ",") << "}\n"
            << "nodes: " << rec.nodes << '\n'
            << "status: " << to_string(rec.status) << '\n';
      } else {
        detail::write_record(out, format, rec, true);
      }
      if (rec.status != SearchStatus::exact) {
        err << "budget exhausted: rho_hat value is an upper bound\n";
        return kExitBudget;
      }
      return kExitOk;
    }

    if (table->parsed()) {
      if (n_max < 1 || n_max > kMaxOrder) throw UsageError("--n-max must be in 1.." + std::to_string(kMaxOrder));
      ResultsCache cache(cache_path);
      TableOptions topts{n_max, quick, threads, budget};
      bool header = true;
      const auto summary = rho_hat_table(topts, cache, [&](const SearchRecord& r) {
        detail::write_record(out, format, r, header);
        header = false;
      });
      err << "table: " << summary.emitted << " cells (" << summary.from_cache << " cached, " << summary.searched
          << " searched, " << summary.derived << " by duality)";
      if (cache.skipped_lines()) err << ", " << cache.skipped_lines() << " unreadable cache lines ignored";
      err << '\n';
      if (summary.budget_exhausted) {
        err << summary.budget_exhausted << " cell(s) hit the node budget and are marked budget_exhausted\n";
        return kExitBudget;
      }
      return kExitOk;
    }

    if (verify->parsed() || cex->parsed()) {
      if (cex->parsed()) suite = "counterexamples";
      if (n_max < 1 || n_max > kMaxOrder) throw UsageError("--n-max must be in 1.." + std::to_string(kMaxOrder));
      ResultsCache cache(cache_path);
      const bool wants = [&](std::initializer_list<const char*> names) {
        for (const char* s : names)
          if (suite == s) return true;
        return suite == "all";
      }({"audit", "dias-da-silva-hamidoune", "gallardo-grekos", "critical-number", "conjecture-h2",
         "corollary-h3"});
      if (wants) {
        // Fill the cache first so the claim checks below only read it.
        TableOptions topts{n_max, false, threads, budget};
        rho_hat_table(topts, cache, [](const SearchRecord&) {});
      }
      SearchOptions sopts;
      sopts.budget = budget;
      RhoProvider provider(cache, sopts);
      std::vector<Report> reports;
      auto on = [&](const char* name) { return suite == "all" || suite == name; };
      if (on("audit")) reports.push_back(audit_report(audit_range(n_max, provider)));
      if (on("dias-da-silva-hamidoune")) reports.push_back(check_dias_da_silva_hamidoune(n_max, provider));
      if (on("gallardo-grekos")) reports.push_back(check_gallardo_grekos(n_max, provider));
      if (on("critical-number")) reports.push_back(check_critical_number(n_max, provider));
      if (on("conjecture-h2")) reports.push_back(check_conjecture_h2(n_max, provider));
      if (on("corollary-h3")) reports.push_back(check_corollary_h3(n_max, provider));
      if (on("counterexamples")) reports.push_back(check_counterexamples(provider));
      if (on("unbounded-gap")) {
        if (h_opt || p_opt || t_opt) {
          if (!(h_opt && p_opt && t_opt)) throw UsageError("unbounded-gap needs all of --h --p --t");
          try {
            reports.push_back(check_unbounded_gap({{*h_opt, *p_opt, *t_opt}}));
          } catch (const std::domain_error& e) {
            throw UsageError(e.what());
          }
        } else {
          reports.push_back(check_unbounded_gap(default_unbounded_gap_cases()));
        }
      }
      detail::write_reports(out, format, reports);
      if (detail::any_unknown(reports)) {
        err << "some rows are unknown because a search hit the node budget\n";
        return kExitBudget;
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace rsum::cli
