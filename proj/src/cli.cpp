// Copyright 2026 The avgdist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "avgdist/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "avgdist/bounds.hpp"
#include "avgdist/certificates.hpp"
#include "avgdist/codes.hpp"
#include "avgdist/lemmas.hpp"
#include "avgdist/lp.hpp"
#include "avgdist/search.hpp"

namespace avgdist::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kApproxNote = "approximate";
constexpr std::uint64_t kDefaultTableRows = 1024;

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

Json record_json(const OutputRecord& r) {
  Json j;
  j["n"] = r.n;
  j["M"] = r.M;
  j["lower_exact"] = r.lower_exact;
  j["lower_decimal"] = r.lower_decimal;
  j["lower_decimal_note"] = kApproxNote;
  j["upper_exact"] = r.upper_exact ? Json(*r.upper_exact) : Json(nullptr);
  j["provenance"] = r.provenance;
  return j;
}

Json strings_json(const std::vector<Rational>& values) {
  Json a = Json::array();
  for (const auto& v : values) a.push_back(to_fraction_string(v));
  return a;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string side_label(Side side) { return side == Side::Lambda ? "lambda" : "alpha"; }

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  int n = 0;
  std::uint64_t M = 0;
  bool json = false;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  BoundEngine engine;
  const auto rec = make_record(engine.best_lower(a.n, a.M), engine.best_upper(a.n, a.M));
  if (a.json) {
    out << record_json(rec).dump(2) << "\n";
    return kExitOk;
  }
  out << "n = " << rec.n << ", M = " << rec.M << "\n";
  out << "lower bound (exact):   " << rec.lower_exact << "\n";
  out << "lower bound (approx.): " << rec.lower_decimal << "\n";
  out << "upper bound (exact):   " << rec.upper_exact.value_or("none known") << "\n";
  out << "provenance:\n";
  for (const auto& tag : rec.provenance) out << "  " << tag << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- table

struct TableArgs {
  int n = 0;
  std::optional<std::uint64_t> m_from;
  std::optional<std::uint64_t> m_to;
  bool csv = false;
  bool json = false;
  bool md = false;
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n < 1 || a.n > 63) {
    err << "error: table needs 1 <= n <= 63\n";
    return kExitUsage;
  }
  const std::uint64_t space = std::uint64_t{1} << a.n;
  const std::uint64_t from = a.m_from.value_or(1);
  const std::uint64_t to = a.m_to.value_or(std::min(space, kDefaultTableRows));
  if (from < 1 || to > space || from > to) {
    err << "error: need 1 <= m-from <= m-to <= 2^n\n";
    return kExitUsage;
  }
  BoundEngine engine;
  std::vector<OutputRecord> rows;
  for (std::uint64_t M = from; M <= to; ++M) {
    rows.push_back(make_record(engine.best_lower(a.n, M), engine.best_upper(a.n, M)));
  }
  if (a.json) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(record_json(r));
    out << arr.dump(2) << "\n";
  } else if (a.csv) {
    out << "n,M,lower_exact,lower_decimal_approx,upper_exact,provenance\n";
    for (const auto& r : rows) {
      out << r.n << "," << r.M << "," << r.lower_exact << "," << r.lower_decimal << ","
          << r.upper_exact.value_or("") << "," << csv_field(join(r.provenance, "; ")) << "\n";
    }
  } else {
    out << "| n | M | lower (exact) | lower (approx.) | upper (exact) | provenance |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
      out << "| " << r.n << " | " << r.M << " | " << r.lower_exact << " | " << r.lower_decimal
          << " | " << r.upper_exact.value_or("") << " | " << join(r.provenance, "; ") << " |\n";
    }
  }
  return kExitOk;
}

// -------------------------------------------------------------------- lp

struct LpArgs {
  int n = 0;
  std::uint64_t M = 0;
  std::string variant = "bside";
  bool json = false;
};

int cmd_lp(const LpArgs& a, std::ostream& out, std::ostream& err) {
  const auto variant = parse_variant(a.variant);
  if (!variant) {
    err << "error: unknown LP variant '" << a.variant << "' (bside, aside, odd, mod4)\n";
    return kExitUsage;
  }
  const auto d = lp_bound_detail(*variant, a.n, a.M);
  const auto problems = check_solution(d.program, d.solution);
  std::optional<Certificate> cert;
  std::optional<VerificationReport> cert_report;
  if (d.solution.status == LpStatus::Optimal &&
      (*variant == LpVariant::BSide || *variant == LpVariant::ASide)) {
    cert = certificate_from_dual(d);
    cert_report = verify_certificate(*cert);
  }
  const bool ok = problems.empty() && (!cert_report || cert_report->valid());

  if (a.json) {
    Json j;
    j["n"] = a.n;
    j["M"] = a.M;
    j["variant"] = std::string(variant_name(*variant));
    j["status"] = std::string(status_name(d.solution.status));
    j["bound_exact"] = to_fraction_string(d.bound.value);
    j["bound_decimal"] = to_decimal_string(d.bound.value);
    j["bound_decimal_note"] = kApproxNote;
    j["b1_max"] = d.solution.status == LpStatus::Optimal ? Json(to_fraction_string(d.b1_max)) : Json(nullptr);
    j["pivots"] = d.solution.pivots;
    j["point"] = strings_json(d.solution.point);
    j["dual"] = strings_json(d.solution.dual);
    if (d.ell) j["ell"] = *d.ell;
    if (!d.per_ell.empty()) {
      Json per = Json::array();
      for (const auto& v : d.per_ell) per.push_back(v ? Json(to_fraction_string(*v)) : Json(nullptr));
      j["per_ell"] = per;
    }
    j["solution_check"] = problems;
    if (cert) {
      j["certificate"] = {{"side", side_label(cert->side)},
                          {"family", cert->family},
                          {"coefficients", to_strings(cert->poly)},
                          {"valid", cert_report->valid()},
                          {"violations", cert_report->violations}};
    }
    j["provenance"] = d.bound.provenance;
    out << j.dump(2) << "\n";
  } else {
    out << "LP " << variant_name(*variant) << " at n = " << a.n << ", M = " << a.M << "\n";
    out << "status: " << status_name(d.solution.status) << " (" << d.solution.pivots << " pivots)\n";
    if (d.solution.status == LpStatus::Optimal) {
      out << "max B_1: " << to_fraction_string(d.b1_max) << "\n";
    }
    out << "lower bound (exact):   " << to_fraction_string(d.bound.value) << "\n";
    out << "lower bound (approx.): " << to_decimal_string(d.bound.value) << "\n";
    if (d.ell) out << "minimizing ell: " << *d.ell << "\n";
    out << "solution check: " << (problems.empty() ? "ok" : join(problems, "; ")) << "\n";
    if (cert) {
      out << "dual certificate (" << side_label(cert->side) << " side, " << cert->family
          << "): " << (cert_report->valid() ? "valid" : "INVALID") << "\n";
      out << "  coefficients: " << join(to_strings(cert->poly), " ") << "\n";
      for (const auto& v : cert_report->violations) out << "  violation: " << v << "\n";
    }
  }
  return ok ? kExitOk : kExitVerification;
}

// --------------------------------------------------------------- certify

struct CertifyArgs {
  std::string family;
  int n = 0;
  std::optional<std::uint64_t> M;
  bool json = false;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<Family> families;
  if (a.family == "all") {
    for (auto f : builtin_families()) {
      if (family_applies(f, a.n)) families.push_back(f);
    }
  } else if (auto f = parse_family(a.family)) {
    families.push_back(*f);
  } else {
    err << "error: unknown family '" << a.family << "'; known:";
    for (auto f : builtin_families()) err << " " << family_id(f);
    err << " all\n";
    return kExitUsage;
  }

  bool all_valid = true;
  Json arr = Json::array();
  for (auto f : families) {
    const auto cert = build_family(f, a.n);
    const auto report = verify_certificate(cert);
    all_valid = all_valid && report.valid();
    std::optional<Rational> bound;
    if (a.M && report.valid()) bound = certificate_bound(cert, *a.M);
    if (a.json) {
      Json j;
      j["family"] = std::string(family_id(f));
      j["side"] = side_label(cert.side);
      j["n"] = a.n;
      j["guard"] = cert.guard;
      j["coefficients"] = to_strings(cert.poly);
      j["valid"] = report.valid();
      j["violations"] = report.violations;
      if (a.M) {
        j["M"] = *a.M;
        j["bound_exact"] = bound ? Json(to_fraction_string(*bound)) : Json(nullptr);
      }
      arr.push_back(j);
    } else {
      out << family_id(f) << " (" << side_label(cert.side) << " side, guard: " << cert.guard
          << ") at n = " << a.n << ": " << (report.valid() ? "valid" : "INVALID") << "\n";
      out << "  coefficients: " << join(to_strings(cert.poly), " ") << "\n";
      for (const auto& v : report.violations) out << "  violation: " << v << "\n";
      if (bound) {
        out << "  lower bound at M = " << *a.M << ": " << to_fraction_string(*bound) << " (approx. "
            << to_decimal_string(*bound) << ")\n";
      }
    }
  }
  if (a.json) out << (a.family == "all" ? arr : arr.at(0)).dump(2) << "\n";
  return all_valid ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  int n = 0;
  std::uint64_t M = 0;
  bool all_minimizers = false;
  std::optional<std::uint64_t> budget;
  int threads = 0;
  bool allow_large = false;
  bool json = false;
};

void print_code(const Code& code, std::ostream& out, const std::string& indent) {
  std::istringstream lines(format_code(code));
  std::string line;
  while (std::getline(lines, line)) out << indent << line << "\n";
}

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
  SearchConfig cfg;
  cfg.n = a.n;
  cfg.M = a.M;
  cfg.all_minimizers = a.all_minimizers;
  cfg.node_budget = a.budget;
  cfg.threads = a.threads;
  cfg.allow_large = a.allow_large;
  try {
    const auto res = brute_force_beta(cfg);
    if (a.json) {
      Json j;
      j["n"] = a.n;
      j["M"] = a.M;
      j["beta_exact"] = to_fraction_string(res.beta);
      j["beta_decimal"] = to_decimal_string(res.beta);
      j["beta_decimal_note"] = kApproxNote;
      j["nodes"] = res.nodes;
      Json codes = Json::array();
      for (const auto& c : res.minimizers) {
        Json words = Json::array();
        for (std::size_t i = 0; i < c.size(); ++i) words.push_back(c.word(i));
        codes.push_back(words);
      }
      j["minimizers"] = codes;
      out << j.dump(2) << "\n";
    } else {
      out << "beta(" << a.n << ", " << a.M << ") = " << to_fraction_string(res.beta) << " (approx. "
          << to_decimal_string(res.beta) << ")\n";
      out << "nodes: " << res.nodes << "\n";
      out << (a.all_minimizers ? "extremal codes (containing 0, up to order): "
                               : "extremal code: ")
          << res.minimizers.size() << "\n";
      for (std::size_t k = 0; k < res.minimizers.size(); ++k) {
        if (a.all_minimizers) out << "# code " << k + 1 << "\n";
        print_code(res.minimizers[k], out, "");
      }
    }
    return kExitOk;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    if (e.best()) {
      err << "best incumbent (an upper bound): " << to_fraction_string(*e.best()) << "\n";
      if (e.incumbent()) print_code(*e.incumbent(), err, "  ");
    }
    return kExitIncomplete;
  }
}

// ------------------------------------------------------------- construct

struct ConstructArgs {
  std::string kind;
  int n = 0;
  std::optional<int> w;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<Code> code;
  if (a.kind == "two_n") {
    code = construct_two_n(a.n);
  } else if (a.kind == "constant_weight") {
    if (!a.w) {
      err << "error: --w is required for constant_weight\n";
      return kExitUsage;
    }
    code = construct_constant_weight(a.n, *a.w);
  } else {
    err << "error: unknown kind '" << a.kind << "' (two_n, constant_weight)\n";
    return kExitUsage;
  }
  const Rational avg = average_distance(*code);
  out << "# construction: " << a.kind;
  if (a.w) out << " (w = " << *a.w << ")";
  out << "\n# n = " << code->n() << ", M = " << code->size() << "\n";
  out << "# average distance: " << to_fraction_string(avg) << " (approx. " << to_decimal_string(avg)
      << ")\n";
  out << format_code(*code);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string lemma = "all";
  std::optional<int> n_max;
  bool json = false;
  int threads = 0;
  bool serial = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const SweepOptions opts{!a.serial, a.threads};
  const int even = a.n_max.value_or(default_n_max_even());
  const int odd = a.n_max.value_or(default_n_max_odd());
  std::vector<SweepReport> reports;
  if (a.lemma == "all") {
    reports = run_all_sweeps(even, odd, opts);
  } else if (a.lemma == "estimation-even") {
    reports.push_back(check_estimation_even(even, opts));
  } else if (a.lemma == "monotone-even") {
    reports.push_back(check_monotone_even(even, opts));
  } else if (a.lemma == "estimation-odd") {
    reports.push_back(check_estimation_odd(odd, opts));
  } else if (a.lemma == "monotone-odd") {
    reports.push_back(check_monotone_odd(odd, opts));
  } else if (a.lemma == "midpoint") {
    reports.push_back(check_midpoint_sweep(even, opts));
  } else if (a.lemma == "mod4") {
    reports.push_back(check_mod4_sweep(odd, opts));
  } else {
    err << "error: unknown lemma '" << a.lemma << "'; known: all " << join(lemma_names(), " ") << "\n";
    return kExitUsage;
  }

  bool ok = true;
  Json arr = Json::array();
  for (const auto& r : reports) {
    ok = ok && r.ok();
    if (a.json) {
      Json cex = Json::array();
      for (const auto& c : r.counterexamples) cex.push_back({{"n", c.n}, {"i", c.i}, {"detail", c.detail}});
      arr.push_back({{"lemma", r.lemma},
                     {"range", r.range},
                     {"checked", r.checked},
                     {"counterexamples", cex},
                     {"elapsed_seconds", r.elapsed_seconds}});
    } else {
      out << r.lemma << ": checked " << r.checked << " pairs over " << r.range << ", "
          << r.counterexamples.size() << " counterexamples\n";
      for (const auto& c : r.counterexamples) {
        out << "  n = " << c.n << ", i = " << c.i << ": " << c.detail << "\n";
      }
    }
  }
  if (a.json) out << arr.dump(2) << "\n";
  return ok ? kExitOk : kExitVerification;
}

// ------------------------------------------------------------- eval-code

struct EvalArgs {
  std::string path;
  bool json = false;
};

int cmd_eval_code(const EvalArgs& a, std::ostream& out) {
  const Code code = read_code_file(a.path);
  const auto dist = distance_distribution(code);
  const Rational avg = average_distance(code);
  const auto violations = distribution_violations(dist);
  if (a.json) {
    Json j;
    j["n"] = code.n();
    j["M"] = code.size();
    j["average_distance_exact"] = to_fraction_string(avg);
    j["average_distance_decimal"] = to_decimal_string(avg);
    j["average_distance_decimal_note"] = kApproxNote;
    j["A"] = strings_json(dist.A);
    j["B"] = strings_json(dist.B);
    j["delsarte_violations"] = violations;
    out << j.dump(2) << "\n";
  } else {
    out << "n = " << code.n() << ", M = " << code.size() << "\n";
    out << "average distance (exact):   " << to_fraction_string(avg) << "\n";
    out << "average distance (approx.): " << to_decimal_string(avg) << "\n";
    out << "A:";
    for (const auto& v : dist.A) out << " " << to_fraction_string(v);
    out << "\nB:";
    for (const auto& v : dist.B) out << " " << to_fraction_string(v);
    out << "\n";
    if (violations.empty()) {
      out << "distribution checks: ok\n";
    } else {
      for (const auto& v : violations) out << "violation: " << v << "\n";
    }
  }
  return violations.empty() ? kExitOk : kExitVerification;
}

}  // namespace

OutputRecord make_record(const BoundResult& lower, const std::optional<BoundResult>& upper) {
  OutputRecord r;
  r.n = lower.n;
  r.M = lower.M;
  r.lower_exact = to_fraction_string(lower.value);
  r.lower_decimal = to_decimal_string(lower.value, 12);
  if (upper) r.upper_exact = to_fraction_string(upper->value);
  r.provenance = lower.provenance;
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact bounds on the minimum average Hamming distance of binary codes", "avgdist"};
  app.require_subcommand(1);

  BoundsArgs bounds;
  auto* s_bounds = app.add_subcommand("bounds", "best known lower/upper bounds at one (n, M)");
  s_bounds->add_option("--n", bounds.n, "code length")->required();
  s_bounds->add_option("--m", bounds.M, "code size")->required();
  s_bounds->add_flag("--json", bounds.json, "emit JSON");

  TableArgs table;
  auto* s_table = app.add_subcommand("table", "bound table over a range of M");
  s_table->add_option("--n", table.n, "code length")->required();
  s_table->add_option("--m-from", table.m_from, "first M (default 1)");
  s_table->add_option("--m-to", table.m_to, "last M (default min(2^n, 1024))");
  auto* f_csv = s_table->add_flag("--csv", table.csv, "CSV output");
  auto* f_json = s_table->add_flag("--json", table.json, "JSON output");
  auto* f_md = s_table->add_flag("--md", table.md, "markdown output (default)");
  f_csv->excludes(f_json)->excludes(f_md);
  f_json->excludes(f_md);

  LpArgs lp;
  auto* s_lp = app.add_subcommand("lp", "solve one Delsarte linear program exactly");
  s_lp->add_option("--n", lp.n, "code length")->required();
  s_lp->add_option("--m", lp.M, "code size")->required();
  s_lp->add_option("--variant", lp.variant, "bside | aside | odd | mod4");
  s_lp->add_flag("--json", lp.json, "emit JSON");

  CertifyArgs certify;
  auto* s_cert = app.add_subcommand("certify", "build and verify a certificate polynomial");
  s_cert->add_option("--family", certify.family, "family id (e.g. ALPHA_HALF_EVEN) or 'all'")->required();
  s_cert->add_option("--n", certify.n, "code length")->required();
  s_cert->add_option("--m", certify.M, "code size for the implied bound");
  s_cert->add_flag("--json", certify.json, "emit JSON");

  SearchArgs search;
  auto* s_search = app.add_subcommand("search", "exact beta(n, M) by exhaustive search");
  s_search->add_option("--n", search.n, "code length")->required();
  s_search->add_option("--m", search.M, "code size")->required();
  s_search->add_flag("--all-minimizers", search.all_minimizers, "list every extremal code found");
  s_search->add_option("--budget", search.budget, "node budget");
  s_search->add_option("--threads", search.threads, "worker threads (0 = default)");
  s_search->add_flag("--allow-large", search.allow_large, "permit n > 5");
  s_search->add_flag("--json", search.json, "emit JSON");

  ConstructArgs construct;
  auto* s_construct = app.add_subcommand("construct", "emit an explicit code and its average distance");
  s_construct->add_option("--kind", construct.kind, "two_n | constant_weight")->required();
  s_construct->add_option("--n", construct.n, "code length")->required();
  s_construct->add_option("--w", construct.w, "weight for constant_weight");

  VerifyArgs verify;
  auto* s_verify = app.add_subcommand("verify", "exhaustive checks of the Krawtchouk lemmas");
  s_verify->add_option("--lemma", verify.lemma,
                       "all | estimation-even | monotone-even | estimation-odd | monotone-odd | "
                       "midpoint | mod4");
  s_verify->add_option("--n-max", verify.n_max, "largest n (default 200 even / 201 odd, or $AVGDIST_NMAX)");
  s_verify->add_option("--threads", verify.threads, "worker threads (0 = default)");
  s_verify->add_flag("--serial", verify.serial, "use the single-threaded reference path");
  s_verify->add_flag("--json", verify.json, "emit JSON");

  EvalArgs eval;
  auto* s_eval = app.add_subcommand("eval-code", "distance distributions and average distance of a code file");
  s_eval->add_option("path", eval.path, "code file: one word per line, '#' comments")->required();
  s_eval->add_flag("--json", eval.json, "emit JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (*s_bounds) return cmd_bounds(bounds, out);
    if (*s_table) return cmd_table(table, out, err);
    if (*s_lp) return cmd_lp(lp, out, err);
    if (*s_cert) return cmd_certify(certify, out, err);
    if (*s_search) return cmd_search(search, out, err);
    if (*s_construct) return cmd_construct(construct, out, err);
    if (*s_verify) return cmd_verify(verify, out, err);
    if (*s_eval) return cmd_eval_code(eval, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kExitVerification;
  }
  err << app.help();
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace avgdist::cli
