// Copyright 2026 The feyncount Authors.
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

// feyncount: counts of connected Feynman diagrams (Wick contractions) of the
// zero-dimensional many-body theory, and their asymptotic expansions.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "feyncount/asymptotics.hpp"
#include "feyncount/combinatorics.hpp"
#include "feyncount/counts.hpp"
#include "feyncount/oracle.hpp"
#include "feyncount/reference_tables.hpp"
#include "feyncount/series.hpp"
#include "json.hpp"
#include "report.hpp"

namespace {

using feyncount::ExactInt;
using feyncount::ExactRat;
using feyncount::cli::Format;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

// Usage errors detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string format = "plain";
  std::string output;
  bool no_timestamp = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--format", o.format, "Output format: plain, csv or json")
      ->envname("FEYNCOUNT_FORMAT")
      ->check(CLI::IsMember({"plain", "csv", "json"}));
  cmd->add_option("--output", o.output, "Write to this file instead of stdout");
  cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp field from JSON output");
}

void finish_json(json& doc, const OutputOptions& o, std::ostream& out) {
  if (!o.no_timestamp) doc["timestamp"] = feyncount::cli::utc_timestamp();
  out << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// count

struct CountOptions {
  int N = -1;
  int m = -1;
  std::string method = "explicit";
  bool normalized = false;
  std::uint64_t budget = feyncount::kDefaultOracleBudget;
  unsigned jobs = 1;
  int x_order = 0;
  int y_order = 0;
  OutputOptions out;
};

struct CountResult {
  std::string method;
  std::optional<ExactInt> value;
  std::string skipped;  // reason when the method refused
};

ExactInt count_with(const std::string& method, const CountOptions& o) {
  using namespace feyncount;
  if (method == "explicit") {
    if (o.N == 0) return vacuum_connected(o.m, VacuumMethod::composition_sum);
    if (o.N > kMaxExplicitLegs) {
      throw UsageError("explicit formulas exist only for N <= 5; use --method series-log");
    }
    return connected_explicit(o.N, o.m);
  }
  if (method == "series-log") {
    if (o.N == 0) return vacuum_from_log(o.m)[static_cast<std::size_t>(o.m)];
    SeriesConfig cfg = SeriesConfig::covering(o.N, o.m);
    if (o.x_order > 0) cfg.x_order = o.x_order;
    if (o.y_order > 0) cfg.y_order = o.y_order;
    try {
      return connected_general(o.N, o.m, cfg);
    } catch (const SeriesError& e) {
      throw UsageError(std::string(e.what()) + "; raise --x-order/--y-order or omit them");
    }
  }
  if (method == "recurrence") {
    if (o.N != 0) throw UsageError("the recurrence route counts vacuum diagrams only (N=0)");
    return vacuum_connected(o.m, VacuumMethod::recurrence);
  }
  if (method == "oracle") {
    return brute_force_connected(o.m, o.N, OracleOptions{o.budget, o.jobs});
  }
  throw UsageError("unknown method '" + method + "'");
}

int run_count(const CountOptions& o) {
  if (o.N < 0 || o.m < 0) throw UsageError("--N and --m must be >= 0");
  std::vector<std::string> methods;
  const bool all = o.method == "all";
  if (all) {
    if (o.N == 0) methods = {"explicit", "series-log", "recurrence", "oracle"};
    else if (o.N <= feyncount::kMaxExplicitLegs) methods = {"explicit", "series-log", "oracle"};
    else methods = {"series-log", "oracle"};
  } else {
    methods = {o.method};
  }

  std::vector<CountResult> results;
  for (const auto& method : methods) {
    try {
      results.push_back({method, count_with(method, o), ""});
    } catch (const feyncount::BudgetExceeded& e) {
      if (!all) throw UsageError(e.what());
      results.push_back({method, std::nullopt, e.what()});
    }
  }
  std::optional<ExactInt> reference;
  bool match = true;
  int computed = 0;
  for (const auto& r : results) {
    if (!r.value) continue;
    ++computed;
    if (!reference) reference = r.value;
    else if (*reference != *r.value) match = false;
  }
  const std::string verdict = match ? "MATCH" : "MISMATCH";
  auto normalized = [&](const ExactInt& v) {
    ExactInt den = feyncount::factorial(o.m);
    den <<= static_cast<mp_bitcnt_t>(o.m);
    return feyncount::to_string(feyncount::make_rat(v, den));
  };

  feyncount::cli::Sink sink(o.out.output);
  std::ostream& out = sink.out();
  switch (feyncount::cli::parse_format(o.out.format)) {
    case Format::plain:
      for (const auto& r : results) {
        std::string text = r.value ? (o.normalized ? normalized(*r.value) : feyncount::to_string(*r.value))
                                   : "SKIPPED (" + r.skipped + ")";
        out << (all ? r.method + " " : "") << text << "\n";
      }
      if (all) out << verdict << "\n";
      break;
    case Format::csv:
      out << "N,m,method,value" << (o.normalized ? ",normalized" : "") << "\n";
      for (const auto& r : results) {
        out << o.N << "," << o.m << "," << r.method << "," << (r.value ? feyncount::to_string(*r.value) : "SKIPPED");
        if (o.normalized) out << "," << (r.value ? normalized(*r.value) : "");
        out << "\n";
      }
      if (all) std::cerr << verdict << "\n";
      break;
    case Format::json: {
      json doc;
      json records = json::array();
      for (const auto& r : results) {
        json rec;
        rec["N"] = o.N;
        rec["m"] = o.m;
        rec["method"] = r.method;
        if (r.value) {
          rec["value"] = feyncount::to_string(*r.value);
          if (o.normalized) rec["normalized"] = normalized(*r.value);
        } else {
          rec["status"] = "SKIPPED";
          rec["reason"] = r.skipped;
        }
        records.push_back(rec);
      }
      doc["records"] = records;
      if (all) doc["verdict"] = verdict;
      finish_json(doc, o.out, out);
      break;
    }
  }
  if (all && computed < 2) std::cerr << "warning: fewer than two methods produced a value\n";
  return match ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------
// asym

struct AsymOptions {
  int N = 0;
  int n = 1;
  int order = 6;
  bool check = false;
  bool all_cells = false;
  std::string family = "table";
  int offset_budget = -1;
  std::string route = "rational";
  bool no_stability = false;
  unsigned jobs = 1;
  OutputOptions out;
};

struct CellCheck {
  bool prefactor_equal = false;
  int equal = 0;
  int total = 0;
  std::vector<std::string> mismatches;
};

CellCheck check_cell(const feyncount::AsymptoticContribution& c, int order) {
  const auto& ref = feyncount::reference_cell(c.N, c.family);
  CellCheck r;
  r.prefactor_equal = feyncount::same_prefactor(c.prefactor, ref.prefactor());
  if (!r.prefactor_equal) {
    r.mismatches.push_back("prefactor: computed " + c.prefactor.str() + ", reference " + ref.printed);
  }
  const auto computed = c.bracket_coefficients();
  const auto expected = ref.bracket();
  for (int k = 1; k <= std::min<int>(order, static_cast<int>(expected.size())); ++k) {
    ++r.total;
    const auto& a = computed[static_cast<std::size_t>(k - 1)];
    const auto& b = expected[static_cast<std::size_t>(k - 1)];
    if (a == b) ++r.equal;
    else r.mismatches.push_back("1/m^" + std::to_string(k) + ": computed " + feyncount::to_string(a) +
                                ", reference " + feyncount::to_string(b));
  }
  return r;
}

int run_asym(const AsymOptions& o) {
  using namespace feyncount;
  if (o.order < 0) throw UsageError("--order must be >= 0");
  FamilyOptions fopt;
  fopt.route = o.route == "stirling" ? FactorialRoute::stirling : FactorialRoute::rational;
  fopt.check_stability = !o.no_stability;
  fopt.jobs = o.jobs;

  std::vector<std::pair<int, int>> cells;
  if (o.all_cells) {
    for (int N = 0; N <= kMaxExplicitLegs; ++N) {
      for (int n = 1; n <= kMaxTabulatedFamily; ++n) cells.emplace_back(N, n);
    }
  } else {
    cells.emplace_back(o.N, o.n);
  }

  std::vector<AsymptoticContribution> results;
  for (auto [N, n] : cells) {
    if (o.family == "custom") {
      if (n < 1) throw UsageError("--n must be >= 1");
      const int budget = o.offset_budget >= 0 ? o.offset_budget : o.order;
      auto fe = family_terms(CompositionFamily(n, budget), N, o.order, fopt);
      results.push_back(normalize_family(N, n, fe));
    } else {
      if (N < 0 || N > kMaxExplicitLegs || n < 1 || n > kMaxTabulatedFamily) {
        throw UsageError("tabulated cells cover 0 <= N <= 5 and 1 <= n <= 4; use --family custom for n > 4");
      }
      results.push_back(contribution(N, n, o.order, fopt));
    }
  }

  std::vector<std::optional<CellCheck>> checks;
  bool ok = true;
  for (const auto& c : results) {
    if (o.check && c.N <= kMaxExplicitLegs && c.family <= kMaxTabulatedFamily) {
      checks.push_back(check_cell(c, o.order));
      ok = ok && checks.back()->mismatches.empty();
    } else {
      if (o.check) throw UsageError("no reference row for N=" + std::to_string(c.N) + ", n=" + std::to_string(c.family));
      checks.emplace_back();
    }
  }

  feyncount::cli::Sink sink(o.out.output);
  std::ostream& out = sink.out();
  switch (feyncount::cli::parse_format(o.out.format)) {
    case Format::plain:
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& c = results[i];
        out << "N=" << c.N << " n=" << c.family << " order=" << o.order << "\n";
        out << "  prefactor: " << c.prefactor.str() << "\n";
        out << "  series:    " << c.correction.str() << "   (t = 1/m)\n";
        out << "  bracket:  ";
        for (const auto& a : c.bracket_coefficients()) out << " " << feyncount::to_string(a);
        out << "\n";
        if (checks[i]) {
          const auto& ch = *checks[i];
          out << "  check:     prefactor " << (ch.prefactor_equal ? "equal" : "DIFFERS") << ", " << ch.equal << "/"
              << ch.total << " cells equal\n";
          for (const auto& mm : ch.mismatches) out << "    MISMATCH " << mm << "\n";
        }
      }
      break;
    case Format::csv:
      out << "N,n,term,value\n";
      for (const auto& c : results) {
        out << c.N << "," << c.family << ",prefactor," << feyncount::cli::csv_field(c.prefactor.str()) << "\n";
        for (int k = 0; k <= c.correction.order(); ++k) {
          out << c.N << "," << c.family << ",t^" << k << "," << feyncount::to_string(c.correction[k]) << "\n";
        }
      }
      break;
    case Format::json: {
      json doc;
      json arr = json::array();
      for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& c = results[i];
        json j;
        j["N"] = c.N;
        j["n"] = c.family;
        j["order"] = o.order;
        j["prefactor"] = feyncount::cli::prefactor_json(c.prefactor);
        json coeffs = json::array(), bracket = json::array();
        for (int k = 0; k <= c.correction.order(); ++k) coeffs.push_back(feyncount::to_string(c.correction[k]));
        for (const auto& a : c.bracket_coefficients()) bracket.push_back(feyncount::to_string(a));
        j["coefficients"] = coeffs;
        j["bracket"] = bracket;
        if (checks[i]) {
          const auto& ch = *checks[i];
          j["check"] = {{"prefactor_equal", ch.prefactor_equal},
                        {"cells_equal", ch.equal},
                        {"cells", ch.total},
                        {"mismatches", ch.mismatches}};
        }
        arr.push_back(j);
      }
      doc["contributions"] = arr;
      finish_json(doc, o.out, out);
      break;
    }
  }
  return ok ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  int max_m = 8;
  int max_N = 5;
  bool oracle = false;
  std::uint64_t budget = feyncount::kDefaultOracleBudget;
  unsigned jobs = 1;
  OutputOptions out;
};

struct GroupResult {
  explicit GroupResult(std::string n) : name(std::move(n)) {}

  std::string name;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) {
      ++passed;
    } else {
      ++failed;
      if (failures.size() < 5) failures.push_back(what);
    }
  }
  std::string status() const { return failed ? "FAIL" : "PASS"; }
};

int run_verify(const VerifyOptions& o) {
  using namespace feyncount;
  if (o.max_m < 0 || o.max_N < 0) throw UsageError("--max-m and --max-N must be >= 0");
  const int maxN = std::min(o.max_N, kMaxExplicitLegs);
  std::vector<GroupResult> groups;
  auto tag = [](int N, int m) { return "N=" + std::to_string(N) + " m=" + std::to_string(m); };

  {
    GroupResult g("explicit formula = series-log");
    const SeriesConfig cfg = SeriesConfig::covering(maxN, o.max_m);
    for (int N = 1; N <= maxN; ++N) {
      for (int m = 0; m <= o.max_m; ++m) {
        g.expect(connected_explicit(N, m) == connected_general(N, m, cfg), tag(N, m));
      }
    }
    groups.push_back(g);
  }
  {
    GroupResult g("vacuum: composition sum = recurrence = series-log");
    const auto logs = vacuum_from_log(o.max_m);
    for (int m = 0; m <= o.max_m; ++m) {
      const ExactInt a = vacuum_connected(m, VacuumMethod::composition_sum);
      g.expect(a == vacuum_connected(m, VacuumMethod::recurrence) && a == logs[static_cast<std::size_t>(m)],
               tag(0, m));
    }
    groups.push_back(g);
  }
  {
    GroupResult g("symbol identities");
    for (int m = 1; m <= o.max_m; ++m) {
      for (int n = 1; n < m; ++n) {
        g.expect(C_symbol(n, m) == C_symbol_by_compositions(n, m), "C shortcut n=" + std::to_string(n) + " m=" + std::to_string(m));
        g.expect(C_symbol_generalized(n, m, MultiIndex{1}) == 2 * (m - n) * C_symbol(n, m),
                 "<C>_1 n=" + std::to_string(n) + " m=" + std::to_string(m));
      }
      for (int j = 1; j <= 3; ++j) {
        for (int total = j; total <= 5; ++total) {
          for (const auto& part : integer_partitions(total, j)) {
            if (static_cast<int>(part.size()) != j) continue;
            const MultiIndex idx(part);
            g.expect(H_multi(m, idx, HMultiMethod::convolution) == H_multi(m, idx, HMultiMethod::simplified),
                     "H_" + idx.str() + " m=" + std::to_string(m));
          }
        }
      }
    }
    groups.push_back(g);
  }
  if (o.oracle) {
    GroupResult g("oracle = formulas");
    for (int N = 0; N <= o.max_N; ++N) {
      for (int m = 0; m <= o.max_m; ++m) {
        if (N == 0 && m == 0) continue;
        ExactInt expected;
        if (N == 0) expected = vacuum_connected(m);
        else if (N <= kMaxExplicitLegs) expected = connected_explicit(N, m);
        else expected = connected_general(N, m, SeriesConfig::covering(N, m));
        try {
          g.expect(brute_force_connected(m, N, OracleOptions{o.budget, o.jobs}) == expected, tag(N, m));
        } catch (const BudgetExceeded&) {
          ++g.skipped;
        }
      }
    }
    groups.push_back(g);
  }

  bool ok = true;
  for (const auto& g : groups) ok = ok && g.failed == 0;

  feyncount::cli::Sink sink(o.out.output);
  std::ostream& out = sink.out();
  switch (feyncount::cli::parse_format(o.out.format)) {
    case Format::plain:
      for (const auto& g : groups) {
        out << g.status() << "  " << g.name << " (" << g.passed << " passed, " << g.failed << " failed";
        if (g.skipped) out << ", " << g.skipped << " SKIPPED over budget";
        out << ")\n";
        for (const auto& f : g.failures) out << "      failed: " << f << "\n";
      }
      out << (ok ? "ALL PASS" : "FAILURES") << "\n";
      break;
    case Format::csv:
      out << "group,status,passed,failed,skipped\n";
      for (const auto& g : groups) {
        out << feyncount::cli::csv_field(g.name) << "," << g.status() << "," << g.passed << "," << g.failed << ","
            << g.skipped << "\n";
      }
      break;
    case Format::json: {
      json doc;
      json arr = json::array();
      for (const auto& g : groups) {
        arr.push_back({{"group", g.name},
                       {"status", g.status()},
                       {"passed", g.passed},
                       {"failed", g.failed},
                       {"skipped", g.skipped},
                       {"failures", g.failures}});
      }
      doc["groups"] = arr;
      doc["result"] = ok ? "PASS" : "FAIL";
      finish_json(doc, o.out, out);
      break;
    }
  }
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counts connected Feynman diagrams of zero-dimensional many-body theory and their asymptotics"};
  app.require_subcommand(1);

  CountOptions count;
  auto* c = app.add_subcommand("count", "Count connected diagrams with N external legs at order m");
  c->add_option("--N", count.N, "External legs (0: vacuum diagrams)")->required();
  c->add_option("--m", count.m, "Perturbative order")->required();
  c->add_option("--method", count.method, "explicit, series-log, oracle, recurrence or all")
      ->check(CLI::IsMember({"explicit", "series-log", "oracle", "recurrence", "all"}));
  c->add_flag("--normalized", count.normalized, "Also report the count divided by 2^m m!");
  c->add_option("--budget", count.budget, "Oracle limit on enumerated pairings");
  c->add_option("--jobs", count.jobs, "Worker threads for the oracle")->check(CLI::PositiveNumber);
  c->add_option("--x-order", count.x_order, "Series-log truncation in x (default: auto)");
  c->add_option("--y-order", count.y_order, "Series-log truncation in y (default: auto)");
  add_output_options(c, count.out);

  AsymOptions asym;
  auto* a = app.add_subcommand("asym", "Asymptotic contribution of a composition family");
  a->add_option("--N", asym.N, "External legs (0: vacuum diagrams)");
  a->add_option("--n", asym.n, "Family: 1 principal, n >= 2 n-nomial centered (assumes n | m)");
  a->add_option("--order", asym.order, "Highest power of 1/m");
  a->add_flag("--check-reference,--check-paper", asym.check, "Compare with the embedded reference tables");
  a->add_flag("--all", asym.all_cells, "Every tabulated cell, N = 0..5 and n = 1..4");
  a->add_option("--family", asym.family, "table (default) or custom")->check(CLI::IsMember({"table", "custom"}));
  a->add_option("--offset-budget", asym.offset_budget, "Custom family: small-part mass cutoff (default: order)");
  a->add_option("--route", asym.route, "Factorial expansion: rational or stirling")
      ->check(CLI::IsMember({"rational", "stirling"}));
  a->add_flag("--no-stability", asym.no_stability, "Skip the raised-budget stability check");
  a->add_option("--jobs", asym.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_output_options(a, asym.out);

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Cross-validate all counting routes");
  v->add_option("--max-m", verify.max_m, "Largest order m");
  v->add_option("--max-N", verify.max_N, "Largest number of external legs");
  v->add_flag("--oracle", verify.oracle, "Include brute-force enumeration");
  v->add_option("--budget", verify.budget, "Oracle limit on enumerated pairings");
  v->add_option("--jobs", verify.jobs, "Worker threads for the oracle")->check(CLI::PositiveNumber);
  add_output_options(v, verify.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c->parsed()) return run_count(count);
    if (a->parsed()) return run_asym(asym);
    if (v->parsed()) return run_verify(verify);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const feyncount::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  return kExitUsage;
}
