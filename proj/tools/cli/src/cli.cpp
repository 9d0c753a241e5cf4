#include "scanex_cli/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scanex/errors.hpp"
#include "scanex/extremes.hpp"
#include "scanex/montecarlo.hpp"
#include "scanex/pipeline.hpp"
#include "scanex/scan_exact.hpp"
#include "scanex_cli/report.hpp"

namespace scanex::cli {
namespace {

// How numbers are written for everything except the reference tables, which
// always use their own layout.
struct NumberStyle {
  std::optional<int> decimals;  ///< fixed decimals; shortest round-trip when empty
  bool table_style = false;     ///< the reference-table display rule

  Cell probability(double v) const {
    if (table_style) return {v, Notation::display_fixed, 5};
    if (decimals) return {v, Notation::fixed, *decimals};
    return {v, Notation::shortest, 0};
  }

  Cell probability(const std::optional<double>& v) const {
    return v ? probability(*v) : Cell::dash();
  }

  // Error bounds switch to scientific notation below 1e-4 so that fixed
  // decimals never print a nonzero bound as zero.
  Cell bound(const std::optional<double>& v) const {
    if (!v) return Cell::dash();
    if (table_style) return {*v, Notation::display_auto, 5};
    if (decimals) {
      if (*v != 0.0 && std::abs(*v) < 1e-4) return {*v, Notation::scientific, *decimals};
      return {*v, Notation::fixed, *decimals};
    }
    return {*v, Notation::shortest, 0};
  }

  Cell coefficient(double v, int table_decimals) const {
    if (table_style) return {v, Notation::display_fixed, table_decimals};
    if (decimals) return {v, Notation::fixed, *decimals};
    return {v, Notation::shortest, 0};
  }
};

Cell integer(long v) { return {static_cast<double>(v), Notation::integer, 0}; }
Cell real(double v) { return {v, Notation::shortest, 0}; }
Cell flag(bool v) { return integer(v ? 1 : 0); }

std::vector<std::pair<std::string, Cell>> spec_inputs(const BernoulliScanSpec& s) {
  return {{"m", integer(s.m)}, {"p", real(s.p)}, {"N", integer(s.N)}, {"n", integer(s.n)}};
}

// One value per line for p_1..p_K; blank lines and lines starting with '#'
// are skipped.
std::vector<double> read_p_values(std::istream& is) {
  std::vector<double> values{1.0};
  std::string line;
  long line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      throw DomainError("p file line " + std::to_string(line_no) + ": not a number");
    }
    values.push_back(v);
  }
  if (values.size() < 2) throw DomainError("p file holds no values");
  return values;
}

Report coeffs_report(double alpha, const NumberStyle& style) {
  const auto c = error_coefficients(alpha);
  Report r{"coeffs", {{"alpha", real(alpha)}}, {}};
  r.table.columns = {"alpha", "t2", "l", "K", "L", "E", "Gamma", "1+alpha*K", "3+alpha*Gamma"};
  r.table.rows.push_back({real(alpha), style.coefficient(c.t2, 4), style.coefficient(c.l, 4),
                          style.coefficient(c.K, 4), style.coefficient(c.Lcoef, 3),
                          style.coefficient(c.Ecoef, 3), style.coefficient(c.Gamma, 3),
                          style.coefficient(c.lambda_c1_coefficient(), 4),
                          style.coefficient(c.qn_c2_coefficient(), 4)});
  return r;
}

Report lambda_report(const PSequence& p, std::optional<double> alpha_opt,
                     const NumberStyle& style) {
  const double p1 = p.p1();
  const double alpha = alpha_opt.value_or(p1 > 0.0 ? p1 : kMaxAlpha);
  const auto res = solve_lambda(p, alpha);
  QnLambdaCenters centers;
  QnLambdaBounds bounds;
  if (p1 > 0.0) {
    centers = approx_qnlambda_centers(p);
    bounds = qnlambda_bounds(error_coefficients(alpha), p1);
  }
  Report r{"lambda",
           {{"alpha", real(alpha)}, {"terms", integer(static_cast<long>(p.last_index()))}},
           {}};
  r.table.columns = {"p1",        "alpha",      "lambda",   "bracket_low", "bracket_high",
                     "center_T1", "bound_T1",   "center_C1", "bound_C1",   "residual",
                     "tail_bound", "mu1",       "bound_T2", "nu1",         "bound_C2"};
  r.table.rows.push_back({real(p1), real(alpha), style.coefficient(res.lambda, 5),
                          style.coefficient(res.bracket_low, 5),
                          style.coefficient(res.bracket_high, 5),
                          style.coefficient(res.center_T1, 5), style.bound(res.bound_T1),
                          style.coefficient(res.center_C1, 5), style.bound(res.bound_C1),
                          real(res.residual), real(res.tail_bound),
                          style.coefficient(centers.mu1, 5), style.bound(bounds.bound_T2),
                          style.coefficient(centers.nu1, 5), style.bound(bounds.bound_C2)});
  return r;
}

Report approx_report(const ScanApproxRequest& req, const NumberStyle& style) {
  const auto rep = scan_approximation(req);
  Report r{"scan approx",
           {{"m", integer(req.m)}, {"p", real(req.p)}, {"L", integer(req.L)}, {"n", integer(req.n)}},
           {}};
  auto& cols = r.table.columns;
  std::vector<Cell> row;
  const auto add = [&](std::string name, Cell cell) {
    cols.push_back(std::move(name));
    row.push_back(std::move(cell));
  };
  add("m", integer(req.m));
  add("p", real(req.p));
  add("L", integer(req.L));
  add("N", integer(rep.spec.N));
  add("n", integer(req.n));
  add("q1", style.probability(rep.q1));
  add("q2", style.probability(rep.q2));
  if (req.want_t3) {
    add("q3", style.probability(rep.q3));
    add("q4", style.probability(rep.q4));
  }
  add("alpha", style.bound(rep.alpha_used));
  add("in_range", flag(rep.in_range));
  add("Approx", style.probability(rep.approx_T4));
  if (req.want_exact) add("Exact", style.probability(rep.exact));
  add("EH", style.bound(rep.EH));
  add("E", style.bound(rep.E));
  if (req.want_t3) {
    add("Approx_T3", style.probability(rep.approx_T3));
    add("E_T3", style.bound(rep.bound_T3));
  }
  r.table.rows.push_back(std::move(row));
  return r;
}

Report exact_report(const BernoulliScanSpec& spec, const NumberStyle& style) {
  const double cdf = exact_scan_cdf(spec);
  Report r{"scan exact", spec_inputs(spec), {}};
  r.table.columns = {"m", "p", "N", "n", "cdf", "degenerate"};
  r.table.rows.push_back({integer(spec.m), real(spec.p), integer(spec.N), integer(spec.n),
                          style.probability(cdf), flag(is_degenerate(spec))});
  return r;
}

Report simulate_report(const SimulationPlan& plan, int threads, const NumberStyle& style) {
  const auto est = simulate_scan_cdf(plan, threads);
  auto inputs = spec_inputs(plan.spec);
  inputs.emplace_back("reps", integer(plan.reps));
  inputs.emplace_back("streams", integer(plan.stream_count));
  Report r{"scan simulate", std::move(inputs), {}};
  r.table.columns = {"m", "p", "N", "n", "reps", "hits", "estimate", "half_width_95"};
  r.table.rows.push_back({integer(plan.spec.m), real(plan.spec.p), integer(plan.spec.N),
                          integer(plan.spec.n), integer(est.reps), integer(est.hits),
                          style.probability(est.estimate), style.bound(est.half_width_95)});
  return r;
}

Report sandwich_report(const BernoulliScanSpec& spec, const NumberStyle& style) {
  const auto b = sandwich(spec);
  Report r{"scan sandwich", spec_inputs(spec), {}};
  r.table.columns = {"m", "p", "N", "n", "L", "lower", "upper"};
  r.table.rows.push_back({integer(spec.m), real(spec.p), integer(spec.N), integer(spec.n),
                          integer(b.L), style.probability(b.lower), style.probability(b.upper)});
  return r;
}

Report tables_report(int which) {
  return Report{"tables", {{"which", integer(which)}}, reproduce_table(which)};
}

int resolve_threads(int requested, std::ostream& err) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SCANEX_THREADS")) {
    const std::string text(env);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size() && v > 0) return v;
    err << "scanex: warning: ignoring SCANEX_THREADS='" << text << "'\n";
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Extremes of 1-dependent sequences and Bernoulli scan statistics", "scanex"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "csv";
  int threads_flag = 0;
  int decimals = -1;
  bool table_style = false;
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"csv", "json", "md"}))
      ->capture_default_str();
  app.add_option("--threads", threads_flag,
                 "Worker threads for simulation (default: SCANEX_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--decimals", decimals, "Fixed number of decimals (default: shortest exact)")
      ->check(CLI::Range(0, 17));
  app.add_flag("--table-style", table_style, "Use the reference-table display rule for numbers");

  double alpha = 0.0;
  auto* coeffs = app.add_subcommand("coeffs", "Error coefficients K, L, E, Gamma at alpha");
  coeffs->add_option("--alpha", alpha, "0 < alpha <= 0.1")->required();

  std::string pfile;
  std::optional<double> lambda_alpha;
  auto* lambda = app.add_subcommand("lambda", "Certified root of C(z) for a p-sequence");
  lambda->add_option("--pfile", pfile, "File with p_1..p_K, one per line ('-' for stdin)")
      ->required();
  lambda->add_option("--alpha", lambda_alpha, "Coefficient parameter (default: p_1)");

  auto* scan = app.add_subcommand("scan", "Bernoulli scan statistic");
  scan->require_subcommand(1);
  scan->fallthrough();

  ScanApproxRequest req;
  auto* approx = scan->add_subcommand("approx", "Block approximation of P(S_m(Lm) <= n)");
  approx->add_option("--m", req.m, "Window length")->required();
  approx->add_option("--p", req.p, "Success probability")->required();
  approx->add_option("--L", req.L, "Number of blocks, N = L m")->required();
  approx->add_option("--n", req.n, "Threshold")->required();
  approx->add_flag("--with-exact", req.want_exact, "Also compute the exact value");
  approx->add_flag("--t3", req.want_t3, "Also compute the four-term approximation");

  BernoulliScanSpec spec;
  const auto add_spec = [&spec](CLI::App* sub) {
    sub->add_option("--m", spec.m, "Window length")->required();
    sub->add_option("--p", spec.p, "Success probability")->required();
    sub->add_option("--N", spec.N, "Number of trials")->required();
    sub->add_option("--n", spec.n, "Threshold")->required();
  };
  auto* exact = scan->add_subcommand("exact", "Exact P(S_m(N) <= n)");
  add_spec(exact);
  auto* sandwich_cmd = scan->add_subcommand("sandwich", "Bracket of P(S_m(N) <= n) by whole blocks");
  add_spec(sandwich_cmd);

  SimulationPlan plan;
  plan.reps = 100000;
  auto* simulate = scan->add_subcommand("simulate", "Monte Carlo estimate of P(S_m(N) <= n)");
  add_spec(simulate);
  simulate->add_option("--reps", plan.reps, "Replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--seed", plan.seed, "Generator seed")->capture_default_str();
  simulate->add_option("--streams", plan.stream_count, "Independent generator streams")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  int which = 0;
  const auto add_which = [&which](CLI::App* sub) {
    sub->add_option("--which", which, "Table number")->required()->check(CLI::Range(1, 4));
  };
  auto* scan_tables = scan->add_subcommand("tables", "Reference tables 1-4");
  add_which(scan_tables);
  auto* tables = app.add_subcommand("tables", "Reference tables 1-4 (same as scan tables)");
  add_which(tables);

  std::vector<std::string> argv_store{"scanex"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    const Format format = parse_format(format_name);
    NumberStyle style;
    style.table_style = table_style;
    if (decimals >= 0) style.decimals = decimals;

    Report report;
    if (*coeffs) {
      report = coeffs_report(alpha, style);
    } else if (*lambda) {
      std::vector<double> values;
      if (pfile == "-") {
        values = read_p_values(in);
      } else {
        std::ifstream file(pfile);
        if (!file) throw DomainError("cannot open p file '" + pfile + "'");
        values = read_p_values(file);
      }
      report = lambda_report(PSequence(std::move(values)), lambda_alpha, style);
    } else if (*tables || *scan_tables) {
      report = tables_report(which);
    } else if (*approx) {
      report = approx_report(req, style);
    } else if (*exact) {
      report = exact_report(spec, style);
    } else if (*sandwich_cmd) {
      report = sandwich_report(spec, style);
    } else if (*simulate) {
      plan.spec = spec;
      report = simulate_report(plan, resolve_threads(threads_flag, err), style);
    }
    out << render(report, format);
    return kExitOk;
  } catch (const CapacityError& e) {
    err << "scanex: capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const DomainError& e) {
    err << "scanex: error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const LengthError& e) {
    err << "scanex: error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ConsistencyError& e) {
    err << "scanex: numerical failure: " << e.what() << '\n';
    return kExitConsistency;
  } catch (const std::exception& e) {
    err << "scanex: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace scanex::cli
