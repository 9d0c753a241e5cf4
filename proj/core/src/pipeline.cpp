#include "scanex/pipeline.hpp"

#include <array>
#include <string>

#include "scanex/errors.hpp"
#include "scanex/extremes.hpp"

namespace scanex {

ScanReport scan_approximation(const ScanApproxRequest& req) {
  if (req.L < 2) throw DomainError("L must be at least 2");
  const BernoulliScanSpec spec{req.m, req.p, static_cast<long>(req.L) * req.m, req.n};
  validate(spec);

  ScanReport r;
  r.spec = spec;
  r.L = req.L;

  const int kmax = req.want_t3 ? 4 : 2;
  const long horizon = std::max<long>(static_cast<long>(kmax + 1) * req.m,
                                      req.want_exact ? spec.N : 0);
  const auto tails = exact_scan_tail_curve(req.m, req.p, req.n, horizon);
  const auto tail = [&](long t) { return tails[static_cast<std::size_t>(t)]; };

  r.tail1 = tail(2L * req.m);
  r.tail2 = tail(3L * req.m);
  r.q1 = 1.0 - r.tail1;
  r.q2 = 1.0 - r.tail2;
  if (req.want_t3) {
    r.tail3 = tail(4L * req.m);
    r.tail4 = tail(5L * req.m);
    r.q3 = 1.0 - *r.tail3;
    r.q4 = 1.0 - *r.tail4;
  }
  if (req.want_exact) {
    r.exact_deficit = tail(spec.N);
    r.exact = 1.0 - *r.exact_deficit;
  }

  r.alpha_used = 1.0 - r.q1;
  r.in_range = r.alpha_used <= kMaxAlpha;
  const long blocks = req.L - 1;

  if (const auto t4 = approx_qn_T4(r.q1, r.q2, blocks)) {
    r.approx_T4 = t4->value;
    r.approx_T4_deficit = approx_qn_T4_deficit(r.tail1, r.tail2, blocks);
    r.E = t4->error_bound;
  }
  if (req.want_t3) {
    if (const auto t3 = approx_qn_T3(r.q1, r.q2, *r.q3, *r.q4, blocks)) {
      r.approx_T3 = t3->value;
      r.approx_T3_deficit = approx_qn_T3_deficit(r.tail1, r.tail2, *r.tail3, *r.tail4, blocks);
      r.bound_T3 = t3->error_bound;
    }
  }
  r.EH = legacy_qn_error(r.q1, blocks);
  return r;
}

SandwichBounds sandwich(const BernoulliScanSpec& spec) {
  validate(spec);
  SandwichBounds b;
  b.L = spec.N / spec.m;
  const long lo_n = (b.L + 1) * spec.m;
  const auto curve = exact_scan_cdf_curve(spec.m, spec.p, spec.n, lo_n);
  b.lower = curve[static_cast<std::size_t>(lo_n)];
  b.upper = curve[static_cast<std::size_t>(b.L * spec.m)];
  return b;
}

namespace {

constexpr std::array<double, 4> kTableAlphas{0.1, 0.05, 0.025, 0.01};

Cell fixed(double v, int decimals) { return Cell{v, Notation::fixed, decimals}; }
Cell display(double v, int decimals) { return Cell{v, Notation::display_fixed, decimals}; }
Cell display_auto(const std::optional<double>& v) {
  return v ? Cell{*v, Notation::display_auto, 5} : Cell::dash();
}
Cell display_opt(const std::optional<double>& v) {
  return v ? Cell{*v, Notation::display_fixed, 5} : Cell::dash();
}

Table coefficient_table(int which) {
  Table t;
  if (which == 1) {
    t.name = "Error coefficients of the root approximation";
    t.columns = {"alpha", "l", "K", "1+alpha*K"};
  } else {
    t.name = "Error coefficients of the q_n lambda^n approximation";
    t.columns = {"alpha", "Gamma", "3+alpha*Gamma"};
  }
  for (double a : kTableAlphas) {
    const auto c = error_coefficients(a);
    if (which == 1) {
      t.rows.push_back({fixed(a, 3), display(c.l, 4), display(c.K, 4),
                        display(c.lambda_c1_coefficient(), 4)});
    } else {
      t.rows.push_back({fixed(a, 3), display(c.Gamma, 3), display(c.qn_c2_coefficient(), 4)});
    }
  }
  return t;
}

Table scan_table(int m, double p, int L, int n_first, int n_last) {
  Table t;
  t.name = "Distribution of the scan statistic P(S_m(Lm) <= n) for m=" + std::to_string(m) +
           ", p=" + format_shortest(p) + ", L=" + std::to_string(L);
  t.columns = {"n", "q1", "q2", "Approx", "Exact", "EH", "E"};
  for (int n = n_first; n <= n_last; ++n) {
    const auto r = scan_approximation({m, p, L, n, true, false});
    t.rows.push_back({Cell{static_cast<double>(n), Notation::integer, 0}, display(r.q1, 5),
                      display(r.q2, 5), display_opt(r.approx_T4), display_opt(r.exact),
                      display_auto(r.EH), display_auto(r.E)});
  }
  return t;
}

}  // namespace

Table reproduce_table(int which) {
  switch (which) {
    case 1:
    case 2:
      return coefficient_table(which);
    case 3:
      return scan_table(9, 0.05, 10, 2, 7);
    case 4:
      return scan_table(10, 0.0165, 15, 1, 5);
    default:
      throw DomainError("table number must be 1, 2, 3 or 4");
  }
}

}  // namespace scanex
