#include "sgt/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgt/errors.hpp"

namespace sgt {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Window default_window(std::size_t n_counts) {
  const int hi = static_cast<int>(n_counts) - 1;
  return Window{(hi + 1) / 2, hi};
}

GrowthEstimate fit_window(const std::vector<double>& counts, Window w) {
  GrowthEstimate est;
  est.fitted_counts = counts;
  est.window = w;
  est.per_k.assign(counts.size(), kNaN);
  for (std::size_t k = 1; k < counts.size(); ++k)
    if (counts[k] > 0) est.per_k[k] = std::log(counts[k]) / static_cast<double>(k);

  if (w.lo < 0 || w.hi >= static_cast<int>(counts.size()) || w.lo > w.hi)
    throw input_error("fit window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                      "] is outside the count sequence");

  for (int k = w.lo; k <= w.hi; ++k) {
    if (counts[k] <= 0) {
      est.rate = 0.0;
      est.std_error = 0.0;
      est.method = RateMethod::exact_formula;
      est.note = "finite support";
      est.max_per_k = 0.0;
      return est;
    }
  }

  const int n = w.hi - w.lo + 1;
  if (n < 4)
    throw input_error("rate estimation needs >= 4 counts in the window, have " +
                      std::to_string(n));

  double kbar = 0.0, ybar = 0.0;
  for (int k = w.lo; k <= w.hi; ++k) {
    kbar += k;
    ybar += std::log(counts[k]);
  }
  kbar /= n;
  ybar /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int k = w.lo; k <= w.hi; ++k) {
    const double dk = k - kbar;
    sxx += dk * dk;
    sxy += dk * (std::log(counts[k]) - ybar);
  }
  est.rate = sxy / sxx;
  double ss_res = 0.0;
  for (int k = w.lo; k <= w.hi; ++k) {
    const double r = std::log(counts[k]) - (ybar + est.rate * (k - kbar));
    ss_res += r * r;
  }
  est.std_error = std::sqrt(ss_res / (n - 2) / sxx);
  est.method = RateMethod::regression;

  est.max_per_k = -std::numeric_limits<double>::infinity();
  for (int k = std::max(w.lo, 1); k <= w.hi; ++k)
    if (!std::isnan(est.per_k[k])) est.max_per_k = std::max(est.max_per_k, est.per_k[k]);
  return est;
}

}  // namespace

std::string rate_method_name(RateMethod m) {
  switch (m) {
    case RateMethod::regression: return "regression";
    case RateMethod::exact_formula: return "exact-formula";
    case RateMethod::spectral: return "spectral";
  }
  return "?";
}

GrowthEstimate estimate_rate(const std::vector<std::uint64_t>& counts,
                             std::optional<Window> window) {
  if (counts.empty()) throw input_error("estimate_rate needs a nonempty count sequence");
  std::vector<double> c(counts.begin(), counts.end());
  return fit_window(c, window.value_or(default_window(counts.size())));
}

GrowthEstimate estimate_subgroup_rate(const std::vector<std::uint64_t>& loop_counts,
                                      std::optional<Window> window) {
  if (loop_counts.empty()) throw input_error("estimate_subgroup_rate needs counts");
  // max(c_k, c_{k+1}) exists only up to max_len - 1; the bare endpoint would
  // bias the fit downward on one parity class.
  const std::size_t len = std::max<std::size_t>(loop_counts.size() - 1, 1);
  std::vector<double> absorbed(len);
  for (std::size_t k = 0; k < len; ++k) {
    std::uint64_t v = loop_counts[k];
    if (k + 1 < loop_counts.size()) v = std::max(v, loop_counts[k + 1]);
    absorbed[k] = static_cast<double>(v);
  }
  GrowthEstimate est = fit_window(absorbed, window.value_or(default_window(len)));
  if (est.method == RateMethod::exact_formula) est.note = "no closed walks in window";
  return est;
}

GrowthEstimate exact_rate_estimate(double rate, const std::string& note) {
  GrowthEstimate est;
  est.rate = rate;
  est.std_error = 0.0;
  est.method = RateMethod::exact_formula;
  est.note = note;
  est.max_per_k = rate;
  return est;
}

GrowthEstimate quotient_rate_estimate(const BallTable& ball) {
  if (!ball.counts.empty() && ball.counts.back() == 0) {
    GrowthEstimate est = exact_rate_estimate(0.0, "finite support");
    auto counts = ball.ball_counts();
    est.fitted_counts.assign(counts.begin(), counts.end());
    return est;
  }
  return estimate_rate(ball.ball_counts());
}

double poincare_partial(const std::vector<std::uint64_t>& sphere_counts, double s, int depth) {
  if (s < 0) throw input_error("poincare_partial needs s >= 0");
  if (depth < 0 || depth >= static_cast<int>(sphere_counts.size()))
    throw input_error("poincare_partial depth exceeds available counts");
  double sum = 0.0;
  for (int k = 0; k <= depth; ++k)
    sum += static_cast<double>(sphere_counts[k]) * std::exp(-s * k);
  return sum;
}

namespace {

// log((q^t - 1)^(1/t)) = log q + log1p(-q^-t) / t, stable for large t where
// q^t - 1 would round to q^t.
double shell_product_bound(double q, double t) {
  return std::log(q) + std::log1p(-std::pow(q, -t)) / t;
}

}  // namespace

double appendix1_bound(int d, int R) {
  if (d < 3) throw input_error("appendix1_bound needs degree d >= 3");
  if (R < 1) throw input_error("appendix1_bound needs R >= 1");
  return shell_product_bound(d - 1.0, 2.0 * R);
}

Appendix2Bound appendix2_bound(int n, int m) {
  if (n < 2) throw input_error("appendix2_bound needs rank n >= 2");
  if (m < 1) throw input_error("appendix2_bound needs m >= 1");
  Appendix2Bound out;
  out.bound = shell_product_bound(2.0 * n - 1.0, 2.0 * m);
  out.alpha = std::exp(out.bound);
  return out;
}

GapFunctionParams::GapFunctionParams(double theta_, double R_) : theta(theta_), R(R_) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw input_error("gap function needs theta in [0, 1], got " + std::to_string(theta));
  if (!(R > 0.0)) throw input_error("gap function needs R > 0, got " + std::to_string(R));
}

double rho(const GapFunctionParams& params, double s) {
  return s - params.theta * std::log1p(std::exp(-s * params.R));
}

GapOmega find_gap_omega(const GapFunctionParams& params, double omega) {
  if (omega < 0) throw input_error("find_gap_omega needs omega >= 0");

  // rho is continuous, strictly increasing and rho(omega) < omega, so
  // rho(s) = omega has a unique root s* > omega; any point in (omega, s*)
  // works. Take the midpoint for a quantified margin. When s* - omega is
  // below the bisection tolerance, keep halving until lo lands strictly
  // inside the interval.
  double lo = omega, hi = omega + std::max(1.0, params.theta);
  while (rho(params, hi) < omega) hi += hi - omega;
  for (int i = 0; i < 300 && (hi - lo > 1e-9 || lo <= omega); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (rho(params, mid) < omega)
      lo = mid;
    else
      hi = mid;
  }
  GapOmega out;
  out.omega_prime = 0.5 * (omega + lo);
  if (!(out.omega_prime > omega)) out.omega_prime = lo;
  out.margin = omega - rho(params, out.omega_prime);
  return out;
}

GapCertificate certify_gap(const CosetGraph& g, int radius, std::uint64_t vertex_budget) {
  const int n = g.alphabet().rank();
  if (n < 2) throw input_error("certify_gap needs rank >= 2");
  if (radius < 1) throw input_error("certify_gap needs radius >= 1");

  GapCertificate cert;
  cert.n = n;
  cert.omega_free = std::log(2.0 * n - 1.0);
  cert.radius_verified = radius;

  BallTable ball = bfs_ball(g, radius, vertex_budget);
  cert.empirical_rate = quotient_rate_estimate(ball);

  // First pass: certified tree-ball radii fix the candidate m.
  std::vector<std::pair<VertexId, TreeBallRadius>> audits;
  int max_certified = -1;
  for (const auto& sphere : ball.spheres) {
    for (VertexId v : sphere) {
      TreeBallRadius t = tree_ball_radius(g, ball, v);
      audits.emplace_back(v, t);
      if (t.certified) {
        ++cert.audited_vertices;
        max_certified = std::max(max_certified, t.radius);
      }
    }
  }

  if (max_certified < 0) {
    cert.m = 0;
    cert.alpha = kNaN;
    cert.bound = kNaN;
    cert.holds_hypothesis = false;
    cert.inconclusive = true;
    cert.note = "no cycle found within any audited horizon; tree-ball hypothesis unverifiable "
                "at this radius";
    return cert;
  }

  cert.max_tree_ball_radius = max_certified;
  cert.m = max_certified + 1;
  const Appendix2Bound b = appendix2_bound(n, cert.m);
  cert.alpha = b.alpha;
  cert.bound = b.bound;

  // Hypothesis audit: every vertex whose horizon reaches m must have a
  // certified radius (then < m by construction of m).
  for (const auto& [v, t] : audits) {
    if (!t.certified && t.horizon >= cert.m) {
      ++cert.uncertified_vertices;
      if (cert.note.empty())
        cert.note = "vertex " + g.vertex_label(v) + " has no cycle within horizon " +
                    std::to_string(t.horizon) + " >= m = " + std::to_string(cert.m);
    }
  }
  cert.holds_hypothesis = cert.uncertified_vertices == 0;
  cert.inconclusive = !cert.holds_hypothesis;
  return cert;
}

InequalityReport verify_inequalities(const GrowthEstimate& omega_G,
                                     const GrowthEstimate& omega_quot,
                                     const GrowthEstimate& omega_H, double tol,
                                     std::optional<double> certified_bound) {
  if (tol < 0) throw input_error("verify_inequalities needs tol >= 0");
  if (std::isnan(omega_G.rate) || std::isnan(omega_quot.rate) || std::isnan(omega_H.rate))
    throw input_error("verify_inequalities needs all three growth estimates");
  InequalityReport report;
  report.omega_G = omega_G;
  report.omega_quot = omega_quot;
  report.omega_H = omega_H;
  report.tol = tol;
  report.certified_bound = certified_bound;

  report.rate_sum.slack = omega_quot.rate / 2.0 + omega_H.rate - omega_G.rate;
  report.rate_sum.holds = report.rate_sum.slack >= -tol;

  if (certified_bound) {
    report.gap.slack = *certified_bound + 2.0 * omega_quot.std_error - omega_quot.rate;
    report.gap.holds = report.gap.slack >= 0.0;
    if (!report.gap.holds) report.gap.note = "quotient rate exceeds the certified bound";
  } else {
    report.gap.holds = false;
    report.gap.slack = kNaN;
    report.gap.note = "hypothesis not met: not confined (no certificate bound)";
  }

  report.half.slack = omega_H.rate - omega_G.rate / 2.0;
  report.half.holds = report.half.slack >= -tol;
  return report;
}

}  // namespace sgt
