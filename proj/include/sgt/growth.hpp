#ifndef SGT_GROWTH_HPP
#define SGT_GROWTH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgt/schreier.hpp"

namespace sgt {

enum class RateMethod { regression, exact_formula, spectral };

std::string rate_method_name(RateMethod m);

struct Window {
  int lo = 0;
  int hi = 0;  // inclusive
};

// Exponential growth rate fitted from a count sequence, in nats per unit
// length. per_k carries the raw ln(counts[k])/k statistics so truncation
// bias stays visible next to the fit.
struct GrowthEstimate {
  std::vector<double> fitted_counts;
  Window window;
  double rate = 0.0;
  double std_error = 0.0;
  RateMethod method = RateMethod::regression;
  std::string note;
  std::vector<double> per_k;  // ln(counts[k])/k, index-aligned, NaN where undefined
  double max_per_k = 0.0;     // max of per_k over the window
};

// Least-squares slope of ln(counts[k]) over the window (default: top half of
// the available indices). A zero count inside the window means the graph was
// exhausted: rate 0, method exact-formula, note "finite support".
GrowthEstimate estimate_rate(const std::vector<std::uint64_t>& counts,
                             std::optional<Window> window = std::nullopt);

// Same fit on the parity-absorbed sequence max(c_k, c_{k+1}) of closed-walk
// counts; closed non-backtracking walks can vanish on one parity class.
GrowthEstimate estimate_subgroup_rate(const std::vector<std::uint64_t>& loop_counts,
                                      std::optional<Window> window = std::nullopt);

GrowthEstimate exact_rate_estimate(double rate, const std::string& note);

// Ball-count regression for omega_{G/H}; an exhausted graph (empty final
// sphere) short-circuits to rate 0 with a "finite support" note.
GrowthEstimate quotient_rate_estimate(const BallTable& ball);

// Partial Poincare series sum_{k<=depth} |S_k| e^{-sk}.
double poincare_partial(const std::vector<std::uint64_t>& sphere_counts, double s, int depth);

// log((d-1)^{2R} - 1) / (2R); strictly below log(d-1) for d >= 3.
double appendix1_bound(int d, int R);

struct Appendix2Bound {
  double alpha = 0.0;  // ((2n-1)^{2m} - 1)^{1/(2m)}
  double bound = 0.0;  // log alpha
};

Appendix2Bound appendix2_bound(int n, int m);

struct GapFunctionParams {
  double theta = 1.0;  // in [0, 1]; 0 only as a degenerate test boundary
  double R = 1.0;      // > 0

  GapFunctionParams(double theta_, double R_);
};

// rho(s) = s - theta ln(1 + e^{-sR}); strictly increasing, rho(s) < s.
double rho(const GapFunctionParams& params, double s);

struct GapOmega {
  double omega_prime = 0.0;  // > omega
  double margin = 0.0;       // omega - rho(omega_prime) > 0
};

// A point omega' > omega with rho(omega') < omega, by bisection on the root
// of rho(s) = omega to absolute tolerance 1e-9; deterministic.
GapOmega find_gap_omega(const GapFunctionParams& params, double omega);

// Machine-checkable witness of a growth gap below log(2n-1): a tree-ball
// radius bound m audited over a finite ball plus the numeric bound
// log alpha with alpha = ((2n-1)^{2m} - 1)^{1/(2m)}.
struct GapCertificate {
  int n = 0;
  int m = 0;
  double alpha = 0.0;
  double bound = 0.0;
  double omega_free = 0.0;  // log(2n-1)
  int radius_verified = 0;
  GrowthEstimate empirical_rate;  // ball-count regression over the window
  bool holds_hypothesis = false;
  bool inconclusive = true;
  std::uint64_t audited_vertices = 0;
  std::uint64_t uncertified_vertices = 0;  // within the required horizon
  int max_tree_ball_radius = -1;
  std::string note;
};

GapCertificate certify_gap(const CosetGraph& g, int radius,
                           std::uint64_t vertex_budget = kDefaultVertexBudget);

struct Verdict {
  bool holds = false;
  double slack = 0.0;
  std::string note;
};

// The three-way checks among the growth rates: (i) omega_quot/2 + omega_H >=
// omega_G, (ii) omega_quot below the certified bound, (iii) omega_H >=
// omega_G / 2. Slacks are signed; negative beyond tol fails.
struct InequalityReport {
  GrowthEstimate omega_G;
  GrowthEstimate omega_quot;
  GrowthEstimate omega_H;
  double tol = 0.0;
  std::optional<double> certified_bound;
  Verdict rate_sum;
  Verdict gap;
  Verdict half;
};

InequalityReport verify_inequalities(const GrowthEstimate& omega_G,
                                     const GrowthEstimate& omega_quot,
                                     const GrowthEstimate& omega_H, double tol,
                                     std::optional<double> certified_bound = std::nullopt);

}  // namespace sgt

#endif  // SGT_GROWTH_HPP
