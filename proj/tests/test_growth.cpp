#include "sgt/growth.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "sgt/errors.hpp"

using namespace sgt;

namespace {
const Alphabet kRank2(2);
const double kLog3 = std::log(3.0);

std::vector<std::uint64_t> tree_sphere_counts(int radius) {
  std::vector<std::uint64_t> counts{1};
  std::uint64_t s = 4;
  for (int k = 1; k <= radius; ++k) {
    counts.push_back(s);
    s *= 3;
  }
  return counts;
}
}  // namespace

TEST_CASE("estimate_rate on tree counts") {
  auto est = estimate_rate(tree_sphere_counts(12));
  CHECK(est.method == RateMethod::regression);
  CHECK(est.rate == doctest::Approx(kLog3).epsilon(0.02));
}

TEST_CASE("estimate_rate on exact geometric counts is exact") {
  std::vector<std::uint64_t> counts;
  for (int k = 0; k <= 15; ++k) counts.push_back(5ull << k);  // 5 * 2^k
  auto est = estimate_rate(counts);
  CHECK(std::abs(est.rate - std::log(2.0)) < 1e-9);
  CHECK(est.std_error < 1e-9);
}

TEST_CASE("estimate_rate on constant counts") {
  std::vector<std::uint64_t> counts(13, 1);
  CHECK(estimate_rate(counts).rate == doctest::Approx(0.0));
}

TEST_CASE("estimate_rate on polynomial growth") {
  std::vector<std::uint64_t> counts{1};
  for (int k = 1; k <= 40; ++k) counts.push_back(4 * k);
  auto est = estimate_rate(counts);
  CHECK(est.rate <= 0.15);
  CHECK(est.rate > 0.0);
}

TEST_CASE("estimate_rate finite support") {
  std::vector<std::uint64_t> counts{1, 2, 0, 0, 0, 0, 0, 0, 0};
  auto est = estimate_rate(counts);
  CHECK(est.rate == 0.0);
  CHECK(est.method == RateMethod::exact_formula);
  CHECK(est.note == "finite support");
}

TEST_CASE("estimate_rate window too small") {
  std::vector<std::uint64_t> counts{1, 4, 12};
  CHECK_THROWS_AS(estimate_rate(counts), Error);
}

TEST_CASE("poincare_partial") {
  CHECK(poincare_partial({1}, 2.0, 0) == doctest::Approx(1.0));

  // geometric-series oracle at s above the critical exponent
  auto counts = tree_sphere_counts(20);
  const double s = kLog3 + 0.5;
  double expected = 1.0;
  for (int k = 1; k <= 20; ++k) expected += 4.0 * std::pow(3.0, k - 1) * std::exp(-s * k);
  // closed form: 1 + (4/3) sum (3 e^-s)^k = 1 + (4/3) r (1 - r^20)/(1 - r)
  const double r = 3.0 * std::exp(-s);
  const double closed = 1.0 + (4.0 / 3.0) * r * (1.0 - std::pow(r, 20)) / (1.0 - r);
  CHECK(poincare_partial(counts, s, 20) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(poincare_partial(counts, s, 20) == doctest::Approx(closed).epsilon(1e-9));

  // below the critical exponent the partial sums keep growing
  const double s_low = kLog3 - 0.2;
  double prev = 0.0;
  for (int depth = 5; depth <= 20; depth += 5) {
    const double cur = poincare_partial(counts, s_low, depth);
    CHECK(cur > prev + 1.0);
    prev = cur;
  }

  // monotone nonincreasing in s
  CHECK(poincare_partial(counts, 1.0, 20) >= poincare_partial(counts, 1.5, 20));
}

TEST_CASE("appendix1_bound direct evaluations") {
  CHECK(appendix1_bound(4, 1) == doctest::Approx(std::log(8.0) / 2.0).epsilon(1e-12));
  CHECK(appendix1_bound(4, 2) == doctest::Approx(std::log(80.0) / 4.0).epsilon(1e-12));
  CHECK(appendix1_bound(3, 1) == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-12));
  CHECK(appendix1_bound(3, 1) < std::log(2.0));
  CHECK_THROWS_AS(appendix1_bound(2, 1), Error);
  CHECK_THROWS_AS(appendix1_bound(4, 0), Error);
}

TEST_CASE("appendix2_bound direct evaluations") {
  auto b = appendix2_bound(2, 1);
  CHECK(b.alpha == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
  CHECK(b.bound == doctest::Approx(std::log(8.0) / 2.0).epsilon(1e-12));

  b = appendix2_bound(2, 2);
  CHECK(b.alpha == doctest::Approx(std::pow(80.0, 0.25)).epsilon(1e-12));
  CHECK(b.bound == doctest::Approx(std::log(80.0) / 4.0).epsilon(1e-12));

  b = appendix2_bound(3, 1);
  CHECK(b.alpha == doctest::Approx(std::sqrt(24.0)).epsilon(1e-12));
  CHECK(b.bound < std::log(5.0));

  CHECK_THROWS_AS(appendix2_bound(1, 1), Error);
  CHECK_THROWS_AS(appendix2_bound(2, 0), Error);
}

TEST_CASE("appendix bounds stay below log(2n-1) and increase in m and R") {
  // The true gap log q - bound = -log1p(-q^{-2m})/(2m) shrinks below one
  // double ulp of log q once q^{2m} * 2m passes ~1/eps; past that point the
  // correctly rounded bound equals log q and growth in m flattens.
  auto representable = [](double q, int m) {
    return std::pow(q, 2.0 * m) * (2.0 * m) < 4e15;
  };
  for (int n = 2; n <= 6; ++n) {
    const double q = 2.0 * n - 1.0;
    double prev = 0.0;
    for (int m = 1; m <= 20; ++m) {
      auto b = appendix2_bound(n, m);
      CHECK(b.bound <= std::log(q));
      CHECK(b.bound >= prev);
      if (representable(q, m)) {
        CHECK(b.bound < std::log(q));
        CHECK(b.bound > prev);
      }
      prev = b.bound;
    }
  }
  for (int d = 3; d <= 8; ++d) {
    const double q = d - 1.0;
    double prev = 0.0;
    for (int R = 1; R <= 20; ++R) {
      const double b = appendix1_bound(d, R);
      CHECK(b <= std::log(q));
      CHECK(b >= prev);
      if (representable(q, R)) {
        CHECK(b < std::log(q));
        CHECK(b > prev);
      }
      prev = b;
    }
  }
}

TEST_CASE("the two appendix proofs meet at m = R = 1") {
  CHECK(std::abs(appendix1_bound(4, 1) - appendix2_bound(2, 1).bound) < 1e-12);
}

TEST_CASE("rho evaluations") {
  CHECK(rho(GapFunctionParams(0.0, 1.0), 1.7) == doctest::Approx(1.7));  // degenerate theta
  CHECK(rho(GapFunctionParams(1.0, 1.0), 1.0) ==
        doctest::Approx(1.0 - std::log1p(std::exp(-1.0))).epsilon(1e-12));
  CHECK_THROWS_AS(GapFunctionParams(1.5, 1.0), Error);
  CHECK_THROWS_AS(GapFunctionParams(0.5, 0.0), Error);
}

TEST_CASE("rho is below the identity and strictly increasing") {
  for (double theta : {0.1, 0.5, 1.0}) {
    for (double R : {1.0, 2.0, 5.0}) {
      GapFunctionParams params(theta, R);
      double prev = rho(params, -2.0);
      for (int i = 1; i <= 400; ++i) {
        const double s = -2.0 + i * 0.02;
        const double v = rho(params, s);
        CHECK(v < s);
        CHECK(v > prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("rho increments obey the slope bound where sR >= ln 3") {
  // rho'(s) = 1 + theta R / (1 + e^{sR}) <= 1 + theta R / 4 once sR >= ln 3
  for (double theta : {0.25, 1.0}) {
    for (double R : {1.0, 2.0, 5.0}) {
      GapFunctionParams params(theta, R);
      for (int i = 0; i < 200; ++i) {
        const double s1 = 1.2 + i * 0.02;
        const double s2 = s1 + 0.02;
        const double diff = rho(params, s2) - rho(params, s1);
        CHECK(diff > 0.0);
        CHECK(diff <= (s2 - s1) * (1.0 + theta * R / 4.0));
      }
    }
  }
}

TEST_CASE("find_gap_omega") {
  GapFunctionParams params(1.0, 1.0);
  auto gap = find_gap_omega(params, 1.0);
  CHECK(gap.omega_prime > 1.0);
  CHECK(gap.omega_prime < 2.0);
  CHECK(rho(params, gap.omega_prime) < 1.0);
  CHECK(gap.margin == doctest::Approx(1.0 - rho(params, gap.omega_prime)).epsilon(1e-12));

  GapFunctionParams tiny(1e-6, 1.0);
  auto small = find_gap_omega(tiny, 1.0);
  CHECK(small.omega_prime - 1.0 < 1e-5);
  CHECK(rho(tiny, small.omega_prime) < 1.0);

  auto zero = find_gap_omega(params, 0.0);
  CHECK(zero.omega_prime > 0.0);
  CHECK(rho(params, zero.omega_prime) < 0.0);
  CHECK(zero.margin > 0.0);
}

TEST_CASE("find_gap_omega post-hoc property on random parameters") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> theta_dist(0.01, 1.0);
  std::uniform_real_distribution<double> r_dist(1.0, 10.0);
  std::uniform_real_distribution<double> omega_dist(0.0, 2.0);
  for (int t = 0; t < 200; ++t) {
    GapFunctionParams params(theta_dist(rng), r_dist(rng));
    const double omega = omega_dist(rng);
    auto gap = find_gap_omega(params, omega);
    CHECK(gap.omega_prime > omega);
    CHECK(rho(params, gap.omega_prime) < omega);
    CHECK(gap.margin > 0.0);
  }
}

TEST_CASE("certify_gap on the Z kernel") {
  auto g = from_abelianization(kRank2, {{1}, {0}});
  auto cert = certify_gap(*g, 8);
  CHECK(cert.holds_hypothesis);
  CHECK_FALSE(cert.inconclusive);
  CHECK(cert.m == 1);
  CHECK(cert.bound == doctest::Approx(std::log(8.0) / 2.0).epsilon(1e-12));
  CHECK(cert.bound < cert.omega_free);
  CHECK(cert.empirical_rate.rate < cert.bound);
}

TEST_CASE("certify_gap on the Z/2 * Z/3 kernel") {
  auto g = from_free_product(kRank2, {2, 3});
  auto cert = certify_gap(*g, 10);
  CHECK(cert.holds_hypothesis);
  CHECK(cert.m == 1);
  CHECK(cert.empirical_rate.rate < cert.bound);
}

TEST_CASE("certify_gap is inconclusive on the tree") {
  auto g = trivial_subgroup_graph(kRank2);
  auto cert = certify_gap(*g, 8);
  CHECK_FALSE(cert.holds_hypothesis);
  CHECK(cert.inconclusive);
  CHECK(cert.audited_vertices == 0);
}

TEST_CASE("verify_inequalities on the finite-index boundary case") {
  auto omega_G = exact_rate_estimate(kLog3, "free group");
  auto omega_quot = exact_rate_estimate(0.0, "finite quotient");
  auto omega_H = exact_rate_estimate(kLog3, "finite index subgroup");
  auto report = verify_inequalities(omega_G, omega_quot, omega_H, 0.05, 0.0);
  CHECK(report.rate_sum.holds);
  CHECK(report.rate_sum.slack == doctest::Approx(0.0));
  CHECK(report.half.holds);
  CHECK(report.gap.holds);
}

TEST_CASE("verify_inequalities without a certificate flags the gap verdict") {
  auto omega_G = exact_rate_estimate(kLog3, "free group");
  auto omega_quot = exact_rate_estimate(kLog3, "tree quotient");
  auto omega_H = exact_rate_estimate(0.0, "trivial subgroup");
  auto report = verify_inequalities(omega_G, omega_quot, omega_H, 0.05, std::nullopt);
  CHECK_FALSE(report.gap.holds);
  CHECK_FALSE(report.rate_sum.holds);
}
