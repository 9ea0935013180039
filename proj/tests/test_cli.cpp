#include "sgt/cli.hpp"

#include <doctest.h>

#include <cmath>

#include "sgt/errors.hpp"

using namespace sgt;

namespace {

RunConfig z_kernel_config(int radius) {
  RunConfig c;
  c.backend.kind = "abelianization";
  c.backend.weights = {{1}, {0}};
  c.rank = 2;
  c.radius = radius;
  c.p_literals = {"b"};
  return c;
}

RunConfig z2z3_config(int radius) {
  RunConfig c;
  c.backend.kind = "free-product";
  c.backend.orders = {2, 3};
  c.rank = 2;
  c.radius = radius;
  c.p_literals = {"aa", "bbb"};
  return c;
}

}  // namespace

TEST_CASE("parse_config") {
  auto doc = ordered_json::parse(R"({
    "backend": {"kind": "abelianization", "weights": [[1],[0]]},
    "rank": 2, "radius": 12, "p": ["b"], "g": "aaa", "piece_len": 1,
    "s": [1.0, 2.0], "tol": 0.01, "budget": 1000, "seed": 7, "log2": true
  })");
  auto c = parse_config(doc);
  CHECK(c.backend.kind == "abelianization");
  CHECK(c.radius == 12);
  CHECK(c.p_literals == std::vector<std::string>{"b"});
  CHECK(c.s_values == std::vector<double>{1.0, 2.0});
  CHECK(c.seed == std::uint64_t{7});
  CHECK(c.log2);
}

TEST_CASE("parse_config rejects unknown fields and bad values") {
  CHECK_THROWS_AS(parse_config(ordered_json::parse(R"({"radiu": 3})")), Error);
  CHECK_THROWS_AS(parse_config(ordered_json::parse(R"({"radius": 0})")), Error);
  CHECK_THROWS_AS(parse_config(ordered_json::parse(R"([1,2])")), Error);
}

TEST_CASE("build_graph validates word literals through commands") {
  auto c = z_kernel_config(6);
  c.p_literals = {"q"};  // outside rank 2
  CHECK_THROWS_AS(run_certify(c), Error);
}

TEST_CASE("analyze on the Z kernel") {
  auto result = run_analyze(z_kernel_config(12));
  CHECK(result.exit_code == 0);
  const auto& report = result.report;
  CHECK(report.at("ball").at("sphere_counts")[5] == 2);
  CHECK(report.at("quotient_rate").at("rate").get<double>() < 0.2);
  // the negligible-growth ratio decreases monotonically
  CHECK(report.at("negligible_ratio").at("monotone_from_2").get<bool>());
  CHECK(report.at("negligible_ratio").at("final").get<double>() < 1e-3);
}

TEST_CASE("analyze on the tree: growth tightness fails for H = 1") {
  RunConfig c;
  c.backend.kind = "trivial";
  c.radius = 8;
  auto result = run_analyze(c);
  const double rate = result.report.at("quotient_rate").at("rate").get<double>();
  CHECK(std::abs(rate - std::log(3.0)) < 0.02);
  // ratio sequence stays bounded away from zero
  CHECK(result.report.at("negligible_ratio").at("final").get<double>() > 0.5);
}

TEST_CASE("analyze on a finite quotient reports finite support") {
  RunConfig c;
  c.backend.kind = "coset-table";
  c.backend.table = {{1, 2, 0}, {1, 2, 0}};
  c.radius = 8;
  auto result = run_analyze(c);
  CHECK(result.report.at("quotient_rate").at("rate").get<double>() == 0.0);
  CHECK(result.report.at("quotient_rate").at("method") == "exact-formula");
  CHECK(result.report.at("quotient_rate").at("note") == "finite support");
}

TEST_CASE("certify exits 0 on confined examples") {
  auto r1 = run_certify(z_kernel_config(10));
  CHECK(r1.exit_code == 0);
  CHECK(r1.report.at("certificate").at("bound").get<double>() ==
        doctest::Approx(std::log(8.0) / 2).epsilon(1e-9));

  auto r2 = run_certify(z2z3_config(10));
  CHECK(r2.exit_code == 0);
}

TEST_CASE("certify exits 2 with the failing vertex when confinement fails") {
  auto c = z_kernel_config(6);
  c.p_literals = {"a"};  // a shifts every vertex of the Z kernel graph
  auto result = run_certify(c);
  CHECK(result.exit_code == 2);
  CHECK_FALSE(result.report.at("confinement").at("holds").get<bool>());
  CHECK_FALSE(result.report.at("confinement").at("failing_vertex").is_null());
}

TEST_CASE("certify on the tree fails at the confinement check") {
  // H = {1} is not confined: no word labels a loop anywhere on the tree
  RunConfig c;
  c.backend.kind = "trivial";
  c.radius = 8;
  c.p_literals = {"b"};
  auto result = run_certify(c);
  CHECK(result.exit_code == 2);
  CHECK_FALSE(result.report.at("confinement").at("holds").get<bool>());
}

TEST_CASE("insert on the Z kernel") {
  auto c = z_kernel_config(10);
  c.g_literal = "aaa";
  c.piece_len = 1;
  c.f_candidate_literals = {"ab"};
  auto result = run_insert(c);
  CHECK(result.exit_code == 0);
  CHECK(result.report.at("verification").at("images") == 8);
  CHECK(result.report.at("verification").at("coset").get<bool>());
  CHECK(result.report.at("verification").at("injective").get<bool>());
}

TEST_CASE("insert of the empty word is a single-image report") {
  auto c = z_kernel_config(6);
  c.g_literal = "";
  auto result = run_insert(c);
  CHECK(result.exit_code == 0);
  CHECK(result.report.at("verification").at("images") == 1);
  CHECK(result.report.at("count_report").at("elements").get<double>() == 1.0);
}

TEST_CASE("insert with oversized m needs a seed") {
  auto c = z_kernel_config(6);
  c.g_literal = std::string(25, 'a');
  c.piece_len = 1;
  try {
    run_insert(c);
    FAIL("expected resource error");
  } catch (const Error& e) {
    CHECK(e.kind() == errc::resource);
    CHECK(std::string(e.what()).find("seed") != std::string::npos);
  }

  c.seed = 42;
  auto sampled = run_insert(c);
  CHECK(sampled.exit_code == 0);
  CHECK(sampled.report.at("verification").at("mode") == "sampled");
  CHECK(sampled.report.at("verification").at("seed") == 42);
}

TEST_CASE("verify holds on the Z kernel full run") {
  auto result = run_verify(z_kernel_config(12));
  CHECK(result.exit_code == 0);
  CHECK(result.report.at("verdicts").at("rate_sum").at("holds").get<bool>());
  CHECK(result.report.at("verdicts").at("gap").at("holds").get<bool>());
  CHECK(result.report.at("verdicts").at("half").at("holds").get<bool>());
}

TEST_CASE("verify on the finite-index case sits at the rate-sum boundary") {
  RunConfig c;
  c.backend.kind = "coset-table";
  c.backend.table = {{1, 0}, {1, 0}};
  c.radius = 13;
  c.p_literals = {"ab"};  // ab is trivial in Z/2, loops everywhere
  auto result = run_verify(c);
  const double slack = result.report.at("verdicts").at("rate_sum").at("slack").get<double>();
  CHECK(std::abs(slack) <= 0.05);
  // finite quotient: omega_{G/H} = 0 exactly
  CHECK(result.report.at("estimates").at("omega_quot").at("rate").get<double>() == 0.0);
}

TEST_CASE("verify fails with a clear note on the tree") {
  RunConfig c;
  c.backend.kind = "trivial";
  c.radius = 8;
  auto result = run_verify(c);
  CHECK(result.exit_code == 2);
  CHECK_FALSE(result.report.at("verdicts").at("gap").at("holds").get<bool>());
  const std::string note = result.report.at("verdicts").at("gap").at("note").get<std::string>();
  CHECK(note.find("hypothesis not met") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  auto a = run_analyze(z_kernel_config(10));
  auto b = run_analyze(z_kernel_config(10));
  CHECK(a.report.dump(2) == b.report.dump(2));

  auto c = run_verify(z2z3_config(10));
  auto d = run_verify(z2z3_config(10));
  CHECK(c.report.dump(2) == d.report.dump(2));
}

TEST_CASE("round12 formats reals deterministically") {
  CHECK(round12(0.0) == 0.0);
  CHECK(round12(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-13));
  CHECK(round12(std::log(3.0)) == round12(round12(std::log(3.0))));
}
