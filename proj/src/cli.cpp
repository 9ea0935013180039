#include "sgt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "sgt/errors.hpp"
#include "sgt/growth.hpp"
#include "sgt/insertion.hpp"

namespace sgt {
namespace {

const char* kConfigFields[] = {"backend", "rank",   "radius", "p",   "g",
                               "piece_len", "f_candidates", "s",      "tol", "budget",
                               "seed",      "out",          "log2"};

double json_real(const ordered_json& v, const char* name) {
  if (!v.is_number()) throw input_error(std::string("config field ") + name + " must be a number");
  return v.get<double>();
}

ordered_json estimate_json(const GrowthEstimate& est, bool log2) {
  ordered_json out;
  out["rate"] = round12(est.rate);
  if (log2) out["rate_log2"] = round12(est.rate / std::log(2.0));
  out["stderr"] = round12(est.std_error);
  out["method"] = rate_method_name(est.method);
  out["window"] = {est.window.lo, est.window.hi};
  out["note"] = est.note;
  ordered_json per_k = ordered_json::array();
  for (double v : est.per_k)
    per_k.push_back(std::isnan(v) ? ordered_json() : ordered_json(round12(v)));
  out["per_k"] = per_k;
  out["max_per_k"] = std::isfinite(est.max_per_k) ? ordered_json(round12(est.max_per_k))
                                                  : ordered_json();
  return out;
}

ordered_json backend_json(const BackendSpec& spec) {
  ordered_json out;
  out["kind"] = spec.kind;
  if (spec.kind == "abelianization") out["weights"] = spec.weights;
  if (spec.kind == "free-product") {
    ordered_json orders = ordered_json::array();
    for (const auto& o : spec.orders) orders.push_back(o ? ordered_json(*o) : ordered_json());
    out["orders"] = orders;
  }
  if (spec.kind == "coset-table") {
    out["table"] = spec.table;
    out["root"] = spec.root;
  }
  if (spec.kind == "file") out["path"] = spec.path;
  return out;
}

ordered_json config_json(const RunConfig& c) {
  ordered_json out;
  out["backend"] = backend_json(c.backend);
  out["rank"] = c.rank;
  out["radius"] = c.radius;
  out["p"] = c.p_literals;
  out["g"] = c.g_literal;
  out["piece_len"] = c.piece_len;
  out["f_candidates"] = c.f_candidate_literals;
  ordered_json svals = ordered_json::array();
  for (double s : c.s_values) svals.push_back(round12(s));
  out["s"] = svals;
  out["tol"] = round12(c.tol);
  out["budget"] = c.budget;
  out["seed"] = c.seed ? ordered_json(*c.seed) : ordered_json();
  out["log2"] = c.log2;
  return out;
}

ordered_json verdict_json(const Verdict& v) {
  ordered_json out;
  out["holds"] = v.holds;
  out["slack"] = std::isfinite(v.slack) ? ordered_json(round12(v.slack)) : ordered_json();
  out["note"] = v.note;
  return out;
}

ordered_json certificate_json(const GapCertificate& cert, bool log2) {
  ordered_json out;
  out["n"] = cert.n;
  out["m"] = cert.m;
  out["alpha"] = std::isfinite(cert.alpha) ? ordered_json(round12(cert.alpha)) : ordered_json();
  out["bound"] = std::isfinite(cert.bound) ? ordered_json(round12(cert.bound)) : ordered_json();
  out["omega_free"] = round12(cert.omega_free);
  out["radius_verified"] = cert.radius_verified;
  out["holds_hypothesis"] = cert.holds_hypothesis;
  out["inconclusive"] = cert.inconclusive;
  out["audited_vertices"] = cert.audited_vertices;
  out["uncertified_vertices"] = cert.uncertified_vertices;
  out["max_tree_ball_radius"] = cert.max_tree_ball_radius;
  // the audit certifies the absence of embedded tree-balls (isomorphic
  // subgraphs), not the isometric-subgraph variant
  out["criterion"] = "acyclic-ball (no embedded tree-ball of radius m)";
  out["note"] = cert.note;
  out["empirical_rate"] = estimate_json(cert.empirical_rate, log2);
  return out;
}

struct VerifyInputs {
  GrowthEstimate omega_G;
  GrowthEstimate omega_quot;
  GrowthEstimate omega_H;
  std::optional<double> bound;
  std::string bound_note;
  ordered_json certificate;  // may be null
};

VerifyInputs gather_estimates(const RunConfig& config, const CosetGraph& graph, bool log2) {
  VerifyInputs in;
  const int n = graph.alphabet().rank();
  in.omega_G = exact_rate_estimate(std::log(2.0 * n - 1.0), "free group F_" + std::to_string(n));

  BallTable ball = bfs_ball(graph, config.radius, config.budget);
  in.omega_quot = quotient_rate_estimate(ball);
  in.omega_H = estimate_subgroup_rate(loop_counts(graph, config.radius, config.budget));

  in.certificate = ordered_json();
  if (!config.p_literals.empty()) {
    const auto P = parse_word_list(graph.alphabet(), config.p_literals);
    ConfinementReport conf = confinement_check(graph, P, config.radius, config.budget);
    if (conf.holds) {
      GapCertificate cert = certify_gap(graph, config.radius, config.budget);
      in.certificate = certificate_json(cert, log2);
      if (cert.holds_hypothesis)
        in.bound = cert.bound;
      else
        in.bound_note = "certificate inconclusive: " + cert.note;
    } else {
      in.bound_note = "confinement fails at vertex " +
                      graph.vertex_label(*conf.failing_vertex);
    }
  } else {
    in.bound_note = "no confining set supplied";
  }
  return in;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

RunConfig parse_config(const ordered_json& doc) {
  if (!doc.is_object()) throw input_error("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    bool known = false;
    for (const char* f : kConfigFields) known = known || key == f;
    if (!known) throw input_error("unknown config field \"" + key + "\"");
  }

  RunConfig c;
  if (doc.contains("rank")) c.rank = doc.at("rank").get<int>();
  if (doc.contains("radius")) c.radius = doc.at("radius").get<int>();
  if (doc.contains("backend")) {
    const auto& b = doc.at("backend");
    c.backend.kind = b.value("kind", std::string("trivial"));
    if (b.contains("weights"))
      c.backend.weights = b.at("weights").get<std::vector<std::vector<std::int64_t>>>();
    if (b.contains("orders")) {
      for (const auto& o : b.at("orders"))
        c.backend.orders.push_back(o.is_null() ? std::optional<int>()
                                               : std::optional<int>(o.get<int>()));
    }
    if (b.contains("table"))
      c.backend.table = b.at("table").get<std::vector<std::vector<std::uint32_t>>>();
    if (b.contains("root")) c.backend.root = b.at("root").get<std::uint32_t>();
    if (b.contains("path")) c.backend.path = b.at("path").get<std::string>();
  }
  if (doc.contains("p")) c.p_literals = doc.at("p").get<std::vector<std::string>>();
  if (doc.contains("g")) c.g_literal = doc.at("g").get<std::string>();
  if (doc.contains("piece_len")) c.piece_len = doc.at("piece_len").get<int>();
  if (doc.contains("f_candidates"))
    c.f_candidate_literals = doc.at("f_candidates").get<std::vector<std::string>>();
  if (doc.contains("s")) {
    c.s_values.clear();
    for (const auto& v : doc.at("s")) c.s_values.push_back(json_real(v, "s"));
  }
  if (doc.contains("tol")) c.tol = json_real(doc.at("tol"), "tol");
  if (doc.contains("budget")) c.budget = doc.at("budget").get<std::uint64_t>();
  if (doc.contains("seed") && !doc.at("seed").is_null())
    c.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("out")) c.out_path = doc.at("out").get<std::string>();
  if (doc.contains("log2")) c.log2 = doc.at("log2").get<bool>();

  if (c.radius < 1) throw input_error("radius must be >= 1");
  if (c.rank < 1) throw input_error("rank must be >= 1");
  return c;
}

std::unique_ptr<CosetGraph> build_graph(const RunConfig& config) {
  const Alphabet alphabet(config.rank);
  const std::string& kind = config.backend.kind;
  if (kind == "trivial") return trivial_subgroup_graph(alphabet);
  if (kind == "abelianization") return from_abelianization(alphabet, config.backend.weights);
  if (kind == "free-product") return from_free_product(alphabet, config.backend.orders);
  if (kind == "coset-table")
    return from_coset_table(alphabet, config.backend.table, config.backend.root);
  if (kind == "file") {
    if (config.backend.path.empty()) throw input_error("file backend needs a graph path");
    return from_edge_list_file(config.backend.path);
  }
  throw input_error("unknown backend kind \"" + kind + "\"");
}

std::vector<ReducedWord> parse_word_list(const Alphabet& a,
                                         const std::vector<std::string>& lits) {
  std::vector<ReducedWord> out;
  out.reserve(lits.size());
  for (const auto& lit : lits) out.push_back(ReducedWord::parse(a, lit));
  return out;
}

std::vector<ReducedWord> default_f_candidates(const Alphabet& a) {
  std::vector<ReducedWord> out;
  if (a.rank() == 1) {
    out.push_back(ReducedWord::parse(a, "aa"));
    return out;
  }
  if (a.rank() == 2) return parse_word_list(a, {"ab", "aB", "aab"});
  for (int i = 1; i <= a.rank(); ++i)
    for (int j = i + 1; j <= a.rank(); ++j) {
      std::vector<Letter> w{i, j};
      out.push_back(ReducedWord::reduce(a, w));
    }
  return out;
}

CommandResult run_analyze(const RunConfig& config) {
  auto graph = build_graph(config);
  BallTable ball = bfs_ball(*graph, config.radius, config.budget);
  const auto& sphere_counts = ball.counts;
  const auto ball_counts = ball.ball_counts();

  GrowthEstimate quot = quotient_rate_estimate(ball);
  std::vector<std::uint64_t> loops = loop_counts(*graph, config.radius, config.budget);
  GrowthEstimate sub = estimate_subgroup_rate(loops);

  const int n = graph->alphabet().rank();
  const double omega_free = std::log(2.0 * n - 1.0);

  ordered_json report;
  report["command"] = "analyze";
  report["config"] = config_json(config);
  report["backend"] = backend_name(graph->backend());
  ordered_json ball_json;
  ball_json["radius"] = ball.radius;
  ball_json["sphere_counts"] = sphere_counts;
  ball_json["ball_counts"] = ball_counts;
  report["ball"] = ball_json;
  report["quotient_rate"] = estimate_json(quot, config.log2);
  report["loop_counts"] = loops;
  report["subgroup_rate"] = estimate_json(sub, config.log2);

  ordered_json poincare = ordered_json::array();
  for (double s : config.s_values) {
    ordered_json row;
    row["s"] = round12(s);
    row["depth"] = ball.radius;
    row["partial_sum"] = round12(poincare_partial(sphere_counts, s, ball.radius));
    poincare.push_back(row);
  }
  report["poincare"] = poincare;

  ordered_json ratio;
  ratio["omega_free"] = round12(omega_free);
  ordered_json values = ordered_json::array();
  bool monotone = true;
  double prev = 0.0;
  for (std::size_t k = 0; k < ball_counts.size(); ++k) {
    const double r = static_cast<double>(ball_counts[k]) * std::exp(-omega_free * k);
    values.push_back(round12(r));
    if (k >= 3 && r > prev) monotone = false;
    prev = r;
  }
  ratio["values"] = values;
  ratio["monotone_from_2"] = monotone;
  ratio["final"] = values.empty() ? ordered_json() : values.back();
  report["negligible_ratio"] = ratio;

  return CommandResult{std::move(report), 0};
}

CommandResult run_certify(const RunConfig& config) {
  auto graph = build_graph(config);
  if (config.p_literals.empty()) throw input_error("certify needs a confining set --p");
  const auto P = parse_word_list(graph->alphabet(), config.p_literals);

  ordered_json report;
  report["command"] = "certify";
  report["config"] = config_json(config);
  report["backend"] = backend_name(graph->backend());

  ConfinementReport conf = confinement_check(*graph, P, config.radius, config.budget);
  ordered_json conf_json;
  conf_json["holds"] = conf.holds;
  conf_json["radius"] = conf.radius;
  std::vector<std::uint64_t> witness_counts(P.size(), 0);
  for (const auto& [v, idx] : conf.witness) {
    (void)v;
    ++witness_counts[idx];
  }
  conf_json["witness_counts"] = witness_counts;
  conf_json["failing_vertex"] = conf.failing_vertex
                                    ? ordered_json(graph->vertex_label(*conf.failing_vertex))
                                    : ordered_json();
  report["confinement"] = conf_json;

  if (!conf.holds) {
    report["certificate"] = ordered_json();
    report["certified"] = false;
    return CommandResult{std::move(report), 2};
  }

  GapCertificate cert = certify_gap(*graph, config.radius, config.budget);
  report["certificate"] = certificate_json(cert, config.log2);
  const bool rate_ok =
      cert.holds_hypothesis &&
      cert.empirical_rate.rate <= cert.bound + 2.0 * cert.empirical_rate.std_error;
  report["certified"] = rate_ok;
  return CommandResult{std::move(report), rate_ok ? 0 : 2};
}

CommandResult run_insert(const RunConfig& config) {
  auto graph = build_graph(config);
  const Alphabet& alphabet = graph->alphabet();
  if (config.p_literals.empty()) throw input_error("insert needs a confining set --p");
  const auto P = parse_word_list(alphabet, config.p_literals);
  const auto F = config.f_candidate_literals.empty()
                     ? default_f_candidates(alphabet)
                     : parse_word_list(alphabet, config.f_candidate_literals);
  const ReducedWord g = ReducedWord::parse(alphabet, config.g_literal);

  Decomposition d = decompose(g, config.piece_len);
  InsertionScheme scheme = choose_insertions(d, *graph, P, F);

  ordered_json report;
  report["command"] = "insert";
  report["config"] = config_json(config);

  ordered_json scheme_json;
  scheme_json["g"] = g.str();
  scheme_json["norm_g"] = g.length();
  scheme_json["piece_len"] = config.piece_len;
  scheme_json["m"] = d.size();
  ordered_json pieces = ordered_json::array();
  for (const auto& s : d.pieces) pieces.push_back(s.str());
  scheme_json["pieces"] = pieces;
  ordered_json blocks = ordered_json::array();
  for (std::size_t i = 0; i < scheme.blocks.size(); ++i) {
    const auto& b = scheme.blocks[i];
    ordered_json bj;
    bj["position"] = i + 1;
    bj["f"] = b.f.str();
    bj["p"] = b.p.str();
    bj["block"] = b.block.str();
    bj["survival"] = b.survival;
    blocks.push_back(bj);
  }
  scheme_json["blocks"] = blocks;
  scheme_json["R"] = scheme.R;
  scheme_json["max_block_length"] = scheme.max_block_length;
  scheme_json["survival_margin"] = scheme.survival_margin;
  scheme_json["theta"] = round12(scheme.theta());
  report["scheme"] = scheme_json;

  ordered_json verification;
  bool coset_ok = false, injective_ok = false;
  const std::size_t m = d.size();
  if (static_cast<int>(m) <= kExhaustiveImageLimit) {
    std::vector<PhiImage> images = generate_images(scheme);
    coset_ok = verify_coset(scheme, images);
    Collision collision;
    injective_ok = verify_injective(scheme, images, &collision);
    std::size_t max_len = 0;
    bool length_ok = true;
    for (const auto& img : images) {
      max_len = std::max(max_len, img.length);
      std::size_t ones = 0;
      for (bool b : img.epsilon) ones += b;
      length_ok = length_ok &&
                  img.length <= g.length() + static_cast<std::size_t>(scheme.R) * ones;
    }
    verification["mode"] = "exhaustive";
    verification["images"] = images.size();
    verification["coset"] = coset_ok;
    verification["injective"] = injective_ok;
    verification["max_length"] = max_len;
    verification["length_bound_ok"] = length_ok;
    if (!injective_ok) {
      ordered_json col;
      col["first"] = collision.first;
      col["second"] = collision.second;
      col["differing_index"] = collision.differing_index;
      verification["collision"] = col;
    }
  } else {
    if (!config.seed)
      throw resource_error("2^" + std::to_string(m) +
                           " images exceed the exhaustive budget (m <= " +
                           std::to_string(kExhaustiveImageLimit) +
                           "); pass --seed to use sampled mode");
    SampledVerification sampled = verify_sampled(scheme, *config.seed);
    coset_ok = sampled.coset_ok;
    injective_ok = sampled.injective_ok;
    verification["mode"] = "sampled";
    verification["seed"] = sampled.seed;
    verification["pairs"] = sampled.pairs;
    verification["coset"] = coset_ok;
    verification["injective"] = injective_ok;
    verification["max_length"] = sampled.max_length;
    verification["length_bound_ok"] = true;  // enforced per image inside phi
  }
  report["verification"] = verification;

  if (coset_ok && injective_ok) {
    CountReport count = exponential_count_report(scheme, coset_ok, injective_ok, config.s_values);
    ordered_json cj;
    cj["m"] = count.m;
    cj["elements"] = round12(count.elements);
    cj["max_length_bound"] = count.max_length_bound;
    cj["theta"] = round12(count.theta);
    ordered_json factors = ordered_json::array();
    for (const auto& [s, factor] : count.factors) {
      ordered_json fj;
      fj["s"] = round12(s);
      fj["factor"] = round12(factor);
      factors.push_back(fj);
    }
    cj["factors"] = factors;
    report["count_report"] = cj;
  } else {
    report["count_report"] = ordered_json();
  }
  return CommandResult{std::move(report), (coset_ok && injective_ok) ? 0 : 2};
}

CommandResult run_verify(const RunConfig& config) {
  auto graph = build_graph(config);
  VerifyInputs in = gather_estimates(config, *graph, config.log2);
  InequalityReport ineq =
      verify_inequalities(in.omega_G, in.omega_quot, in.omega_H, config.tol, in.bound);
  if (!in.bound && !in.bound_note.empty()) ineq.gap.note = "hypothesis not met: " + in.bound_note;

  ordered_json report;
  report["command"] = "verify";
  report["config"] = config_json(config);
  report["backend"] = backend_name(graph->backend());
  ordered_json estimates;
  estimates["omega_G"] = estimate_json(in.omega_G, config.log2);
  estimates["omega_quot"] = estimate_json(in.omega_quot, config.log2);
  estimates["omega_H"] = estimate_json(in.omega_H, config.log2);
  report["estimates"] = estimates;
  report["certificate"] = in.certificate;
  report["certified_bound"] = in.bound ? ordered_json(round12(*in.bound)) : ordered_json();
  report["tol"] = round12(config.tol);
  ordered_json verdicts;
  verdicts["rate_sum"] = verdict_json(ineq.rate_sum);
  verdicts["gap"] = verdict_json(ineq.gap);
  verdicts["half"] = verdict_json(ineq.half);
  report["verdicts"] = verdicts;

  const bool all = ineq.rate_sum.holds && ineq.gap.holds && ineq.half.holds;
  report["all_hold"] = all;
  return CommandResult{std::move(report), all ? 0 : 2};
}

void write_report(const ordered_json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw input_error("cannot open output file " + out_path);
  out << text;
}

}  // namespace sgt
