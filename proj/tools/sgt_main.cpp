#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgt/cli.hpp"
#include "sgt/errors.hpp"

namespace {

int exit_code_for(sgt::errc kind) {
  switch (kind) {
    case sgt::errc::input:
    case sgt::errc::validation: return 3;
    case sgt::errc::resource: return 4;
    case sgt::errc::hypothesis: return 2;
    case sgt::errc::state: return 1;
  }
  return 1;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, sep)) out.push_back(item);
  return out;
}

// "1,0;0,1" -> one integer vector per generator
std::vector<std::vector<std::int64_t>> parse_weights(const std::string& text) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& row : split(text, ';')) {
    std::vector<std::int64_t> vec;
    for (const auto& num : split(row, ',')) vec.push_back(std::stoll(num));
    out.push_back(vec);
  }
  return out;
}

// "2,3" with "inf" or "0" for an infinite factor
std::vector<std::optional<int>> parse_orders(const std::string& text) {
  std::vector<std::optional<int>> out;
  for (const auto& item : split(text, ',')) {
    if (item == "inf" || item == "0")
      out.push_back(std::nullopt);
    else
      out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> parse_table(const std::string& text) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& row : split(text, ';')) {
    std::vector<std::uint32_t> col;
    for (const auto& num : split(row, ',')) col.push_back(static_cast<std::uint32_t>(std::stoul(num)));
    out.push_back(col);
  }
  return out;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(std::stod(item));
  return out;
}

struct FlagValues {
  std::string config_path, backend, weights, orders, table, graph, p, g, f_candidates, s, out;
  int rank = -1, radius = -1, piece_len = -1, root = -1;
  double tol = -1.0;
  std::int64_t budget = -1, seed = -1;
  bool log2 = false;
};

sgt::RunConfig merge_config(const FlagValues& flags) {
  sgt::RunConfig config;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw sgt::input_error("cannot open config file " + flags.config_path);
    sgt::ordered_json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw sgt::input_error(flags.config_path + ": JSON parse error: " + e.what());
    }
    config = sgt::parse_config(doc);
  }
  // flags win over config-file values
  if (!flags.backend.empty()) config.backend.kind = flags.backend;
  if (!flags.weights.empty()) config.backend.weights = parse_weights(flags.weights);
  if (!flags.orders.empty()) config.backend.orders = parse_orders(flags.orders);
  if (!flags.table.empty()) config.backend.table = parse_table(flags.table);
  if (!flags.graph.empty()) {
    config.backend.kind = "file";
    config.backend.path = flags.graph;
  }
  if (flags.root >= 0) config.backend.root = static_cast<std::uint32_t>(flags.root);
  if (flags.rank >= 0) config.rank = flags.rank;
  if (flags.radius >= 0) config.radius = flags.radius;
  if (!flags.p.empty()) config.p_literals = split(flags.p, ',');
  if (!flags.g.empty()) config.g_literal = flags.g;
  if (flags.piece_len >= 0) config.piece_len = flags.piece_len;
  if (!flags.f_candidates.empty()) config.f_candidate_literals = split(flags.f_candidates, ',');
  if (!flags.s.empty()) config.s_values = parse_reals(flags.s);
  if (flags.tol >= 0) config.tol = flags.tol;
  if (flags.budget >= 0) config.budget = static_cast<std::uint64_t>(flags.budget);
  if (flags.seed >= 0) config.seed = static_cast<std::uint64_t>(flags.seed);
  if (!flags.out.empty()) config.out_path = flags.out;
  if (flags.log2) config.log2 = true;

  if (config.radius < 1) throw sgt::input_error("radius must be >= 1");
  if (config.rank < 1) throw sgt::input_error("rank must be >= 1");
  return config;
}

void add_common_flags(CLI::App* cmd, FlagValues& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file; flags override its fields");
  cmd->add_option("--backend", flags.backend,
                  "trivial | coset-table | abelianization | free-product | file");
  cmd->add_option("--weights", flags.weights,
                  "abelianization weights, e.g. \"1;0\" or \"1,0;0,1\"");
  cmd->add_option("--orders", flags.orders, "free-product factor orders, e.g. \"2,3\" (inf = Z)");
  cmd->add_option("--table", flags.table, "coset table, one permutation per generator: \"1,0;1,0\"");
  cmd->add_option("--root", flags.root, "root vertex for table backends");
  cmd->add_option("--graph", flags.graph, "JSON edge-list graph file (implies --backend file)");
  cmd->add_option("--rank", flags.rank, "free group rank n");
  cmd->add_option("--radius", flags.radius, "verification radius");
  cmd->add_option("--p", flags.p, "confining set, comma-separated word literals");
  cmd->add_option("--g", flags.g, "coset representative word literal");
  cmd->add_option("--piece-len", flags.piece_len, "decomposition piece length L");
  cmd->add_option("--f-candidates", flags.f_candidates, "insertion candidates, comma-separated");
  cmd->add_option("--s", flags.s, "Poincare series evaluation points, comma-separated");
  cmd->add_option("--tol", flags.tol, "inequality tolerance");
  cmd->add_option("--budget", flags.budget, "vertex/word materialization budget");
  cmd->add_option("--seed", flags.seed, "seed for sampled verification");
  cmd->add_option("--out", flags.out, "report output path (default stdout)");
  cmd->add_flag("--log2", flags.log2, "also report rates in bits (log base 2)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schreier graph growth toolkit: growth rates, gap certificates and "
               "coset-insertion verification for confined subgroups of free groups"};
  app.require_subcommand(1);

  FlagValues flags;
  CLI::App* analyze = app.add_subcommand("analyze", "ball counts, growth estimates, Poincare sums");
  CLI::App* certify = app.add_subcommand("certify", "confinement check plus growth-gap certificate");
  CLI::App* insert = app.add_subcommand("insert", "build and verify a coset-insertion scheme");
  CLI::App* verify = app.add_subcommand("verify", "three-way growth inequality verdicts");
  for (CLI::App* cmd : {analyze, certify, insert, verify}) add_common_flags(cmd, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    sgt::RunConfig config = merge_config(flags);
    sgt::CommandResult result;
    if (analyze->parsed())
      result = sgt::run_analyze(config);
    else if (certify->parsed())
      result = sgt::run_certify(config);
    else if (insert->parsed())
      result = sgt::run_insert(config);
    else
      result = sgt::run_verify(config);
    sgt::write_report(result.report, config.out_path);
    return result.exit_code;
  } catch (const sgt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
