#ifndef SGT_CLI_HPP
#define SGT_CLI_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgt/schreier.hpp"

namespace sgt {

using ordered_json = nlohmann::ordered_json;

struct BackendSpec {
  std::string kind = "trivial";  // trivial | coset-table | abelianization | free-product | file
  std::vector<std::vector<std::int64_t>> weights;   // abelianization
  std::vector<std::optional<int>> orders;           // free-product; nullopt = infinite factor
  std::vector<std::vector<std::uint32_t>> table;    // coset-table, one column per generator
  std::uint32_t root = 0;
  std::string path;                                 // file backend
};

struct RunConfig {
  BackendSpec backend;
  int rank = 2;
  int radius = 10;
  std::vector<std::string> p_literals;
  std::string g_literal;
  int piece_len = 1;
  std::vector<std::string> f_candidate_literals;  // empty = rank-derived default
  std::vector<double> s_values = {1.0};
  double tol = 0.05;
  std::uint64_t budget = kDefaultVertexBudget;
  std::optional<std::uint64_t> seed;
  std::string out_path;  // empty = stdout
  bool log2 = false;
};

// Reads the JSON config-file fields; unknown fields are rejected.
RunConfig parse_config(const ordered_json& doc);

std::unique_ptr<CosetGraph> build_graph(const RunConfig& config);

// Parsed confining set / F-candidates; defaults applied where documented.
std::vector<ReducedWord> parse_word_list(const Alphabet& a, const std::vector<std::string>& lits);
std::vector<ReducedWord> default_f_candidates(const Alphabet& a);

struct CommandResult {
  ordered_json report;
  int exit_code = 0;
};

CommandResult run_analyze(const RunConfig& config);
CommandResult run_certify(const RunConfig& config);
CommandResult run_insert(const RunConfig& config);
CommandResult run_verify(const RunConfig& config);

// Reals in reports are rounded to 12 significant digits so identical configs
// give byte-identical files.
double round12(double x);

void write_report(const ordered_json& report, const std::string& out_path);

}  // namespace sgt

#endif  // SGT_CLI_HPP
