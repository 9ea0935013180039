#include "sgt/schreier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "sgt/errors.hpp"

namespace sgt {
namespace {

std::size_t letter_index(Letter l) {
  return 2 * static_cast<std::size_t>(std::abs(l) - 1) + (l < 0 ? 1 : 0);
}

// Dense-id interner for backends with structured vertices.
template <typename Key, typename Hash = std::hash<Key>>
class Interner {
 public:
  VertexId id_of(const Key& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    VertexId id = keys_.size();
    keys_.push_back(key);
    ids_.emplace(keys_.back(), id);
    return id;
  }

  Key key_of(VertexId id) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return keys_.at(id);
  }

 private:
  mutable std::mutex mutex_;
  std::vector<Key> keys_;
  std::unordered_map<Key, VertexId, Hash> ids_;
};

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

class CosetTableGraph final : public CosetGraph {
 public:
  CosetTableGraph(const Alphabet& a, BackendKind kind,
                  std::vector<std::vector<std::uint32_t>> forward, std::uint32_t root,
                  std::vector<std::string> labels = {})
      : CosetGraph(a, kind), forward_(std::move(forward)), labels_(std::move(labels)) {
    const std::size_t n_vertices = forward_.empty() ? 0 : forward_[0].size();
    if (root >= n_vertices) throw input_error("root vertex out of range");
    root_ = root;
    backward_.assign(forward_.size(), std::vector<std::uint32_t>(n_vertices, 0));
    for (std::size_t i = 0; i < forward_.size(); ++i) {
      std::vector<bool> hit(n_vertices, false);
      for (std::size_t v = 0; v < n_vertices; ++v) {
        std::uint32_t w = forward_[i][v];
        if (w >= n_vertices || hit[w])
          throw validation_error("generator x" + std::to_string(i + 1) +
                                 " does not act by a permutation at vertex " + std::to_string(v));
        hit[w] = true;
        backward_[i][w] = static_cast<std::uint32_t>(v);
      }
    }
  }

  VertexId step(VertexId v, Letter s) const override {
    const auto& col = s > 0 ? forward_[s - 1] : backward_[-s - 1];
    return col.at(v);
  }

  std::optional<std::uint64_t> vertex_count() const override {
    return forward_.empty() ? 0 : forward_[0].size();
  }

  std::string vertex_label(VertexId v) const override {
    if (v < labels_.size()) return labels_[v];
    return std::to_string(v);
  }

 private:
  std::vector<std::vector<std::uint32_t>> forward_;   // per generator
  std::vector<std::vector<std::uint32_t>> backward_;  // inverse permutations
  std::vector<std::string> labels_;
};

class AbelianizationGraph final : public CosetGraph {
 public:
  AbelianizationGraph(const Alphabet& a, std::vector<std::vector<std::int64_t>> weights)
      : CosetGraph(a, BackendKind::abelianization), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != a.rank())
      throw input_error("abelianization needs one weight vector per generator");
    dim_ = weights_.empty() ? 0 : weights_[0].size();
    for (const auto& w : weights_)
      if (w.size() != dim_) throw input_error("abelianization weight vectors have mixed dimensions");
    root_ = intern_.id_of(std::vector<std::int64_t>(dim_, 0));
  }

  VertexId step(VertexId v, Letter s) const override {
    std::vector<std::int64_t> vec = intern_.key_of(v);
    const auto& w = weights_[std::abs(s) - 1];
    for (std::size_t i = 0; i < dim_; ++i) vec[i] += (s > 0 ? w[i] : -w[i]);
    return intern_.id_of(vec);
  }

  std::optional<std::uint64_t> vertex_count() const override {
    for (const auto& w : weights_)
      for (auto x : w)
        if (x != 0) return std::nullopt;
    return 1;
  }

  std::string vertex_label(VertexId v) const override {
    std::vector<std::int64_t> vec = intern_.key_of(v);
    std::string out = "(";
    for (std::size_t i = 0; i < vec.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(vec[i]);
    }
    return out + ")";
  }

 private:
  std::vector<std::vector<std::int64_t>> weights_;
  std::size_t dim_ = 0;
  mutable Interner<std::vector<std::int64_t>, VecHash> intern_;
};

// Normal form in C_1 * ... * C_n: alternating syllables (generator, exponent),
// exponent in [1, order-1] for finite factors, nonzero for infinite ones.
class FreeProductGraph final : public CosetGraph {
 public:
  FreeProductGraph(const Alphabet& a, std::vector<std::optional<int>> orders)
      : CosetGraph(a, BackendKind::free_product), orders_(std::move(orders)) {
    if (static_cast<int>(orders_.size()) != a.rank())
      throw input_error("free product needs one factor order per generator");
    for (const auto& o : orders_)
      if (o && *o < 2)
        throw input_error("finite factor order must be >= 2, got " + std::to_string(*o));
    root_ = intern_.id_of({});
  }

  VertexId step(VertexId v, Letter s) const override {
    std::vector<std::int64_t> form = intern_.key_of(v);
    const int gen = std::abs(s) - 1;
    const std::int64_t delta = s > 0 ? 1 : -1;
    if (form.size() >= 2 && form[form.size() - 2] == gen) {
      std::int64_t e = normalize(gen, form.back() + delta);
      if (e == 0) {
        form.pop_back();
        form.pop_back();
      } else {
        form.back() = e;
      }
    } else {
      form.push_back(gen);
      form.push_back(normalize(gen, delta));
    }
    return intern_.id_of(form);
  }

  std::optional<std::uint64_t> vertex_count() const override {
    if (alphabet_.rank() == 1 && orders_[0]) return static_cast<std::uint64_t>(*orders_[0]);
    return std::nullopt;
  }

  std::string vertex_label(VertexId v) const override {
    std::vector<std::int64_t> form = intern_.key_of(v);
    if (form.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < form.size(); i += 2) {
      out.push_back(static_cast<char>('a' + form[i]));
      if (form[i + 1] != 1) out += "^" + std::to_string(form[i + 1]);
    }
    return out;
  }

 private:
  std::int64_t normalize(int gen, std::int64_t e) const {
    if (!orders_[gen]) return e;
    std::int64_t o = *orders_[gen];
    e %= o;
    if (e < 0) e += o;
    return e;
  }

  std::vector<std::optional<int>> orders_;
  mutable Interner<std::vector<std::int64_t>, VecHash> intern_;
};

class TrivialSubgroupGraph final : public CosetGraph {
 public:
  explicit TrivialSubgroupGraph(const Alphabet& a)
      : CosetGraph(a, BackendKind::trivial_subgroup) {
    root_ = intern_.id_of({});
  }

  VertexId step(VertexId v, Letter s) const override {
    std::vector<std::int64_t> w = intern_.key_of(v);
    if (!w.empty() && w.back() == -static_cast<std::int64_t>(s))
      w.pop_back();
    else
      w.push_back(s);
    return intern_.id_of(w);
  }

  std::string vertex_label(VertexId v) const override {
    std::vector<std::int64_t> w = intern_.key_of(v);
    std::vector<Letter> letters(w.begin(), w.end());
    ReducedWord word = ReducedWord::reduce(alphabet_, letters);
    return word.empty() ? "1" : word.str();
  }

 private:
  mutable Interner<std::vector<std::int64_t>, VecHash> intern_;
};

Letter parse_edge_label(const std::string& label, int rank, const std::string& origin) {
  if (label.size() != 1)
    throw validation_error(origin + ": edge label must be a single letter, got \"" + label + "\"");
  char c = label[0];
  Letter l = 0;
  if (c >= 'a' && c <= 'z')
    l = 1 + (c - 'a');
  else if (c >= 'A' && c <= 'Z')
    l = -(1 + (c - 'A'));
  if (l == 0 || std::abs(l) > rank)
    throw validation_error(origin + ": edge label \"" + label + "\" is outside rank " +
                           std::to_string(rank));
  return l;
}

std::unique_ptr<CosetGraph> build_explicit_graph(const nlohmann::json& doc,
                                                 const std::string& origin) {
  if (!doc.is_object()) throw validation_error(origin + ": graph file must be a JSON object");
  for (const char* field : {"rank", "vertices", "root", "edges"})
    if (!doc.contains(field))
      throw validation_error(origin + ": missing required field \"" + field + "\"");

  const int rank = doc.at("rank").get<int>();
  Alphabet alphabet(rank);

  std::vector<std::int64_t> ids = doc.at("vertices").get<std::vector<std::int64_t>>();
  if (ids.empty()) throw validation_error(origin + ": vertex list is empty");
  std::unordered_map<std::int64_t, std::uint32_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!index.emplace(ids[i], static_cast<std::uint32_t>(i)).second)
      throw validation_error(origin + ": duplicate vertex id " + std::to_string(ids[i]));

  auto vertex_at = [&](std::int64_t id) -> std::uint32_t {
    auto it = index.find(id);
    if (it == index.end())
      throw validation_error(origin + ": unknown vertex id " + std::to_string(id));
    return it->second;
  };

  const std::uint32_t root = vertex_at(doc.at("root").get<std::int64_t>());
  const std::size_t n_vertices = ids.size();
  const std::size_t n_letters = 2 * static_cast<std::size_t>(rank);
  constexpr std::uint32_t kUnset = 0xffffffffu;
  // table[letter_index][v]; explicit edges first, then implied inverses.
  std::vector<std::vector<std::uint32_t>> table(n_letters,
                                                std::vector<std::uint32_t>(n_vertices, kUnset));
  std::vector<std::vector<bool>> is_explicit(n_letters, std::vector<bool>(n_vertices, false));

  auto letter_name = [&](std::size_t idx) {
    char c = idx % 2 == 0 ? static_cast<char>('a' + idx / 2) : static_cast<char>('A' + idx / 2);
    return std::string(1, c);
  };

  for (const auto& e : doc.at("edges")) {
    const std::uint32_t from = vertex_at(e.at("from").get<std::int64_t>());
    const std::uint32_t to = vertex_at(e.at("to").get<std::int64_t>());
    const Letter l = parse_edge_label(e.at("label").get<std::string>(), rank, origin);
    const std::size_t li = letter_index(l);
    if (is_explicit[li][from])
      throw validation_error(origin + ": duplicate edge (" + std::to_string(ids[from]) + ", " +
                             letter_name(li) + ")");
    if (table[li][from] != kUnset && table[li][from] != to)
      throw validation_error(origin + ": inverse-pair violation at (" + std::to_string(ids[from]) +
                             ", " + letter_name(li) + ")");
    table[li][from] = to;
    is_explicit[li][from] = true;
    // implied inverse edge
    const std::size_t ri = letter_index(inverse_letter(l));
    if (table[ri][to] != kUnset && table[ri][to] != from)
      throw validation_error(origin + ": inverse-pair violation: edges (" +
                             std::to_string(ids[from]) + ", " + letter_name(li) + ") -> " +
                             std::to_string(ids[to]) + " and (" + std::to_string(ids[to]) + ", " +
                             letter_name(ri) + ") -> " + std::to_string(ids[table[ri][to]]) +
                             " disagree");
    table[ri][to] = from;
  }

  std::vector<std::string> incomplete;
  for (std::size_t li = 0; li < n_letters; ++li)
    for (std::size_t v = 0; v < n_vertices; ++v)
      if (table[li][v] == kUnset)
        incomplete.push_back("(" + std::to_string(ids[v]) + ", " + letter_name(li) + ")");
  if (!incomplete.empty()) {
    std::string msg = origin + ": incomplete graph, unresolved (vertex, letter) pairs:";
    for (std::size_t i = 0; i < incomplete.size() && i < 20; ++i) msg += " " + incomplete[i];
    if (incomplete.size() > 20) msg += " ... (" + std::to_string(incomplete.size()) + " total)";
    throw validation_error(msg);
  }

  // Re-pack into per-generator columns; permutation-ness is re-validated there.
  std::vector<std::vector<std::uint32_t>> forward;
  forward.reserve(rank);
  for (int i = 0; i < rank; ++i) forward.push_back(table[letter_index(i + 1)]);
  std::vector<std::string> labels;
  labels.reserve(n_vertices);
  for (auto id : ids) labels.push_back(std::to_string(id));
  return std::make_unique<CosetTableGraph>(alphabet, BackendKind::explicit_file,
                                           std::move(forward), root, std::move(labels));
}

}  // namespace

std::string backend_name(BackendKind k) {
  switch (k) {
    case BackendKind::coset_table: return "coset-table";
    case BackendKind::abelianization: return "abelianization";
    case BackendKind::free_product: return "free-product";
    case BackendKind::explicit_file: return "explicit-file";
    case BackendKind::trivial_subgroup: return "trivial-subgroup";
  }
  return "?";
}

VertexId CosetGraph::walk(VertexId v, const ReducedWord& w) const {
  return walk(v, std::span<const Letter>(w.letters()));
}

VertexId CosetGraph::walk(VertexId v, std::span<const Letter> letters) const {
  for (Letter l : letters) v = step(v, l);
  return v;
}

std::unique_ptr<CosetGraph> from_coset_table(const Alphabet& a,
                                             const std::vector<std::vector<std::uint32_t>>& table,
                                             std::uint32_t root) {
  if (static_cast<int>(table.size()) != a.rank())
    throw input_error("coset table needs one column per generator");
  const std::size_t n = table.empty() ? 0 : table[0].size();
  for (const auto& col : table)
    if (col.size() != n) throw input_error("coset table columns have mixed sizes");
  if (n == 0) throw input_error("coset table has no vertices");
  return std::make_unique<CosetTableGraph>(a, BackendKind::coset_table, table, root);
}

std::unique_ptr<CosetGraph> from_abelianization(
    const Alphabet& a, const std::vector<std::vector<std::int64_t>>& weights) {
  return std::make_unique<AbelianizationGraph>(a, weights);
}

std::unique_ptr<CosetGraph> from_free_product(const Alphabet& a,
                                              const std::vector<std::optional<int>>& orders) {
  return std::make_unique<FreeProductGraph>(a, orders);
}

std::unique_ptr<CosetGraph> from_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open graph file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(path + ": JSON parse error: " + e.what());
  }
  return build_explicit_graph(doc, path);
}

std::unique_ptr<CosetGraph> from_edge_list_json(const std::string& json_text,
                                                const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(origin + ": JSON parse error: " + e.what());
  }
  return build_explicit_graph(doc, origin);
}

std::unique_ptr<CosetGraph> trivial_subgroup_graph(const Alphabet& a) {
  return std::make_unique<TrivialSubgroupGraph>(a);
}

std::vector<std::uint64_t> BallTable::ball_counts() const {
  std::vector<std::uint64_t> out;
  out.reserve(counts.size());
  std::uint64_t total = 0;
  for (auto c : counts) {
    total += c;
    out.push_back(total);
  }
  return out;
}

BallTable bfs_ball(const CosetGraph& g, int radius, std::uint64_t vertex_budget) {
  if (radius < 0) throw input_error("ball radius must be >= 0");
  BallTable ball;
  ball.radius = radius;
  ball.dist[g.root()] = 0;
  ball.spheres.push_back({g.root()});
  ball.counts.push_back(1);

  const std::vector<Letter> letters = g.alphabet().letters();
  for (int k = 1; k <= radius; ++k) {
    std::vector<VertexId> next;
    for (VertexId v : ball.spheres[k - 1]) {
      for (Letter l : letters) {
        VertexId w = g.step(v, l);
        if (ball.dist.emplace(w, k).second) {
          next.push_back(w);
          if (ball.dist.size() > vertex_budget)
            throw resource_error("vertex budget of " + std::to_string(vertex_budget) +
                                 " exceeded while materializing sphere " + std::to_string(k));
        }
      }
    }
    std::sort(next.begin(), next.end());
    ball.counts.push_back(next.size());
    ball.spheres.push_back(std::move(next));
  }
  return ball;
}

std::vector<VertexId> shell(const CosetGraph& g, const BallTable& ball, VertexId a, int k) {
  if (k < 0) throw input_error("shell depth must be >= 0");
  auto it = ball.dist.find(a);
  if (it == ball.dist.end()) throw input_error("shell base vertex is not in the ball");
  const int da = it->second;
  if (da + k > ball.radius)
    throw input_error("shell(a, " + std::to_string(k) + ") requires ball radius >= " +
                      std::to_string(da + k) + ", have " + std::to_string(ball.radius));
  if (k == 0) return {a};

  // d(a, .) by local BFS; geodesics realizing the shell condition stay
  // inside B(root, radius), so distances here are exact for members.
  std::unordered_map<VertexId, int> local{{a, 0}};
  std::vector<VertexId> frontier{a};
  const std::vector<Letter> letters = g.alphabet().letters();
  std::vector<VertexId> out;
  for (int j = 1; j <= k; ++j) {
    std::vector<VertexId> next;
    for (VertexId v : frontier) {
      for (Letter l : letters) {
        VertexId w = g.step(v, l);
        if (local.emplace(w, j).second) next.push_back(w);
      }
    }
    frontier = std::move(next);
  }
  for (VertexId b : frontier) {
    auto bit = ball.dist.find(b);
    if (bit != ball.dist.end() && bit->second == da + k) out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConfinementReport confinement_check(const CosetGraph& g, const std::vector<ReducedWord>& P,
                                    int radius, std::uint64_t vertex_budget) {
  if (P.empty()) throw input_error("confining set P must be nonempty");
  for (const auto& p : P)
    if (p.empty()) throw input_error("confining set P must not contain the identity (P \\ {1})");

  ConfinementReport report;
  report.confining_set = P;
  report.radius = radius;
  report.holds = true;

  BallTable ball = bfs_ball(g, radius, vertex_budget);
  for (const auto& sphere : ball.spheres) {
    for (VertexId v : sphere) {
      bool found = false;
      for (std::size_t i = 0; i < P.size(); ++i) {
        if (g.walk(v, P[i]) == v) {
          report.witness[v] = i;
          found = true;
          break;
        }
      }
      if (!found) {
        report.holds = false;
        report.failing_vertex = v;
        return report;
      }
    }
  }
  return report;
}

TreeBallRadius tree_ball_radius(const CosetGraph& g, const BallTable& ball, VertexId v) {
  auto it = ball.dist.find(v);
  if (it == ball.dist.end()) throw input_error("tree_ball_radius vertex is not in the ball");
  const int horizon = ball.radius - it->second;

  TreeBallRadius result;
  result.horizon = horizon;
  if (horizon <= 0) {
    result.radius = 0;
    result.certified = false;
    return result;
  }

  // Find the smallest m whose induced ball B(v, m) contains a cycle. A cycle
  // witness is a loop, a repeated edge or any non-tree edge met by the BFS;
  // it enters the induced ball once both endpoints are within distance m.
  const std::vector<Letter> letters = g.alphabet().letters();
  std::unordered_map<VertexId, int> depth{{v, 0}};
  std::unordered_map<VertexId, Letter> skip;  // letter at u undoing its discovery
  std::deque<VertexId> queue{v};
  int min_fail = horizon + 1;

  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    const int du = depth.at(u);
    if (du >= min_fail) break;
    auto skip_it = skip.find(u);
    for (Letter l : letters) {
      if (skip_it != skip.end() && l == skip_it->second) continue;
      VertexId w = g.step(u, l);
      int fail;
      if (w == u) {
        fail = std::max(du, 1);  // loop; B(v,0) is a bare vertex by convention
      } else if (auto dit = depth.find(w); dit != depth.end()) {
        fail = std::max({du, dit->second, 1});
      } else {
        if (du < horizon) {
          depth.emplace(w, du + 1);
          skip.emplace(w, inverse_letter(l));
          queue.push_back(w);
        }
        continue;
      }
      min_fail = std::min(min_fail, fail);
    }
  }

  if (min_fail > horizon) {
    result.radius = horizon;
    result.certified = false;
  } else {
    result.radius = min_fail - 1;
    result.certified = true;
  }
  return result;
}

std::vector<std::uint64_t> loop_counts(const CosetGraph& g, int max_len,
                                       std::uint64_t state_budget) {
  if (max_len < 0) throw input_error("max_len must be >= 0");
  const int degree = g.degree();
  // c_k <= 2n(2n-1)^{k-1}; cap where 64-bit counts could overflow.
  const int overflow_cap =
      degree > 2 ? static_cast<int>(63.0 * std::log(2.0) / std::log(degree - 1.0)) : 1000;
  if (max_len > overflow_cap)
    throw input_error("loop_counts beyond length " + std::to_string(overflow_cap) +
                      " overflows 64-bit counters at degree " + std::to_string(degree));

  std::vector<std::uint64_t> c(max_len + 1, 0);
  c[0] = 1;
  if (max_len == 0) return c;

  const std::vector<Letter> letters = g.alphabet().letters();
  const std::uint64_t n_letters = letters.size();
  // state encodes (endpoint, last letter); letters[state % n_letters] decodes
  auto state_of = [&](VertexId v, Letter l) { return v * n_letters + letter_index(l); };

  std::unordered_map<std::uint64_t, std::uint64_t> state_counts;
  for (Letter l : letters) state_counts[state_of(g.step(g.root(), l), l)] += 1;

  auto closed_total = [&](const std::unordered_map<std::uint64_t, std::uint64_t>& counts) {
    std::uint64_t total = 0;
    for (Letter l : letters) {
      auto it = counts.find(state_of(g.root(), l));
      if (it != counts.end()) total += it->second;
    }
    return total;
  };

  c[1] = closed_total(state_counts);
  for (int k = 2; k <= max_len; ++k) {
    std::unordered_map<std::uint64_t, std::uint64_t> next_counts;
    for (const auto& [state, count] : state_counts) {
      const VertexId v = state / n_letters;
      const Letter last = letters[state % n_letters];
      for (Letter l : letters) {
        if (l == inverse_letter(last)) continue;
        next_counts[state_of(g.step(v, l), l)] += count;
        if (next_counts.size() > state_budget)
          throw resource_error("loop_counts state budget of " + std::to_string(state_budget) +
                               " exceeded at length " + std::to_string(k));
      }
    }
    state_counts = std::move(next_counts);
    c[k] = closed_total(state_counts);
  }
  return c;
}

double hashimoto_growth(const CosetGraph& g) {
  if (!g.vertex_count())
    throw input_error("hashimoto_growth requires a finite backend; " +
                      backend_name(g.backend()) + " is infinite");

  // Materialize the whole (connected) graph.
  std::vector<VertexId> vertices{g.root()};
  std::unordered_map<VertexId, std::size_t> index{{g.root(), 0}};
  const std::vector<Letter> letters = g.alphabet().letters();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (Letter l : letters) {
      VertexId w = g.step(vertices[i], l);
      if (index.emplace(w, vertices.size()).second) vertices.push_back(w);
    }
  }

  const std::size_t n_letters = letters.size();
  const std::size_t n_edges = vertices.size() * n_letters;
  // head vertex index of each directed edge (v, letter)
  std::vector<std::size_t> head(n_edges);
  for (std::size_t vi = 0; vi < vertices.size(); ++vi)
    for (std::size_t li = 0; li < n_letters; ++li)
      head[vi * n_letters + li] = index.at(g.step(vertices[vi], letters[li]));

  auto reverse_of = [&](std::size_t li) { return li ^ 1u; };  // letter order +i, -i

  // Power iteration on B + I (kills Hashimoto periodicity; Perron value is
  // lambda(B) + 1).
  std::vector<double> x(n_edges, 1.0), y(n_edges, 0.0);
  double lambda = 0.0, prev = -1.0;
  const double tol = 1e-9;
  for (int iter = 0; iter < 1000000; ++iter) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t e = 0; e < n_edges; ++e) {
      const double xe = x[e];
      if (xe == 0.0) continue;
      const std::size_t li = e % n_letters;
      const std::size_t base = head[e] * n_letters;
      for (std::size_t t = 0; t < n_letters; ++t) {
        if (t == reverse_of(li)) continue;
        y[base + t] += xe;
      }
    }
    double norm_x = 0.0, norm_y = 0.0;
    for (std::size_t e = 0; e < n_edges; ++e) {
      y[e] += x[e];
      norm_x += x[e] * x[e];
      norm_y += y[e] * y[e];
    }
    lambda = std::sqrt(norm_y / norm_x);
    const double scale = 1.0 / std::sqrt(norm_y);
    for (double& v : y) v *= scale;
    x.swap(y);
    if (iter > 0 && std::abs(lambda - prev) <= tol * std::max(1.0, lambda)) break;
    prev = lambda;
  }
  return std::log(lambda - 1.0);
}

}  // namespace sgt
