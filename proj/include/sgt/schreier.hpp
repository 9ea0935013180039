#ifndef SGT_SCHREIER_HPP
#define SGT_SCHREIER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sgt/words.hpp"

namespace sgt {

// Stable identity of a coset H g. Backends intern structured vertices
// (integer vectors, normal forms) into dense ids.
using VertexId = std::uint64_t;

enum class BackendKind {
  coset_table,
  abelianization,
  free_product,
  explicit_file,
  trivial_subgroup,
};

std::string backend_name(BackendKind k);

// Rooted generator-labeled coset graph H\F_n. step() is deterministic and
// total; edges come in inverse pairs: step(step(v, s), -s) == v.
// Lazily materializing backends guard their intern tables, so concurrent
// queries are safe; all returned ids stay valid for the graph's lifetime.
class CosetGraph {
 public:
  virtual ~CosetGraph() = default;

  const Alphabet& alphabet() const { return alphabet_; }
  int degree() const { return 2 * alphabet_.rank(); }
  BackendKind backend() const { return backend_; }
  VertexId root() const { return root_; }

  virtual VertexId step(VertexId v, Letter s) const = 0;
  // Total vertex count for finite backends, nullopt for infinite ones.
  virtual std::optional<std::uint64_t> vertex_count() const { return std::nullopt; }
  virtual std::string vertex_label(VertexId v) const { return std::to_string(v); }

  VertexId walk(VertexId v, const ReducedWord& w) const;
  VertexId walk(VertexId v, std::span<const Letter> letters) const;

 protected:
  CosetGraph(const Alphabet& a, BackendKind b) : alphabet_(a), backend_(b) {}

  Alphabet alphabet_;
  BackendKind backend_;
  VertexId root_ = 0;
};

// Finite-index backend. table[i][v] = v . x_{i+1}; every column must be a
// permutation of the vertex set.
std::unique_ptr<CosetGraph> from_coset_table(const Alphabet& a,
                                             const std::vector<std::vector<std::uint32_t>>& table,
                                             std::uint32_t root = 0);

// Kernel of F_n -> Z^k, generator i acting by translation weights[i].
std::unique_ptr<CosetGraph> from_abelianization(const Alphabet& a,
                                                const std::vector<std::vector<std::int64_t>>& weights);

// Kernel of F_n -> C_1 * ... * C_n where generator i maps to the standard
// generator of the cyclic factor C_i; orders[i] is the factor order (>= 2)
// or nullopt for an infinite factor.
std::unique_ptr<CosetGraph> from_free_product(const Alphabet& a,
                                              const std::vector<std::optional<int>>& orders);

// JSON edge-list file per the documented graph format; inverse edges may be
// implied. Strict validation (duplicates, inverse pairs, completeness).
std::unique_ptr<CosetGraph> from_edge_list_file(const std::string& path);
std::unique_ptr<CosetGraph> from_edge_list_json(const std::string& json_text,
                                                const std::string& origin = "<string>");

// H = {1}: the Cayley tree T_{2n} itself, vertices are reduced words.
std::unique_ptr<CosetGraph> trivial_subgroup_graph(const Alphabet& a);

inline constexpr std::uint64_t kDefaultVertexBudget = 5'000'000;

// Materialized BFS ball around the root.
struct BallTable {
  int radius = 0;
  std::unordered_map<VertexId, int> dist;
  std::vector<std::vector<VertexId>> spheres;  // each sorted by id
  std::vector<std::uint64_t> counts;           // |S_0|..|S_radius|

  std::vector<std::uint64_t> ball_counts() const;  // |B(0)|..|B(radius)|
  bool contains(VertexId v) const { return dist.count(v) > 0; }
};

BallTable bfs_ball(const CosetGraph& g, int radius,
                   std::uint64_t vertex_budget = kDefaultVertexBudget);

// Sh(a, k): vertices b with d(root, b) = d(root, a) + k and d(a, b) = k,
// i.e. k past a along geodesics from the root through a. Sorted by id.
std::vector<VertexId> shell(const CosetGraph& g, const BallTable& ball, VertexId a, int k);

struct ConfinementReport {
  std::vector<ReducedWord> confining_set;
  int radius = 0;
  // index into confining_set of a loop labeling word, per vertex of B(radius)
  std::unordered_map<VertexId, std::size_t> witness;
  bool holds = false;
  std::optional<VertexId> failing_vertex;
};

// Checks that every vertex of B(radius) carries a closed walk labeled by
// some p in P (the graph reading of a confining subset).
ConfinementReport confinement_check(const CosetGraph& g, const std::vector<ReducedWord>& P,
                                    int radius, std::uint64_t vertex_budget = kDefaultVertexBudget);

struct TreeBallRadius {
  int radius = 0;       // largest m with B(v, m) acyclic, capped at the horizon
  bool certified = false;  // false when no cycle was found within the horizon
  int horizon = 0;
};

// Largest m such that the radius-m neighborhood of v contains no cycle
// (a loop counts as a 1-cycle, a repeated edge as a 2-cycle). Certified
// only up to ball.radius - d(root, v).
TreeBallRadius tree_ball_radius(const CosetGraph& g, const BallTable& ball, VertexId v);

// c_k = number of closed non-backtracking walks of length k at the root
// = |{h in H : ||h|| = k}|. c_0 = 1.
std::vector<std::uint64_t> loop_counts(const CosetGraph& g, int max_len,
                                       std::uint64_t state_budget = kDefaultWordBudget);

// log of the spectral radius of the non-backtracking edge-adjacency
// operator, by power iteration to relative tolerance 1e-9. Finite backends
// only; equals log(2n-1) for (2n)-regular graphs.
double hashimoto_growth(const CosetGraph& g);

}  // namespace sgt

#endif  // SGT_SCHREIER_HPP
