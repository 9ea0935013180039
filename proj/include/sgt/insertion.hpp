#ifndef SGT_INSERTION_HPP
#define SGT_INSERTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgt/schreier.hpp"

namespace sgt {

// g cut into consecutive pieces s_1 ... s_m with no cancellation across
// boundaries; checkpoints are the prefix products g_0 = 1, ..., g_m = g.
// In a tree every prefix lies on the geodesic [o, go], so this is a
// 0-almost-geodesic decomposition.
struct Decomposition {
  ReducedWord g;
  std::vector<ReducedWord> pieces;
  std::vector<ReducedWord> checkpoints;  // m + 1 entries
  int piece_length = 1;                  // requested L

  std::size_t size() const { return pieces.size(); }
};

// Pieces are length-L blocks; a final remainder shorter than L is absorbed
// into the last piece (so the last piece has length in [1, 2L-1]).
Decomposition decompose(const ReducedWord& g, int piece_length);

struct InsertionBlock {
  ReducedWord f;
  ReducedWord p;
  ReducedWord block;     // reduce(f p f^-1)
  int survival = 0;      // block letters surviving contextual reduction
};

// One conjugated confining block f_i p_i f_i^{-1} per position, each closing
// up at the checkpoint vertex, plus the survival data backing injectivity.
struct InsertionScheme {
  Decomposition decomposition;
  std::vector<InsertionBlock> blocks;
  const CosetGraph* graph = nullptr;
  int R = 0;               // max_i (2 ||f_i|| + ||p_i||), the length-bound constant
  int max_block_length = 0;
  int survival_margin = 0;  // min survival over positions
  double theta() const {
    return 1.0 / (2.0 * decomposition.piece_length);
  }
};

// For each position picks the first (f, p) in candidate x confining-set
// order (then over powers f, f^2, f^3) such that p labels a loop at
// vertex(g_{i-1} f) and the block keeps >= ceil(||block||/3) letters after
// reducing s_{i-1} block s_i.
InsertionScheme choose_insertions(const Decomposition& d, const CosetGraph& graph,
                                  const std::vector<ReducedWord>& confining_set,
                                  const std::vector<ReducedWord>& f_candidates);

struct PhiImage {
  std::vector<bool> epsilon;
  ReducedWord word;
  VertexId vertex = 0;
  std::size_t length = 0;
};

// Phi_g(eps) = prod_i (f_i p_i f_i^-1)^{eps_i} s_i. The vertex is computed by
// walking the unreduced letter sequence; the reduced word must land on the
// same endpoint.
PhiImage phi(const InsertionScheme& scheme, const std::vector<bool>& epsilon);

inline constexpr int kExhaustiveImageLimit = 20;  // 2^m images beyond this need sampling

// All 2^m images in binary-counter order (LSB = position 1).
std::vector<PhiImage> generate_images(const InsertionScheme& scheme,
                                      int limit = kExhaustiveImageLimit);

// True iff every image lands on vertex(g): the graph reading of Phi_g
// mapping into the coset Hg.
bool verify_coset(const InsertionScheme& scheme, const std::vector<PhiImage>& images);

struct Collision {
  std::size_t first = 0;
  std::size_t second = 0;
  int differing_index = 0;  // first insertion position where the two differ
};

// True iff all images are pairwise distinct reduced words; on failure
// reports one colliding pair.
bool verify_injective(const InsertionScheme& scheme, const std::vector<PhiImage>& images,
                      Collision* collision = nullptr);

struct SampledVerification {
  std::uint64_t seed = 0;
  std::uint64_t pairs = 0;
  bool coset_ok = false;
  bool injective_ok = false;
  std::size_t max_length = 0;
  bool length_bound_ok = false;
};

// Randomized fallback for m beyond the exhaustive limit: uniform epsilon
// pairs, coset/length checks on every sample.
SampledVerification verify_sampled(const InsertionScheme& scheme, std::uint64_t seed,
                                   std::uint64_t pairs = 100000);

struct CountReport {
  std::size_t m = 0;
  double elements = 0.0;   // 2^m
  std::size_t max_length_bound = 0;  // ||g|| + R m
  double theta = 0.0;      // 1/(2L)
  // (1 + e^{-sR})^{theta ||g||} per requested s
  std::vector<std::pair<double, double>> factors;
};

// Summary of the exponential image count and its Poincare-series factor;
// requires both verifications to have passed.
CountReport exponential_count_report(const InsertionScheme& scheme, bool coset_verified,
                                     bool injective_verified, const std::vector<double>& s_values);

}  // namespace sgt

#endif  // SGT_INSERTION_HPP
