#include "sgt/insertion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "sgt/errors.hpp"

namespace sgt {
namespace {

// Letters of `block` surviving the reduction of left . block . right:
// cancellation first eats k1 letters off the block's head (against left),
// then k2 off its tail (against right).
int surviving_letters(const ReducedWord& left, const ReducedWord& block,
                      const ReducedWord& right) {
  const ReducedWord lb = multiply(left, block);
  const std::size_t k1 = (left.length() + block.length() - lb.length()) / 2;
  const ReducedWord lbr = multiply(lb, right);
  const std::size_t k2 = (lb.length() + right.length() - lbr.length()) / 2;
  const std::int64_t survived = static_cast<std::int64_t>(block.length()) -
                                static_cast<std::int64_t>(k1) - static_cast<std::int64_t>(k2);
  return static_cast<int>(std::max<std::int64_t>(survived, 0));
}

}  // namespace

Decomposition decompose(const ReducedWord& g, int piece_length) {
  if (piece_length < 1) throw input_error("piece length L must be >= 1");
  const Alphabet alphabet(g.rank());

  Decomposition d;
  d.g = g;
  d.piece_length = piece_length;
  d.checkpoints.emplace_back(alphabet);
  if (g.empty()) return d;

  const std::size_t L = static_cast<std::size_t>(piece_length);
  const std::size_t m = std::max<std::size_t>(g.length() / L, 1);
  const auto& letters = g.letters();
  std::size_t pos = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t end = (i + 1 == m) ? letters.size() : pos + L;
    std::vector<Letter> piece(letters.begin() + pos, letters.begin() + end);
    d.pieces.push_back(ReducedWord::reduce(alphabet, piece));
    d.checkpoints.push_back(multiply(d.checkpoints.back(), d.pieces.back()));
    pos = end;
  }
  return d;
}

InsertionScheme choose_insertions(const Decomposition& d, const CosetGraph& graph,
                                  const std::vector<ReducedWord>& confining_set,
                                  const std::vector<ReducedWord>& f_candidates) {
  if (confining_set.empty()) throw input_error("confining set P must be nonempty");
  for (const auto& p : confining_set)
    if (p.empty()) throw input_error("confining set P must not contain the identity");
  if (f_candidates.empty()) throw input_error("F_candidates must be nonempty");
  for (const auto& f : f_candidates)
    if (f.length() < 2)
      throw input_error("F_candidates entries must have length >= 2, got \"" + f.str() + "\"");

  InsertionScheme scheme;
  scheme.decomposition = d;
  scheme.graph = &graph;
  scheme.survival_margin = std::numeric_limits<int>::max();

  constexpr int kPowerCap = 3;

  for (std::size_t i = 0; i < d.size(); ++i) {
    // survival is checked against the full checkpoint prefix on the left
    // (cancellation can eat past the previous piece) and the next piece on
    // the right
    const ReducedWord& prefix = d.checkpoints[i];
    const ReducedWord& next_piece = d.pieces[i];
    const VertexId prefix_vertex = graph.walk(graph.root(), prefix);

    std::optional<InsertionBlock> chosen;
    for (int e = 1; e <= kPowerCap && !chosen; ++e) {
      for (const auto& f_base : f_candidates) {
        const ReducedWord f = power(f_base, e);
        const VertexId at = graph.walk(prefix_vertex, f);
        for (const auto& p : confining_set) {
          if (graph.walk(at, p) != at) continue;  // p must label a loop there
          InsertionBlock candidate;
          candidate.f = f;
          candidate.p = p;
          candidate.block = conjugate(f, p);
          candidate.survival = surviving_letters(prefix, candidate.block, next_piece);
          const int required =
              static_cast<int>((candidate.block.length() + 2) / 3);  // ceil(len/3)
          if (candidate.survival < required) continue;
          chosen = candidate;
          break;
        }
        if (chosen) break;
      }
    }
    if (!chosen)
      throw Error(errc::hypothesis,
                  "no admissible (f, p) at position " + std::to_string(i + 1) +
                      " within the candidate set and power cap " + std::to_string(kPowerCap) +
                      "; extend F_candidates or use higher powers");
    scheme.R = std::max(scheme.R, static_cast<int>(2 * chosen->f.length() + chosen->p.length()));
    scheme.max_block_length = std::max(scheme.max_block_length,
                                       static_cast<int>(chosen->block.length()));
    scheme.survival_margin = std::min(scheme.survival_margin, chosen->survival);
    scheme.blocks.push_back(std::move(*chosen));
  }
  if (scheme.blocks.empty()) scheme.survival_margin = 0;
  return scheme;
}

PhiImage phi(const InsertionScheme& scheme, const std::vector<bool>& epsilon) {
  const Decomposition& d = scheme.decomposition;
  if (epsilon.size() != d.size())
    throw input_error("epsilon length " + std::to_string(epsilon.size()) +
                      " does not match m = " + std::to_string(d.size()));
  if (!scheme.graph) throw state_error("insertion scheme has no graph");

  const Alphabet alphabet(d.g.rank());
  PhiImage image;
  image.epsilon = epsilon;

  ReducedWord word(alphabet);
  VertexId vertex = scheme.graph->root();
  std::size_t ones = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (epsilon[i]) {
      ++ones;
      word = multiply(word, scheme.blocks[i].block);
      vertex = scheme.graph->walk(vertex, scheme.blocks[i].block);
    }
    word = multiply(word, d.pieces[i]);
    vertex = scheme.graph->walk(vertex, d.pieces[i]);
  }

  if (scheme.graph->walk(scheme.graph->root(), word) != vertex)
    throw state_error("phi: walking the reduced word disagrees with the unreduced walk");
  if (word.length() > d.g.length() + static_cast<std::size_t>(scheme.R) * ones)
    throw state_error("phi: length bound ||g|| + R ||eps|| violated");

  image.word = std::move(word);
  image.vertex = vertex;
  image.length = image.word.length();
  return image;
}

std::vector<PhiImage> generate_images(const InsertionScheme& scheme, int limit) {
  const std::size_t m = scheme.decomposition.size();
  if (static_cast<int>(m) > limit)
    throw resource_error("2^" + std::to_string(m) +
                         " images exceed the exhaustive budget (m <= " + std::to_string(limit) +
                         "); use sampled mode with an explicit seed");
  std::vector<PhiImage> images;
  images.reserve(std::size_t{1} << m);
  std::vector<bool> epsilon(m, false);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
    for (std::size_t i = 0; i < m; ++i) epsilon[i] = (code >> i) & 1;
    images.push_back(phi(scheme, epsilon));
  }
  return images;
}

bool verify_coset(const InsertionScheme& scheme, const std::vector<PhiImage>& images) {
  const VertexId target = scheme.graph->walk(scheme.graph->root(), scheme.decomposition.g);
  for (const auto& image : images)
    if (image.vertex != target) return false;
  return true;
}

bool verify_injective(const InsertionScheme& scheme, const std::vector<PhiImage>& images,
                      Collision* collision) {
  (void)scheme;
  std::vector<std::size_t> order(images.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return images[a].word < images[b].word;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (images[order[i - 1]].word == images[order[i]].word) {
      if (collision) {
        collision->first = order[i - 1];
        collision->second = order[i];
        const auto& e1 = images[order[i - 1]].epsilon;
        const auto& e2 = images[order[i]].epsilon;
        collision->differing_index = 0;
        for (std::size_t k = 0; k < e1.size(); ++k) {
          if (e1[k] != e2[k]) {
            collision->differing_index = static_cast<int>(k + 1);
            break;
          }
        }
      }
      return false;
    }
  }
  return true;
}

SampledVerification verify_sampled(const InsertionScheme& scheme, std::uint64_t seed,
                                   std::uint64_t pairs) {
  const std::size_t m = scheme.decomposition.size();
  SampledVerification out;
  out.seed = seed;
  out.pairs = pairs;
  out.coset_ok = true;
  out.injective_ok = true;
  out.length_bound_ok = true;

  const VertexId target = scheme.graph->walk(scheme.graph->root(), scheme.decomposition.g);
  std::mt19937_64 rng(seed);
  auto random_epsilon = [&]() {
    std::vector<bool> eps(m);
    for (std::size_t i = 0; i < m; ++i) eps[i] = rng() & 1;
    return eps;
  };

  for (std::uint64_t t = 0; t < pairs; ++t) {
    std::vector<bool> e1 = random_epsilon();
    std::vector<bool> e2 = random_epsilon();
    PhiImage a = phi(scheme, e1);
    PhiImage b = phi(scheme, e2);
    out.max_length = std::max({out.max_length, a.length, b.length});
    if (a.vertex != target || b.vertex != target) out.coset_ok = false;
    if (e1 != e2 && a.word == b.word) out.injective_ok = false;
  }
  return out;
}

CountReport exponential_count_report(const InsertionScheme& scheme, bool coset_verified,
                                     bool injective_verified,
                                     const std::vector<double>& s_values) {
  if (!coset_verified || !injective_verified)
    throw state_error("exponential_count_report requires verified coset and injectivity results");

  CountReport report;
  report.m = scheme.decomposition.size();
  report.elements = std::pow(2.0, static_cast<double>(report.m));
  report.max_length_bound =
      scheme.decomposition.g.length() + static_cast<std::size_t>(scheme.R) * report.m;
  report.theta = scheme.theta();
  const double norm_g = static_cast<double>(scheme.decomposition.g.length());
  for (double s : s_values) {
    const double factor = std::pow(1.0 + std::exp(-s * scheme.R), report.theta * norm_g);
    report.factors.emplace_back(s, factor);
  }
  return report;
}

}  // namespace sgt
