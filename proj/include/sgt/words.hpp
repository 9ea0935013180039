#ifndef SGT_WORDS_HPP
#define SGT_WORDS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sgt {

// A letter of the rank-n alphabet: +i is the generator x_i (1-based),
// -i its inverse. 0 is never a valid letter.
using Letter = std::int32_t;

inline Letter inverse_letter(Letter l) { return -l; }

class Alphabet {
 public:
  explicit Alphabet(int rank);
  int rank() const { return rank_; }
  bool contains(Letter l) const;
  // All 2n letters in canonical order: +1, -1, +2, -2, ...
  std::vector<Letter> letters() const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.rank_ == b.rank_; }

 private:
  int rank_;
};

// A freely reduced word over a rank-n alphabet. Immutable after construction.
class ReducedWord {
 public:
  // Unattached empty word; reassigned before any arithmetic use.
  ReducedWord() : rank_(0) {}
  explicit ReducedWord(const Alphabet& a) : rank_(a.rank()) {}

  // Free reduction of an arbitrary letter sequence (stack cancellation).
  static ReducedWord reduce(const Alphabet& a, std::span<const Letter> raw);

  // Parses the literal syntax "abA" (a..z generators, A..Z inverses, "" empty).
  static ReducedWord parse(const Alphabet& a, std::string_view literal);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int rank() const { return rank_; }

  ReducedWord inverse() const;
  std::string str() const;

  friend bool operator==(const ReducedWord& u, const ReducedWord& v) {
    return u.rank_ == v.rank_ && u.letters_ == v.letters_;
  }
  friend bool operator<(const ReducedWord& u, const ReducedWord& v) {
    return u.letters_ < v.letters_;
  }

 private:
  ReducedWord(int rank, std::vector<Letter> reduced) : rank_(rank), letters_(std::move(reduced)) {}

  int rank_;
  std::vector<Letter> letters_;

  friend ReducedWord multiply(const ReducedWord&, const ReducedWord&);
};

// Freely reduced product uv (cancellation only at the junction).
ReducedWord multiply(const ReducedWord& u, const ReducedWord& v);

// reduce(f p f^-1); empty iff p is empty.
ReducedWord conjugate(const ReducedWord& f, const ReducedWord& p);

// w^e for e >= 0.
ReducedWord power(const ReducedWord& w, int e);

inline constexpr std::uint64_t kDefaultWordBudget = 10'000'000;

struct BallEnumeration {
  std::vector<ReducedWord> words;          // grouped by length, lexicographic inside spheres
  std::vector<std::uint64_t> sphere_sizes; // |S_0|..|S_radius|
};

// All reduced words of length <= radius, each exactly once.
BallEnumeration enumerate_ball(const Alphabet& a, int radius,
                               std::uint64_t budget = kDefaultWordBudget);

}  // namespace sgt

#endif  // SGT_WORDS_HPP
