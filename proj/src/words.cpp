#include "sgt/words.hpp"

#include <cstdlib>

#include "sgt/errors.hpp"

namespace sgt {

Alphabet::Alphabet(int rank) : rank_(rank) {
  if (rank < 1) throw input_error("alphabet rank must be >= 1, got " + std::to_string(rank));
}

bool Alphabet::contains(Letter l) const {
  return l != 0 && std::abs(l) <= rank_;
}

std::vector<Letter> Alphabet::letters() const {
  std::vector<Letter> out;
  out.reserve(2 * static_cast<std::size_t>(rank_));
  for (int i = 1; i <= rank_; ++i) {
    out.push_back(i);
    out.push_back(-i);
  }
  return out;
}

ReducedWord ReducedWord::reduce(const Alphabet& a, std::span<const Letter> raw) {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (Letter l : raw) {
    if (!a.contains(l))
      throw input_error("unknown letter symbol " + std::to_string(l) + " for rank " +
                        std::to_string(a.rank()));
    if (!stack.empty() && stack.back() == inverse_letter(l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return ReducedWord(a.rank(), std::move(stack));
}

ReducedWord ReducedWord::parse(const Alphabet& a, std::string_view literal) {
  std::vector<Letter> raw;
  raw.reserve(literal.size());
  for (char c : literal) {
    Letter l = 0;
    if (c >= 'a' && c <= 'z')
      l = 1 + (c - 'a');
    else if (c >= 'A' && c <= 'Z')
      l = -(1 + (c - 'A'));
    else
      throw input_error(std::string("unknown letter symbol '") + c + "' in word literal");
    if (!a.contains(l))
      throw input_error(std::string("letter '") + c + "' is outside rank " +
                        std::to_string(a.rank()));
    raw.push_back(l);
  }
  return reduce(a, raw);
}

ReducedWord ReducedWord::inverse() const {
  std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
  for (Letter& l : inv) l = inverse_letter(l);
  return ReducedWord(rank_, std::move(inv));
}

std::string ReducedWord::str() const {
  std::string out;
  if (rank_ <= 26) {
    out.reserve(letters_.size());
    for (Letter l : letters_)
      out.push_back(l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1));
  } else {
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out.push_back('.');
      Letter l = letters_[i];
      out += "x" + std::to_string(std::abs(l));
      if (l < 0) out += "^-1";
    }
  }
  return out;
}

ReducedWord multiply(const ReducedWord& u, const ReducedWord& v) {
  if (u.rank() != v.rank())
    throw input_error("alphabet mismatch: rank " + std::to_string(u.rank()) + " vs " +
                      std::to_string(v.rank()));
  std::vector<Letter> out = u.letters();
  for (Letter l : v.letters()) {
    if (!out.empty() && out.back() == inverse_letter(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return ReducedWord(u.rank(), std::move(out));
}

ReducedWord conjugate(const ReducedWord& f, const ReducedWord& p) {
  return multiply(multiply(f, p), f.inverse());
}

ReducedWord power(const ReducedWord& w, int e) {
  if (e < 0) throw input_error("power exponent must be >= 0");
  ReducedWord out{Alphabet(w.rank())};
  for (int i = 0; i < e; ++i) out = multiply(out, w);
  return out;
}

BallEnumeration enumerate_ball(const Alphabet& a, int radius, std::uint64_t budget) {
  if (radius < 0) throw input_error("ball radius must be >= 0");
  BallEnumeration out;
  out.words.emplace_back(a);
  out.sphere_sizes.push_back(1);

  const std::vector<Letter> letters = a.letters();
  std::size_t sphere_begin = 0, sphere_end = 1;
  for (int k = 1; k <= radius; ++k) {
    for (std::size_t i = sphere_begin; i < sphere_end; ++i) {
      for (Letter l : letters) {
        const auto& w = out.words[i].letters();
        if (!w.empty() && w.back() == inverse_letter(l)) continue;
        if (out.words.size() >= budget)
          throw resource_error("enumeration budget of " + std::to_string(budget) +
                               " words exceeded at radius " + std::to_string(k));
        std::vector<Letter> next = w;
        next.push_back(l);
        out.words.push_back(ReducedWord::reduce(a, next));
      }
    }
    out.sphere_sizes.push_back(out.words.size() - sphere_end);
    sphere_begin = sphere_end;
    sphere_end = out.words.size();
  }
  return out;
}

}  // namespace sgt
