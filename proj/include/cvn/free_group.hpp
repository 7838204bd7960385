#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cvn {

/// Letter of F_N: +i is the generator x_i, -i its inverse (1 <= i <= N).
using Letter = int;

/// Total order on signed letters used for canonical forms: every positive
/// letter precedes every negative one, ties broken by index.
inline bool letter_less(Letter a, Letter b) {
  const bool pa = a > 0, pb = b > 0;
  if (pa != pb) return pa;
  return (pa ? a : -a) < (pb ? b : -b);
}

/// Freely reduced word. Construct through reduce(); all operations keep the
/// result reduced.
class Word {
 public:
  Word() = default;

  /// Free reduction of an arbitrary letter sequence. Throws
  /// std::invalid_argument for a letter outside {±1..±rank}.
  static Word reduce(std::span<const Letter> letters, int rank);
  static Word generator(int index);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word power(int k) const;

  friend Word operator*(const Word& u, const Word& v);
  friend bool operator==(const Word&, const Word&) = default;
  /// Shortlex with letter_less.
  friend std::strong_ordering operator<=>(const Word& u, const Word& v);

 private:
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;
};

/// Conjugacy class of F_N, stored as the cyclically reduced representative
/// that is least among its rotations (lexicographic with letter_less).
class CyclicWord {
 public:
  CyclicWord() = default;

  /// Canonical rotation of a word that is already cyclically reduced.
  static CyclicWord from_cyclically_reduced(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  CyclicWord inverse() const;
  /// The lesser of this class and its inverse; used to identify [a] with [a^-1].
  CyclicWord unoriented() const;
  Word as_word() const;

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend std::strong_ordering operator<=>(const CyclicWord& u, const CyclicWord& v);

 private:
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  CyclicWord core;
  Word conjugator;  // input = conjugator * core * conjugator^-1
};

CyclicReduction cyclic_reduce(const Word& w);

/// Automorphism of F_N with a verified inverse. fwd[i] is the image of
/// x_{i+1}; inv[i] the image under the inverse.
class AutoPair {
 public:
  /// Throws std::invalid_argument unless fwd and inv are mutually inverse.
  AutoPair(std::vector<Word> fwd, std::vector<Word> inv);

  static AutoPair identity(int rank);

  int rank() const { return static_cast<int>(fwd_.size()); }
  const std::vector<Word>& fwd() const { return fwd_; }
  const std::vector<Word>& inv() const { return inv_; }

  Word apply(const Word& w) const;
  Word apply_inverse(const Word& w) const;
  CyclicWord apply(const CyclicWord& c) const;
  AutoPair inverse() const { return AutoPair(inv_, fwd_, Unchecked{}); }

  friend bool operator==(const AutoPair&, const AutoPair&) = default;

 private:
  struct Unchecked {};
  AutoPair(std::vector<Word> fwd, std::vector<Word> inv, Unchecked)
      : fwd_(std::move(fwd)), inv_(std::move(inv)) {}
  friend AutoPair compose(const AutoPair&, const AutoPair&);

  std::vector<Word> fwd_;
  std::vector<Word> inv_;
};

Word substitute(std::span<const Word> images, const Word& w);

/// Composition convention, used throughout the library: compose(phi, psi) is
/// the map w -> phi(psi(w)). With the right action of Out(F_N) on markings
/// (h -> h phi) this makes act(act(x, phi), psi) == act(x, compose(phi, psi)).
AutoPair compose(const AutoPair& phi, const AutoPair& psi);
AutoPair power(const AutoPair& phi, int k);

/// Returns w with psi(x_i) = w x_i w^-1 for every generator, if psi is inner.
std::optional<Word> is_inner(const AutoPair& psi);
/// Same test for an endomorphism given only by generator images.
std::optional<Word> inner_conjugator(std::span<const Word> images);

/// Conjugation x -> w x w^-1.
AutoPair conjugation(const Word& w, int rank);

/// Nielsen generators: x_i -> x_i x_j^e (right), x_i -> x_j^e x_i (left),
/// x_i -> x_i^-1, and the transposition of x_i and x_j.
AutoPair right_multiply(int rank, int i, int j, int sign);
AutoPair left_multiply(int rank, int i, int j, int sign);
AutoPair invert_generator(int rank, int i);
AutoPair swap_generators(int rank, int i, int j);
AutoPair random_elementary(int rank, std::mt19937_64& rng);

/// Text form: generators a, b, c, ...; upper case for inverses; "1" for the
/// empty word. Tokens may be separated by spaces or run together.
std::string to_string(const Word& w);
std::string to_string(const CyclicWord& c);
Word parse_word(std::string_view text, int rank);

}  // namespace cvn
