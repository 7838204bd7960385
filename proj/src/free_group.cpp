#include "cvn/free_group.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "cvn/rational.hpp"

namespace cvn {

// Rational helpers live here to avoid a translation unit of their own.

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (s.find_first_of(".eE") == std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  }
  // Decimal literal: digits with an optional point, then an optional exponent.
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  mpz_class mantissa = 0;
  long exponent = 0;
  bool digits = false, after_point = false;
  for (; pos < s.size(); ++pos) {
    const char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa = mantissa * 10 + (ch - '0');
      if (after_point) --exponent;
      digits = true;
    } else if (ch == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!digits) throw std::invalid_argument("bad rational '" + s + "'");
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw std::invalid_argument("bad rational '" + s + "'");
    std::size_t used = 0;
    try {
      exponent += std::stol(s.substr(pos + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in '" + s + "'");
    }
    if (pos + 1 + used != s.size()) throw std::invalid_argument("bad exponent in '" + s + "'");
  }
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

double to_double(const Rational& r) { return r.get_d(); }

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_between: empty interval");
  if (lo <= 0 && hi >= 0) return 0;
  if (hi < 0) return -simplest_between(-hi, -lo);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (lo == fl || Rational(fl + 1) <= hi) return lo == fl ? lo : Rational(fl + 1);
  const Rational rest = simplest_between(1 / (hi - fl), 1 / (lo - fl));
  return Rational(fl) + 1 / rest;
}

namespace {

void push_reduced(std::vector<Letter>& out, Letter x) {
  if (!out.empty() && out.back() == -x) {
    out.pop_back();
  } else {
    out.push_back(x);
  }
}

int letter_key(Letter x) { return x > 0 ? x : (1 << 20) - x; }

bool lex_less(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), letter_less);
}

std::vector<Letter> least_rotation(const std::vector<Letter>& w) {
  std::vector<Letter> best = w, rot = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (lex_less(rot, best)) best = rot;
  }
  return best;
}

std::strong_ordering shortlex(const std::vector<Letter>& u, const std::vector<Letter>& v) {
  if (u.size() != v.size()) return u.size() <=> v.size();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) return letter_key(u[i]) <=> letter_key(v[i]);
  }
  return std::strong_ordering::equal;
}

}  // namespace

Word Word::reduce(std::span<const Letter> letters, int rank) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter x : letters) {
    if (x == 0 || x > rank || x < -rank) {
      throw std::invalid_argument("letter " + std::to_string(x) + " outside rank " +
                                  std::to_string(rank));
    }
    push_reduced(out, x);
  }
  return Word(std::move(out));
}

Word Word::generator(int index) { return Word(std::vector<Letter>{index}); }

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& x : out) x = -x;
  return Word(std::move(out));
}

Word Word::power(int k) const {
  const Word base = k < 0 ? inverse() : *this;
  Word out;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
  return out;
}

Word operator*(const Word& u, const Word& v) {
  std::vector<Letter> out = u.letters_;
  out.reserve(u.size() + v.size());
  for (Letter x : v.letters_) push_reduced(out, x);
  return Word(std::move(out));
}

std::strong_ordering operator<=>(const Word& u, const Word& v) {
  return shortlex(u.letters_, v.letters_);
}

CyclicWord CyclicWord::from_cyclically_reduced(std::vector<Letter> letters) {
  CyclicWord c;
  c.letters_ = least_rotation(letters);
  return c;
}

CyclicWord CyclicWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& x : out) x = -x;
  return from_cyclically_reduced(std::move(out));
}

CyclicWord CyclicWord::unoriented() const {
  CyclicWord inv = inverse();
  return lex_less(inv.letters_, letters_) ? inv : *this;
}

Word CyclicWord::as_word() const {
  Word w;
  for (Letter x : letters_) w = w * Word::generator(x);
  return w;
}

std::strong_ordering operator<=>(const CyclicWord& u, const CyclicWord& v) {
  return shortlex(u.letters_, v.letters_);
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto& l = w.letters();
  std::size_t i = 0, j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  const std::vector<Letter> core(l.begin() + static_cast<std::ptrdiff_t>(i),
                                 l.begin() + static_cast<std::ptrdiff_t>(j));
  std::vector<Letter> conj(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(i));
  CyclicReduction out;
  out.core = CyclicWord::from_cyclically_reduced(core);
  // core = p s with canonical rotation s p, so core = p (s p) p^-1.
  const auto& canon = out.core.letters();
  for (std::size_t shift = 0; shift < core.size(); ++shift) {
    if (std::equal(core.begin() + static_cast<std::ptrdiff_t>(shift), core.end(), canon.begin()) &&
        std::equal(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(shift),
                   canon.end() - static_cast<std::ptrdiff_t>(shift))) {
      for (std::size_t k = 0; k < shift; ++k) push_reduced(conj, core[k]);
      break;
    }
  }
  out.conjugator = Word::reduce(conj, 1 << 20);
  return out;
}

Word substitute(std::span<const Word> images, const Word& w) {
  std::vector<Letter> out;
  for (Letter x : w.letters()) {
    const Word& img = images[static_cast<std::size_t>((x > 0 ? x : -x) - 1)];
    if (x > 0) {
      for (Letter y : img.letters()) push_reduced(out, y);
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) {
        push_reduced(out, -*it);
      }
    }
  }
  return Word::reduce(out, static_cast<int>(images.size()));
}

AutoPair::AutoPair(std::vector<Word> fwd, std::vector<Word> inv)
    : fwd_(std::move(fwd)), inv_(std::move(inv)) {
  if (fwd_.size() != inv_.size() || fwd_.empty()) {
    throw std::invalid_argument("automorphism: image lists must have equal nonzero length");
  }
  const int n = rank();
  for (const Word& w : fwd_) (void)Word::reduce(w.letters(), n);
  for (const Word& w : inv_) (void)Word::reduce(w.letters(), n);
  for (int i = 1; i <= n; ++i) {
    const Word x = Word::generator(i);
    if (substitute(inv_, substitute(fwd_, x)) != x || substitute(fwd_, substitute(inv_, x)) != x) {
      throw std::invalid_argument("automorphism: supplied inverse fails on generator " +
                                  to_string(x));
    }
  }
}

AutoPair AutoPair::identity(int rank) {
  std::vector<Word> gens;
  for (int i = 1; i <= rank; ++i) gens.push_back(Word::generator(i));
  return AutoPair(gens, gens, Unchecked{});
}

Word AutoPair::apply(const Word& w) const { return substitute(fwd_, w); }
Word AutoPair::apply_inverse(const Word& w) const { return substitute(inv_, w); }

CyclicWord AutoPair::apply(const CyclicWord& c) const {
  return cyclic_reduce(apply(c.as_word())).core;
}

AutoPair compose(const AutoPair& phi, const AutoPair& psi) {
  if (phi.rank() != psi.rank()) throw std::invalid_argument("compose: rank mismatch");
  std::vector<Word> fwd, inv;
  for (const Word& w : psi.fwd_) fwd.push_back(phi.apply(w));
  for (const Word& w : phi.inv_) inv.push_back(psi.apply_inverse(w));
  return AutoPair(std::move(fwd), std::move(inv), AutoPair::Unchecked{});
}

AutoPair power(const AutoPair& phi, int k) {
  const AutoPair base = k < 0 ? phi.inverse() : phi;
  AutoPair out = AutoPair::identity(phi.rank());
  for (int i = 0; i < (k < 0 ? -k : k); ++i) out = compose(out, base);
  return out;
}

std::optional<Word> is_inner(const AutoPair& psi) { return inner_conjugator(psi.fwd()); }

std::optional<Word> inner_conjugator(std::span<const Word> images) {
  const int n = static_cast<int>(images.size());
  if (n == 0) return std::nullopt;
  const CyclicReduction first = cyclic_reduce(images[0]);
  if (first.core.letters() != std::vector<Letter>{1}) return std::nullopt;
  const Word& u = first.conjugator;
  auto conjugates_all = [&](const Word& w) {
    const Word winv = w.inverse();
    for (int i = 1; i <= n; ++i) {
      if (w * Word::generator(i) * winv != images[static_cast<std::size_t>(i - 1)]) {
        return false;
      }
    }
    return true;
  };
  if (n == 1) return conjugates_all(u) ? std::optional<Word>(u) : std::nullopt;
  // Every conjugator taking x_1 to psi(x_1) is u x_1^k; x_2 bounds |k|.
  const int bound = static_cast<int>((u.inverse() * images[1] * u).size()) + 1;
  for (int k = -bound; k <= bound; ++k) {
    const Word w = u * Word::generator(1).power(k);
    if (conjugates_all(w)) return w;
  }
  return std::nullopt;
}

AutoPair conjugation(const Word& w, int rank) {
  std::vector<Word> fwd, inv;
  for (int i = 1; i <= rank; ++i) {
    fwd.push_back(w * Word::generator(i) * w.inverse());
    inv.push_back(w.inverse() * Word::generator(i) * w);
  }
  return AutoPair(std::move(fwd), std::move(inv));
}

namespace {

std::vector<Word> generators(int rank) {
  std::vector<Word> g;
  for (int i = 1; i <= rank; ++i) g.push_back(Word::generator(i));
  return g;
}

void check_indices(int rank, int i, int j) {
  if (i < 1 || i > rank || j < 1 || j > rank || i == j) {
    throw std::invalid_argument("elementary automorphism: bad generator indices");
  }
}

}  // namespace

AutoPair right_multiply(int rank, int i, int j, int sign) {
  check_indices(rank, i, j);
  auto fwd = generators(rank), inv = generators(rank);
  const Word xj = Word::generator(sign > 0 ? j : -j);
  fwd[static_cast<std::size_t>(i - 1)] = Word::generator(i) * xj;
  inv[static_cast<std::size_t>(i - 1)] = Word::generator(i) * xj.inverse();
  return AutoPair(std::move(fwd), std::move(inv));
}

AutoPair left_multiply(int rank, int i, int j, int sign) {
  check_indices(rank, i, j);
  auto fwd = generators(rank), inv = generators(rank);
  const Word xj = Word::generator(sign > 0 ? j : -j);
  fwd[static_cast<std::size_t>(i - 1)] = xj * Word::generator(i);
  inv[static_cast<std::size_t>(i - 1)] = xj.inverse() * Word::generator(i);
  return AutoPair(std::move(fwd), std::move(inv));
}

AutoPair invert_generator(int rank, int i) {
  if (i < 1 || i > rank) throw std::invalid_argument("elementary automorphism: bad index");
  auto g = generators(rank);
  g[static_cast<std::size_t>(i - 1)] = Word::generator(-i);
  return AutoPair(g, g);
}

AutoPair swap_generators(int rank, int i, int j) {
  check_indices(rank, i, j);
  auto g = generators(rank);
  std::swap(g[static_cast<std::size_t>(i - 1)], g[static_cast<std::size_t>(j - 1)]);
  return AutoPair(g, g);
}

AutoPair random_elementary(int rank, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(1, rank);
  const int i = pick(rng);
  int j = pick(rng);
  while (rank > 1 && j == i) j = pick(rng);
  const int sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
  const int kind = std::uniform_int_distribution<int>(0, 9)(rng);
  if (rank == 1 || kind == 8) return invert_generator(rank, i);
  if (kind == 9) return swap_generators(rank, i, j);
  return kind % 2 == 0 ? right_multiply(rank, i, j, sign) : left_multiply(rank, i, j, sign);
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter x : w.letters()) {
    if (!s.empty()) s += ' ';
    const int idx = (x > 0 ? x : -x) - 1;
    s += static_cast<char>(x > 0 ? 'a' + idx : 'A' + idx);
  }
  return s;
}

std::string to_string(const CyclicWord& c) { return to_string(c.as_word()); }

Word parse_word(std::string_view text, int rank) {
  std::vector<Letter> letters;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '1') continue;
    if (ch >= 'a' && ch <= 'z') {
      letters.push_back(ch - 'a' + 1);
    } else if (ch >= 'A' && ch <= 'Z') {
      letters.push_back(-(ch - 'A' + 1));
    } else {
      throw std::invalid_argument(std::string("bad letter '") + ch + "' in word");
    }
  }
  return Word::reduce(letters, rank);
}

}  // namespace cvn
