// Free-group words with the commutator and conjugation conventions
//
//   [x, y] = x ȳ x̄ y        x^y = ȳ x y
//
// used throughout the library. Words are run-length compressed and always
// carry the rank of their ambient free group.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wmilnor {

/// A single letter α_g^{±1}. Generators are 1-based.
struct Letter {
  int generator = 1;
  int sign = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// α_g^exponent, exponent != 0 in reduced words.
struct Syllable {
  int generator = 1;
  std::int64_t exponent = 1;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(int rank);

  /// α_i in F_rank.
  static Word generator(int rank, int i);
  /// Reduced word spelled by `letters`.
  static Word from_letters(int rank, std::span<const Letter> letters);
  static Word from_letters(int rank, std::initializer_list<Letter> letters);
  /// Stores `syllables` as given (possibly unreduced); see reduce().
  static Word from_syllables(int rank, std::vector<Syllable> syllables);

  int rank() const { return rank_; }
  bool empty() const { return syllables_.empty(); }
  /// Number of letters.
  std::size_t length() const;
  const std::vector<Syllable>& syllables() const { return syllables_; }
  std::vector<Letter> letters() const;
  bool is_reduced() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  int rank_ = 0;
  std::vector<Syllable> syllables_;
};

Word reduce(const Word& w);
Word multiply(const Word& u, const Word& v);
Word invert(const Word& w);
Word power(const Word& w, std::int64_t e);
/// ȳ x y
Word conjugate(const Word& x, const Word& y);
/// x ȳ x̄ y
Word commutator(const Word& x, const Word& y);
/// [x1, [x2, [..., [x_{k-1}, x_k]...]]]; throws on an empty sequence.
Word linear_commutator(std::span<const Word> entries);
Word linear_commutator(std::initializer_list<Word> entries);
std::int64_t exponent_sum(const Word& w, int generator);

inline Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

/// Token form: `a1 A2 a1` (capital letter = inverse letter). The empty word
/// is written `-`.
std::string to_string(const Word& w);
/// Accepts the token form; `-` or blank text is the empty word. Generator
/// indices must lie in 1..rank.
Word parse_word(std::string_view text, int rank);

}  // namespace wmilnor
