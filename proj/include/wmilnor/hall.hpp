// Basic commutators in the [x,y] = x ȳ x̄ y convention and unique
// factorization g = C_1^{e_1} ⋯ C_N^{e_N} h, h ∈ Γ_{k+1}.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wmilnor/magnus.hpp"
#include "wmilnor/words.hpp"

namespace wmilnor {

/// A basic commutator, referring to its children by ordinal in the owning
/// HallBasis. Leaves have left = right = -1.
struct BasicCommutator {
  std::size_t ordinal = 0;
  int length = 1;
  int generator = 0;  // leaves only
  long left = -1;
  long right = -1;

  bool is_leaf() const { return left < 0; }
};

/// All basic commutators of length <= max_len in rank n, in the fixed order:
/// by length, then lexicographically on (left ordinal, right ordinal).
class HallBasis {
 public:
  HallBasis(int rank, int max_len);

  int rank() const { return rank_; }
  int max_length() const { return max_len_; }
  std::size_t size() const { return elements_.size(); }
  const BasicCommutator& operator[](std::size_t ordinal) const { return elements_[ordinal]; }
  const std::vector<BasicCommutator>& elements() const { return elements_; }
  /// Ordinals [first, last) of the commutators of length `len`.
  std::pair<std::size_t, std::size_t> range_of_length(int len) const;
  std::size_t count_of_length(int len) const;

  /// The commutator as a reduced word.
  const Word& word(std::size_t ordinal) const { return words_[ordinal]; }
  /// `a1` for leaves, `[[a1,a2],a2]` for brackets.
  std::string bracket_string(std::size_t ordinal) const;
  /// Occurrences of each α_i (index i-1) in the bracket.
  std::vector<int> multiplicities(std::size_t ordinal) const;

 private:
  int rank_;
  int max_len_;
  std::vector<BasicCommutator> elements_;
  std::vector<Word> words_;
  std::vector<std::size_t> first_of_length_;  // index by length, plus sentinel
};

HallBasis generate_basic(int rank, int max_len);

/// Degree-length(C) homogeneous part of expand(C). Requires
/// policy.max_degree() >= length(C).
TruncatedSeries principal_part(const HallBasis& basis, std::size_t ordinal,
                               const TruncationPolicy& policy);

/// Rank over Q of the principal parts of the length-d basic commutators.
std::size_t principal_part_rank(const HallBasis& basis, int d);

struct HallFactorization {
  std::vector<Integer> exponents;  // one per basic commutator, basis order
  bool remainder_certified = false;
};

/// Exponents e with w = C_1^{e_1} ⋯ C_N^{e_N} h, computed degree by degree by
/// exact linear solves against principal parts. Throws InvariantViolation if
/// a solve is inconsistent or non-integral.
HallFactorization hall_factorize(const Word& w, int k);
HallFactorization hall_factorize(const Word& w, const HallBasis& basis);

/// C_1^{e_1} ⋯ C_N^{e_N} as a reduced word.
Word hall_product(const HallBasis& basis, const std::vector<Integer>& exponents);

}  // namespace wmilnor
