// Arrow presentations at the level of words.
//
// A union of adjacent w-arrow heads is recorded by the word it spells, so a
// w-tree becomes its commutator word and surgery becomes a Gauss-code
// construction. Every presentation here is sorted: along each component all
// tails come before all heads.
#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "wmilnor/gauss.hpp"
#include "wmilnor/words.hpp"

namespace wmilnor {

/// A w-tree as a binary bracketing. Leaves carry a generator, a twist and an
/// optional conjugator; internal nodes carry a twist.
class CommTree {
 public:
  static CommTree leaf(int generator, bool twisted = false, Word conjugator = Word());
  static CommTree node(CommTree left, CommTree right, bool twisted = false);

  bool is_leaf() const;
  bool twisted() const;
  int generator() const;            // leaves only
  const Word& conjugator() const;   // leaves only
  const CommTree& left() const;     // nodes only
  const CommTree& right() const;    // nodes only
  /// Number of leaves.
  int degree() const;
  std::vector<int> leaf_generators() const;

 private:
  struct Node;
  explicit CommTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Leaf ↦ α_g (ᾱ_g if twisted), then x ↦ x^w for a conjugator w; node ↦
/// [left, right], inverted if twisted.
Word tree_word(const CommTree& t, int rank);

struct SlotLetter {
  int generator = 1;
  int sign = 1;
  Word conjugator;  // empty or rank 0 means none
};

/// A union of adjacent heads on one component, read as a word.
struct Slot {
  int component = 1;
  std::vector<SlotLetter> letters;

  static Slot from_word(int component, const Word& w);
  /// Product of the letters' conjugates.
  Word word(int rank) const;
};

struct ArrowPresentation {
  explicit ArrowPresentation(int rank);

  int rank;
  std::vector<std::vector<Slot>> slots;  // per component, in order of heads
};

/// Reduced letters of the slot word, conjugators written out: one elementary
/// arrow per letter.
std::vector<Letter> expand_letters(const Slot& slot, int rank);

/// Each expanded letter (j, ε) of a slot on component i becomes a crossing of
/// sign ε whose over-passage is appended to the tail zone of component j and
/// whose under-passage is appended to the head zone of component i.
StringLinkCode surgery(const ArrowPresentation& p);

/// One slot per component carrying words[i-1]. The i-th preferred longitude
/// of the result is α_i^{-e_i} w_i with e_i the α_i exponent sum of w_i.
StringLinkCode realize_sorted(const std::vector<Word>& words, int rank);

/// Inserts tree_word(t) as a new slot at `position` among component i's
/// slots. Every leaf of t must carry generator i.
ArrowPresentation insert_self_tree(const ArrowPresentation& p, int i, const CommTree& t,
                                   std::size_t position);

/// Realizer input: one `i: WORD` line per component (components 1..n in
/// order, `/` may replace a newline, `-` is the empty word). The rank is the
/// number of lines.
std::vector<Word> parse_realizer_input(std::string_view text);

}  // namespace wmilnor
