#include "wmilnor/arrows.hpp"

#include <cctype>
#include <charconv>

#include "wmilnor/error.hpp"

namespace wmilnor {

struct CommTree::Node {
  bool twisted = false;
  int generator = 0;
  Word conjugator;
  std::vector<CommTree> children;  // empty for leaves, else {left, right}
};

CommTree CommTree::leaf(int generator, bool twisted, Word conjugator) {
  if (generator < 1) throw std::invalid_argument("CommTree: generator must be >= 1");
  return CommTree(std::make_shared<const Node>(Node{twisted, generator, std::move(conjugator), {}}));
}

CommTree CommTree::node(CommTree left, CommTree right, bool twisted) {
  return CommTree(std::make_shared<const Node>(Node{twisted, 0, Word(), {std::move(left), std::move(right)}}));
}

bool CommTree::is_leaf() const { return node_->children.empty(); }
bool CommTree::twisted() const { return node_->twisted; }
int CommTree::generator() const { return node_->generator; }
const Word& CommTree::conjugator() const { return node_->conjugator; }

const CommTree& CommTree::left() const {
  if (is_leaf()) throw std::logic_error("CommTree::left on a leaf");
  return node_->children[0];
}

const CommTree& CommTree::right() const {
  if (is_leaf()) throw std::logic_error("CommTree::right on a leaf");
  return node_->children[1];
}

int CommTree::degree() const { return is_leaf() ? 1 : left().degree() + right().degree(); }

std::vector<int> CommTree::leaf_generators() const {
  if (is_leaf()) return {generator()};
  std::vector<int> out = left().leaf_generators();
  for (int g : right().leaf_generators()) out.push_back(g);
  return out;
}

namespace {

Word conjugated(Word x, const Word& w, int rank) {
  if (w.empty()) return x;
  if (w.rank() != rank) throw RankMismatch("conjugator rank differs from the tree rank");
  return conjugate(x, w);
}

}  // namespace

Word tree_word(const CommTree& t, int rank) {
  if (t.is_leaf()) {
    Word x = Word::generator(rank, t.generator());
    if (t.twisted()) x = invert(x);
    return conjugated(std::move(x), t.conjugator(), rank);
  }
  Word c = commutator(tree_word(t.left(), rank), tree_word(t.right(), rank));
  return t.twisted() ? invert(c) : c;
}

Slot Slot::from_word(int component, const Word& w) {
  Slot s{component, {}};
  for (const Letter& l : w.letters()) s.letters.push_back({l.generator, l.sign, Word()});
  return s;
}

Word Slot::word(int rank) const {
  Word out(rank);
  for (const SlotLetter& l : letters) {
    Word x = Word::generator(rank, l.generator);
    if (l.sign < 0) x = invert(x);
    out = multiply(out, conjugated(std::move(x), l.conjugator, rank));
  }
  return out;
}

ArrowPresentation::ArrowPresentation(int rank) : rank(rank), slots(rank) {
  if (rank < 1) throw std::invalid_argument("ArrowPresentation: rank must be >= 1");
}

std::vector<Letter> expand_letters(const Slot& slot, int rank) { return slot.word(rank).letters(); }

StringLinkCode surgery(const ArrowPresentation& p) {
  const int n = p.rank;
  std::vector<std::vector<Passage>> tails(n), heads(n);
  long next_id = 1;
  for (int i = 0; i < n; ++i) {
    for (const Slot& slot : p.slots[i]) {
      if (slot.component != i + 1) throw std::invalid_argument("surgery: slot filed under the wrong component");
      for (const Letter& l : expand_letters(slot, n)) {
        tails[l.generator - 1].push_back({next_id, Role::Over, l.sign});
        heads[i].push_back({next_id, Role::Under, l.sign});
        ++next_id;
      }
    }
  }
  PassageSequences comps(n);
  for (int i = 0; i < n; ++i) {
    comps[i] = std::move(tails[i]);
    comps[i].insert(comps[i].end(), heads[i].begin(), heads[i].end());
  }
  return StringLinkCode(std::move(comps));
}

StringLinkCode realize_sorted(const std::vector<Word>& words, int rank) {
  if (static_cast<int>(words.size()) != rank) {
    throw RankMismatch("realize_sorted: " + std::to_string(words.size()) + " words for rank " +
                       std::to_string(rank));
  }
  ArrowPresentation p(rank);
  for (int i = 0; i < rank; ++i) {
    if (words[i].rank() != rank && !words[i].empty()) throw RankMismatch("realize_sorted: word rank differs");
    if (!words[i].empty()) p.slots[i].push_back(Slot::from_word(i + 1, words[i]));
  }
  return surgery(p);
}

ArrowPresentation insert_self_tree(const ArrowPresentation& p, int i, const CommTree& t,
                                   std::size_t position) {
  if (i < 1 || i > p.rank) throw std::invalid_argument("insert_self_tree: component out of range");
  for (int g : t.leaf_generators()) {
    if (g != i) {
      throw std::invalid_argument("insert_self_tree: leaf labeled " + std::to_string(g) +
                                  " on a self tree of component " + std::to_string(i));
    }
  }
  auto& slots = p.slots[i - 1];
  if (position > slots.size()) throw std::invalid_argument("insert_self_tree: position out of range");
  ArrowPresentation out = p;
  out.slots[i - 1].insert(out.slots[i - 1].begin() + static_cast<long>(position),
                          Slot::from_word(i, tree_word(t, p.rank)));
  return out;
}

std::vector<Word> parse_realizer_input(std::string_view text) {
  std::vector<std::string_view> bodies;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of("\n/", start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) continue;
    const std::size_t colon = line.find(':', i);
    long label = 0;
    std::string_view head = colon == std::string_view::npos ? line.substr(i) : line.substr(i, colon - i);
    while (!head.empty() && std::isspace(static_cast<unsigned char>(head.back()))) head.remove_suffix(1);
    auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), label);
    if (colon == std::string_view::npos || head.empty() || ec != std::errc() || ptr != head.data() + head.size()) {
      throw ParseError("expected 'INT:' component label, got '" + std::string(head) + "'");
    }
    if (label != static_cast<long>(bodies.size()) + 1) {
      throw ParseError("component label '" + std::string(head) + "' out of order (expected " +
                       std::to_string(bodies.size() + 1) + ")");
    }
    bodies.push_back(line.substr(colon + 1));
  }
  if (bodies.empty()) throw ParseError("empty realizer input: expected at least one component line");
  const int rank = static_cast<int>(bodies.size());
  std::vector<Word> out;
  for (std::string_view b : bodies) out.push_back(parse_word(b, rank));
  return out;
}

}  // namespace wmilnor
