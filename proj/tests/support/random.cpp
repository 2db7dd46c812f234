#include "random.hpp"

namespace gen {

using namespace wmilnor;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Word word(Rng& rng, int rank, int len) {
  std::vector<Letter> letters;
  while (static_cast<int>(letters.size()) < len) {
    Letter l{uniform(rng, 1, rank), uniform(rng, 0, 1) ? 1 : -1};
    if (!letters.empty() && letters.back().generator == l.generator && letters.back().sign == -l.sign) continue;
    letters.push_back(l);
  }
  return Word::from_letters(rank, letters);
}

Word word_up_to(Rng& rng, int rank, int max_len) { return word(rng, rank, uniform(rng, 0, max_len)); }

Word commutator_word(Rng& rng, int rank, int max_len) {
  for (;;) {
    auto piece = [&] { return commutator(word_up_to(rng, rank, 2), word_up_to(rng, rank, 2)); };
    Word w = piece();
    if (uniform(rng, 0, 2) == 0) w = w * piece();
    if (uniform(rng, 0, 3) == 0) w = commutator(word_up_to(rng, rank, 1), w);
    if (static_cast<int>(w.length()) <= max_len) return w;
  }
}

namespace {

PassageSequences random_sequences(Rng& rng, int n, int crossings) {
  PassageSequences comps(n);
  for (long c = 1; c <= crossings; ++c) {
    const int sign = uniform(rng, 0, 1) ? 1 : -1;
    for (Role role : {Role::Over, Role::Under}) {
      auto& seq = comps[uniform(rng, 0, n - 1)];
      seq.insert(seq.begin() + uniform(rng, 0, static_cast<int>(seq.size())), Passage{c, role, sign});
    }
  }
  return comps;
}

}  // namespace

StringLinkCode code(Rng& rng, int n, int crossings) { return StringLinkCode(random_sequences(rng, n, crossings)); }
LinkCode link(Rng& rng, int n, int crossings) { return LinkCode(random_sequences(rng, n, crossings)); }

Move move(Rng& rng, const StringLinkCode& c, bool allow_delete) {
  const int n = c.size();
  auto position = [&](int comp) {
    return static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(c.component(comp).size())));
  };
  if (allow_delete && uniform(rng, 0, 2) == 0) {
    std::vector<Move> sites;
    for (const Move& m : deletion_sites(c)) {
      if (!std::holds_alternative<OCSwap>(m)) sites.push_back(m);
    }
    if (!sites.empty()) return sites[uniform(rng, 0, static_cast<int>(sites.size()) - 1)];
  }
  switch (uniform(rng, 0, 2)) {
    case 0: {
      const int comp = uniform(rng, 1, n);
      return R1Insert{comp, position(comp), uniform(rng, 0, 1) ? 1 : -1, uniform(rng, 0, 1) == 1};
    }
    case 1: {
      std::vector<Move> swaps;
      for (const Move& m : deletion_sites(c)) {
        if (std::holds_alternative<OCSwap>(m)) swaps.push_back(m);
      }
      if (!swaps.empty()) return swaps[uniform(rng, 0, static_cast<int>(swaps.size()) - 1)];
      [[fallthrough]];
    }
    default: {
      const int uc = uniform(rng, 1, n);
      const int oc = uniform(rng, 1, n);
      return R2Insert{uc, position(uc), oc, position(oc), uniform(rng, 0, 1) ? 1 : -1, uniform(rng, 0, 1) == 1};
    }
  }
}

CommTree self_tree(Rng& rng, int rank, int i, int degree) {
  if (degree == 1) {
    const Word conj = uniform(rng, 0, 1) ? word_up_to(rng, rank, 2) : Word(rank);
    return CommTree::leaf(i, uniform(rng, 0, 1) == 1, conj);
  }
  const int left = uniform(rng, 1, degree - 1);
  return CommTree::node(self_tree(rng, rank, i, left), self_tree(rng, rank, i, degree - left),
                        uniform(rng, 0, 3) == 0);
}

}  // namespace gen
