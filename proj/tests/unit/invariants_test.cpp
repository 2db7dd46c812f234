#include <doctest.h>

#include "oracles.hpp"
#include "random.hpp"
#include "wmilnor/arrows.hpp"
#include "wmilnor/error.hpp"
#include "wmilnor/invariants.hpp"

using namespace wmilnor;

namespace {

Word g(int rank, int i) { return Word::generator(rank, i); }

const StringLinkCode& single() {
  static const StringLinkCode c = parse_string_link("1: U1+ / 2: O1+");
  return c;
}

// realize_sorted of [α2,[α2,α3]] on component 1
StringLinkCode nested() {
  return realize_sorted({commutator(g(3, 2), commutator(g(3, 2), g(3, 3))), Word(3), Word(3)}, 3);
}

constexpr EqualityMode kModes[] = {EqualityMode::Table, EqualityMode::Longitude, EqualityMode::Action};

}  // namespace

TEST_CASE("milnor indices") {
  CHECK(MilnorIndex{{1, 2, 1, 3}}.r() == 2);
  CHECK(MilnorIndex{{3}}.r() == 1);
  CHECK(MilnorIndex{{2}} < MilnorIndex{{1, 1}});
  CHECK(to_string(MilnorIndex{{2, 3, 1}}) == "2,3,1");
}

TEST_CASE("single invariants") {
  CHECK(milnor(StringLinkCode::trivial(3), {{1, 2, 3}}) == 0);
  CHECK(milnor(single(), {{2, 1}}) == 1);
  CHECK(milnor(single(), {{1, 2}}) == 0);
  CHECK(milnor(single(), {{1}}) == 0);
  CHECK_THROWS(milnor(single(), {{3, 1}}));
  CHECK_THROWS(milnor(single(), {{}}));
}

TEST_CASE("tables") {
  const auto t = milnor_table(single(), 1);
  CHECK(t.max_length == 2);
  std::vector<std::pair<MilnorIndex, Integer>> nonzero;
  for (const auto& e : t.entries) {
    if (!e.second.is_zero()) nonzero.push_back(e);
  }
  REQUIRE(nonzero.size() == 1);
  CHECK(nonzero[0].first == MilnorIndex{{2, 1}});
  CHECK(t.at({{2, 1}}) == 1);
  CHECK_THROWS(t.at({{1, 1}}));
  CHECK(milnor_table(StringLinkCode::trivial(2), 2).is_zero());
  CHECK(milnor_table(single(), 3, 2).max_length == 2);
  CHECK(std::is_sorted(t.entries.begin(), t.entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; }));
}

TEST_CASE("table filter and pigeonhole bound") {
  gen::Rng rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen::uniform(rng, 1, 3), k = gen::uniform(rng, 1, 2);
    const auto c = gen::code(rng, n, gen::uniform(rng, 0, 6));
    const auto t = milnor_table(c, k);
    std::size_t expected = 0;
    // brute-force count of sequences with r(I) <= k, |I| <= nk
    for (int len = 1; len <= n * k; ++len) {
      std::vector<int> I(len, 1);
      for (;;) {
        if (MilnorIndex{I}.r() <= k) ++expected;
        int pos = len - 1;
        while (pos >= 0 && I[pos] == n) I[pos--] = 1;
        if (pos < 0) break;
        ++I[pos];
      }
    }
    CHECK(t.entries.size() == expected);
    for (const auto& [I, mu] : t.entries) {
      CHECK(I.r() <= k);
      CHECK(I.length() <= static_cast<std::size_t>(n * k));
      if (I.r() == static_cast<int>(I.length())) CHECK(mu == 0);
    }
  }
}

TEST_CASE("tables agree with single invariants") {
  gen::Rng rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen::uniform(rng, 2, 3);
    const auto c = gen::code(rng, n, gen::uniform(rng, 1, 5));
    for (const auto& [I, mu] : milnor_table(c, 1).entries) CHECK(milnor(c, I) == mu);
  }
}

TEST_CASE("k-equality") {
  for (EqualityMode m : kModes) {
    CHECK(k_equal(single(), single(), 2, m).equal);
    const auto one = k_equal(nested(), StringLinkCode::trivial(3), 1, m);
    CHECK(one.equal);
    CHECK_FALSE(one.witness.has_value());
    const auto two = k_equal(nested(), StringLinkCode::trivial(3), 2, m);
    CHECK_FALSE(two.equal);
    REQUIRE(two.witness.has_value());
    CHECK(two.witness->r() <= 2);
    CHECK(milnor(nested(), *two.witness) != 0);
    CHECK_FALSE(k_equal(single(), StringLinkCode::trivial(2), 1, m).equal);
    CHECK_THROWS_AS(k_equal(single(), StringLinkCode::trivial(3), 1, m), RankMismatch);
  }
}

TEST_CASE("the nested commutator's degree-three part") {
  const Word w = commutator(g(3, 2), commutator(g(3, 2), g(3, 3)));
  const auto naive = oracle::naive_expand(w, 3);
  CHECK(naive.coeff({3, 2, 2}) == 1);
  CHECK(naive.coeff({2, 3, 2}) == -2);
  CHECK(naive.coeff({2, 2, 3}) == 1);
  CHECK(milnor(nested(), {{2, 2, 3, 1}}) == 1);
  CHECK(milnor(nested(), {{2, 3, 2, 1}}) == -2);
}

TEST_CASE("actions") {
  CHECK(action(StringLinkCode::trivial(3), 2).is_identity());
  CHECK(action(StringLinkCode::trivial(3), 2) == KReducedAction::identity(3, 2));

  const auto phi = action(single(), 1);
  const auto p = TruncationPolicy::reduced(2, 1);
  CHECK(phi.images()[0] == expand(conjugate(g(2, 1), g(2, 2)), p));
  CHECK(phi.images()[1] == expand(g(2, 2), p));
  CHECK(action_apply(phi, g(2, 1)) == expand(parse_word("A2 a1 a2", 2), p));
  CHECK(action_apply(phi, Word(2)).is_one());
  CHECK(action_apply(KReducedAction::identity(2, 2), parse_word("a1 a2 A1", 2)) ==
        expand(parse_word("a1 a2 A1", 2), TruncationPolicy::reduced(2, 2)));
  CHECK_THROWS_AS(action_apply(phi, g(3, 1)), RankMismatch);
  for (const auto& r : phi.residues()) CHECK(r.constant_term() == 1);
  for (int i = 1; i <= 2; ++i) CHECK(coefficient(phi.images()[i - 1], Monomial{i}) == 1);
}

TEST_CASE("action_apply is multiplicative and matches conjugation") {
  gen::Rng rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen::uniform(rng, 2, 3), k = gen::uniform(rng, 1, 2);
    std::vector<Word> lambdas;
    for (int i = 0; i < n; ++i) lambdas.push_back(gen::word_up_to(rng, n, 4));
    // realize λ_i exactly by using words with zero α_i exponent
    for (int i = 0; i < n; ++i) lambdas[i] = power(g(n, i + 1), -exponent_sum(lambdas[i], i + 1)) * lambdas[i];
    const auto phi = action(realize_sorted(lambdas, n), k);
    const Word u = gen::word_up_to(rng, n, 5), v = gen::word_up_to(rng, n, 5);
    CHECK(action_apply(phi, u * v) == action_apply(phi, u) * action_apply(phi, v));
    Word image(n);
    for (const Letter& l : u.letters()) image = image * power(conjugate(g(n, l.generator), lambdas[l.generator - 1]), l.sign);
    CHECK(action_apply(phi, u) == expand(image, TruncationPolicy::reduced(n, k)));
  }
}

TEST_CASE("composition follows stacking") {
  gen::Rng rng(89);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = gen::uniform(rng, 2, 3), k = gen::uniform(rng, 1, 2);
    const auto a = gen::code(rng, n, gen::uniform(rng, 0, 5));
    const auto b = gen::code(rng, n, gen::uniform(rng, 0, 5));
    const auto c = gen::code(rng, n, gen::uniform(rng, 0, 4));
    const auto pa = action(a, k), pb = action(b, k), pc = action(c, k);
    CHECK(action_compose(pa, pb) == action(stack(a, b), k));
    CHECK(action_compose(action_compose(pa, pb), pc) == action_compose(pa, action_compose(pb, pc)));
    CHECK(action_compose(pa, KReducedAction::identity(n, k)) == pa);
    CHECK(action_compose(KReducedAction::identity(n, k), pa) == pa);
    const auto inv = action_invert(pa);
    CHECK(action_compose(pa, inv).is_identity());
    CHECK(action_compose(inv, pa).is_identity());
  }
  CHECK(action_compose(action_invert(action(single(), 2)), action(single(), 2)).is_identity());
  CHECK_THROWS(action_compose(action(single(), 1), action(single(), 2)));
}

TEST_CASE("link vanishing") {
  for (int k = 1; k <= 3; ++k) CHECK(link_vanishing(LinkCode::unlink(3), k));
  const auto clasp = parse_link("1: O1+ U2+ / 2: U1+ O2+");
  CHECK_FALSE(link_vanishing(clasp, 1));
  const auto closed = closure(nested());
  CHECK(link_vanishing(closed, 1));
  CHECK_FALSE(link_vanishing(closed, 2));
}

TEST_CASE("link vanishing does not depend on basepoints") {
  gen::Rng rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen::uniform(rng, 1, 3), k = gen::uniform(rng, 1, 2);
    const auto link = gen::link(rng, n, gen::uniform(rng, 0, 5));
    const bool base = link_vanishing(link, k);
    for (int i = 0; i < n; ++i) {
      for (std::size_t p = 1; p < link.components()[i].size(); ++p) {
        std::vector<std::size_t> bp(n, 0);
        bp[i] = p;
        CHECK(link_vanishing(link, k, bp) == base);
      }
    }
  }
}
