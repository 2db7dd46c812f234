#include <doctest.h>

#include "identities.hpp"
#include "random.hpp"
#include "wmilnor/error.hpp"
#include "wmilnor/words.hpp"

using namespace wmilnor;

namespace {

Word W(const char* text, int rank = 3) { return parse_word(text, rank); }

}  // namespace

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(reduce(Word::from_syllables(3, {{1, 1}, {1, -1}, {2, 1}})) == W("a2"));
  CHECK(reduce(Word(3)).empty());
  CHECK(reduce(Word::from_syllables(3, {{2, -1}, {2, 1}, {1, 1}, {1, -1}})).empty());
  CHECK_FALSE(Word::from_syllables(3, {{1, 1}, {1, -1}}).is_reduced());
}

TEST_CASE("multiply and invert") {
  CHECK(multiply(W("a1"), W("A1")).empty());
  CHECK(invert(W("a1 a2")) == W("A2 A1"));
  CHECK(multiply(W("a1 a2"), W("A2 a3")) == W("a1 a3"));
  CHECK_THROWS_AS(multiply(W("a1", 2), W("a1", 3)), RankMismatch);
}

TEST_CASE("conjugation and commutator conventions") {
  CHECK(conjugate(W("a1"), W("a2")) == W("A2 a1 a2"));
  CHECK(conjugate(W("a1"), Word(3)) == W("a1"));
  CHECK(conjugate(W("a1"), W("a1")) == W("a1"));
  CHECK(commutator(W("a1"), W("a2")) == W("a1 A2 A1 a2"));
  CHECK(commutator(W("a1"), W("a1")).empty());
  CHECK(commutator(W("a1"), Word(3)).empty());
}

TEST_CASE("linear commutators nest to the right") {
  CHECK(linear_commutator({W("a1")}) == W("a1"));
  CHECK(linear_commutator({W("a1"), W("a2")}) == commutator(W("a1"), W("a2")));
  CHECK(linear_commutator({W("a1"), W("a2"), W("a3")}) == commutator(W("a1"), commutator(W("a2"), W("a3"))));
  CHECK_THROWS(linear_commutator(std::span<const Word>{}));
}

TEST_CASE("exponent sums") {
  CHECK(exponent_sum(W("a1 a2 A1 A1"), 1) == -1);
  CHECK(exponent_sum(commutator(W("a1 a2"), W("a3 A1")), 1) == 0);
  CHECK(exponent_sum(Word(3), 2) == 0);
}

TEST_CASE("powers use run-length syllables") {
  CHECK(power(W("a1"), 5).syllables().size() == 1);
  CHECK(power(W("a1 a2"), -2) == W("A2 A1 A2 A1"));
  CHECK(power(W("a1 a2"), 0).empty());
}

TEST_CASE("text form") {
  CHECK(to_string(W("a1 A2 a1")) == "a1 A2 a1");
  CHECK(to_string(Word(2)) == "-");
  CHECK(parse_word("-", 2).empty());
  CHECK(parse_word("  ", 2).empty());
  CHECK_THROWS_WITH_AS(parse_word("a1 b2", 2), doctest::Contains("'b2'"), ParseError);
  CHECK_THROWS_WITH_AS(parse_word("a1 a3", 2), doctest::Contains("'a3'"), ParseError);
  CHECK_THROWS_AS(parse_word("a1 -", 2), ParseError);
}

TEST_CASE("randomized group laws") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen::uniform(rng, 1, 4);
    const Word u = gen::word_up_to(rng, n, 8), v = gen::word_up_to(rng, n, 8), w = gen::word_up_to(rng, n, 8);
    CHECK(reduce(reduce(u)) == reduce(u));
    CHECK(multiply(u, invert(u)).empty());
    CHECK(multiply(multiply(u, v), w) == multiply(u, multiply(v, w)));
    CHECK(conjugate(u, v * w) == conjugate(conjugate(u, v), w));
    for (int g = 1; g <= n; ++g) CHECK(exponent_sum(u * v, g) == exponent_sum(u, g) + exponent_sum(v, g));
    std::vector<Letter> letters = u.letters();
    CHECK(Word::from_letters(n, letters) == u);
    CHECK(parse_word(to_string(u), n) == u);
  }
}

TEST_CASE("commutator identities on random triples") {
  gen::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen::uniform(rng, 1, 4);
    const Word a = gen::word_up_to(rng, n, 8), b = gen::word_up_to(rng, n, 8), c = gen::word_up_to(rng, n, 8);
    const auto bad = identities::failures(a, b, c);
    CHECK_MESSAGE(bad.empty(), to_string(a), " | ", to_string(b), " | ", to_string(c));
  }
}
