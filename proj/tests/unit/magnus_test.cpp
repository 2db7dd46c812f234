#include <doctest.h>

#include "oracles.hpp"
#include "random.hpp"
#include "wmilnor/error.hpp"
#include "wmilnor/magnus.hpp"

using namespace wmilnor;

namespace {

TruncatedSeries S(const TruncationPolicy& p, std::initializer_list<std::pair<Monomial, int>> terms) {
  std::vector<std::pair<Monomial, Integer>> t;
  for (const auto& [m, c] : terms) t.emplace_back(m, c);
  return TruncatedSeries::from_terms(p, t);
}

TruncatedSeries random_series(gen::Rng& rng, const TruncationPolicy& p, int n, int q) {
  std::vector<std::pair<Monomial, Integer>> t;
  const int count = gen::uniform(rng, 0, 8);
  for (int e = 0; e < count; ++e) {
    std::vector<int> m;
    const int d = gen::uniform(rng, 0, q);
    for (int s = 0; s < d; ++s) m.push_back(gen::uniform(rng, 1, n));
    t.emplace_back(Monomial(m), gen::uniform(rng, -3, 3));
  }
  return TruncatedSeries::from_terms(p, t);
}

}  // namespace

TEST_CASE("monomial order is degree then lexicographic") {
  CHECK(Monomial{2} < Monomial{1, 1});
  CHECK(Monomial{1, 2} < Monomial{2, 1});
  CHECK(Monomial{} < Monomial{1});
  CHECK(to_string(Monomial{1, 2, 1}) == "X1.X2.X1");
  CHECK(to_string(Monomial{}) == "1");
}

TEST_CASE("policies") {
  const auto rk = TruncationPolicy::reduced(3, 2);
  CHECK(rk.admits(Monomial{1, 1, 2, 2, 3, 3}));
  CHECK_FALSE(rk.admits(Monomial{1, 1, 1}));
  const auto rik = TruncationPolicy::reduced_at(3, 2, 1);
  CHECK_FALSE(rik.admits(Monomial{1, 2, 1}));
  CHECK(rik.admits(Monomial{1, 2, 2, 3, 3}));
  CHECK(rik.is_quotient_of(rk));
  CHECK_FALSE(rk.is_quotient_of(rik));
  CHECK_THROWS(TruncationPolicy(2, -1));
  CHECK_THROWS(TruncationPolicy(2, 3, {1, 0}));
}

TEST_CASE("every monomial of degree > nk dies under caps k+1") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 2; ++k) {
      const auto p = TruncationPolicy::with_caps(n, std::vector<int>(n, k + 1));
      const int d = n * k + 1;
      std::vector<int> m(d, 1);
      bool any = false;
      for (;;) {
        any = any || p.admits(Monomial(m));
        int pos = d - 1;
        while (pos >= 0 && m[pos] == n) m[pos--] = 1;
        if (pos < 0) break;
        ++m[pos];
      }
      CHECK_FALSE(any);
      CHECK(p.max_degree() == n * k);
    }
  }
}

TEST_CASE("series products") {
  const auto p = TruncationPolicy::total_degree(2, 4);
  const auto x1 = TruncatedSeries::variable(p, 1), x2 = TruncatedSeries::variable(p, 2);
  const auto one = TruncatedSeries::one(p);
  CHECK(one * (one + x1) == one + x1);
  CHECK((one + x1) * series_inverse(one + x1) == one);
  CHECK((one + x1) * (one + x2) == S(p, {{{}, 1}, {{1}, 1}, {{2}, 1}, {{1, 2}, 1}}));
  CHECK(series_inverse(one) == one);
  CHECK(series_inverse(one + x1) == S(p, {{{}, 1}, {{1}, -1}, {{1, 1}, 1}, {{1, 1, 1}, -1}, {{1, 1, 1, 1}, 1}}));
  CHECK_THROWS(series_inverse(x1));
  CHECK_THROWS(series_inverse(Integer(2) * one));
  CHECK_THROWS(one * TruncatedSeries::one(TruncationPolicy::total_degree(2, 3)));
}

TEST_CASE("coefficients") {
  const auto p = TruncationPolicy::total_degree(2, 3);
  CHECK(coefficient(generator_power(p, 1, 1), Monomial{1}) == 1);
  const auto c = expand(parse_word("a1 A2 A1 a2", 2), p);
  CHECK(coefficient(c, Monomial{2, 1}) == 1);
  CHECK(coefficient(c, Monomial{1, 2}) == -1);
  CHECK(coefficient(TruncatedSeries::one(p), Monomial{1, 2}) == 0);
  CHECK_THROWS(coefficient(c, Monomial{1, 1, 1, 1}));
  CHECK_THROWS(TruncatedSeries::one(TruncationPolicy::reduced(2, 1)).coefficient(Monomial{1, 1}));
}

TEST_CASE("expand of generators and commutators") {
  const auto p = TruncationPolicy::total_degree(2, 2);
  CHECK(expand(parse_word("a1", 2), p) == generator_power(p, 1, 1));
  CHECK(expand(Word(2), p).is_one());
  CHECK(expand(parse_word("a1 A2 A1 a2", 2), p) == S(p, {{{}, 1}, {{2, 1}, 1}, {{1, 2}, -1}}));
  CHECK_THROWS_AS(expand(parse_word("a1", 3), p), RankMismatch);
}

TEST_CASE("generator powers are closed-form binomials") {
  const auto p = TruncationPolicy::total_degree(1, 6);
  for (int e = -5; e <= 5; ++e) {
    oracle::NaiveSeries naive = oracle::naive_one(1, 6);
    for (int s = 0; s < std::abs(e); ++s) naive = naive * oracle::naive_letter(1, 6, {}, 1, e > 0 ? 1 : -1);
    CHECK(oracle::same(naive, generator_power(p, 1, e)));
  }
}

TEST_CASE("ring axioms on random series") {
  gen::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen::uniform(rng, 1, 3), q = gen::uniform(rng, 1, 6);
    std::vector<int> caps;
    if (trial % 2) {
      for (int j = 0; j < n; ++j) caps.push_back(gen::uniform(rng, 1, 3));
    }
    const TruncationPolicy p(n, q, caps);
    const auto a = random_series(rng, p, n, q), b = random_series(rng, p, n, q), c = random_series(rng, p, n, q);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * TruncatedSeries::one(p) == a);
    CHECK(a - a == TruncatedSeries(p));
    const auto u = TruncatedSeries::one(p) + (a - TruncatedSeries::constant(p, a.constant_term()));
    CHECK((u * series_inverse(u)).is_one());
  }
}

TEST_CASE("expand agrees with the naive oracle and is multiplicative") {
  gen::Rng rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = gen::uniform(rng, 1, 3), q = gen::uniform(rng, 1, 5);
    std::vector<int> caps;
    if (trial % 3 == 0) {
      for (int j = 0; j < n; ++j) caps.push_back(gen::uniform(rng, 1, 4));
    }
    const TruncationPolicy p(n, q, caps);
    const Word u = gen::word_up_to(rng, n, 8), v = gen::word_up_to(rng, n, 8);
    CHECK(oracle::same(oracle::naive_expand(u, q, caps), expand(u, p)));
    CHECK(expand(u * v, p) == expand(u, p) * expand(v, p));
    CHECK(expand(u, p).constant_term() == 1);
  }
}

TEST_CASE("lower central series bounds") {
  const Word a1 = Word::generator(2, 1), a2 = Word::generator(2, 2);
  CHECK(lcs_lower_bound(commutator(a1, a2), 4) == 2);
  CHECK(lcs_lower_bound(linear_commutator({a1, a1, a2}), 5) == 3);
  CHECK_FALSE(lcs_lower_bound(Word(2), 3).has_value());
  CHECK(lcs_lower_bound(a1, 3) == 1);

  gen::Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen::uniform(rng, 2, 3), k = gen::uniform(rng, 1, 4);
    Word w(n);
    for (int f = gen::uniform(rng, 1, 3); f > 0; --f) {
      std::vector<Word> entries;
      for (int e = 0; e < k; ++e) entries.push_back(gen::word(rng, n, gen::uniform(rng, 1, 2)));
      w = w * linear_commutator(entries);
    }
    const auto b = lcs_lower_bound(w, k + 1);
    CHECK((!b || *b >= k));
  }
}

TEST_CASE("membership in J^r") {
  const Word a1 = Word::generator(2, 1), a2 = Word::generator(2, 2);
  const std::vector<int> j1{2, 2};
  CHECK(in_Jr(linear_commutator({conjugate(a2, a1), a2}), j1));
  CHECK_FALSE(in_Jr(a1, j1));
  CHECK_FALSE(in_Jr(a1, std::vector<int>{5, 5}));
  CHECK(in_Jr(commutator(a1, a2), std::vector<int>{1, 2}));
}

TEST_CASE("J^1 and J_1^1 in F_2 match their desk descriptions") {
  // F_2/J^1 is the Heisenberg group; F_2/J_1^1 is Z via the exponent of α_2.
  const std::vector<int> j{2, 2}, j1{1, 2};
  std::vector<Word> frontier{Word(2)};
  std::size_t checked = 0;
  for (int len = 0; len <= 6; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      const auto h = oracle::heisenberg(w);
      CHECK(in_Jr(w, j) == (h == std::array<long, 3>{0, 0, 0}));
      CHECK(in_Jr(w, j1) == (exponent_sum(w, 2) == 0));
      ++checked;
      for (int g = 1; g <= 2; ++g) {
        for (int s : {1, -1}) {
          const auto letters = w.letters();
          if (!letters.empty() && letters.back().generator == g && letters.back().sign == -s) continue;
          next.push_back(w * Word::from_letters(2, {Letter{g, s}}));
        }
      }
    }
    frontier = std::move(next);
  }
  CHECK(checked == 1 + 4 + 12 + 36 + 108 + 324 + 972);
}

TEST_CASE("substitution is a ring map") {
  const auto p = TruncationPolicy::reduced(2, 2);
  const Word w = parse_word("a1 a2 A1 a2 a2", 2);
  std::vector<TruncatedSeries> images;
  const Word c = parse_word("a2 a1", 2);
  for (int j = 1; j <= 2; ++j) {
    images.push_back(expand(conjugate(Word::generator(2, j), c), p) - TruncatedSeries::one(p));
  }
  CHECK(substitute(expand(w, p), images) == expand(conjugate(w, c), p));
}

TEST_CASE("text serialization") {
  const auto p = TruncationPolicy::total_degree(2, 2);
  CHECK(to_text(expand(parse_word("a1 A2 A1 a2", 2), p)) == "1 : 1\nX1.X2 : -1\nX2.X1 : 1\n");
}

TEST_CASE("coefficients are unbounded integers") {
  const auto p = TruncationPolicy::total_degree(1, 3);
  const auto s = generator_power(p, 1, 4000000);
  CHECK(coefficient(s, Monomial{1, 1, 1}) == Integer(4000000) * 3999999 * 3999998 / 6);
}
