#include "wmilnor/words.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "wmilnor/error.hpp"

namespace wmilnor {
namespace {

void check_rank(const Word& u, const Word& v, const char* op) {
  if (u.rank() != v.rank()) {
    throw RankMismatch(std::string(op) + ": rank " + std::to_string(u.rank()) + " vs " +
                       std::to_string(v.rank()));
  }
}

void check_generator(int rank, int g) {
  if (g < 1 || g > rank) {
    throw std::invalid_argument("generator index " + std::to_string(g) + " outside 1.." +
                                std::to_string(rank));
  }
}

// Appends a syllable to a reduced syllable stack, merging and cancelling.
void push_reduced(std::vector<Syllable>& out, Syllable s) {
  if (s.exponent == 0) return;
  if (!out.empty() && out.back().generator == s.generator) {
    out.back().exponent += s.exponent;
    if (out.back().exponent == 0) out.pop_back();
    return;
  }
  out.push_back(s);
}

}  // namespace

Word::Word(int rank) : rank_(rank) {
  if (rank < 0) throw std::invalid_argument("negative rank");
}

Word Word::generator(int rank, int i) {
  check_generator(rank, i);
  Word w(rank);
  w.syllables_.push_back({i, 1});
  return w;
}

Word Word::from_letters(int rank, std::span<const Letter> letters) {
  Word w(rank);
  for (const Letter& l : letters) {
    check_generator(rank, l.generator);
    if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
    push_reduced(w.syllables_, {l.generator, l.sign});
  }
  return w;
}

Word Word::from_letters(int rank, std::initializer_list<Letter> letters) {
  return from_letters(rank, std::span<const Letter>(letters.begin(), letters.size()));
}

Word Word::from_syllables(int rank, std::vector<Syllable> syllables) {
  for (const Syllable& s : syllables) check_generator(rank, s.generator);
  Word w(rank);
  w.syllables_ = std::move(syllables);
  return w;
}

std::size_t Word::length() const {
  std::size_t n = 0;
  for (const Syllable& s : syllables_) n += static_cast<std::size_t>(s.exponent < 0 ? -s.exponent : s.exponent);
  return n;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  out.reserve(length());
  for (const Syllable& s : syllables_) {
    const int sign = s.exponent > 0 ? 1 : -1;
    for (std::int64_t e = 0; e < s.exponent * sign; ++e) out.push_back({s.generator, sign});
  }
  return out;
}

bool Word::is_reduced() const {
  for (std::size_t i = 0; i < syllables_.size(); ++i) {
    if (syllables_[i].exponent == 0) return false;
    if (i > 0 && syllables_[i - 1].generator == syllables_[i].generator) return false;
  }
  return true;
}

Word reduce(const Word& w) {
  std::vector<Syllable> out;
  out.reserve(w.syllables().size());
  for (const Syllable& s : w.syllables()) push_reduced(out, s);
  return Word::from_syllables(w.rank(), std::move(out));
}

Word multiply(const Word& u, const Word& v) {
  check_rank(u, v, "multiply");
  std::vector<Syllable> out;
  out.reserve(u.syllables().size() + v.syllables().size());
  for (const Syllable& s : u.syllables()) push_reduced(out, s);
  for (const Syllable& s : v.syllables()) push_reduced(out, s);
  return Word::from_syllables(u.rank(), std::move(out));
}

Word invert(const Word& w) {
  std::vector<Syllable> out;
  out.reserve(w.syllables().size());
  for (auto it = w.syllables().rbegin(); it != w.syllables().rend(); ++it) {
    push_reduced(out, {it->generator, -it->exponent});
  }
  return Word::from_syllables(w.rank(), std::move(out));
}

Word power(const Word& w, std::int64_t e) {
  const Word base = e < 0 ? invert(w) : reduce(w);
  Word out(w.rank());
  for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) out = multiply(out, base);
  return out;
}

Word conjugate(const Word& x, const Word& y) {
  check_rank(x, y, "conjugate");
  return multiply(multiply(invert(y), x), y);
}

Word commutator(const Word& x, const Word& y) {
  check_rank(x, y, "commutator");
  return multiply(multiply(x, invert(y)), multiply(invert(x), y));
}

Word linear_commutator(std::span<const Word> entries) {
  if (entries.empty()) throw std::invalid_argument("linear_commutator: no entries");
  Word acc = reduce(entries.back());
  for (std::size_t i = entries.size() - 1; i-- > 0;) acc = commutator(entries[i], acc);
  return acc;
}

Word linear_commutator(std::initializer_list<Word> entries) {
  return linear_commutator(std::span<const Word>(entries.begin(), entries.size()));
}

std::int64_t exponent_sum(const Word& w, int generator) {
  check_generator(w.rank(), generator);
  std::int64_t sum = 0;
  for (const Syllable& s : w.syllables()) {
    if (s.generator == generator) sum += s.exponent;
  }
  return sum;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "-";
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += l.sign > 0 ? 'a' : 'A';
    out += std::to_string(l.generator);
  }
  return out;
}

Word parse_word(std::string_view text, int rank) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  bool saw_dash = false;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    const std::size_t start = i;
    const char c = text[i];
    if (c == '-') {
      saw_dash = true;
      ++i;
    } else if (c == 'a' || c == 'A') {
      ++i;
      const std::size_t digits = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      int g = 0;
      auto [ptr, ec] = std::from_chars(text.data() + digits, text.data() + i, g);
      if (digits == i || ec != std::errc() || ptr != text.data() + i || g < 1 || g > rank) {
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        throw ParseError("bad word token '" + std::string(text.substr(start, i - start)) + "'");
      }
      letters.push_back({g, c == 'a' ? 1 : -1});
    } else {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      throw ParseError("bad word token '" + std::string(text.substr(start, i - start)) + "'");
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      const std::size_t tok_end = text.find_first_of(" \t\r\n", start);
      throw ParseError("bad word token '" + std::string(text.substr(start, tok_end - start)) + "'");
    }
    skip_ws();
  }
  if (saw_dash && !letters.empty()) throw ParseError("bad word token '-' inside a nonempty word");
  return Word::from_letters(rank, letters);
}

}  // namespace wmilnor
