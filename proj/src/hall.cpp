#include "wmilnor/hall.hpp"

#include <algorithm>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "wmilnor/error.hpp"

namespace wmilnor {
namespace {

using Rational = boost::multiprecision::cpp_rational;

// Reduced row echelon form over Q, in place. Returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<std::vector<Rational>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Matrix of principal parts of the length-d commutators: rows are monomials
// of degree d that occur, columns are commutators.
struct PrincipalMatrix {
  std::vector<Monomial> rows;
  std::vector<std::vector<Integer>> entries;  // rows x columns
};

PrincipalMatrix principal_matrix(const HallBasis& basis, int d) {
  const auto [first, last] = basis.range_of_length(d);
  const auto policy = TruncationPolicy::total_degree(basis.rank(), d);
  std::map<Monomial, std::vector<Integer>> by_monomial;
  for (std::size_t c = first; c < last; ++c) {
    for (const auto& [m, v] : principal_part(basis, c, policy).terms()) {
      auto& row = by_monomial[m];
      row.resize(last - first);
      row[c - first] = v;
    }
  }
  PrincipalMatrix pm;
  for (auto& [m, row] : by_monomial) {
    row.resize(last - first);
    pm.rows.push_back(m);
    pm.entries.push_back(std::move(row));
  }
  return pm;
}

}  // namespace

HallBasis::HallBasis(int rank, int max_len) : rank_(rank), max_len_(max_len) {
  if (rank < 1) throw std::invalid_argument("HallBasis: rank must be >= 1");
  if (max_len < 1) throw std::invalid_argument("HallBasis: max_len must be >= 1");
  first_of_length_.assign(max_len + 2, 0);
  first_of_length_[1] = 0;
  for (int g = 1; g <= rank; ++g) {
    elements_.push_back({elements_.size(), 1, g, -1, -1});
    words_.push_back(Word::generator(rank, g));
  }
  for (int m = 2; m <= max_len; ++m) {
    first_of_length_[m] = elements_.size();
    // Candidates [C_i, C_j] with len(C_i) + len(C_j) = m, C_i < C_j and, when
    // C_j = [C_k, C_l], C_k <= C_i. Iterating i then j in ordinal order gives
    // the lexicographic (left, right) order directly.
    const std::size_t existing = elements_.size();
    for (std::size_t i = 0; i < existing; ++i) {
      for (std::size_t j = i + 1; j < existing; ++j) {
        if (elements_[i].length + elements_[j].length != m) continue;
        const BasicCommutator& cj = elements_[j];
        if (!cj.is_leaf() && static_cast<std::size_t>(cj.left) > i) continue;
        elements_.push_back({elements_.size(), m, 0, static_cast<long>(i), static_cast<long>(j)});
        words_.push_back(commutator(words_[i], words_[j]));
      }
    }
  }
  first_of_length_[max_len + 1] = elements_.size();
}

std::pair<std::size_t, std::size_t> HallBasis::range_of_length(int len) const {
  if (len < 1 || len > max_len_) return {0, 0};
  return {first_of_length_[len], first_of_length_[len + 1]};
}

std::size_t HallBasis::count_of_length(int len) const {
  const auto [a, b] = range_of_length(len);
  return b - a;
}

std::string HallBasis::bracket_string(std::size_t ordinal) const {
  const BasicCommutator& c = elements_[ordinal];
  if (c.is_leaf()) return "a" + std::to_string(c.generator);
  return "[" + bracket_string(c.left) + "," + bracket_string(c.right) + "]";
}

std::vector<int> HallBasis::multiplicities(std::size_t ordinal) const {
  const BasicCommutator& c = elements_[ordinal];
  if (c.is_leaf()) {
    std::vector<int> r(rank_, 0);
    r[c.generator - 1] = 1;
    return r;
  }
  std::vector<int> r = multiplicities(c.left);
  const std::vector<int> s = multiplicities(c.right);
  for (int i = 0; i < rank_; ++i) r[i] += s[i];
  return r;
}

HallBasis generate_basic(int rank, int max_len) { return HallBasis(rank, max_len); }

TruncatedSeries principal_part(const HallBasis& basis, std::size_t ordinal,
                               const TruncationPolicy& policy) {
  const int len = basis[ordinal].length;
  if (policy.max_degree() < len) {
    throw std::invalid_argument("principal_part: truncation below the commutator length");
  }
  return expand(basis.word(ordinal), policy).homogeneous_part(len);
}

std::size_t principal_part_rank(const HallBasis& basis, int d) {
  const PrincipalMatrix pm = principal_matrix(basis, d);
  const std::size_t cols = basis.count_of_length(d);
  std::vector<std::vector<Rational>> m;
  for (const auto& row : pm.entries) m.emplace_back(row.begin(), row.end());
  return row_reduce(m, cols).size();
}

Word hall_product(const HallBasis& basis, const std::vector<Integer>& exponents) {
  if (exponents.size() != basis.size()) throw std::invalid_argument("hall_product: exponent count");
  Word out(basis.rank());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    if (exponents[c].is_zero()) continue;
    out = multiply(out, power(basis.word(c), exponents[c].convert_to<std::int64_t>()));
  }
  return out;
}

HallFactorization hall_factorize(const Word& w, int k) {
  if (k < 1) throw std::invalid_argument("hall_factorize: k must be >= 1");
  return hall_factorize(w, HallBasis(w.rank(), k));
}

HallFactorization hall_factorize(const Word& w, const HallBasis& basis) {
  if (w.rank() != basis.rank()) throw RankMismatch("hall_factorize: word and basis ranks differ");
  const int k = basis.max_length();
  const auto policy = TruncationPolicy::total_degree(basis.rank(), k);

  HallFactorization result;
  result.exponents.assign(basis.size(), 0);
  Word partial(basis.rank());

  for (int d = 1; d <= k; ++d) {
    // partial^{-1} w ∈ Γ_d; its degree-d part is Σ e_C · principal(C).
    const TruncatedSeries target = expand(multiply(invert(partial), w), policy).homogeneous_part(d);
    const PrincipalMatrix pm = principal_matrix(basis, d);
    const auto [first, last] = basis.range_of_length(d);
    const std::size_t cols = last - first;

    std::map<Monomial, Integer> rhs;
    for (const auto& [m, v] : target.terms()) rhs[m] = v;
    std::vector<std::vector<Rational>> aug;
    for (std::size_t r = 0; r < pm.rows.size(); ++r) {
      std::vector<Rational> row(pm.entries[r].begin(), pm.entries[r].end());
      auto it = rhs.find(pm.rows[r]);
      row.emplace_back(it == rhs.end() ? Integer(0) : it->second);
      if (it != rhs.end()) rhs.erase(it);
      aug.push_back(std::move(row));
    }
    if (!rhs.empty()) {
      throw InvariantViolation("hall_factorize: degree-" + std::to_string(d) +
                               " part leaves the span of principal parts");
    }
    const auto pivots = row_reduce(aug, cols + 1);
    if (!pivots.empty() && pivots.back() == cols) {
      throw InvariantViolation("hall_factorize: inconsistent solve at degree " + std::to_string(d));
    }
    if (pivots.size() != cols) {
      throw InvariantViolation("hall_factorize: principal parts dependent at degree " + std::to_string(d));
    }
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const Rational& x = aug[r][cols];
      if (boost::multiprecision::denominator(x) != 1) {
        throw InvariantViolation("hall_factorize: non-integral exponent at degree " + std::to_string(d));
      }
      const std::size_t c = first + pivots[r];
      result.exponents[c] = boost::multiprecision::numerator(x);
      if (!result.exponents[c].is_zero()) {
        partial = multiply(partial, power(basis.word(c), result.exponents[c].convert_to<std::int64_t>()));
      }
    }
  }
  result.remainder_certified = !lcs_lower_bound(multiply(w, invert(partial)), k).has_value();
  return result;
}

}  // namespace wmilnor
