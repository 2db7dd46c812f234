// Truncated noncommutative power series over the integers and the Magnus
// expansion α_i ↦ 1 + X_i.
//
// A TruncatedSeries lives in Z<<X_1..X_n>> modulo a monomial ideal described
// by a TruncationPolicy: monomials of total degree > q are dropped, and, when
// per-variable caps r_j are present, so is every monomial in which some X_j
// occurs at least r_j times. Both ideals are two-sided, so all ring
// operations are performed in the quotient with eager truncation.
#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wmilnor/words.hpp"

namespace wmilnor {

using Integer = boost::multiprecision::cpp_int;

/// X_{j1} X_{j2} ... X_{jl}, indices 1-based. The empty monomial is 1.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::initializer_list<int> indices) : indices_(indices) {}
  explicit Monomial(std::vector<int> indices) : indices_(std::move(indices)) {}

  std::size_t degree() const { return indices_.size(); }
  const std::vector<int>& indices() const { return indices_; }
  int count(int variable) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Degree first, then lexicographic on the index sequence.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<int> indices_;
};

/// `X1.X2.X1`, or `1` for the empty monomial.
std::string to_string(const Monomial& m);

class TruncatedSeries;

class TruncationPolicy {
 public:
  /// Total-degree cap `max_degree`; `caps` is either empty or one positive
  /// cap per variable.
  TruncationPolicy(int rank, int max_degree, std::vector<int> caps = {});

  static TruncationPolicy total_degree(int rank, int q) { return {rank, q}; }
  /// Per-variable caps only (the ideal R^r); the total-degree cap is set to
  /// the largest surviving degree.
  static TruncationPolicy with_caps(int rank, std::vector<int> caps);
  /// R^k: drop monomials with k+1 occurrences of some variable.
  static TruncationPolicy reduced(int rank, int k);
  /// R_i^k: additionally drop monomials with k occurrences of X_i.
  static TruncationPolicy reduced_at(int rank, int k, int i);

  int rank() const;
  int max_degree() const;
  /// Normalized caps: empty when the total-degree cap makes them vacuous.
  const std::vector<int>& caps() const;
  bool admits(const Monomial& m) const;
  /// True when every monomial dropped by `finer` is also dropped here, i.e.
  /// reduction from `finer` to this policy is a ring map.
  bool is_quotient_of(const TruncationPolicy& finer) const;

  friend bool operator==(const TruncationPolicy& a, const TruncationPolicy& b);

 private:
  friend class TruncatedSeries;
  friend class SeriesAccumulator;
  friend TruncatedSeries operator*(const TruncatedSeries& s, const TruncatedSeries& t);
  struct Data;
  std::shared_ptr<const Data> d_;
};

class TruncatedSeries {
 public:
  /// The zero series.
  explicit TruncatedSeries(TruncationPolicy policy);

  static TruncatedSeries constant(const TruncationPolicy& policy, const Integer& c);
  static TruncatedSeries one(const TruncationPolicy& policy) { return constant(policy, 1); }
  /// X_i
  static TruncatedSeries variable(const TruncationPolicy& policy, int i);
  /// Builds a series from (monomial, coefficient) pairs; monomials the policy
  /// drops are discarded and repeated monomials are summed.
  static TruncatedSeries from_terms(const TruncationPolicy& policy,
                                    std::span<const std::pair<Monomial, Integer>> terms);

  const TruncationPolicy& policy() const { return policy_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  Integer constant_term() const;
  /// Throws std::invalid_argument if the policy drops `m`.
  Integer coefficient(const Monomial& m) const;
  /// Nonzero terms sorted by (degree, lexicographic index sequence).
  std::vector<std::pair<Monomial, Integer>> terms() const;
  /// Smallest degree >= 1 carrying a nonzero coefficient.
  std::optional<int> min_positive_degree() const;
  TruncatedSeries homogeneous_part(int degree) const;
  /// Reduction into a coarser quotient; throws unless
  /// target.is_quotient_of(policy()).
  TruncatedSeries reduced_to(const TruncationPolicy& target) const;
  /// Reinterprets the terms under `target`, dropping those it does not admit.
  /// Only meaningful as a choice of representative (a lift), not a ring map.
  TruncatedSeries lifted_to(const TruncationPolicy& target) const;

  TruncatedSeries& operator+=(const TruncatedSeries& t);
  TruncatedSeries& operator-=(const TruncatedSeries& t);
  friend TruncatedSeries operator+(TruncatedSeries s, const TruncatedSeries& t) { return s += t; }
  friend TruncatedSeries operator-(TruncatedSeries s, const TruncatedSeries& t) { return s -= t; }
  friend TruncatedSeries operator-(const TruncatedSeries& s);
  friend TruncatedSeries operator*(const TruncatedSeries& s, const TruncatedSeries& t);
  friend TruncatedSeries operator*(const Integer& c, const TruncatedSeries& s);
  friend bool operator==(const TruncatedSeries& s, const TruncatedSeries& t);

 private:
  struct Term {
    std::uint64_t index;  // dense (degree, lex) rank under the policy
    int degree;
    Integer coeff;
  };
  TruncationPolicy policy_;
  std::vector<Term> terms_;  // sorted by index, no zero coefficients

  friend class SeriesAccumulator;
  Monomial monomial_of(const Term& t) const;
};

TruncatedSeries series_mul(const TruncatedSeries& s, const TruncatedSeries& t);
/// Requires constant term ±1.
TruncatedSeries series_inverse(const TruncatedSeries& s);
Integer coefficient(const TruncatedSeries& s, const Monomial& m);

/// (1 + X_i)^e, written out in closed form.
TruncatedSeries generator_power(const TruncationPolicy& policy, int i, std::int64_t e);
/// Magnus expansion of `w` in the quotient described by `policy`.
TruncatedSeries expand(const Word& w, const TruncationPolicy& policy);

/// Smallest degree of a nonzero nonconstant term of expand(w) truncated at
/// total degree q; nullopt stands for "≥ q+1". When finite, this is the
/// largest k ≤ q with w ∈ Γ_k.
std::optional<int> lcs_lower_bound(const Word& w, int q);

/// Decides w ∈ J^r = Γ_{r_1}N_1 ⋯ Γ_{r_n}N_n by testing expand(w) ≡ 1 modulo
/// R^r.
bool in_Jr(const Word& w, std::span<const int> caps);

/// Ring endomorphism X_j ↦ images[j-1] applied to `s`. The images must share
/// one policy P, and the caller guarantees the substitution maps the ideal of
/// s.policy() into the ideal of P (true for conjugating substitutions).
TruncatedSeries substitute(const TruncatedSeries& s, std::span<const TruncatedSeries> images);

/// One line per monomial, `X1.X2.X1 : -3`, constant term as `1 : c`.
std::string to_text(const TruncatedSeries& s);

}  // namespace wmilnor
