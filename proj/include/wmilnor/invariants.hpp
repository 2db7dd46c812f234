// Milnor invariants, their r(I)-filtered tables, the equivalent forms of
// k-equality, and the k-reduced free action.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wmilnor/gauss.hpp"
#include "wmilnor/magnus.hpp"

namespace wmilnor {

/// I = j_1 … j_l i, 1-based component indices.
struct MilnorIndex {
  std::vector<int> indices;

  std::size_t length() const { return indices.size(); }
  /// Largest multiplicity of a single index.
  int r() const;

  friend bool operator==(const MilnorIndex&, const MilnorIndex&) = default;
  /// Length first, then lexicographic.
  friend std::strong_ordering operator<=>(const MilnorIndex& a, const MilnorIndex& b);
};

/// `2,3,1`
std::string to_string(const MilnorIndex& I);

/// μ(I), for I = j_1 … j_l i the coefficient of X_{j_1} ⋯ X_{j_l} in the
/// i-th longitude. μ(i) = 0.
Integer milnor(const StringLinkCode& code, const MilnorIndex& I);

struct InvariantTable {
  int rank = 0;
  int k = 1;
  int max_length = 1;
  /// Every I with r(I) <= k and |I| <= max_length, zeros included, sorted.
  std::vector<std::pair<MilnorIndex, Integer>> entries;

  /// Throws std::out_of_range if I is not covered by the filter.
  const Integer& at(const MilnorIndex& I) const;
  bool is_zero() const;
};

/// All μ(I) with r(I) <= k and |I| <= min(max_len, nk), from one longitude
/// pass in the quotient by R^k.
InvariantTable milnor_table(const StringLinkCode& code, int k, int max_len);
InvariantTable milnor_table(const StringLinkCode& code, int k);

enum class EqualityMode { Table, Longitude, Action };

struct Comparison {
  bool equal = true;
  std::optional<MilnorIndex> witness;  // an I with r(I) <= k where μ differs
};

/// Equality of all μ(I) with r(I) <= k, decided by comparing tables, by
/// congruence of the longitudes modulo R_i^k, or by equality of the k-reduced
/// free actions. The three modes agree.
Comparison k_equal(const StringLinkCode& a, const StringLinkCode& b, int k, EqualityMode mode);

/// The conjugating automorphism α_i ↦ λ̄_i α_i λ_i of the k-reduced free
/// group, stored as the residues of λ_i modulo R_i^k. Generator images are
/// kept modulo R^k.
class KReducedAction {
 public:
  static KReducedAction identity(int rank, int k);
  /// `longitudes` must live under TruncationPolicy::reduced(rank, k).
  static KReducedAction from_longitudes(int k, const std::vector<TruncatedSeries>& longitudes);

  int rank() const { return rank_; }
  int k() const { return k_; }
  const std::vector<TruncatedSeries>& residues() const { return residues_; }
  const std::vector<TruncatedSeries>& images() const { return images_; }
  const std::vector<TruncatedSeries>& inverse_images() const { return inverse_images_; }
  bool is_identity() const;

  friend bool operator==(const KReducedAction& a, const KReducedAction& b);

 private:
  KReducedAction(int rank, int k, std::vector<TruncatedSeries> residues);

  int rank_;
  int k_;
  std::vector<TruncatedSeries> residues_;
  std::vector<TruncatedSeries> images_;
  std::vector<TruncatedSeries> inverse_images_;
};

KReducedAction action(const StringLinkCode& code, int k);
/// Series of φ(w) modulo R^k.
TruncatedSeries action_apply(const KReducedAction& phi, const Word& w);
/// The action of stack(L, L') is compose(action(L), action(L')).
KReducedAction action_compose(const KReducedAction& phi, const KReducedAction& psi);
/// Throws InvariantViolation if the inverse fails to verify.
KReducedAction action_invert(const KReducedAction& phi);

/// Cuts the link open (at the start of each component, or at `basepoints`)
/// and tests whether every μ(I) with r(I) <= k vanishes.
bool link_vanishing(const LinkCode& link, int k);
bool link_vanishing(const LinkCode& link, int k, const std::vector<std::size_t>& basepoints);

}  // namespace wmilnor
