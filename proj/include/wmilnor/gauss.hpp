// Welded string links and links as Gauss codes.
//
// A code lists, per component, the classical crossings met when running along
// it: `O7+` is an over-passage through crossing 7, `U7+` the matching
// under-passage; both carry the crossing sign. Virtual crossings are not
// represented. Text grammar:
//
//   file    := line+            (components 1..n in order, one per line)
//   line    := INT ":" passage*
//   passage := ("O"|"U") INT ("+"|"-")
//
// `/` may replace a newline. Whitespace between tokens is ignored.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wmilnor/magnus.hpp"

namespace wmilnor {

enum class Role { Over, Under };

struct Passage {
  long crossing = 0;
  Role role = Role::Over;
  int sign = 1;

  friend bool operator==(const Passage&, const Passage&) = default;
};

using PassageSequences = std::vector<std::vector<Passage>>;

/// Components run from bottom to top. Every crossing id occurs exactly twice,
/// once Over and once Under, with equal signs.
class StringLinkCode {
 public:
  StringLinkCode() = default;
  /// Validates; throws ParseError naming the offending crossing.
  explicit StringLinkCode(PassageSequences components);
  /// The trivial n-component string link.
  static StringLinkCode trivial(int n);

  int size() const { return static_cast<int>(components_.size()); }
  const PassageSequences& components() const { return components_; }
  const std::vector<Passage>& component(int i) const { return components_.at(i - 1); }
  long max_crossing_id() const;
  std::size_t crossing_count() const;

  friend bool operator==(const StringLinkCode&, const StringLinkCode&) = default;

 private:
  PassageSequences components_;
};

/// Closed components; sequences are read cyclically.
class LinkCode {
 public:
  LinkCode() = default;
  explicit LinkCode(PassageSequences components);
  static LinkCode unlink(int n);

  int size() const { return static_cast<int>(components_.size()); }
  const PassageSequences& components() const { return components_; }

  friend bool operator==(const LinkCode&, const LinkCode&) = default;

 private:
  PassageSequences components_;
};

/// Throws ParseError on grammar or validation failure.
StringLinkCode parse_string_link(std::string_view text);
LinkCode parse_link(std::string_view text);
std::string serialize(const StringLinkCode& code);
std::string serialize(const LinkCode& code);

/// Arc a_{i,j}, both indices 1-based.
struct ArcRef {
  int component = 1;
  int arc = 1;

  friend bool operator==(const ArcRef&, const ArcRef&) = default;
};

/// a_{i,j+1} = conjugate(a_{i,j}, over^sign).
struct WirtingerRelation {
  ArcRef source;
  ArcRef target;
  ArcRef over;
  int sign = 1;
};

struct WirtingerPresentation {
  std::vector<int> arc_counts;  // per component: under-passages + 1
  std::vector<WirtingerRelation> relations;
};

WirtingerPresentation wirtinger(const StringLinkCode& code);

/// Sum of signs of crossings with both passages on component i.
int self_writhe(const StringLinkCode& code, int i);

/// Magnus expansions of the preferred longitudes λ_1..λ_n written in the
/// meridians, in the quotient given by `policy`. Computed by iterating the
/// Wirtinger relations on per-arc series until they reach a fixed point;
/// throws InvariantViolation if that takes more than max_degree+1 rounds.
std::vector<TruncatedSeries> longitude_series(const StringLinkCode& code,
                                              const TruncationPolicy& policy);
std::vector<TruncatedSeries> longitude_series(const StringLinkCode& code, int q);

// -- moves ------------------------------------------------------------------

/// Inserts a kink `Oc Uc` (or `Uc Oc`) before passage `position`
/// (0 = start, size = end) of `component`.
struct R1Insert {
  int component = 1;
  std::size_t position = 0;
  int sign = 1;
  bool over_first = true;
};
/// Removes the adjacent pair at `position`, `position+1` if both passages
/// belong to one crossing.
struct R1Delete {
  int component = 1;
  std::size_t position = 0;
};
/// Inserts `Ua Ub` (signs s, -s) into `under_component` and `Oa Ob` (or
/// `Ob Oa` if `reversed`) into `over_component`. Positions refer to the
/// code before the insertion.
struct R2Insert {
  int under_component = 1;
  std::size_t under_position = 0;
  int over_component = 1;
  std::size_t over_position = 0;
  int sign = 1;
  bool reversed = false;
};
/// Removes the two under-passages at `position`, `position+1` and their
/// over-passages, which must be adjacent and of opposite signs.
struct R2Delete {
  int component = 1;
  std::size_t position = 0;
};
/// Swaps the adjacent over-passages at `position`, `position+1`.
struct OCSwap {
  int component = 1;
  std::size_t position = 0;
};

using Move = std::variant<R1Insert, R1Delete, R2Insert, R2Delete, OCSwap>;

/// Throws std::invalid_argument if the site does not admit the move.
StringLinkCode apply_move(const StringLinkCode& code, const Move& move);
/// Every applicable R1Delete, R2Delete and OCSwap site.
std::vector<Move> deletion_sites(const StringLinkCode& code);
std::string describe(const Move& move);

/// `lower` below `upper`; crossing ids of `upper` are shifted past those of
/// `lower`.
StringLinkCode stack(const StringLinkCode& lower, const StringLinkCode& upper);

/// Cuts each closed component open at a gap: basepoint p on component i lies
/// just before passage p (0 <= p < length, or p = 0 for an empty component).
StringLinkCode cut(const LinkCode& link, const std::vector<std::size_t>& basepoints);

/// Reads a string link's components cyclically.
LinkCode closure(const StringLinkCode& code);

}  // namespace wmilnor
