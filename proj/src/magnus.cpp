#include "wmilnor/magnus.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "wmilnor/error.hpp"

namespace wmilnor {

// Monomials are ranked densely: index = offset[d] + code, where code is the
// base-n number spelled by the (0-based) indices. Ordering by index is
// ordering by (degree, lexicographic), and the ranking depends on the rank
// only, so indices agree across policies of equal rank.
struct TruncationPolicy::Data {
  int rank = 1;
  int q = 0;
  std::vector<int> caps;             // normalized, empty if vacuous
  std::vector<std::uint64_t> pow;    // rank^d for d = 0..q
  std::vector<std::uint64_t> offset; // d = 0..q+1
  bool swar = false;                 // caps checked bytewise in one word
  std::uint64_t swar_limit = 0;

  int degree_of(std::uint64_t index) const {
    auto it = std::upper_bound(offset.begin(), offset.end(), index);
    return static_cast<int>(it - offset.begin()) - 1;
  }

  // Per-variable occurrence counts packed one byte per variable.
  std::uint64_t packed_counts(std::uint64_t index, int degree) const {
    std::uint64_t code = index - offset[degree];
    std::uint64_t packed = 0;
    for (int i = 0; i < degree; ++i) {
      packed += std::uint64_t{1} << (8 * (code % rank));
      code /= rank;
    }
    return packed;
  }

  std::vector<int> counts(std::uint64_t index, int degree) const {
    std::vector<int> c(rank, 0);
    std::uint64_t code = index - offset[degree];
    for (int i = 0; i < degree; ++i) {
      ++c[code % rank];
      code /= rank;
    }
    return c;
  }

  bool counts_fit(const std::vector<int>& c) const {
    if (caps.empty()) return true;
    for (int v = 0; v < rank; ++v) {
      if (c[v] >= caps[v]) return false;
    }
    return true;
  }

  bool admits_index(std::uint64_t index, int degree) const {
    if (degree > q) return false;
    if (caps.empty()) return true;
    return counts_fit(counts(index, degree));
  }

  std::uint64_t index_of(const Monomial& m) const {
    const int d = static_cast<int>(m.degree());
    std::uint64_t code = 0;
    for (int j : m.indices()) code = code * rank + static_cast<std::uint64_t>(j - 1);
    return offset[d] + code;
  }

  Monomial monomial_of(std::uint64_t index, int degree) const {
    std::vector<int> idx(degree);
    std::uint64_t code = index - offset[degree];
    for (int i = degree - 1; i >= 0; --i) {
      idx[i] = static_cast<int>(code % rank) + 1;
      code /= rank;
    }
    return Monomial(std::move(idx));
  }

  std::uint64_t dense_size() const { return offset[q + 1]; }
};

int Monomial::count(int variable) const {
  return static_cast<int>(std::count(indices_.begin(), indices_.end(), variable));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  std::vector<int> idx = a.indices_;
  idx.insert(idx.end(), b.indices_.begin(), b.indices_.end());
  return Monomial(std::move(idx));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.indices_ <=> b.indices_;
}

std::string to_string(const Monomial& m) {
  if (m.degree() == 0) return "1";
  std::string out;
  for (int j : m.indices()) {
    if (!out.empty()) out += '.';
    out += 'X';
    out += std::to_string(j);
  }
  return out;
}

// ---------------------------------------------------------------------------

TruncationPolicy::TruncationPolicy(int rank, int max_degree, std::vector<int> caps) {
  if (rank < 1) throw std::invalid_argument("truncation policy needs rank >= 1");
  if (max_degree < 0) throw std::invalid_argument("truncation degree must be >= 0");
  if (max_degree > 120) throw std::length_error("truncation degree above 120 is not supported");
  if (!caps.empty() && static_cast<int>(caps.size()) != rank) {
    throw RankMismatch("truncation caps: expected " + std::to_string(rank) + " caps");
  }
  auto d = std::make_shared<Data>();
  d->rank = rank;
  d->q = max_degree;
  bool vacuous = true;
  for (int& c : caps) {
    if (c < 1) throw std::invalid_argument("truncation caps must be positive");
    c = std::min(c, max_degree + 1);
    if (c <= max_degree) vacuous = false;
  }
  if (!vacuous) d->caps = std::move(caps);

  d->pow.assign(max_degree + 1, 1);
  d->offset.assign(max_degree + 2, 0);
  constexpr std::uint64_t limit = std::uint64_t{1} << 62;
  for (int i = 1; i <= max_degree; ++i) {
    if (d->pow[i - 1] > limit / static_cast<std::uint64_t>(rank)) {
      throw std::length_error("monomial space too large for packed keys (rank " +
                              std::to_string(rank) + ", degree " + std::to_string(max_degree) + ")");
    }
    d->pow[i] = d->pow[i - 1] * rank;
  }
  for (int i = 1; i <= max_degree + 1; ++i) {
    d->offset[i] = d->offset[i - 1] + d->pow[i - 1];
    if (d->offset[i] > limit) throw std::length_error("monomial space too large for packed keys");
  }
  if (!d->caps.empty() && rank <= 8) {
    d->swar = true;
    for (int v = 0; v < rank; ++v) {
      d->swar_limit |= static_cast<std::uint64_t>(128 - d->caps[v]) << (8 * v);
    }
  }
  d_ = std::move(d);
}

TruncationPolicy TruncationPolicy::with_caps(int rank, std::vector<int> caps) {
  if (static_cast<int>(caps.size()) != rank) {
    throw RankMismatch("truncation caps: expected " + std::to_string(rank) + " caps");
  }
  int q = 0;
  for (int c : caps) {
    if (c < 1) throw std::invalid_argument("truncation caps must be positive");
    q += c - 1;
  }
  return TruncationPolicy(rank, q, std::move(caps));
}

TruncationPolicy TruncationPolicy::reduced(int rank, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return TruncationPolicy(rank, rank * k, std::vector<int>(rank, k + 1));
}

TruncationPolicy TruncationPolicy::reduced_at(int rank, int k, int i) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (i < 1 || i > rank) throw std::invalid_argument("component index out of range");
  std::vector<int> caps(rank, k + 1);
  caps[i - 1] = k;
  return TruncationPolicy(rank, rank * k - 1, std::move(caps));
}

int TruncationPolicy::rank() const { return d_->rank; }
int TruncationPolicy::max_degree() const { return d_->q; }
const std::vector<int>& TruncationPolicy::caps() const { return d_->caps; }

bool TruncationPolicy::admits(const Monomial& m) const {
  if (static_cast<int>(m.degree()) > d_->q) return false;
  for (int j : m.indices()) {
    if (j < 1 || j > d_->rank) return false;
  }
  if (d_->caps.empty()) return true;
  for (int v = 1; v <= d_->rank; ++v) {
    if (m.count(v) >= d_->caps[v - 1]) return false;
  }
  return true;
}

bool TruncationPolicy::is_quotient_of(const TruncationPolicy& finer) const {
  if (rank() != finer.rank() || max_degree() > finer.max_degree()) return false;
  for (int v = 0; v < rank(); ++v) {
    const int mine = caps().empty() ? max_degree() + 1 : caps()[v];
    const int theirs = finer.caps().empty() ? finer.max_degree() + 1 : finer.caps()[v];
    if (mine > theirs) return false;
  }
  return true;
}

bool operator==(const TruncationPolicy& a, const TruncationPolicy& b) {
  return a.d_ == b.d_ ||
         (a.rank() == b.rank() && a.max_degree() == b.max_degree() && a.caps() == b.caps());
}

// ---------------------------------------------------------------------------

// Collects (index, coefficient) contributions. Small monomial spaces use a
// dense per-thread table with a touched list; large ones fall back to a hash
// map. Output is always sorted by index.
class SeriesAccumulator {
 public:
  using Term = TruncatedSeries::Term;

  explicit SeriesAccumulator(const TruncationPolicy::Data& d) : d_(d) {
    Scratch& s = scratch();
    if (d.dense_size() <= kDenseLimit && !s.busy) {
      dense_ = true;
      s.busy = true;
      if (s.values.size() < d.dense_size()) {
        s.values.resize(d.dense_size());
        s.mark.resize(d.dense_size(), 0);
      }
    }
  }
  ~SeriesAccumulator() {
    if (dense_) {
      Scratch& s = scratch();
      for (std::uint64_t i : s.touched) {
        s.values[i] = 0;
        s.mark[i] = 0;
      }
      s.touched.clear();
      s.busy = false;
    }
  }
  SeriesAccumulator(const SeriesAccumulator&) = delete;
  SeriesAccumulator& operator=(const SeriesAccumulator&) = delete;

  Integer& slot(std::uint64_t index) {
    if (dense_) {
      Scratch& s = scratch();
      if (!s.mark[index]) {
        s.mark[index] = 1;
        s.touched.push_back(index);
      }
      return s.values[index];
    }
    return sparse_[index];
  }

  std::vector<Term> take() {
    std::vector<Term> out;
    if (dense_) {
      Scratch& s = scratch();
      std::sort(s.touched.begin(), s.touched.end());
      out.reserve(s.touched.size());
      for (std::uint64_t i : s.touched) {
        if (!s.values[i].is_zero()) out.push_back({i, d_.degree_of(i), std::move(s.values[i])});
        s.values[i] = 0;
        s.mark[i] = 0;
      }
      s.touched.clear();
    } else {
      out.reserve(sparse_.size());
      for (auto& [i, c] : sparse_) {
        if (!c.is_zero()) out.push_back({i, d_.degree_of(i), std::move(c)});
      }
      sparse_.clear();
      std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    }
    return out;
  }

 private:
  static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 18;
  struct Scratch {
    std::vector<Integer> values;
    std::vector<std::uint8_t> mark;
    std::vector<std::uint64_t> touched;
    bool busy = false;
  };
  static Scratch& scratch() {
    thread_local Scratch s;
    return s;
  }

  const TruncationPolicy::Data& d_;
  bool dense_ = false;
  std::unordered_map<std::uint64_t, Integer> sparse_;
};

TruncatedSeries::TruncatedSeries(TruncationPolicy policy) : policy_(std::move(policy)) {}

TruncatedSeries TruncatedSeries::constant(const TruncationPolicy& policy, const Integer& c) {
  TruncatedSeries s(policy);
  if (!c.is_zero()) s.terms_.push_back({0, 0, c});
  return s;
}

TruncatedSeries TruncatedSeries::variable(const TruncationPolicy& policy, int i) {
  if (i < 1 || i > policy.rank()) throw std::invalid_argument("variable index out of range");
  return from_terms(policy, std::vector<std::pair<Monomial, Integer>>{{Monomial{i}, Integer(1)}});
}

TruncatedSeries TruncatedSeries::from_terms(const TruncationPolicy& policy,
                                            std::span<const std::pair<Monomial, Integer>> terms) {
  const auto& d = *policy.d_;
  SeriesAccumulator acc(d);
  for (const auto& [m, c] : terms) {
    for (int j : m.indices()) {
      if (j < 1 || j > d.rank) throw std::invalid_argument("monomial index out of range");
    }
    if (!policy.admits(m)) continue;
    acc.slot(d.index_of(m)) += c;
  }
  TruncatedSeries s(policy);
  s.terms_ = acc.take();
  return s;
}

bool TruncatedSeries::is_one() const {
  return terms_.size() == 1 && terms_[0].degree == 0 && terms_[0].coeff == 1;
}

Integer TruncatedSeries::constant_term() const {
  if (!terms_.empty() && terms_[0].degree == 0) return terms_[0].coeff;
  return 0;
}

Integer TruncatedSeries::coefficient(const Monomial& m) const {
  if (!policy_.admits(m)) {
    throw std::invalid_argument("coefficient of " + to_string(m) +
                                " is undefined under this truncation");
  }
  const std::uint64_t idx = policy_.d_->index_of(m);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), idx,
                             [](const Term& t, std::uint64_t i) { return t.index < i; });
  if (it != terms_.end() && it->index == idx) return it->coeff;
  return 0;
}

Monomial TruncatedSeries::monomial_of(const Term& t) const {
  return policy_.d_->monomial_of(t.index, t.degree);
}

std::vector<std::pair<Monomial, Integer>> TruncatedSeries::terms() const {
  std::vector<std::pair<Monomial, Integer>> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) out.emplace_back(monomial_of(t), t.coeff);
  return out;
}

std::optional<int> TruncatedSeries::min_positive_degree() const {
  for (const Term& t : terms_) {
    if (t.degree > 0) return t.degree;
  }
  return std::nullopt;
}

TruncatedSeries TruncatedSeries::homogeneous_part(int degree) const {
  TruncatedSeries s(policy_);
  for (const Term& t : terms_) {
    if (t.degree == degree) s.terms_.push_back(t);
  }
  return s;
}

TruncatedSeries TruncatedSeries::reduced_to(const TruncationPolicy& target) const {
  if (!target.is_quotient_of(policy_)) {
    throw std::invalid_argument("reduced_to: target truncation is not a quotient of the source");
  }
  return lifted_to(target);
}

TruncatedSeries TruncatedSeries::lifted_to(const TruncationPolicy& target) const {
  if (target.rank() != policy_.rank()) throw RankMismatch("series rank mismatch");
  TruncatedSeries s(target);
  for (const Term& t : terms_) {
    if (target.d_->admits_index(t.index, t.degree)) s.terms_.push_back(t);
  }
  return s;
}

namespace {

void check_same_policy(const TruncationPolicy& a, const TruncationPolicy& b) {
  if (!(a == b)) throw RankMismatch("series truncation policies differ");
}

}  // namespace

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& t) {
  check_same_policy(policy_, t.policy_);
  std::vector<Term> out;
  out.reserve(terms_.size() + t.terms_.size());
  auto a = terms_.begin();
  auto b = t.terms_.begin();
  while (a != terms_.end() || b != t.terms_.end()) {
    if (b == t.terms_.end() || (a != terms_.end() && a->index < b->index)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->index < a->index) {
      out.push_back(*b++);
    } else {
      Integer c = a->coeff + b->coeff;
      if (!c.is_zero()) out.push_back({a->index, a->degree, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& t) { return *this += -t; }

TruncatedSeries operator-(const TruncatedSeries& s) {
  TruncatedSeries r = s;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

TruncatedSeries operator*(const Integer& c, const TruncatedSeries& s) {
  TruncatedSeries r(s.policy_);
  if (c.is_zero()) return r;
  r.terms_ = s.terms_;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

TruncatedSeries operator*(const TruncatedSeries& s, const TruncatedSeries& t) {
  check_same_policy(s.policy_, t.policy_);
  const auto& d = *s.policy_.d_;
  SeriesAccumulator acc(d);
  const bool capped = !d.caps.empty();

  std::vector<std::uint64_t> packed_t;
  std::vector<std::vector<int>> counts_t;
  if (capped) {
    if (d.swar) {
      packed_t.reserve(t.terms_.size());
      for (const auto& b : t.terms_) packed_t.push_back(d.packed_counts(b.index, b.degree));
    } else {
      for (const auto& b : t.terms_) counts_t.push_back(d.counts(b.index, b.degree));
    }
  }
  constexpr std::uint64_t kHigh = 0x8080808080808080ULL;

  for (const auto& a : s.terms_) {
    const std::uint64_t code_a = a.index - d.offset[a.degree];
    const std::uint64_t packed_a = capped && d.swar ? d.packed_counts(a.index, a.degree) : 0;
    std::vector<int> counts_a;
    if (capped && !d.swar) counts_a = d.counts(a.index, a.degree);
    for (std::size_t j = 0; j < t.terms_.size(); ++j) {
      const auto& b = t.terms_[j];
      const int deg = a.degree + b.degree;
      if (deg > d.q) break;
      if (capped) {
        if (d.swar) {
          if (((packed_a + packed_t[j] + d.swar_limit) & kHigh) != 0) continue;
        } else {
          bool ok = true;
          for (int v = 0; v < d.rank && ok; ++v) ok = counts_a[v] + counts_t[j][v] < d.caps[v];
          if (!ok) continue;
        }
      }
      const std::uint64_t code = code_a * d.pow[b.degree] + (b.index - d.offset[b.degree]);
      acc.slot(d.offset[deg] + code) += a.coeff * b.coeff;
    }
  }
  TruncatedSeries r(s.policy_);
  r.terms_ = acc.take();
  return r;
}

bool operator==(const TruncatedSeries& s, const TruncatedSeries& t) {
  if (!(s.policy_ == t.policy_) || s.terms_.size() != t.terms_.size()) return false;
  for (std::size_t i = 0; i < s.terms_.size(); ++i) {
    if (s.terms_[i].index != t.terms_[i].index || s.terms_[i].coeff != t.terms_[i].coeff) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

TruncatedSeries series_mul(const TruncatedSeries& s, const TruncatedSeries& t) { return s * t; }

TruncatedSeries series_inverse(const TruncatedSeries& s) {
  const Integer c0 = s.constant_term();
  if (c0 != 1 && c0 != -1) throw std::invalid_argument("series_inverse: constant term is not a unit");
  const auto& policy = s.policy();
  const TruncatedSeries one = TruncatedSeries::one(policy);
  // s = c0 (1 + v), s^-1 = c0 Σ (-v)^d
  const TruncatedSeries v = c0 * s - one;
  TruncatedSeries r = one;
  for (int d = 0; d < policy.max_degree(); ++d) {
    TruncatedSeries next = one - v * r;
    if (next == r) break;
    r = std::move(next);
  }
  return c0 * r;
}

Integer coefficient(const TruncatedSeries& s, const Monomial& m) { return s.coefficient(m); }

TruncatedSeries generator_power(const TruncationPolicy& policy, int i, std::int64_t e) {
  if (i < 1 || i > policy.rank()) throw std::invalid_argument("generator index out of range");
  std::vector<std::pair<Monomial, Integer>> terms;
  const int top = std::min(policy.max_degree(),
                           policy.caps().empty() ? policy.max_degree() : policy.caps()[i - 1] - 1);
  // (1+X)^e = Σ C(e,d) X^d; for e < 0, C(e,d) = (-1)^d C(|e|+d-1, d).
  Integer binom = 1;
  std::vector<int> idx;
  for (int d = 0; d <= top; ++d) {
    if (d > 0) {
      binom *= Integer(e - (d - 1));
      binom /= d;
    }
    if (binom.is_zero()) break;
    terms.emplace_back(Monomial(idx), binom);
    idx.push_back(i);
  }
  return TruncatedSeries::from_terms(policy, terms);
}

TruncatedSeries expand(const Word& w, const TruncationPolicy& policy) {
  if (w.rank() != policy.rank()) {
    throw RankMismatch("expand: word rank " + std::to_string(w.rank()) + " vs series rank " +
                       std::to_string(policy.rank()));
  }
  TruncatedSeries r = TruncatedSeries::one(policy);
  for (const Syllable& s : w.syllables()) r = r * generator_power(policy, s.generator, s.exponent);
  return r;
}

std::optional<int> lcs_lower_bound(const Word& w, int q) {
  return expand(w, TruncationPolicy::total_degree(std::max(w.rank(), 1), q)).min_positive_degree();
}

bool in_Jr(const Word& w, std::span<const int> caps) {
  if (static_cast<int>(caps.size()) != w.rank()) {
    throw RankMismatch("in_Jr: " + std::to_string(caps.size()) + " caps for rank " +
                       std::to_string(w.rank()));
  }
  const auto policy = TruncationPolicy::with_caps(w.rank(), std::vector<int>(caps.begin(), caps.end()));
  return expand(w, policy).is_one();
}

TruncatedSeries substitute(const TruncatedSeries& s, std::span<const TruncatedSeries> images) {
  if (static_cast<int>(images.size()) != s.policy().rank()) {
    throw RankMismatch("substitute: one image per variable required");
  }
  const TruncationPolicy& target = images.front().policy();
  for (const auto& img : images) check_same_policy(target, img.policy());

  // Products of images along monomial prefixes, memoized by prefix.
  std::map<std::vector<int>, TruncatedSeries> prefix;
  std::function<const TruncatedSeries&(const std::vector<int>&)> product =
      [&](const std::vector<int>& idx) -> const TruncatedSeries& {
    if (auto it = prefix.find(idx); it != prefix.end()) return it->second;
    TruncatedSeries value = TruncatedSeries::one(target);
    if (!idx.empty()) {
      std::vector<int> head(idx.begin(), idx.end() - 1);
      value = product(head) * images[idx.back() - 1];
    }
    return prefix.emplace(idx, std::move(value)).first->second;
  };

  TruncatedSeries out(target);
  for (const auto& [m, c] : s.terms()) out += c * product(m.indices());
  return out;
}

std::string to_text(const TruncatedSeries& s) {
  std::ostringstream os;
  for (const auto& [m, c] : s.terms()) os << to_string(m) << " : " << c << '\n';
  return os.str();
}

}  // namespace wmilnor
