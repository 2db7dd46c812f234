#include "wmilnor/invariants.hpp"

#include <algorithm>
#include <stdexcept>

#include "wmilnor/error.hpp"

namespace wmilnor {
namespace {

void check_k(int k, const char* op) {
  if (k < 1) throw std::invalid_argument(std::string(op) + ": k must be >= 1");
}

// Index sequences of one length with every multiplicity <= k, in
// lexicographic order.
void enumerate_indices(int n, int k, std::size_t len, std::vector<int>& prefix, std::vector<int>& counts,
                       std::vector<MilnorIndex>& out) {
  if (prefix.size() == len) {
    out.push_back({prefix});
    return;
  }
  for (int j = 1; j <= n; ++j) {
    if (counts[j - 1] == k) continue;
    ++counts[j - 1];
    prefix.push_back(j);
    enumerate_indices(n, k, len, prefix, counts, out);
    prefix.pop_back();
    --counts[j - 1];
  }
}

Monomial monomial_part(const MilnorIndex& I) {
  return Monomial(std::vector<int>(I.indices.begin(), I.indices.end() - 1));
}

MilnorIndex index_of(const Monomial& m, int i) {
  MilnorIndex I{m.indices()};
  I.indices.push_back(i);
  return I;
}

std::optional<MilnorIndex> first_difference(const InvariantTable& a, const InvariantTable& b) {
  for (std::size_t e = 0; e < a.entries.size(); ++e) {
    if (a.entries[e].second != b.entries[e].second) return a.entries[e].first;
  }
  return std::nullopt;
}

// Compares λ_i(a) and λ_i(b) modulo R_i^k through ā_i b_i; the lowest term of
// ā_i b_i - 1 is the lowest term of b_i - a_i, so it names a differing μ.
Comparison compare_longitudes(const std::vector<TruncatedSeries>& la, const std::vector<TruncatedSeries>& lb,
                              int k) {
  const int n = static_cast<int>(la.size());
  for (int i = 1; i <= n; ++i) {
    const auto policy = TruncationPolicy::reduced_at(n, k, i);
    const TruncatedSeries a = la[i - 1].reduced_to(policy);
    const TruncatedSeries b = lb[i - 1].reduced_to(policy);
    const TruncatedSeries d = series_inverse(a) * b;
    if (d.is_one()) continue;
    const auto terms = d.terms();
    const auto it = std::find_if(terms.begin(), terms.end(), [](const auto& t) { return t.first.degree() > 0; });
    return {false, index_of(it->first, i)};
  }
  return {true, std::nullopt};
}

}  // namespace

int MilnorIndex::r() const {
  std::vector<int> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  int best = 0;
  for (std::size_t a = 0; a < sorted.size();) {
    std::size_t b = a;
    while (b < sorted.size() && sorted[b] == sorted[a]) ++b;
    best = std::max(best, static_cast<int>(b - a));
    a = b;
  }
  return best;
}

std::strong_ordering operator<=>(const MilnorIndex& a, const MilnorIndex& b) {
  if (auto c = a.indices.size() <=> b.indices.size(); c != 0) return c;
  return a.indices <=> b.indices;
}

std::string to_string(const MilnorIndex& I) {
  std::string out;
  for (std::size_t t = 0; t < I.indices.size(); ++t) {
    if (t) out += ',';
    out += std::to_string(I.indices[t]);
  }
  return out;
}

Integer milnor(const StringLinkCode& code, const MilnorIndex& I) {
  if (I.indices.empty()) throw std::invalid_argument("milnor: empty index");
  for (int j : I.indices) {
    if (j < 1 || j > code.size()) {
      throw std::invalid_argument("milnor: index " + std::to_string(j) + " outside 1.." +
                                  std::to_string(code.size()));
    }
  }
  if (I.length() == 1) return 0;
  const int q = static_cast<int>(I.length()) - 1;
  const auto lambda = longitude_series(code, q);
  return lambda[I.indices.back() - 1].coefficient(monomial_part(I));
}

const Integer& InvariantTable::at(const MilnorIndex& I) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), I,
                             [](const auto& e, const MilnorIndex& key) { return e.first < key; });
  if (it == entries.end() || it->first != I) {
    throw std::out_of_range("InvariantTable: mu(" + to_string(I) + ") is outside the table filter");
  }
  return it->second;
}

bool InvariantTable::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.second.is_zero(); });
}

InvariantTable milnor_table(const StringLinkCode& code, int k, int max_len) {
  check_k(k, "milnor_table");
  if (max_len < 1) throw std::invalid_argument("milnor_table: max_len must be >= 1");
  const int n = code.size();
  InvariantTable table;
  table.rank = n;
  table.k = k;
  table.max_length = std::min(max_len, n * k);

  const TruncationPolicy policy(n, table.max_length - 1, std::vector<int>(n, k + 1));
  const auto lambda = longitude_series(code, policy);

  for (int len = 1; len <= table.max_length; ++len) {
    std::vector<MilnorIndex> indices;
    std::vector<int> prefix, counts(n, 0);
    enumerate_indices(n, k, static_cast<std::size_t>(len), prefix, counts, indices);
    for (MilnorIndex& I : indices) {
      Integer mu = len == 1 ? Integer(0) : lambda[I.indices.back() - 1].coefficient(monomial_part(I));
      table.entries.emplace_back(std::move(I), std::move(mu));
    }
  }
  return table;
}

InvariantTable milnor_table(const StringLinkCode& code, int k) { return milnor_table(code, k, code.size() * k); }

Comparison k_equal(const StringLinkCode& a, const StringLinkCode& b, int k, EqualityMode mode) {
  check_k(k, "k_equal");
  if (a.size() != b.size()) {
    throw RankMismatch("k_equal: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                       " components");
  }
  const int n = a.size();
  switch (mode) {
    case EqualityMode::Table: {
      const auto ta = milnor_table(a, k);
      const auto tb = milnor_table(b, k);
      const auto w = first_difference(ta, tb);
      return {!w.has_value(), w};
    }
    case EqualityMode::Longitude: {
      const auto policy = TruncationPolicy::reduced(n, k);
      return compare_longitudes(longitude_series(a, policy), longitude_series(b, policy), k);
    }
    case EqualityMode::Action: {
      const auto policy = TruncationPolicy::reduced(n, k);
      const auto la = longitude_series(a, policy);
      const auto lb = longitude_series(b, policy);
      const auto pa = KReducedAction::from_longitudes(k, la);
      const auto pb = KReducedAction::from_longitudes(k, lb);
      if (pa.images() == pb.images()) return {true, std::nullopt};
      Comparison c = compare_longitudes(la, lb, k);
      if (c.equal) throw InvariantViolation("k_equal: generator images differ on congruent longitudes");
      return c;
    }
  }
  throw std::invalid_argument("k_equal: unknown mode");
}

// ---------------------------------------------------------------------------

KReducedAction::KReducedAction(int rank, int k, std::vector<TruncatedSeries> residues)
    : rank_(rank), k_(k), residues_(std::move(residues)) {
  const auto policy = TruncationPolicy::reduced(rank, k);
  for (int i = 1; i <= rank; ++i) {
    const TruncatedSeries& r = residues_[i - 1];
    if (r.constant_term() != 1) throw InvariantViolation("KReducedAction: residue with constant term != 1");
    const TruncatedSeries c = r.lifted_to(policy);
    const TruncatedSeries c_inv = series_inverse(c);
    images_.push_back(c_inv * generator_power(policy, i, 1) * c);
    inverse_images_.push_back(c_inv * generator_power(policy, i, -1) * c);
  }
}

KReducedAction KReducedAction::identity(int rank, int k) {
  check_k(k, "KReducedAction");
  std::vector<TruncatedSeries> residues;
  for (int i = 1; i <= rank; ++i) residues.push_back(TruncatedSeries::one(TruncationPolicy::reduced_at(rank, k, i)));
  return KReducedAction(rank, k, std::move(residues));
}

KReducedAction KReducedAction::from_longitudes(int k, const std::vector<TruncatedSeries>& longitudes) {
  check_k(k, "KReducedAction");
  const int n = static_cast<int>(longitudes.size());
  std::vector<TruncatedSeries> residues;
  for (int i = 1; i <= n; ++i) residues.push_back(longitudes[i - 1].reduced_to(TruncationPolicy::reduced_at(n, k, i)));
  return KReducedAction(n, k, std::move(residues));
}

bool KReducedAction::is_identity() const {
  return std::all_of(residues_.begin(), residues_.end(), [](const TruncatedSeries& r) { return r.is_one(); });
}

bool operator==(const KReducedAction& a, const KReducedAction& b) {
  return a.rank_ == b.rank_ && a.k_ == b.k_ && a.residues_ == b.residues_;
}

KReducedAction action(const StringLinkCode& code, int k) {
  check_k(k, "action");
  return KReducedAction::from_longitudes(k, longitude_series(code, TruncationPolicy::reduced(code.size(), k)));
}

TruncatedSeries action_apply(const KReducedAction& phi, const Word& w) {
  if (w.rank() != phi.rank()) {
    throw RankMismatch("action_apply: word rank " + std::to_string(w.rank()) + " vs action rank " +
                       std::to_string(phi.rank()));
  }
  TruncatedSeries out = TruncatedSeries::one(TruncationPolicy::reduced(phi.rank(), phi.k()));
  for (const Syllable& s : w.syllables()) {
    const TruncatedSeries& g = s.exponent > 0 ? phi.images()[s.generator - 1] : phi.inverse_images()[s.generator - 1];
    for (std::int64_t e = 0; e < (s.exponent > 0 ? s.exponent : -s.exponent); ++e) out = out * g;
  }
  return out;
}

namespace {

// The ring endomorphism X_j ↦ image_j - 1 induced by φ, on the quotient by
// R_i^k.
TruncatedSeries induced_map(const KReducedAction& phi, const TruncatedSeries& s) {
  const TruncationPolicy& policy = s.policy();
  std::vector<TruncatedSeries> images;
  for (const TruncatedSeries& g : phi.images()) {
    images.push_back(g.reduced_to(policy) - TruncatedSeries::one(policy));
  }
  return substitute(s, images);
}

void check_compatible(const KReducedAction& a, const KReducedAction& b, const char* op) {
  if (a.rank() != b.rank() || a.k() != b.k()) {
    throw std::invalid_argument(std::string(op) + ": actions differ in rank or k");
  }
}

}  // namespace

KReducedAction action_compose(const KReducedAction& phi, const KReducedAction& psi) {
  check_compatible(phi, psi, "action_compose");
  std::vector<TruncatedSeries> residues;
  for (int i = 0; i < phi.rank(); ++i) {
    residues.push_back(phi.residues()[i] * induced_map(phi, psi.residues()[i]));
  }
  return KReducedAction::from_longitudes(phi.k(), [&] {
    std::vector<TruncatedSeries> lifted;
    const auto policy = TruncationPolicy::reduced(phi.rank(), phi.k());
    for (const auto& r : residues) lifted.push_back(r.lifted_to(policy));
    return lifted;
  }());
}

KReducedAction action_invert(const KReducedAction& phi) {
  const int n = phi.rank();
  const int k = phi.k();
  std::vector<TruncatedSeries> rho;
  for (int i = 0; i < n; ++i) {
    // Solve φ̃(ρ_i) = res_i(φ)^{-1}. φ̃ is the identity plus terms of higher
    // degree, so each correction raises the degree of the error.
    const TruncatedSeries target = series_inverse(phi.residues()[i]);
    TruncatedSeries r = target;
    bool solved = false;
    for (int round = 0; round <= n * k && !solved; ++round) {
      const TruncatedSeries err = target - induced_map(phi, r);
      solved = err.is_zero();
      r += err;
    }
    if (!solved) throw InvariantViolation("action_invert: no convergence within nk rounds");
    rho.push_back(r.lifted_to(TruncationPolicy::reduced(n, k)));
  }
  KReducedAction inverse = KReducedAction::from_longitudes(k, rho);
  if (!action_compose(phi, inverse).is_identity() || !action_compose(inverse, phi).is_identity()) {
    throw InvariantViolation("action_invert: inverse failed to verify");
  }
  return inverse;
}

bool link_vanishing(const LinkCode& link, int k) {
  return link_vanishing(link, k, std::vector<std::size_t>(link.size(), 0));
}

bool link_vanishing(const LinkCode& link, int k, const std::vector<std::size_t>& basepoints) {
  check_k(k, "link_vanishing");
  return milnor_table(cut(link, basepoints), k).is_zero();
}

}  // namespace wmilnor
