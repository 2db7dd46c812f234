#include "wmilnor/gauss.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "wmilnor/error.hpp"

namespace wmilnor {
namespace {

std::string passage_token(const Passage& p) {
  return std::string(p.role == Role::Over ? "O" : "U") + std::to_string(p.crossing) +
         (p.sign > 0 ? "+" : "-");
}

void validate(const PassageSequences& comps) {
  struct Seen {
    const Passage* over = nullptr;
    const Passage* under = nullptr;
  };
  std::map<long, Seen> seen;
  for (const auto& comp : comps) {
    for (const Passage& p : comp) {
      if (p.sign != 1 && p.sign != -1) throw ParseError("bad sign in " + passage_token(p));
      if (p.crossing < 0) throw ParseError("negative crossing id in " + passage_token(p));
      Seen& s = seen[p.crossing];
      const Passage*& slot = p.role == Role::Over ? s.over : s.under;
      if (slot != nullptr) {
        throw ParseError("crossing " + std::to_string(p.crossing) + " has two " +
                         (p.role == Role::Over ? "Over" : "Under") + " passages ('" +
                         passage_token(p) + "')");
      }
      slot = &p;
    }
  }
  for (const auto& [id, s] : seen) {
    if (s.over == nullptr || s.under == nullptr) {
      const Passage& p = s.over ? *s.over : *s.under;
      throw ParseError("dangling crossing " + std::to_string(id) + " ('" + passage_token(p) +
                       "' has no partner)");
    }
    if (s.over->sign != s.under->sign) {
      throw ParseError("sign mismatch at crossing " + std::to_string(id) + " ('" +
                       passage_token(*s.over) + "' vs '" + passage_token(*s.under) + "')");
    }
  }
}

class CodeParser {
 public:
  explicit CodeParser(std::string_view text) : text_(text) {}

  PassageSequences parse() {
    PassageSequences comps;
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find_first_of("\n/", start);
      if (end == std::string_view::npos) end = text_.size();
      parse_line(text_.substr(start, end - start), comps);
      start = end + 1;
    }
    if (comps.empty()) throw ParseError("empty Gauss code: expected at least one component line");
    validate(comps);
    return comps;
  }

 private:
  static bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

  static std::string token_at(std::string_view line, std::size_t i) {
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    return std::string(line.substr(i, std::max<std::size_t>(j - i, 1)));
  }

  static void skip_ws(std::string_view line, std::size_t& i) {
    while (i < line.size() && is_space(line[i])) ++i;
  }

  static std::optional<long> read_int(std::string_view line, std::size_t& i) {
    const std::size_t start = i;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i == start) return std::nullopt;
    long v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + i, v);
    if (ec != std::errc()) return std::nullopt;
    return v;
  }

  void parse_line(std::string_view line, PassageSequences& comps) {
    std::size_t i = 0;
    skip_ws(line, i);
    if (i == line.size()) return;
    const std::size_t label_at = i;
    const auto label = read_int(line, i);
    skip_ws(line, i);
    if (!label || i >= line.size() || line[i] != ':') {
      throw ParseError("expected 'INT:' component label, got '" + token_at(line, label_at) + "'");
    }
    if (*label != static_cast<long>(comps.size()) + 1) {
      throw ParseError("component label '" + std::to_string(*label) + "' out of order (expected " +
                       std::to_string(comps.size() + 1) + ")");
    }
    ++i;
    std::vector<Passage> comp;
    for (skip_ws(line, i); i < line.size(); skip_ws(line, i)) {
      const std::size_t tok = i;
      Passage p;
      if (line[i] == 'O' || line[i] == 'U') {
        p.role = line[i] == 'O' ? Role::Over : Role::Under;
      } else {
        throw ParseError("bad passage token '" + token_at(line, tok) + "'");
      }
      ++i;
      skip_ws(line, i);
      const auto id = read_int(line, i);
      skip_ws(line, i);
      if (!id || i >= line.size() || (line[i] != '+' && line[i] != '-')) {
        throw ParseError("bad passage token '" + token_at(line, tok) + "'");
      }
      p.crossing = *id;
      p.sign = line[i] == '+' ? 1 : -1;
      ++i;
      comp.push_back(p);
    }
    comps.push_back(std::move(comp));
  }

  std::string_view text_;
};

std::string serialize_components(const PassageSequences& comps) {
  std::string out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    out += std::to_string(i + 1) + ":";
    for (const Passage& p : comps[i]) out += " " + passage_token(p);
    out += '\n';
  }
  return out;
}

// Where each crossing's over-passage sits, as an arc.
std::map<long, ArcRef> over_arcs(const PassageSequences& comps) {
  std::map<long, ArcRef> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    int arc = 1;
    for (const Passage& p : comps[i]) {
      if (p.role == Role::Under) {
        ++arc;
      } else {
        out[p.crossing] = {static_cast<int>(i) + 1, arc};
      }
    }
  }
  return out;
}

// Position of the passage with the given crossing and role.
std::pair<int, std::size_t> locate(const PassageSequences& comps, long crossing, Role role) {
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (std::size_t j = 0; j < comps[i].size(); ++j) {
      if (comps[i][j].crossing == crossing && comps[i][j].role == role) return {static_cast<int>(i), j};
    }
  }
  throw std::logic_error("locate: crossing not found");
}

void check_component(const StringLinkCode& code, int c) {
  if (c < 1 || c > code.size()) throw std::invalid_argument("component index out of range");
}

}  // namespace

StringLinkCode::StringLinkCode(PassageSequences components) : components_(std::move(components)) {
  validate(components_);
}

StringLinkCode StringLinkCode::trivial(int n) {
  if (n < 1) throw std::invalid_argument("string link needs at least one component");
  return StringLinkCode(PassageSequences(n));
}

long StringLinkCode::max_crossing_id() const {
  long m = -1;
  for (const auto& comp : components_) {
    for (const Passage& p : comp) m = std::max(m, p.crossing);
  }
  return m;
}

std::size_t StringLinkCode::crossing_count() const {
  std::size_t n = 0;
  for (const auto& comp : components_) n += comp.size();
  return n / 2;
}

LinkCode::LinkCode(PassageSequences components) : components_(std::move(components)) {
  validate(components_);
}

LinkCode LinkCode::unlink(int n) {
  if (n < 1) throw std::invalid_argument("link needs at least one component");
  return LinkCode(PassageSequences(n));
}

StringLinkCode parse_string_link(std::string_view text) { return StringLinkCode(CodeParser(text).parse()); }
LinkCode parse_link(std::string_view text) { return LinkCode(CodeParser(text).parse()); }
std::string serialize(const StringLinkCode& code) { return serialize_components(code.components()); }
std::string serialize(const LinkCode& code) { return serialize_components(code.components()); }

WirtingerPresentation wirtinger(const StringLinkCode& code) {
  const auto overs = over_arcs(code.components());
  WirtingerPresentation wp;
  for (int i = 1; i <= code.size(); ++i) {
    int arc = 1;
    for (const Passage& p : code.component(i)) {
      if (p.role != Role::Under) continue;
      wp.relations.push_back({{i, arc}, {i, arc + 1}, overs.at(p.crossing), p.sign});
      ++arc;
    }
    wp.arc_counts.push_back(arc);
  }
  return wp;
}

int self_writhe(const StringLinkCode& code, int i) {
  check_component(code, i);
  std::map<long, int> count;
  for (const Passage& p : code.component(i)) ++count[p.crossing];
  int f = 0;
  for (const Passage& p : code.component(i)) {
    if (p.role == Role::Under && count[p.crossing] == 2) f += p.sign;
  }
  return f;
}

std::vector<TruncatedSeries> longitude_series(const StringLinkCode& code, const TruncationPolicy& policy) {
  const int n = code.size();
  if (policy.rank() != n) {
    throw RankMismatch("longitude_series: " + std::to_string(n) + " components vs series rank " +
                       std::to_string(policy.rank()));
  }
  const WirtingerPresentation wp = wirtinger(code);

  // Per-arc series A_{i,j} and their inverses, 0-based arc index.
  using Table = std::vector<std::vector<TruncatedSeries>>;
  Table arcs(n), inverse_arcs(n);
  for (int i = 0; i < n; ++i) {
    arcs[i].assign(wp.arc_counts[i], generator_power(policy, i + 1, 1));
    inverse_arcs[i].assign(wp.arc_counts[i], generator_power(policy, i + 1, -1));
  }
  auto over_factor = [&](const WirtingerRelation& r, bool inverse) -> const TruncatedSeries& {
    const bool use_inverse = (r.sign < 0) != inverse;
    const Table& t = use_inverse ? inverse_arcs : arcs;
    return t[r.over.component - 1][r.over.arc - 1];
  };

  bool stable = false;
  for (int round = 1; round <= policy.max_degree() + 1 && !stable; ++round) {
    Table next = arcs, next_inverse = inverse_arcs;
    for (const WirtingerRelation& r : wp.relations) {
      const int i = r.source.component - 1;
      const TruncatedSeries& b = over_factor(r, false);
      const TruncatedSeries& b_inv = over_factor(r, true);
      next[i][r.target.arc - 1] = b_inv * next[i][r.source.arc - 1] * b;
      next_inverse[i][r.target.arc - 1] = b_inv * next_inverse[i][r.source.arc - 1] * b;
    }
    stable = true;
    for (int i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < arcs[i].size(); ++j) {
        if (next[i][j] == arcs[i][j]) continue;
        stable = false;
        // The previous round is exact through degree `round`.
        const auto diff = (next[i][j] - arcs[i][j]).min_positive_degree();
        if (diff && *diff <= round) {
          throw InvariantViolation("longitude_series: arc series changed in degree " +
                                   std::to_string(*diff) + " at round " + std::to_string(round));
        }
      }
    }
    arcs = std::move(next);
    inverse_arcs = std::move(next_inverse);
  }
  if (!stable) throw InvariantViolation("longitude_series: arc series did not stabilize");

  std::vector<TruncatedSeries> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) out.push_back(generator_power(policy, i, -self_writhe(code, i)));
  for (const WirtingerRelation& r : wp.relations) {
    auto& lambda = out[r.source.component - 1];
    lambda = lambda * over_factor(r, false);
  }
  return out;
}

std::vector<TruncatedSeries> longitude_series(const StringLinkCode& code, int q) {
  if (q < 1) throw std::invalid_argument("longitude_series: q must be >= 1");
  return longitude_series(code, TruncationPolicy::total_degree(code.size(), q));
}

// ---------------------------------------------------------------------------

namespace {

struct MoveApplier {
  const StringLinkCode& code;

  PassageSequences comps() const { return code.components(); }

  static void check_position(const std::vector<Passage>& comp, std::size_t pos, std::size_t span,
                             const char* what) {
    if (pos + span > comp.size()) throw std::invalid_argument(std::string(what) + ": position out of range");
  }

  StringLinkCode operator()(const R1Insert& m) const {
    check_component(code, m.component);
    if (m.sign != 1 && m.sign != -1) throw std::invalid_argument("r1insert: sign must be +1 or -1");
    auto c = comps();
    auto& comp = c[m.component - 1];
    check_position(comp, m.position, 0, "r1insert");
    const long id = code.max_crossing_id() + 1;
    Passage over{id, Role::Over, m.sign}, under{id, Role::Under, m.sign};
    const Passage first = m.over_first ? over : under, second = m.over_first ? under : over;
    comp.insert(comp.begin() + static_cast<long>(m.position), {first, second});
    return StringLinkCode(std::move(c));
  }

  StringLinkCode operator()(const R1Delete& m) const {
    check_component(code, m.component);
    auto c = comps();
    auto& comp = c[m.component - 1];
    check_position(comp, m.position, 2, "r1delete");
    if (comp[m.position].crossing != comp[m.position + 1].crossing) {
      throw std::invalid_argument("r1delete: passages do not form a kink");
    }
    comp.erase(comp.begin() + static_cast<long>(m.position), comp.begin() + static_cast<long>(m.position) + 2);
    return StringLinkCode(std::move(c));
  }

  StringLinkCode operator()(const R2Insert& m) const {
    check_component(code, m.under_component);
    check_component(code, m.over_component);
    if (m.sign != 1 && m.sign != -1) throw std::invalid_argument("r2insert: sign must be +1 or -1");
    auto c = comps();
    check_position(c[m.under_component - 1], m.under_position, 0, "r2insert");
    check_position(c[m.over_component - 1], m.over_position, 0, "r2insert");
    const long a = code.max_crossing_id() + 1, b = a + 1;
    const std::vector<Passage> unders{{a, Role::Under, m.sign}, {b, Role::Under, -m.sign}};
    std::vector<Passage> overs{{a, Role::Over, m.sign}, {b, Role::Over, -m.sign}};
    if (m.reversed) std::swap(overs[0], overs[1]);
    auto insert = [&](int comp, std::size_t pos, const std::vector<Passage>& ps) {
      auto& seq = c[comp - 1];
      seq.insert(seq.begin() + static_cast<long>(pos), ps.begin(), ps.end());
    };
    // Insert at the later site first so both positions refer to the old code;
    // on a tie the under-pair ends up first.
    if (m.under_component == m.over_component && m.under_position > m.over_position) {
      insert(m.under_component, m.under_position, unders);
      insert(m.over_component, m.over_position, overs);
    } else {
      insert(m.over_component, m.over_position, overs);
      insert(m.under_component, m.under_position, unders);
    }
    return StringLinkCode(std::move(c));
  }

  StringLinkCode operator()(const R2Delete& m) const {
    check_component(code, m.component);
    const auto& comp = code.component(m.component);
    check_position(comp, m.position, 2, "r2delete");
    const Passage& u1 = comp[m.position];
    const Passage& u2 = comp[m.position + 1];
    if (u1.role != Role::Under || u2.role != Role::Under || u1.sign != -u2.sign) {
      throw std::invalid_argument("r2delete: need two adjacent under-passages of opposite signs");
    }
    const auto [c1, p1] = locate(code.components(), u1.crossing, Role::Over);
    const auto [c2, p2] = locate(code.components(), u2.crossing, Role::Over);
    if (c1 != c2 || (p1 + 1 != p2 && p2 + 1 != p1)) {
      throw std::invalid_argument("r2delete: over-passages are not adjacent");
    }
    auto c = comps();
    for (auto& seq : c) {
      std::erase_if(seq, [&](const Passage& p) { return p.crossing == u1.crossing || p.crossing == u2.crossing; });
    }
    return StringLinkCode(std::move(c));
  }

  StringLinkCode operator()(const OCSwap& m) const {
    check_component(code, m.component);
    auto c = comps();
    auto& comp = c[m.component - 1];
    check_position(comp, m.position, 2, "ocswap");
    if (comp[m.position].role != Role::Over || comp[m.position + 1].role != Role::Over) {
      throw std::invalid_argument("ocswap: need two adjacent over-passages");
    }
    std::swap(comp[m.position], comp[m.position + 1]);
    return StringLinkCode(std::move(c));
  }
};

}  // namespace

StringLinkCode apply_move(const StringLinkCode& code, const Move& move) {
  return std::visit(MoveApplier{code}, move);
}

std::vector<Move> deletion_sites(const StringLinkCode& code) {
  std::vector<Move> out;
  for (int i = 1; i <= code.size(); ++i) {
    const auto& comp = code.component(i);
    for (std::size_t p = 0; p + 1 < comp.size(); ++p) {
      const Passage& a = comp[p];
      const Passage& b = comp[p + 1];
      if (a.crossing == b.crossing) out.emplace_back(R1Delete{i, p});
      if (a.role == Role::Over && b.role == Role::Over) out.emplace_back(OCSwap{i, p});
      if (a.role == Role::Under && b.role == Role::Under && a.sign == -b.sign) {
        const auto [c1, p1] = locate(code.components(), a.crossing, Role::Over);
        const auto [c2, p2] = locate(code.components(), b.crossing, Role::Over);
        if (c1 == c2 && (p1 + 1 == p2 || p2 + 1 == p1)) out.emplace_back(R2Delete{i, p});
      }
    }
  }
  return out;
}

std::string describe(const Move& move) {
  struct Describer {
    std::string operator()(const R1Insert& m) const {
      return "r1insert component=" + std::to_string(m.component) + " position=" + std::to_string(m.position) +
             " sign=" + (m.sign > 0 ? "+" : "-") + (m.over_first ? "" : " under-first");
    }
    std::string operator()(const R1Delete& m) const {
      return "r1delete component=" + std::to_string(m.component) + " position=" + std::to_string(m.position);
    }
    std::string operator()(const R2Insert& m) const {
      return "r2insert under=" + std::to_string(m.under_component) + "@" + std::to_string(m.under_position) +
             " over=" + std::to_string(m.over_component) + "@" + std::to_string(m.over_position) +
             " sign=" + (m.sign > 0 ? "+" : "-") + (m.reversed ? " reversed" : "");
    }
    std::string operator()(const R2Delete& m) const {
      return "r2delete component=" + std::to_string(m.component) + " position=" + std::to_string(m.position);
    }
    std::string operator()(const OCSwap& m) const {
      return "ocswap component=" + std::to_string(m.component) + " position=" + std::to_string(m.position);
    }
  };
  return std::visit(Describer{}, move);
}

StringLinkCode stack(const StringLinkCode& lower, const StringLinkCode& upper) {
  if (lower.size() != upper.size()) {
    throw RankMismatch("stack: " + std::to_string(lower.size()) + " vs " + std::to_string(upper.size()) +
                       " components");
  }
  const long shift = lower.max_crossing_id() + 1;
  PassageSequences c = lower.components();
  for (int i = 0; i < upper.size(); ++i) {
    for (Passage p : upper.components()[i]) {
      p.crossing += shift;
      c[i].push_back(p);
    }
  }
  return StringLinkCode(std::move(c));
}

StringLinkCode cut(const LinkCode& link, const std::vector<std::size_t>& basepoints) {
  if (static_cast<int>(basepoints.size()) != link.size()) {
    throw RankMismatch("cut: one basepoint per component required");
  }
  PassageSequences c = link.components();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::size_t p = basepoints[i];
    if (c[i].empty() ? p != 0 : p >= c[i].size()) {
      throw std::invalid_argument("cut: basepoint " + std::to_string(p) + " is not a gap of component " +
                                  std::to_string(i + 1));
    }
    std::rotate(c[i].begin(), c[i].begin() + static_cast<long>(p), c[i].end());
  }
  return StringLinkCode(std::move(c));
}

LinkCode closure(const StringLinkCode& code) { return LinkCode(code.components()); }

}  // namespace wmilnor
