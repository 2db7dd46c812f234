#include "wmilnor/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "wmilnor/arrows.hpp"
#include "wmilnor/error.hpp"
#include "wmilnor/hall.hpp"
#include "wmilnor/invariants.hpp"

namespace wmilnor {
namespace {

using nlohmann::json;

enum class Format { Text, Json };

// Thrown for bad command-line values that CLI11 itself accepts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A path if it names a file, otherwise inline text when it looks like code.
std::string read_input(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read '" + arg + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  if (arg.find(':') != std::string::npos) return arg;
  throw UsageError("no such file '" + arg + "'");
}

json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

std::string integer_text(const Integer& v) { return v.str(); }

json series_json(const TruncatedSeries& s) {
  json terms = json::array();
  for (const auto& [m, c] : s.terms()) terms.push_back({{"monomial", m.indices()}, {"coeff", integer_json(c)}});
  return terms;
}

MilnorIndex parse_index(const std::string& text) {
  MilnorIndex I;
  std::string token;
  std::istringstream s(text);
  while (std::getline(s, token, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      I.indices.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad index entry '" + token + "'");
    }
  }
  if (I.indices.empty()) throw ParseError("empty index");
  return I;
}

StringLinkCode load_string_link(const std::string& arg, bool closed) {
  const std::string text = read_input(arg);
  if (closed) {
    const LinkCode link = parse_link(text);
    return cut(link, std::vector<std::size_t>(link.size(), 0));
  }
  return parse_string_link(text);
}

struct Options {
  std::string input;
  std::string second;
  std::string output;
  std::string index;
  std::string words;
  std::string factor;
  std::string mode = "table";
  int k = 1;
  int max_len = 0;
  int degree = 0;
  int rank = 0;
  int apply = -1;
  bool closed = false;
  Format format = Format::Text;
};

void print_table(const InvariantTable& t, bool zeros, Format f, std::ostream& out) {
  if (f == Format::Json) {
    json entries = json::array();
    for (const auto& [I, mu] : t.entries) {
      if (zeros || !mu.is_zero()) entries.push_back({{"I", I.indices}, {"mu", integer_json(mu)}});
    }
    out << json{{"schema", 1}, {"rank", t.rank}, {"k", t.k}, {"max_length", t.max_length}, {"entries", entries}}
               .dump(2)
        << '\n';
    return;
  }
  for (const auto& [I, mu] : t.entries) {
    if (zeros || !mu.is_zero()) out << "mu(" << to_string(I) << ") = " << integer_text(mu) << '\n';
  }
}

int table_length(const Options& o, int n) {
  int len = n * o.k;
  if (o.max_len > 0) len = std::min(len, o.max_len);
  if (o.degree > 0) len = std::min(len, o.degree + 1);
  return len;
}

int cmd_milnor(const Options& o, bool zeros, std::ostream& out) {
  const StringLinkCode code = load_string_link(o.input, o.closed);
  if (!o.index.empty()) {
    const MilnorIndex I = parse_index(o.index);
    const Integer mu = milnor(code, I);
    if (o.format == Format::Json) {
      out << json{{"schema", 1}, {"I", I.indices}, {"mu", integer_json(mu)}}.dump(2) << '\n';
    } else {
      out << "mu(" << to_string(I) << ") = " << integer_text(mu) << '\n';
    }
    return 0;
  }
  print_table(milnor_table(code, o.k, table_length(o, code.size())), zeros, o.format, out);
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const StringLinkCode a = load_string_link(o.input, o.closed);
  const StringLinkCode b = load_string_link(o.second, o.closed);
  EqualityMode mode;
  if (o.mode == "table") {
    mode = EqualityMode::Table;
  } else if (o.mode == "longitude") {
    mode = EqualityMode::Longitude;
  } else if (o.mode == "action") {
    mode = EqualityMode::Action;
  } else {
    throw UsageError("unknown mode '" + o.mode + "'");
  }
  const Comparison c = k_equal(a, b, o.k, mode);
  if (o.format == Format::Json) {
    json j{{"schema", 1}, {"k", o.k}, {"mode", o.mode}, {"equal", c.equal}};
    if (c.witness) j["witness"] = c.witness->indices;
    out << j.dump(2) << '\n';
  } else {
    out << (c.equal ? "equal" : "distinct") << '\n';
    if (c.witness) out << "witness: mu(" << to_string(*c.witness) << ")\n";
  }
  return c.equal ? 0 : 1;
}

int cmd_action(const Options& o, std::ostream& out) {
  const StringLinkCode code = load_string_link(o.input, o.closed);
  const KReducedAction phi = action(code, o.k);
  std::optional<Word> w;
  if (!o.words.empty()) w = parse_word(o.words, code.size());

  if (o.format == Format::Json) {
    json residues = json::array(), images = json::array();
    for (const auto& r : phi.residues()) residues.push_back(series_json(r));
    for (const auto& g : phi.images()) images.push_back(series_json(g));
    json j{{"schema", 1}, {"rank", phi.rank()}, {"k", phi.k()}, {"identity", phi.is_identity()},
           {"residues", residues}, {"images", images}};
    if (w) j["apply"] = {{"word", to_string(*w)}, {"series", series_json(action_apply(phi, *w))}};
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "k-reduced action, rank " << phi.rank() << ", k = " << phi.k() << '\n';
  if (phi.is_identity()) {
    out << "identity\n";
  } else {
    for (int i = 1; i <= phi.rank(); ++i) {
      out << "residue " << i << ":\n" << to_text(phi.residues()[i - 1]);
    }
  }
  if (w) out << "apply " << to_string(*w) << ":\n" << to_text(action_apply(phi, *w));
  return 0;
}

int cmd_realize(const Options& o, std::ostream& out) {
  if (o.input.empty() == o.words.empty()) throw UsageError("realize: give exactly one of FILE or --words");
  const std::vector<Word> words = parse_realizer_input(o.words.empty() ? read_input(o.input) : o.words);
  const std::string code = serialize(realize_sorted(words, static_cast<int>(words.size())));
  if (o.output.empty()) {
    out << code;
  } else {
    std::ofstream f(o.output);
    if (!(f << code)) throw UsageError("cannot write '" + o.output + "'");
  }
  return 0;
}

int cmd_hall(const Options& o, std::ostream& out) {
  if (o.rank < 1) throw UsageError("hall: --rank must be >= 1");
  if (o.max_len < 1) throw UsageError("hall: --max-len must be >= 1");
  const HallBasis basis(o.rank, o.max_len);
  std::optional<HallFactorization> f;
  if (!o.factor.empty()) f = hall_factorize(parse_word(o.factor, o.rank), basis);
  if (o.format == Format::Json) {
    json elems = json::array();
    for (std::size_t c = 0; c < basis.size(); ++c) {
      elems.push_back({{"ordinal", c + 1}, {"length", basis[c].length}, {"bracket", basis.bracket_string(c)}});
    }
    json j{{"schema", 1}, {"rank", o.rank}, {"max_length", o.max_len}, {"basis", elems}};
    if (f) {
      json e = json::array();
      for (const auto& x : f->exponents) e.push_back(integer_json(x));
      j["exponents"] = e;
      j["remainder_certified"] = f->remainder_certified;
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  for (std::size_t c = 0; c < basis.size(); ++c) out << basis.bracket_string(c) << '\n';
  if (f) {
    out << "exponents:";
    for (const auto& x : f->exponents) out << ' ' << integer_text(x);
    out << "\nremainder: " << (f->remainder_certified ? "certified" : "uncertified") << '\n';
  }
  return 0;
}

int cmd_moves(const Options& o, std::ostream& out) {
  const StringLinkCode code = load_string_link(o.input, o.closed);
  const std::vector<Move> sites = deletion_sites(code);
  if (o.apply >= 0) {
    if (static_cast<std::size_t>(o.apply) >= sites.size()) {
      throw UsageError("moves: --apply " + std::to_string(o.apply) + " but only " +
                       std::to_string(sites.size()) + " sites");
    }
    out << serialize(apply_move(code, sites[o.apply]));
    return 0;
  }
  if (o.format == Format::Json) {
    json j = json::array();
    for (const Move& m : sites) j.push_back(describe(m));
    out << json{{"schema", 1}, {"sites", j}}.dump(2) << '\n';
    return 0;
  }
  for (std::size_t s = 0; s < sites.size(); ++s) out << s << ": " << describe(sites[s]) << '\n';
  return 0;
}

int cmd_link_vanishing(const Options& o, std::ostream& out) {
  const LinkCode link = parse_link(read_input(o.input));
  const bool v = link_vanishing(link, o.k);
  if (o.format == Format::Json) {
    out << json{{"schema", 1}, {"k", o.k}, {"vanishing", v}}.dump(2) << '\n';
  } else {
    out << (v ? "vanishing" : "non-vanishing") << '\n';
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Welded Milnor invariants of string links and links given as Gauss codes", "wmilnor"};
  app.require_subcommand(1);
  Options o;
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Output format: text or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  auto add_k = [&](CLI::App* c) { c->add_option("--k", o.k, "Filter r(I) <= k")->check(CLI::PositiveNumber); };
  auto add_closed = [&](CLI::App* c) {
    c->add_flag("--closed", o.closed, "Read the code as a closed link and cut it at the start of each component");
  };

  std::map<CLI::App*, std::function<int()>> handlers;

  for (const char* name : {"milnor", "table"}) {
    const bool zeros = std::string(name) == "table";
    auto* c = app.add_subcommand(name, zeros ? "Print every mu(I) with r(I) <= k, zeros included"
                                             : "Print the nonzero mu(I) with r(I) <= k, or one mu(I)");
    c->add_option("code", o.input, "Gauss code file, `-` for stdin, or inline code")->required();
    add_k(c);
    c->add_option("--max-len", o.max_len, "Longest |I|")->check(CLI::PositiveNumber);
    c->add_option("--degree", o.degree, "Series truncation degree (default nk)")->check(CLI::PositiveNumber);
    if (!zeros) c->add_option("--index", o.index, "Single index, e.g. 2,3,1");
    add_closed(c);
    add_format(c);
    handlers[c] = [&, zeros] { return cmd_milnor(o, zeros, out); };
  }
  {
    auto* c = app.add_subcommand("compare", "Decide whether all mu(I) with r(I) <= k agree");
    c->add_option("a", o.input, "First code")->required();
    c->add_option("b", o.second, "Second code")->required();
    add_k(c);
    c->add_option("--mode", o.mode, "table, longitude or action")
        ->check(CLI::IsMember({"table", "longitude", "action"}));
    add_closed(c);
    add_format(c);
    handlers[c] = [&] { return cmd_compare(o, out); };
  }
  {
    auto* c = app.add_subcommand("action", "Print the k-reduced free action");
    c->add_option("code", o.input, "Gauss code")->required();
    add_k(c);
    c->add_option("--words", o.words, "Also apply the action to this word");
    add_closed(c);
    add_format(c);
    handlers[c] = [&] { return cmd_action(o, out); };
  }
  {
    auto* c = app.add_subcommand("realize", "Build a sorted string link with prescribed longitudes");
    c->add_option("words-file", o.input, "Realizer input file");
    c->add_option("--words", o.words, "Inline realizer input, e.g. '1: a2 A3 / 2: - / 3: -'");
    c->add_option("-o,--output", o.output, "Write the code here instead of stdout");
    handlers[c] = [&] { return cmd_realize(o, out); };
  }
  {
    auto* c = app.add_subcommand("hall", "Print the basic commutators and optionally factor a word");
    c->add_option("--rank", o.rank, "Number of generators")->required();
    c->add_option("--max-len", o.max_len, "Longest commutator")->required();
    c->add_option("--factor", o.factor, "Word to factor, e.g. 'a1 a2 A1'");
    add_format(c);
    handlers[c] = [&] { return cmd_hall(o, out); };
  }
  {
    auto* c = app.add_subcommand("moves", "List R1/R2/OC deletion sites, or apply one");
    c->add_option("code", o.input, "Gauss code")->required();
    c->add_option("--apply", o.apply, "Apply the site with this number and print the result")
        ->check(CLI::NonNegativeNumber);
    add_closed(c);
    add_format(c);
    handlers[c] = [&] { return cmd_moves(o, out); };
  }
  {
    auto* c = app.add_subcommand("link-vanishing", "Test whether all mu(I) with r(I) <= k of a link vanish");
    c->add_option("code", o.input, "Closed Gauss code")->required();
    add_k(c);
    c->add_flag("--closed", o.closed, "Accepted for symmetry; the code is always read as a closed link");
    add_format(c);
    handlers[c] = [&] { return cmd_link_vanishing(o, out); };
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    for (auto& [sub, handler] : handlers) {
      if (sub->parsed()) return handler();
    }
    err << "wmilnor: no subcommand\n";
    return 2;
  } catch (const InvariantViolation& e) {
    err << "wmilnor: internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "wmilnor: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace wmilnor
