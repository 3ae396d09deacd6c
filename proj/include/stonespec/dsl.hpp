#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "stonespec/errors.hpp"
#include "stonespec/lattice.hpp"
#include "stonespec/measurable.hpp"
#include "stonespec/rational.hpp"
#include "stonespec/set_lattice.hpp"
#include "stonespec/spectral_family.hpp"
#include "stonespec/stone_spectrum.hpp"
#include "stonespec/topology.hpp"

/// Instance files: a small block language for lattices, spaces, fields of
/// sets, ideals, spectral families and functions.
///
///     lattice MO2 {
///       elements: 0, a, a', b, b', 1;
///       order: 0 < a < 1, 0 < a' < 1, 0 < b < 1, 0 < b' < 1;
///       ortho: 0 <-> 1, a <-> a', b <-> b';
///       flags: orthomodular;
///     }
///     topology S on {1,2} { opens: {}, {1}, {1,2}; }
///     field F on {1,2,3} { atoms: {1}, {2,3}; }
///     ideal I in F { generators: {1}; }
///     family E in MO2 { 0 : a; 1 : 1; }
///     family Q in F/I { 0 : {2,3}; }
///     family2 C in B2 { 0, 0 : {}; 0, 1 : {x}; 1, 0 : {y}; 1, 1 : {x,y}; }
///     function f on S { 1 : 0; 2 : 1/2; }
namespace stonespec::dsl {

using stonespec::to_string;

enum class Severity { error, warning };

struct Diagnostic {
  Severity severity = Severity::error;
  int line = 0;
  int col = 0;
  std::string code;
  std::string message;
  std::optional<std::string> suggestion;
};

inline std::string to_string(const Diagnostic& d) {
  std::string out = std::to_string(d.line) + ":" + std::to_string(d.col) + ": " +
                    (d.severity == Severity::error ? "error" : "warning") + "[" + d.code + "]: " + d.message;
  if (d.suggestion) out += " (did you mean '" + *d.suggestion + "'?)";
  return out;
}

/// Diagnostic codes.
namespace code {
inline constexpr const char* syntax = "syntax";
inline constexpr const char* empty_file = "empty-file";
inline constexpr const char* unknown_block = "unknown-block-kind";
inline constexpr const char* duplicate_name = "duplicate-name";
inline constexpr const char* dangling_reference = "dangling-reference";
inline constexpr const char* unknown_element = "unknown-element";
inline constexpr const char* malformed_rational = "malformed-rational";
inline constexpr const char* non_increasing = "non-increasing-thresholds";
inline constexpr const char* non_monotone = "non-monotone-family";
inline constexpr const char* invalid_family = "invalid-family";
inline constexpr const char* invalid_structure = "invalid-structure";
}  // namespace code

struct LatticeBlock {
  std::string name;
  Lattice lattice;
  bool orthomodular_flag = false;
  bool distributive_flag = false;
};

struct TopologyBlock {
  std::string name;
  FiniteTopSpace space;
};

struct FieldBlock {
  std::string name;
  FiniteFieldOfSets field;
};

struct IdealBlock {
  std::string name;
  std::string field;
  std::shared_ptr<const QuotientAlgebra> quotient;
};

struct FamilyBlock {
  std::string name;
  std::string space;
  StepSpectralFamily family;
};

struct Family2Block {
  std::string name;
  std::string space;
  TwoParamStepSpectralFamily family;
};

struct FunctionBlock {
  std::string name;
  std::string space;
  PointFunction values;
};

using Block = std::variant<LatticeBlock, TopologyBlock, FieldBlock, IdealBlock, FamilyBlock, Family2Block, FunctionBlock>;

inline const std::string& block_name(const Block& b) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, b);
}

inline std::string block_kind(const Block& b) {
  static constexpr const char* kKinds[] = {"lattice", "topology", "field", "ideal", "family", "family2", "function"};
  return kKinds[b.index()];
}

/// The lattice a family can live in, with its element syntax.
struct Space {
  enum class Kind { lattice, topology, field, quotient };
  Kind kind;
  Lattice lattice;
  const TopologyBlock* topology = nullptr;
  const FieldBlock* field = nullptr;
  const IdealBlock* ideal = nullptr;

  /// Name of a lattice element as written in the DSL.
  std::string element_text(ElementId a) const {
    switch (kind) {
      case Kind::lattice: return lattice.name(a);
      case Kind::topology: return topology->space.open_lattice().name(topology->space.open_lattice().set_of(a));
      case Kind::field: return field->field.sets().name(field->field.sets().set_of(a));
      case Kind::quotient: return ideal->quotient->classes().name(ideal->quotient->representative(a));
    }
    return {};
  }

  StoneSpectrum spectrum() const {
    if (kind == Kind::quotient) return ideal->quotient->spectrum();
    return enumerate_quasipoints(lattice);
  }
};

class InstanceFile {
 public:
  const std::vector<Block>& blocks() const { return blocks_; }
  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& b : blocks_) out.push_back(block_name(b));
    return out;
  }

  const Block* find(std::string_view name) const {
    for (const auto& b : blocks_) {
      if (block_name(b) == name) return &b;
    }
    return nullptr;
  }

  /// Throws InputError when the name is missing or of another kind.
  template <class T>
  const T& get(std::string_view name) const {
    const Block* b = find(name);
    if (!b) throw InputError("no object named '" + std::string(name) + "'");
    if (const T* t = std::get_if<T>(b)) return *t;
    throw InputError("'" + std::string(name) + "' is a " + block_kind(*b));
  }

  /// Resolves `L`, a topology, a field, or `F/I`.
  std::optional<Space> space(std::string_view name) const {
    if (auto slash = name.find('/'); slash != std::string_view::npos) {
      const Block* f = find(name.substr(0, slash));
      const Block* i = find(name.substr(slash + 1));
      if (!f || !i || !std::holds_alternative<FieldBlock>(*f) || !std::holds_alternative<IdealBlock>(*i)) {
        return std::nullopt;
      }
      const auto& ideal = std::get<IdealBlock>(*i);
      if (ideal.field != block_name(*f)) return std::nullopt;
      return Space{Space::Kind::quotient, ideal.quotient->lattice(), nullptr, &std::get<FieldBlock>(*f), &ideal};
    }
    const Block* b = find(name);
    if (!b) return std::nullopt;
    if (const auto* l = std::get_if<LatticeBlock>(b)) return Space{Space::Kind::lattice, l->lattice};
    if (const auto* t = std::get_if<TopologyBlock>(b)) {
      return Space{Space::Kind::topology, t->space.open_lattice().lattice(), t};
    }
    if (const auto* f = std::get_if<FieldBlock>(b)) {
      return Space{Space::Kind::field, f->field.lattice(), nullptr, f};
    }
    return std::nullopt;
  }

  Space require_space(std::string_view name) const {
    if (auto s = space(name)) return *s;
    throw InputError("'" + std::string(name) + "' is not a lattice, topology, field or quotient");
  }

  void add(Block b) { blocks_.push_back(std::move(b)); }

 private:
  std::vector<Block> blocks_;
};

struct ParseResult {
  std::optional<InstanceFile> file;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return file.has_value(); }
};

/// Raised by parse_or_throw; carries every diagnostic.
class ParseError : public InputError {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics)
      : InputError(render(diagnostics)), diagnostics_(std::move(diagnostics)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string render(const std::vector<Diagnostic>& ds) {
    std::string out;
    for (const auto& d : ds) out += (out.empty() ? "" : "\n") + to_string(d);
    return out;
  }
  std::vector<Diagnostic> diagnostics_;
};

namespace detail {

inline bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'' || c == '.' || c == '/' ||
         c == '+' || c == '-';
}

inline bool is_word(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_word_char);
}

inline int edit_distance(std::string_view a, std::string_view b) {
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

/// Closest candidate within distance 2, if any.
inline std::optional<std::string> closest(std::string_view word, const std::vector<std::string>& candidates) {
  std::optional<std::string> best;
  int best_d = 3;
  for (const auto& c : candidates) {
    const int d = edit_distance(word, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

enum class Tok { word, lbrace, rbrace, comma, semi, colon, lt, arrow, end, bad };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      advance(1);
      continue;
    }
    const int l = line;
    const int k = col;
    if (src.substr(i, 3) == "<->") {
      out.push_back({Tok::arrow, "<->", l, k});
      advance(3);
      continue;
    }
    Tok single = Tok::bad;
    switch (c) {
      case '{': single = Tok::lbrace; break;
      case '}': single = Tok::rbrace; break;
      case ',': single = Tok::comma; break;
      case ';': single = Tok::semi; break;
      case ':': single = Tok::colon; break;
      case '<': single = Tok::lt; break;
      default: break;
    }
    if (single != Tok::bad) {
      out.push_back({single, std::string(1, c), l, k});
      advance(1);
      continue;
    }
    if (is_word_char(c)) {
      std::size_t j = i;
      while (j < src.size() && is_word_char(src[j])) ++j;
      out.push_back({Tok::word, std::string(src.substr(i, j - i)), l, k});
      advance(j - i);
      continue;
    }
    out.push_back({Tok::bad, std::string(1, c), l, k});
    advance(1);
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

/// A lattice element as written: a word or a set literal.
struct ElementRef {
  std::string text;
  std::optional<std::vector<std::string>> set;
  int line = 0;
  int col = 0;
};

/// Thrown inside the parser to abandon a statement.
struct StatementError {};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  ParseResult run() {
    InstanceFile file;
    if (peek().kind == Tok::end) {
      error(peek(), code::empty_file, "the instance file contains no blocks");
    }
    while (peek().kind != Tok::end) parse_block(file);
    ParseResult r;
    if (diags_.empty()) {
      r.file = std::move(file);
    } else {
      r.diagnostics = std::move(diags_);
    }
    return r;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::end) ++pos_;
    return t;
  }

  void error(const Token& at, const char* c, std::string message, std::optional<std::string> suggestion = {}) {
    diags_.push_back({Severity::error, at.line, at.col, c, std::move(message), std::move(suggestion)});
  }
  void error_at(int line, int col, const char* c, std::string message, std::optional<std::string> suggestion = {}) {
    diags_.push_back({Severity::error, line, col, c, std::move(message), std::move(suggestion)});
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::end: return "end of input";
      case Tok::word: return "'" + t.text + "'";
      default: return "'" + t.text + "'";
    }
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      error(peek(), code::syntax, std::string("expected ") + what + ", found " + describe(peek()));
      throw StatementError{};
    }
    return take();
  }

  // Skips to the end of the current statement without leaving the body.
  void recover_statement() {
    while (peek().kind != Tok::end && peek().kind != Tok::semi && peek().kind != Tok::rbrace) {
      if (peek().kind == Tok::lbrace) {
        skip_braces();
      } else {
        take();
      }
    }
    if (peek().kind == Tok::semi) take();
  }

  void skip_braces() {
    int depth = 0;
    do {
      if (peek().kind == Tok::lbrace) ++depth;
      if (peek().kind == Tok::rbrace) --depth;
      if (peek().kind == Tok::end) return;
      take();
    } while (depth > 0);
  }

  // Skips to just after the closing brace of the current block body.
  void recover_block() {
    int depth = 1;
    while (peek().kind != Tok::end && depth > 0) {
      if (peek().kind == Tok::lbrace) ++depth;
      if (peek().kind == Tok::rbrace) --depth;
      take();
    }
  }

  std::vector<std::string> parse_set() {
    expect(Tok::lbrace, "'{'");
    std::vector<std::string> items;
    if (peek().kind != Tok::rbrace) {
      items.push_back(expect(Tok::word, "a point name").text);
      while (peek().kind == Tok::comma) {
        take();
        items.push_back(expect(Tok::word, "a point name").text);
      }
    }
    expect(Tok::rbrace, "'}'");
    return items;
  }

  static std::string set_text(const std::vector<std::string>& items) {
    std::string out = "{";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
    return out + "}";
  }

  ElementRef parse_element() {
    const Token& t = peek();
    ElementRef r{"", std::nullopt, t.line, t.col};
    if (t.kind == Tok::lbrace) {
      r.set = parse_set();
      r.text = set_text(*r.set);
    } else {
      r.text = expect(Tok::word, "an element").text;
    }
    return r;
  }

  std::optional<Rational> parse_number() {
    const Token& t = expect(Tok::word, "a rational number");
    auto v = parse_rational(t.text);
    if (!v) error(t, code::malformed_rational, "malformed rational '" + t.text + "'");
    return v;
  }

  // Statement `key: ...;`; returns the key token.
  const Token& statement_key(std::initializer_list<std::string_view> allowed) {
    const Token& key = expect(Tok::word, "a statement keyword");
    if (std::find(allowed.begin(), allowed.end(), key.text) == allowed.end()) {
      std::vector<std::string> cand(allowed.begin(), allowed.end());
      error(key, code::syntax, "unexpected statement '" + key.text + "'", closest(key.text, cand));
      throw StatementError{};
    }
    expect(Tok::colon, "':'");
    return key;
  }

  void end_statement() {
    if (peek().kind == Tok::rbrace) return;
    expect(Tok::semi, "';'");
  }

  // Runs `body` once per statement until the closing brace; returns false
  // when any statement failed.
  template <class F>
  bool statements(F&& body) {
    const std::size_t before = diags_.size();
    while (peek().kind != Tok::rbrace && peek().kind != Tok::end) {
      try {
        body();
        end_statement();
      } catch (const StatementError&) {
        recover_statement();
      }
    }
    if (peek().kind == Tok::end) {
      error(peek(), code::syntax, "unterminated block: expected '}'");
      return false;
    }
    take();
    return diags_.size() == before;
  }

  struct Header {
    std::string kind;
    std::string name;
    int line;
    int col;
  };

  bool declare(const Token& name) {
    if (declared_.count(name.text)) {
      error(name, code::duplicate_name, "'" + name.text + "' is already defined");
      return false;
    }
    declared_.insert(name.text);
    return true;
  }

  // Reports a missing reference unless it names a block that failed.
  void dangling(const Token& at, const std::string& name, const InstanceFile& file, const std::string& what) {
    const auto slash = name.find('/');
    const bool failed = failed_.count(name) ||
                        (slash != std::string::npos &&
                         (failed_.count(name.substr(0, slash)) || failed_.count(name.substr(slash + 1))));
    if (failed) {
      suppressed_ = true;
      return;
    }
    error(at, code::dangling_reference, "'" + name + "' does not name a " + what, closest(name, file.names()));
  }

  void parse_block(InstanceFile& file) {
    const Token& kind = take();
    if (kind.kind != Tok::word) {
      error(kind, code::syntax, "expected a block kind, found " + describe(kind));
      // Resynchronize on the next word that starts a line of its own.
      while (peek().kind != Tok::end && peek().kind != Tok::word) take();
      return;
    }
    static const std::vector<std::string> kKinds = {"lattice", "topology", "field", "ideal",
                                                    "family",  "family2",  "function"};
    if (std::find(kKinds.begin(), kKinds.end(), kind.text) == kKinds.end()) {
      error(kind, code::unknown_block, "unknown block kind '" + kind.text + "'", closest(kind.text, kKinds));
      while (peek().kind != Tok::end && peek().kind != Tok::lbrace) take();
      if (peek().kind == Tok::lbrace) {
        take();
        recover_block();
      }
      return;
    }
    const std::size_t before = diags_.size();
    suppressed_ = false;
    std::string name;
    try {
      const Token& n = expect(Tok::word, "a block name");
      name = n.text;
      const bool fresh = declare(n);
      if (kind.text == "lattice") {
        parse_lattice(file, name);
      } else if (kind.text == "topology") {
        parse_topology(file, name);
      } else if (kind.text == "field") {
        parse_field(file, name);
      } else if (kind.text == "ideal") {
        parse_ideal(file, name);
      } else if (kind.text == "family") {
        parse_family(file, name);
      } else if (kind.text == "family2") {
        parse_family2(file, name);
      } else {
        parse_function(file, name);
      }
      if (!fresh) return;
    } catch (const StatementError&) {
      while (peek().kind != Tok::end && peek().kind != Tok::lbrace) take();
      if (peek().kind == Tok::lbrace) {
        take();
        recover_block();
      }
    }
    if (diags_.size() != before || suppressed_) failed_.insert(name);
  }

  void open_body() { expect(Tok::lbrace, "'{'"); }

  void parse_lattice(InstanceFile& file, const std::string& name) {
    const Token& head = toks_[pos_ - 1];
    open_body();
    std::vector<std::string> elements;
    std::map<std::string, int> index;
    std::vector<std::pair<ElementId, ElementId>> less;
    std::vector<std::pair<ElementRef, ElementRef>> ortho_pairs;
    bool has_ortho = false;
    bool orthomodular = false;
    bool distributive = false;
    bool have_elements = false;
    auto lookup = [&](const ElementRef& r) -> ElementId {
      auto it = index.find(r.text);
      if (it == index.end()) {
        error_at(r.line, r.col, code::unknown_element, "unknown element '" + r.text + "' in lattice " + name,
                 closest(r.text, elements));
        throw StatementError{};
      }
      return it->second;
    };
    const bool ok = statements([&] {
      const Token& key = statement_key({"elements", "order", "ortho", "flags"});
      if (key.text == "elements") {
        have_elements = true;
        while (true) {
          ElementRef r = parse_element();
          if (index.count(r.text)) {
            error_at(r.line, r.col, code::duplicate_name, "element '" + r.text + "' is listed twice");
            throw StatementError{};
          }
          index.emplace(r.text, static_cast<int>(elements.size()));
          elements.push_back(r.text);
          if (peek().kind != Tok::comma) break;
          take();
        }
      } else if (key.text == "order") {
        if (peek().kind == Tok::semi || peek().kind == Tok::rbrace) return;
        while (true) {
          ElementId prev = lookup(parse_element());
          expect(Tok::lt, "'<'");
          while (true) {
            ElementId next = lookup(parse_element());
            less.emplace_back(prev, next);
            prev = next;
            if (peek().kind != Tok::lt) break;
            take();
          }
          if (peek().kind != Tok::comma) break;
          take();
        }
      } else if (key.text == "ortho") {
        has_ortho = true;
        while (true) {
          ElementRef a = parse_element();
          expect(Tok::arrow, "'<->'");
          ElementRef b = parse_element();
          ortho_pairs.emplace_back(a, b);
          if (peek().kind != Tok::comma) break;
          take();
        }
      } else {
        while (true) {
          const Token& f = expect(Tok::word, "a flag");
          if (f.text == "orthomodular") {
            orthomodular = true;
          } else if (f.text == "distributive") {
            distributive = true;
          } else {
            error(f, code::syntax, "unknown flag '" + f.text + "'", closest(f.text, {"orthomodular", "distributive"}));
            throw StatementError{};
          }
          if (peek().kind != Tok::comma) break;
          take();
        }
      }
    });
    if (!ok) return;
    if (!have_elements) {
      error(head, code::syntax, "lattice " + name + " has no elements statement");
      return;
    }
    LatticeSpec spec;
    spec.names = elements;
    spec.leq = LatticeSpec::order_closure(static_cast<int>(elements.size()), less);
    spec.declared_orthomodular = orthomodular;
    spec.declared_distributive = distributive;
    if (has_ortho) {
      std::vector<ElementId> o(elements.size(), -1);
      try {
        for (const auto& [a, b] : ortho_pairs) {
          const ElementId x = lookup(a);
          const ElementId y = lookup(b);
          for (auto [p, q] : {std::pair{x, y}, std::pair{y, x}}) {
            if (o[p] != -1 && o[p] != q) {
              error_at(a.line, a.col, code::invalid_structure, "element '" + elements[p] + "' has two orthocomplements");
              throw StatementError{};
            }
            o[p] = q;
          }
        }
      } catch (const StatementError&) {
        return;
      }
      for (std::size_t a = 0; a < o.size(); ++a) {
        if (o[a] == -1) {
          error(head, code::invalid_structure, "element '" + elements[a] + "' has no orthocomplement");
          return;
        }
      }
      spec.ortho = std::move(o);
    }
    const ValidationReport report = validate(spec);
    if (!report.ok()) {
      for (const auto& v : report.violations) {
        error(head, code::invalid_structure,
              "lattice " + name + ": " + std::string(to_string(v.kind)) + ": " + v.message);
      }
      return;
    }
    file.add(LatticeBlock{name, Lattice::build(spec), orthomodular, distributive});
  }

  // `on {p, q, ...}` header for topologies and fields.
  std::vector<std::string> parse_ground() {
    const Token& on = expect(Tok::word, "'on'");
    if (on.text != "on") {
      error(on, code::syntax, "expected 'on', found " + describe(on));
      throw StatementError{};
    }
    const Token& at = peek();
    auto points = parse_set();
    std::set<std::string> seen;
    for (const auto& p : points) {
      if (!seen.insert(p).second) {
        error(at, code::duplicate_name, "point '" + p + "' is listed twice");
        throw StatementError{};
      }
    }
    if (points.empty() || points.size() > 6) {
      error(at, code::invalid_structure, "a ground set needs 1 to 6 points");
      throw StatementError{};
    }
    return points;
  }

  Mask points_mask(const ElementRef& r, const std::vector<std::string>& points) {
    if (!r.set) {
      error_at(r.line, r.col, code::unknown_element, "expected a set such as {" + points.front() + "}, found '" +
                                                          r.text + "'");
      throw StatementError{};
    }
    Mask m = 0;
    for (const auto& p : *r.set) {
      auto it = std::find(points.begin(), points.end(), p);
      if (it == points.end()) {
        error_at(r.line, r.col, code::unknown_element, "unknown point '" + p + "'", closest(p, points));
        throw StatementError{};
      }
      m |= bit(static_cast<int>(it - points.begin()));
    }
    return m;
  }

  std::vector<Mask> parse_set_list(const std::vector<std::string>& points) {
    std::vector<Mask> out;
    if (peek().kind == Tok::semi || peek().kind == Tok::rbrace) return out;
    out.push_back(points_mask(parse_element(), points));
    while (peek().kind == Tok::comma) {
      take();
      out.push_back(points_mask(parse_element(), points));
    }
    return out;
  }

  void parse_topology(InstanceFile& file, const std::string& name) {
    const Token& head = toks_[pos_ - 1];
    auto points = parse_ground();
    open_body();
    std::optional<std::vector<Mask>> opens;
    std::optional<std::vector<Mask>> generators;
    const bool ok = statements([&] {
      const Token& key = statement_key({"opens", "generators"});
      (key.text == "opens" ? opens : generators) = parse_set_list(points);
    });
    if (!ok) return;
    try {
      if (opens) {
        file.add(TopologyBlock{name, FiniteTopSpace::from_opens(points, *opens)});
      } else {
        file.add(TopologyBlock{name, FiniteTopSpace::generated_by(points, generators.value_or(std::vector<Mask>{}))});
      }
    } catch (const InputError& e) {
      error(head, code::invalid_structure, "topology " + name + ": " + e.what());
    }
  }

  void parse_field(InstanceFile& file, const std::string& name) {
    const Token& head = toks_[pos_ - 1];
    auto points = parse_ground();
    open_body();
    std::optional<std::vector<Mask>> atoms;
    std::optional<std::vector<Mask>> generators;
    const bool ok = statements([&] {
      const Token& key = statement_key({"atoms", "generators"});
      (key.text == "atoms" ? atoms : generators) = parse_set_list(points);
    });
    if (!ok) return;
    try {
      if (atoms) {
        file.add(FieldBlock{name, FiniteFieldOfSets::from_atoms(points, *atoms)});
      } else {
        file.add(FieldBlock{name, FiniteFieldOfSets::generated_by(points, generators.value_or(std::vector<Mask>{}))});
      }
    } catch (const InputError& e) {
      error(head, code::invalid_structure, "field " + name + ": " + e.what());
    }
  }

  const Token& parse_reference(const char* keyword) {
    const Token& kw = expect(Tok::word, keyword);
    if (kw.text != keyword) {
      error(kw, code::syntax, std::string("expected '") + keyword + "', found " + describe(kw));
      throw StatementError{};
    }
    return expect(Tok::word, "a name");
  }

  void parse_ideal(InstanceFile& file, const std::string& name) {
    const Token& head = toks_[pos_ - 1];
    const Token& ref = parse_reference("in");
    const Block* fb = file.find(ref.text);
    const FieldBlock* field = fb ? std::get_if<FieldBlock>(fb) : nullptr;
    if (!field) dangling(ref, ref.text, file, "field");
    open_body();
    std::vector<Mask> generators;
    const bool ok = statements([&] {
      statement_key({"generators"});
      if (!field) {
        while (peek().kind != Tok::end && peek().kind != Tok::semi && peek().kind != Tok::rbrace) take();
        return;
      }
      auto g = parse_set_list(field->field.points());
      generators.insert(generators.end(), g.begin(), g.end());
    });
    if (!ok || !field) return;
    try {
      SetIdeal ideal(field->field, generators);
      file.add(IdealBlock{name, ref.text, std::make_shared<const QuotientAlgebra>(std::move(ideal))});
    } catch (const InputError& e) {
      error(head, code::invalid_structure, "ideal " + name + ": " + e.what());
    }
  }

  std::optional<Space> parse_space_reference(const InstanceFile& file, const char* keyword, bool sets_only) {
    const Token& ref = parse_reference(keyword);
    auto space = file.space(ref.text);
    if (space && sets_only && space->kind != Space::Kind::topology && space->kind != Space::Kind::field) {
      space.reset();
    }
    if (!space) {
      dangling(ref, ref.text, file, sets_only ? "topology or field" : "lattice, topology, field or F/I quotient");
    }
    last_reference_ = ref.text;
    return space;
  }

  ElementId resolve_element(const Space& s, const ElementRef& r) {
    switch (s.kind) {
      case Space::Kind::lattice: {
        if (auto id = s.lattice.find(r.text)) return *id;
        error_at(r.line, r.col, code::unknown_element, "unknown element '" + r.text + "'",
                 closest(r.text, s.lattice.names()));
        throw StatementError{};
      }
      case Space::Kind::topology: {
        const auto& t = s.topology->space;
        const Mask m = points_mask(r, t.points());
        if (auto id = t.open_lattice().find(m)) return *id;
        error_at(r.line, r.col, code::unknown_element, "'" + r.text + "' is not an open set");
        throw StatementError{};
      }
      case Space::Kind::field:
      case Space::Kind::quotient: {
        const auto& f = s.kind == Space::Kind::field ? s.field->field : s.ideal->quotient->field();
        const Mask m = points_mask(r, f.points());
        if (!f.contains(m)) {
          error_at(r.line, r.col, code::unknown_element, "'" + r.text + "' is not a member of the field");
          throw StatementError{};
        }
        return s.kind == Space::Kind::field ? f.sets().element_of(m) : s.ideal->quotient->class_of(m);
      }
    }
    throw StatementError{};
  }

  void parse_family(InstanceFile& file, const std::string& name) {
    const Token& head = toks_[pos_ - 1];
    auto space = parse_space_reference(file, "in", false);
    open_body();
    std::vector<Rational> thresholds;
    std::vector<ElementId> values;
    const bool ok = statements([&] {
      const Token& at = peek();
      auto lambda = parse_number();
      expect(Tok::colon, "':'");
      ElementRef r = parse_element();
      if (!space || !lambda) return;
      const ElementId v = resolve_element(*space, r);
      if (!thresholds.empty() && !(thresholds.back() < *lambda)) {
        error(at, code::non_increasing, "non-increasing thresholds: " + to_string(*lambda) + " after " +
                                            to_string(thresholds.back()));
        throw StatementError{};
      }
      if (!values.empty() && !space->lattice.leq(values.back(), v)) {
        error_at(r.line, r.col, code::non_monotone,
                 "non-monotone family: " + space->element_text(v) + " is not above " +
                     space->element_text(values.back()));
        throw StatementError{};
      }
      thresholds.push_back(*lambda);
      values.push_back(v);
    });
    if (!ok || !space) return;
    if (values.empty() || values.back() != space->lattice.top()) {
      error(head, code::invalid_family, "family " + name + " must end with the top element");
      return;
    }
    file.add(FamilyBlock{name, last_reference_, StepSpectralFamily(space->lattice, thresholds, values)});
  }

  void parse_family2(InstanceFile& file, const std::string& name) {
    const Token& head = toks_[pos_ - 1];
    auto space = parse_space_reference(file, "in", false);
    open_body();
    std::map<std::pair<Rational, Rational>, ElementId> cells;
    const bool ok = statements([&] {
      const Token& at = peek();
      auto lambda = parse_number();
      expect(Tok::comma, "','");
      auto mu = parse_number();
      expect(Tok::colon, "':'");
      ElementRef r = parse_element();
      if (!space || !lambda || !mu) return;
      if (!cells.emplace(std::pair{*lambda, *mu}, resolve_element(*space, r)).second) {
        error(at, code::invalid_family, "cell (" + to_string(*lambda) + ", " + to_string(*mu) + ") given twice");
        throw StatementError{};
      }
    });
    if (!ok || !space) return;
    std::vector<Rational> g1;
    std::vector<Rational> g2;
    for (const auto& [k, v] : cells) {
      g1.push_back(k.first);
      g2.push_back(k.second);
    }
    g1 = distinct_sorted(g1);
    g2 = distinct_sorted(g2);
    std::vector<std::vector<ElementId>> matrix(g1.size(), std::vector<ElementId>(g2.size()));
    for (std::size_t i = 0; i < g1.size(); ++i) {
      for (std::size_t j = 0; j < g2.size(); ++j) {
        auto it = cells.find({g1[i], g2[j]});
        if (it == cells.end()) {
          error(head, code::invalid_family,
                "family2 " + name + " misses grid cell (" + to_string(g1[i]) + ", " + to_string(g2[j]) + ")");
          return;
        }
        matrix[i][j] = it->second;
      }
    }
    try {
      file.add(Family2Block{name, last_reference_, TwoParamStepSpectralFamily(space->lattice, g1, g2, matrix)});
    } catch (const InvalidFamily& e) {
      error(head, code::invalid_family, "family2 " + name + ": " + e.what());
    }
  }

  void parse_function(InstanceFile& file, const std::string& name) {
    const Token& head = toks_[pos_ - 1];
    auto space = parse_space_reference(file, "on", true);
    open_body();
    const std::vector<std::string>* points = nullptr;
    if (space) {
      points = space->kind == Space::Kind::topology ? &space->topology->space.points() : &space->field->field.points();
    }
    std::vector<std::optional<Rational>> values(points ? points->size() : 0);
    const bool ok = statements([&] {
      const Token& p = expect(Tok::word, "a point");
      expect(Tok::colon, "':'");
      auto v = parse_number();
      if (!points || !v) return;
      auto it = std::find(points->begin(), points->end(), p.text);
      if (it == points->end()) {
        error(p, code::unknown_element, "unknown point '" + p.text + "'", closest(p.text, *points));
        throw StatementError{};
      }
      auto& slot = values[static_cast<std::size_t>(it - points->begin())];
      if (slot) {
        error(p, code::duplicate_name, "point '" + p.text + "' is given twice");
        throw StatementError{};
      }
      slot = v;
    });
    if (!ok || !points) return;
    PointFunction f;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i]) {
        error(head, code::invalid_structure, "function " + name + " has no value at point " + (*points)[i]);
        return;
      }
      f.push_back(*values[i]);
    }
    if (space->kind == Space::Kind::field) {
      try {
        MeasurableFunction(space->field->field, f);
      } catch (const InputError& e) {
        error(head, code::invalid_structure, "function " + name + ": " + e.what());
        return;
      }
    }
    file.add(FunctionBlock{name, last_reference_, std::move(f)});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diags_;
  std::set<std::string> declared_;
  std::set<std::string> failed_;
  bool suppressed_ = false;
  std::string last_reference_;
};

}  // namespace detail

/// Either a resolved file or a nonempty list of diagnostics, never both.
inline ParseResult parse(std::string_view text) { return detail::Parser(text).run(); }

inline InstanceFile parse_or_throw(std::string_view text) {
  auto r = parse(text);
  if (!r.ok()) throw ParseError(std::move(r.diagnostics));
  return std::move(*r.file);
}

/// A measurable function for a `function` block on a field.
inline MeasurableFunction measurable_function(const InstanceFile& file, const FunctionBlock& f) {
  return MeasurableFunction(file.get<FieldBlock>(f.space).field, f.values);
}

namespace detail {

inline void require_word(const std::string& s) {
  if (is_word(s)) return;
  // Set literals round-trip when their items are words.
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') {
    std::string inner = s.substr(1, s.size() - 2);
    if (inner.empty()) return;
    std::stringstream ss(inner);
    std::string item;
    bool ok = true;
    while (std::getline(ss, item, ',')) ok = ok && is_word(item);
    if (ok && inner.back() != ',') return;
  }
  throw InputError("name '" + s + "' cannot be written in the instance language");
}

inline std::string join(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

inline std::string points_text(const std::vector<std::string>& points) {
  for (const auto& p : points) require_word(p);
  return "{" + join(points, ",") + "}";
}

inline std::string emit_block(const InstanceFile& file, const Block& block) {
  std::ostringstream out;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        require_word(b.name);
        if constexpr (std::is_same_v<T, LatticeBlock>) {
          const Lattice& l = b.lattice;
          for (const auto& n : l.names()) require_word(n);
          out << "lattice " << b.name << " {\n  elements: " << join(l.names()) << ";\n";
          std::vector<std::string> order;
          for (int a = 0; a < l.size(); ++a) {
            for_each_bit(l.covers(a), [&](int c) { order.push_back(l.name(a) + " < " + l.name(c)); });
          }
          if (!order.empty()) out << "  order: " << join(order) << ";\n";
          if (l.has_ortho()) {
            std::vector<std::string> pairs;
            for (int a = 0; a < l.size(); ++a) {
              if (a <= l.ortho(a)) pairs.push_back(l.name(a) + " <-> " + l.name(l.ortho(a)));
            }
            out << "  ortho: " << join(pairs) << ";\n";
          }
          std::vector<std::string> flags;
          if (b.orthomodular_flag) flags.emplace_back("orthomodular");
          if (b.distributive_flag) flags.emplace_back("distributive");
          if (!flags.empty()) out << "  flags: " << join(flags) << ";\n";
          out << "}\n";
        } else if constexpr (std::is_same_v<T, TopologyBlock>) {
          const auto& t = b.space;
          std::vector<std::string> opens;
          for (Mask u : t.open_lattice().sets()) opens.push_back(t.name(u));
          out << "topology " << b.name << " on " << points_text(t.points()) << " {\n  opens: " << join(opens)
              << ";\n}\n";
        } else if constexpr (std::is_same_v<T, FieldBlock>) {
          const auto& f = b.field;
          std::vector<std::string> atoms;
          for (Mask a : f.atoms()) atoms.push_back(f.sets().name(a));
          out << "field " << b.name << " on " << points_text(f.points()) << " {\n  atoms: " << join(atoms)
              << ";\n}\n";
        } else if constexpr (std::is_same_v<T, IdealBlock>) {
          const auto& i = b.quotient->ideal();
          out << "ideal " << b.name << " in " << b.field << " {\n  generators: " << i.field().sets().name(i.carrier())
              << ";\n}\n";
        } else if constexpr (std::is_same_v<T, FamilyBlock>) {
          const Space s = file.require_space(b.space);
          out << "family " << b.name << " in " << b.space << " {\n";
          for (int k = 0; k < b.family.jumps(); ++k) {
            const std::string v = s.element_text(b.family.values()[k]);
            require_word(v);
            out << "  " << to_string(b.family.thresholds()[k]) << " : " << v << ";\n";
          }
          out << "}\n";
        } else if constexpr (std::is_same_v<T, Family2Block>) {
          const Space s = file.require_space(b.space);
          const auto& e = b.family;
          out << "family2 " << b.name << " in " << b.space << " {\n";
          for (std::size_t i = 0; i < e.grid1().size(); ++i) {
            for (std::size_t j = 0; j < e.grid2().size(); ++j) {
              const std::string v = s.element_text(e.values()[i][j]);
              require_word(v);
              out << "  " << to_string(e.grid1()[i]) << ", " << to_string(e.grid2()[j]) << " : " << v << ";\n";
            }
          }
          out << "}\n";
        } else {
          const Space s = file.require_space(b.space);
          const auto& points = s.kind == Space::Kind::topology ? s.topology->space.points() : s.field->field.points();
          out << "function " << b.name << " on " << b.space << " {\n";
          for (std::size_t x = 0; x < points.size(); ++x) {
            out << "  " << points[x] << " : " << to_string(b.values[x]) << ";\n";
          }
          out << "}\n";
        }
      },
      block);
  return out.str();
}

}  // namespace detail

/// Canonical instance text; parse(emit_dsl(f)) rebuilds f.
inline std::string emit_dsl(const InstanceFile& file) {
  std::string out;
  for (const auto& b : file.blocks()) out += (out.empty() ? "" : "\n") + detail::emit_block(file, b);
  return out;
}

inline std::string emit_dsl(const InstanceFile& file, std::string_view name) {
  const Block* b = file.find(name);
  if (!b) throw InputError("no object named '" + std::string(name) + "'");
  return detail::emit_block(file, *b);
}

using nlohmann::json;

inline json quasipoints_json(const StoneSpectrum& s, const std::function<std::string(ElementId)>& text) {
  json points = json::array();
  for (int i = 0; i < s.size(); ++i) {
    json members = json::array();
    for_each_bit(s.point(i), [&](int a) { members.push_back(text(a)); });
    points.push_back({{"name", s.point_name(i)}, {"members", members}, {"generator", text(s.generator(i))}});
  }
  return points;
}

inline json observable_json(const ObservableFunction& f, const StoneSpectrum& s) {
  json out = json::object();
  for (int i = 0; i < s.size(); ++i) out[s.point_name(i)] = to_string(f[i]);
  return out;
}

inline json lattice_json(const Lattice& l) {
  json out;
  out["elements"] = l.names();
  json covers = json::array();
  for (int a = 0; a < l.size(); ++a) {
    for_each_bit(l.covers(a), [&](int c) { covers.push_back({l.name(a), l.name(c)}); });
  }
  out["covers"] = covers;
  out["bottom"] = l.name(l.bottom());
  out["top"] = l.name(l.top());
  if (l.has_ortho()) {
    json o = json::object();
    for (int a = 0; a < l.size(); ++a) o[l.name(a)] = l.name(l.ortho(a));
    out["ortho"] = o;
  }
  out["distributive"] = l.is_distributive();
  out["orthomodular"] = l.has_ortho() && l.is_orthomodular();
  const auto s = enumerate_quasipoints(l);
  out["quasipoints"] = quasipoints_json(s, [&](ElementId a) { return l.name(a); });
  json base = json::object();
  for (int a = 0; a < l.size(); ++a) {
    json pts = json::array();
    for_each_bit(s.basic_open(a), [&](int i) { pts.push_back(s.point_name(i)); });
    base[l.name(a)] = pts;
  }
  out["basic_opens"] = base;
  return out;
}

inline json to_json(const InstanceFile& file, const Block& block) {
  json out;
  out["name"] = block_name(block);
  out["kind"] = block_kind(block);
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, LatticeBlock>) {
          out["lattice"] = lattice_json(b.lattice);
        } else if constexpr (std::is_same_v<T, TopologyBlock>) {
          const auto& t = b.space;
          out["points"] = t.points();
          json opens = json::array();
          for (Mask u : t.open_lattice().sets()) opens.push_back(t.name(u));
          json regular = json::array();
          for (Mask u : t.regular_open_lattice().sets()) regular.push_back(t.name(u));
          out["opens"] = opens;
          out["regular_opens"] = regular;
          out["hausdorff"] = t.is_hausdorff();
        } else if constexpr (std::is_same_v<T, FieldBlock>) {
          const auto& f = b.field;
          out["points"] = f.points();
          json atoms = json::array();
          for (Mask a : f.atoms()) atoms.push_back(f.sets().name(a));
          out["atoms"] = atoms;
          out["size"] = f.lattice().size();
        } else if constexpr (std::is_same_v<T, IdealBlock>) {
          const auto& q = *b.quotient;
          out["field"] = b.field;
          out["carrier"] = q.field().sets().name(q.ideal().carrier());
          json members = json::array();
          for (Mask m : q.ideal().members()) members.push_back(q.field().sets().name(m));
          out["members"] = members;
          json classes = json::array();
          for (Mask r : q.classes().sets()) classes.push_back(q.classes().name(r));
          out["classes"] = classes;
        } else if constexpr (std::is_same_v<T, FamilyBlock>) {
          const Space s = file.require_space(b.space);
          out["space"] = b.space;
          json jumps = json::array();
          for (int k = 0; k < b.family.jumps(); ++k) {
            jumps.push_back({{"threshold", to_string(b.family.thresholds()[k])},
                             {"value", s.element_text(b.family.values()[k])}});
          }
          out["jumps"] = jumps;
          json sp = json::array();
          for (const auto& t : spectrum(b.family).spectrum) sp.push_back(to_string(t));
          out["spectrum"] = sp;
          const auto q = s.spectrum();
          out["observable"] = observable_json(observable_function(b.family, q), q);
        } else if constexpr (std::is_same_v<T, Family2Block>) {
          const Space s = file.require_space(b.space);
          const auto& e = b.family;
          out["space"] = b.space;
          json g1 = json::array();
          for (const auto& t : e.grid1()) g1.push_back(to_string(t));
          json g2 = json::array();
          for (const auto& t : e.grid2()) g2.push_back(to_string(t));
          out["grid1"] = g1;
          out["grid2"] = g2;
          json values = json::array();
          for (const auto& row : e.values()) {
            json r = json::array();
            for (ElementId v : row) r.push_back(s.element_text(v));
            values.push_back(r);
          }
          out["values"] = values;
          const auto q = s.spectrum();
          const auto f = observable_function_complex(e, q);
          json obs = json::object();
          for (int i = 0; i < q.size(); ++i) obs[q.point_name(i)] = to_string(f[i]);
          out["observable"] = obs;
        } else {
          const Space s = file.require_space(b.space);
          const auto& points = s.kind == Space::Kind::topology ? s.topology->space.points() : s.field->field.points();
          out["space"] = b.space;
          json values = json::object();
          for (std::size_t x = 0; x < points.size(); ++x) values[points[x]] = to_string(b.values[x]);
          out["values"] = values;
          if (s.kind == Space::Kind::topology) out["continuous"] = is_continuous(b.values, s.topology->space);
        }
      },
      block);
  return out;
}

inline json to_json(const InstanceFile& file) {
  json blocks = json::array();
  for (const auto& b : file.blocks()) blocks.push_back(to_json(file, b));
  return {{"blocks", blocks}};
}

inline json to_json(const InstanceFile& file, std::string_view name) {
  const Block* b = file.find(name);
  if (!b) throw InputError("no object named '" + std::string(name) + "'");
  return to_json(file, *b);
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Hasse diagram, bottom at the bottom; `labels` annotate nodes.
inline std::string hasse_dot(const std::string& name, const Lattice& l,
                             const std::function<std::string(ElementId)>& text,
                             const std::map<ElementId, std::string>& labels = {}) {
  using detail::dot_quote;
  std::ostringstream out;
  out << "digraph " << dot_quote(name) << " {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (int a = 0; a < l.size(); ++a) {
    std::string label = text(a);
    if (auto it = labels.find(a); it != labels.end()) label += " [" + it->second + "]";
    out << "  n" << a << " [label=" << dot_quote(label) << "];\n";
  }
  for (int a = 0; a < l.size(); ++a) {
    for_each_bit(l.covers(a), [&](int c) { out << "  n" << a << " -> n" << c << " [arrowhead=none];\n"; });
  }
  out << "}\n";
  return out.str();
}

/// DOT for the lattice behind an object; families label their jump values.
inline std::string emit_dot(const InstanceFile& file, std::string_view name) {
  const Block* b = file.find(name);
  if (!b) throw InputError("no object named '" + std::string(name) + "'");
  const std::string n(name);
  if (const auto* l = std::get_if<LatticeBlock>(b)) {
    return hasse_dot(n, l->lattice, [&](ElementId a) { return l->lattice.name(a); });
  }
  if (std::holds_alternative<TopologyBlock>(*b) || std::holds_alternative<FieldBlock>(*b)) {
    const Space s = file.require_space(name);
    return hasse_dot(n, s.lattice, [&](ElementId a) { return s.element_text(a); });
  }
  if (const auto* i = std::get_if<IdealBlock>(b)) {
    const auto& q = *i->quotient;
    return hasse_dot(n, q.lattice(), [&](ElementId a) { return "[" + q.classes().name(q.representative(a)) + "]"; });
  }
  if (const auto* f = std::get_if<FamilyBlock>(b)) {
    const Space s = file.require_space(f->space);
    std::map<ElementId, std::string> labels;
    for (int k = 0; k < f->family.jumps(); ++k) labels[f->family.values()[k]] = to_string(f->family.thresholds()[k]);
    return hasse_dot(n, s.lattice, [&](ElementId a) { return s.element_text(a); }, labels);
  }
  if (const auto* f = std::get_if<Family2Block>(b)) {
    const Space s = file.require_space(f->space);
    return hasse_dot(n, s.lattice, [&](ElementId a) { return s.element_text(a); });
  }
  throw InputError("'" + n + "' is a function; DOT output covers lattice-valued objects");
}

inline std::string emit_dot(const InstanceFile& file) {
  std::string out;
  for (const auto& b : file.blocks()) {
    if (std::holds_alternative<FunctionBlock>(b)) continue;
    out += emit_dot(file, block_name(b));
  }
  return out;
}

}  // namespace stonespec::dsl
