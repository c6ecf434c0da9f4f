#include "kqm/dsl.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <set>

#include "kqm/builders.hpp"

namespace kqm {

std::string SourceSpan::str() const { return file + ":" + std::to_string(line) + ":" + std::to_string(col_begin); }

const Binding* Program::find(const std::string& name) const {
  for (const auto& b : lets)
    if (b.name == name) return &b;
  return nullptr;
}

Diagram Program::lookup(const std::string& name) const {
  if (const Binding* b = find(name)) return b->value;
  auto it = gens.find(name);
  if (it != gens.end()) return Diagram::gen(it->second);
  throw std::out_of_range("no binding or generator named `" + name + "`");
}

namespace {

enum class Tok : std::uint8_t { ident, number, punct, eof };

struct Token {
  Tok kind = Tok::eof;
  std::string text;
  SourceSpan span;
};

const std::set<std::string> kStatementKeywords = {"dim", "gen", "matrix", "let", "check"};

std::vector<Token> lex(std::string_view src, const std::string& file) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto span_of = [&](int c0, int c1) { return SourceSpan{file, line, c0, c1}; };
  auto advance = [&](std::size_t n) {
    i += n;
    col += static_cast<int>(n);
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    const int start = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      std::string text(src.substr(i, j - i));
      advance(j - i);
      out.push_back({Tok::ident, std::move(text), span_of(start, col)});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(src[i + 1]))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      std::string text(src.substr(i, j - i));
      advance(j - i);
      out.push_back({Tok::number, std::move(text), span_of(start, col)});
      continue;
    }
    const std::string_view rest = src.substr(i);
    std::string punct;
    if (rest.starts_with("->") || rest.starts_with("==")) {
      punct = std::string(rest.substr(0, 2));
    } else if (std::string_view(";*()[],=:&+-").find(c) != std::string_view::npos) {
      punct = std::string(1, c);
    } else {
      throw DslError(span_of(start, start + 1), std::string("unexpected character '") + c + "'");
    }
    advance(punct.size());
    out.push_back({Tok::punct, std::move(punct), span_of(start, col)});
  }
  out.push_back({Tok::eof, "", span_of(col, col)});
  return out;
}

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
  if (a.line != b.line) return a;
  return SourceSpan{a.file, a.line, a.col_begin, b.col_end};
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Program& prog) : toks_(std::move(toks)), prog_(prog) {}

  void program() {
    while (!at_eof()) statement();
  }

  Diagram single_expression() {
    Diagram d = expr().first;
    if (!at_eof()) fail(peek(), "unexpected `" + peek().text + "` after expression");
    return d;
  }

 private:
  using Node = std::pair<Diagram, SourceSpan>;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_eof() const { return peek().kind == Tok::eof; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_punct(const std::string& p, std::size_t k = 0) const {
    return peek(k).kind == Tok::punct && peek(k).text == p;
  }
  bool is_word(const std::string& w, std::size_t k = 0) const {
    return peek(k).kind == Tok::ident && peek(k).text == w;
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw DslError(t.span, msg); }

  std::string describe(const Token& t) const {
    if (t.kind == Tok::eof) return "end of input";
    return "`" + t.text + "`";
  }

  const Token& expect(const std::string& p) {
    if (!is_punct(p)) fail(peek(), "expected `" + p + "`, found " + describe(peek()));
    return next();
  }

  const Token& expect_ident(const std::string& what) {
    if (peek().kind != Tok::ident) fail(peek(), "expected " + what + ", found " + describe(peek()));
    return next();
  }

  void statement() {
    const Token& kw = peek();
    if (kw.kind != Tok::ident || !kStatementKeywords.count(kw.text)) {
      fail(kw, "expected a statement (dim, gen, matrix, let, check), found " + describe(kw));
    }
    next();
    if (kw.text == "dim") {
      dim_statement();
    } else if (kw.text == "gen") {
      gen_statement();
    } else if (kw.text == "matrix") {
      matrix_statement();
    } else if (kw.text == "let") {
      let_statement();
    } else {
      check_statement(kw);
    }
    expect(";");
  }

  void dim_statement() {
    const Token& name = expect_ident("a type name");
    if (name.text == "I") fail(name, "`I` is the unit type and has no dimension");
    if (prog_.model.all_dims().count(name.text)) fail(name, "type `" + name.text + "` redeclared");
    expect("=");
    const Token& n = next();
    if (n.kind != Tok::number || n.text.find_first_not_of("0123456789") != std::string::npos) {
      fail(n, "expected a positive integer dimension, found " + describe(n));
    }
    const std::size_t d = std::stoul(n.text);
    if (d == 0) fail(n, "dimension must be at least 1");
    prog_.model.set_dim(name.text, d);
  }

  void gen_statement() {
    const Token& name = expect_ident("a generator name");
    check_fresh(name);
    if (prog_.gens.count(name.text)) fail(name, "generator `" + name.text + "` redeclared");
    expect(":");
    WireType dom = type();
    expect("->");
    WireType cod = type();
    prog_.gens[name.text] = GeneratorSig{name.text, dom, cod, Variant::plain};
  }

  void matrix_statement() {
    const Token& name = expect_ident("a generator name");
    if (!prog_.gens.count(name.text)) fail(name, "matrix for undeclared generator `" + name.text + "`");
    if (prog_.model.has_gen(name.text)) fail(name, "matrix for `" + name.text + "` redeclared");
    expect("=");
    const Token& open = expect("[");
    std::vector<std::vector<Complex>> rows;
    do {
      expect("[");
      std::vector<Complex> row;
      do {
        row.push_back(complex());
      } while (is_punct(",") && (next(), true));
      expect("]");
      rows.push_back(std::move(row));
    } while (is_punct(",") && (next(), true));
    expect("]");
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) fail(open, "matrix rows have different lengths");
    }
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    prog_.model.set_gen(name.text, std::move(m));
  }

  void let_statement() {
    const Token& name = expect_ident("a binding name");
    check_fresh(name);
    if (prog_.find(name.text) || prog_.gens.count(name.text)) fail(name, "`" + name.text + "` redeclared");
    expect("=");
    auto [d, span] = expr();
    prog_.lets.push_back(Binding{name.text, d, join(name.span, span)});
  }

  void check_statement(const Token& kw) {
    auto [lhs, lspan] = expr();
    expect("==");
    auto [rhs, rspan] = expr();
    EqMode mode = EqMode::exact;
    if (peek().kind == Tok::ident) {
      const Token& m = next();
      if (m.text == "exact") {
        mode = EqMode::exact;
      } else if (m.text == "scalar") {
        mode = EqMode::up_to_scalar;
      } else if (m.text == "phase") {
        mode = EqMode::up_to_phase;
      } else {
        fail(m, "unknown check mode `" + m.text + "` (exact, scalar, phase)");
      }
    }
    if (lhs.dom() != rhs.dom() || lhs.cod() != rhs.cod()) {
      throw DslError(join(lspan, rspan), "type error: check compares " + lhs.dom().str() + " -> " + lhs.cod().str() +
                                             " with " + rhs.dom().str() + " -> " + rhs.cod().str());
    }
    prog_.checks.push_back(Check{lhs, rhs, mode, join(kw.span, rspan)});
  }

  void check_fresh(const Token& name) const {
    if (kStatementKeywords.count(name.text) || kExprKeywords.count(name.text)) {
      fail(name, "`" + name.text + "` is a reserved word");
    }
  }

  WireType type() {
    if (is_word("I")) {
      next();
      return WireType::unit();
    }
    std::vector<Wire> wires;
    do {
      const Token& base = expect_ident("a type name");
      if (base.text == "I") fail(base, "`I` cannot appear inside a tensor of types");
      if (!prog_.model.all_dims().count(base.text)) fail(base, "undeclared type `" + base.text + "`");
      bool dual = false;
      if (is_punct("*")) {
        next();
        dual = true;
      }
      wires.push_back(Wire{base.text, dual});
    } while (is_punct("&") && (next(), true));
    return WireType{std::move(wires)};
  }

  double real_number() {
    const Token& t = next();
    if (t.kind != Tok::number) fail(t, "expected a number, found " + describe(t));
    return std::stod(t.text);
  }

  Complex complex() {
    Complex total{0.0, 0.0};
    bool first = true;
    while (true) {
      double sign = 1.0;
      if (is_punct("+") || is_punct("-")) {
        sign = next().text == "-" ? -1.0 : 1.0;
      } else if (!first) {
        break;
      }
      if (is_word("i")) {
        next();
        total += Complex{0.0, sign};
      } else {
        const double v = sign * real_number();
        if (is_word("i")) {
          next();
          total += Complex{0.0, v};
        } else {
          total += Complex{v, 0.0};
        }
      }
      first = false;
    }
    return total;
  }

  bool starts_expression(std::size_t k) const {
    const Token& t = peek(k);
    if (t.kind == Tok::punct) return t.text == "(";
    return t.kind == Tok::ident && !kStatementKeywords.count(t.text);
  }

  template <typename F>
  Diagram typed(const SourceSpan& span, F&& build) {
    try {
      return build();
    } catch (const TypeError& e) {
      throw DslError(span, std::string("type error: ") + e.what());
    }
  }

  Node expr() {
    Node lhs = par_expr();
    while (is_punct(";") && starts_expression(1)) {
      next();
      Node rhs = par_expr();
      SourceSpan span = join(lhs.second, rhs.second);
      lhs = Node{typed(span, [&] { return seq(lhs.first, rhs.first); }), span};
    }
    return lhs;
  }

  Node par_expr() {
    Node lhs = atom();
    while (is_punct("*")) {
      next();
      Node rhs = atom();
      lhs = Node{par(lhs.first, rhs.first), join(lhs.second, rhs.second)};
    }
    return lhs;
  }

  Node atom() {
    const Token& t = peek();
    if (is_punct("(")) {
      next();
      Node inner = expr();
      const Token& close = expect(")");
      return Node{inner.first, join(t.span, close.span)};
    }
    if (t.kind != Tok::ident) fail(t, "expected an expression, found " + describe(t));
    next();
    const std::string& w = t.text;
    if (w == "id" || w == "cap" || w == "cup" || w == "swap") {
      expect("[");
      std::vector<WireType> args{type()};
      if (w == "swap") {
        expect(",");
        args.push_back(type());
      }
      const Token& close = expect("]");
      const SourceSpan span = join(t.span, close.span);
      const Primitive kind = w == "id" ? Primitive::id : w == "cap" ? Primitive::cap : w == "cup" ? Primitive::cup
                                                                                              : Primitive::swap;
      return Node{typed(span, [&] { return build_primitive(kind, args); }), span};
    }
    if (w == "scalar") {
      expect("[");
      const Complex c = complex();
      const Token& close = expect("]");
      return Node{Diagram::scalar(c), join(t.span, close.span)};
    }
    if (kExprKeywords.count(w)) {
      expect("(");
      Node inner = expr();
      std::optional<std::size_t> count;
      if (w == "tr" && is_punct(",")) {
        next();
        const Token& n = next();
        if (n.kind != Tok::number || n.text.find_first_not_of("0123456789") != std::string::npos) {
          fail(n, "expected a wire count, found " + describe(n));
        }
        count = std::stoul(n.text);
      }
      const Token& close = expect(")");
      const SourceSpan span = join(t.span, close.span);
      const Diagram& d = inner.first;
      return Node{typed(span,
                        [&] {
                          if (w == "dagger") return lazy_variant(Variant::dagger, d);
                          if (w == "transpose") return lazy_variant(Variant::transpose, d);
                          if (w == "conj") return lazy_variant(Variant::conjugate, d);
                          if (w == "name") return name(d);
                          if (w == "coname") return coname(d);
                          return count ? trace_shape(d, TraceMode::partial, *count) : trace_shape(d, TraceMode::full);
                        }),
                  span};
    }
    if (const Binding* b = prog_.find(w)) return Node{b->value, t.span};
    auto it = prog_.gens.find(w);
    if (it != prog_.gens.end()) return Node{Diagram::gen(it->second), t.span};
    fail(t, "undeclared generator or binding `" + w + "`");
  }

  inline static const std::set<std::string> kExprKeywords = {"id",   "cap",       "cup",  "swap", "scalar", "dagger",
                                                             "transpose", "conj", "name", "coname", "tr"};

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program& prog_;
};

void render(const Diagram& d, std::string& out) {
  switch (d.kind()) {
    case Kind::gen: {
      const GeneratorSig& s = d.sig();
      if (s.variant == Variant::plain) {
        out += s.name;
      } else {
        out += to_string(s.variant) + "(" + s.name + ")";
      }
      return;
    }
    case Kind::id: out += "id[" + d.type().str() + "]"; return;
    case Kind::swap: out += "swap[" + d.left().str() + ", " + d.right().str() + "]"; return;
    case Kind::cap: out += "cap[" + d.wire().str() + "]"; return;
    case Kind::cup: out += "cup[" + d.wire().str() + "]"; return;
    case Kind::scalar: out += "scalar[" + format_complex(d.value()) + "]"; return;
    case Kind::seq:
    case Kind::par:
      out += "(";
      render(d.first(), out);
      out += d.kind() == Kind::seq ? " ; " : " * ";
      render(d.second(), out);
      out += ")";
      return;
    case Kind::variant:
      out += to_string(d.variant()) + "(";
      render(d.body(), out);
      out += ")";
      return;
  }
}

}  // namespace

Program parse_program(std::string_view text, const std::string& file) {
  Program prog;
  Parser p(lex(text, file), prog);
  p.program();
  return prog;
}

Diagram parse_expr(std::string_view text, const Program& env) {
  Program scratch = env;
  Parser p(lex(text, "<expr>"), scratch);
  return p.single_expression();
}

std::string format_complex(Complex c) {
  std::string out = format_double(c.real());
  out += std::signbit(c.imag()) ? "-" : "+";
  out += format_double(std::abs(c.imag()));
  out += "i";
  return out;
}

std::string pretty(const Diagram& d) {
  std::string out;
  render(d, out);
  return out;
}

}  // namespace kqm
