#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kqm/diagram.hpp"
#include "kqm/semantics.hpp"

namespace kqm {

struct SourceSpan {
  std::string file;
  int line = 1;
  int col_begin = 1;
  int col_end = 1;

  /// `file:line:col`
  std::string str() const;
};

/// Lexical, syntax and declaration errors. The message is prefixed with
/// the span.
class DslError : public std::runtime_error {
 public:
  DslError(SourceSpan span, const std::string& message)
      : std::runtime_error(span.str() + ": " + message), span_(std::move(span)), message_(message) {}

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

struct Binding {
  std::string name;
  Diagram value;
  SourceSpan span;
};

struct Check {
  Diagram lhs;
  Diagram rhs;
  EqMode mode = EqMode::exact;
  SourceSpan span;
};

/// A parsed `.qdc` source.
///
///   dim Q = 2;
///   gen f : Q -> Q;
///   matrix f = [[1, 0.5i], [-i, 1-2i]];
///   let z = (id[Q] * cap[Q]) ; (cup[Q*] * id[Q]);
///   check z == id[Q] exact;
struct Program {
  Model model;
  std::map<std::string, GeneratorSig> gens;
  std::vector<Binding> lets;
  std::vector<Check> checks;

  const Binding* find(const std::string& name) const;
  /// A let binding or, failing that, a declared generator. Throws
  /// std::out_of_range naming the missing binding.
  Diagram lookup(const std::string& name) const;
};

Program parse_program(std::string_view text, const std::string& file = "<input>");

/// Parses one expression against the declarations of `env`.
Diagram parse_expr(std::string_view text, const Program& env);

/// Fully parenthesized text that parses back to the same term.
std::string pretty(const Diagram& d);

std::string format_complex(Complex c);

}  // namespace kqm
