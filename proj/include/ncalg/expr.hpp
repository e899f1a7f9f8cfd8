#pragma once

#include <memory>

#include "ncalg/fraction.hpp"

namespace ncalg {

// Expression AST for the text front end. Grammar, loosest binding first:
//   expression := ['-'] term { ('+'|'-') term }
//   term       := factor { '*' factor }
//   factor     := atom [ '^' ['-'] integer ]
//   atom       := rational | 'x'K | '[' expression ',' expression ']'
//              |  'inv' '(' expression ')' | 'sym' '(' string ')'
//              |  '(' expression ')'
//   rational   := integer [ '/' integer ]
// Canonical renderings (NormalForm, LeftFraction, MultiPoly to_string) stay
// inside this grammar, so print-then-parse round-trips.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Variable,    // var
    Literal,     // lit
    Sum,         // a + b
    Difference,  // a - b
    Negate,      // -a
    Product,     // a * b
    Power,       // a ^ exponent
    Bracket,     // [a, b]
    Inverse,     // inv(a)
    Symbol       // sym("..."), payload in text
  };
  explicit Expr(Kind k) : kind(k) {}

  Kind kind;
  size_t pos = 0;  // offset into the source, for error reports
  unsigned var = 0;
  Rational lit;
  ExprPtr a, b;
  long long exponent = 0;
  std::string text;
};

// Throws ParseError (with position) on bad syntax or a variable outside
// x1..xn.
ExprPtr parse_expression(const std::string& src, unsigned n);

// Evaluates sums, differences, products and nonnegative powers of variables
// and literals; anything noncommutative is rejected. Used for sym payloads
// and the localization polynomial.
MultiPoly evaluate_commutative(const ExprPtr& e, unsigned n);

struct EvalConfig {
  unsigned n = 2;
  unsigned d = 2;
  LocalizationPtr localization;  // unset: plain truncated algebra
};

// Either branch is set, never both: localized sessions produce fractions.
struct EvalResult {
  std::optional<NormalForm> element;
  std::optional<LeftFraction> fraction;

  std::string to_string() const {
    return element ? element->to_string() : fraction->to_string();
  }
};

// inv(...) and negative powers require cfg.localization and otherwise fail
// with "inversion requires a localization context".
EvalResult evaluate(const ExprPtr& e, const EvalConfig& cfg);

// Word-level evaluation: products concatenate, brackets expand, sym lifts
// its polynomial to ordered words. inv is rejected.
WordPoly evaluate_words(const ExprPtr& e, unsigned n);

}  // namespace ncalg
