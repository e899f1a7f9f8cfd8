#include "ncalg/expr.hpp"

#include <cctype>

namespace ncalg {

namespace {

struct Token {
  enum class Kind { Number, Ident, String, Punct, End };
  Kind kind;
  size_t pos;
  std::string text;  // digits, identifier, string payload, or the punct char
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (at_ < src_.size() && std::isspace(unsigned(src_[at_]))) ++at_;
    tok_.pos = at_;
    if (at_ >= src_.size()) {
      tok_ = {Token::Kind::End, at_, ""};
      return;
    }
    char c = src_[at_];
    if (std::isdigit(unsigned(c))) {
      size_t start = at_;
      while (at_ < src_.size() && std::isdigit(unsigned(src_[at_]))) ++at_;
      tok_ = {Token::Kind::Number, start, src_.substr(start, at_ - start)};
      return;
    }
    if (std::isalpha(unsigned(c))) {
      size_t start = at_;
      while (at_ < src_.size() &&
             (std::isalnum(unsigned(src_[at_])) || src_[at_] == '_'))
        ++at_;
      tok_ = {Token::Kind::Ident, start, src_.substr(start, at_ - start)};
      return;
    }
    if (c == '"') {
      size_t start = at_++;
      std::string payload;
      while (at_ < src_.size() && src_[at_] != '"') payload += src_[at_++];
      if (at_ >= src_.size())
        throw ParseError("unterminated string literal", start);
      ++at_;
      tok_ = {Token::Kind::String, start, payload};
      return;
    }
    if (std::string("+-*^()[],/").find(c) == std::string::npos)
      throw ParseError(std::string("unexpected character '") + c + "'", at_);
    tok_ = {Token::Kind::Punct, at_, std::string(1, c)};
    ++at_;
  }

  const std::string& src_;
  size_t at_ = 0;
  Token tok_{Token::Kind::End, 0, ""};
};

class Parser {
 public:
  Parser(const std::string& src, unsigned n) : lex_(src), n_(n) {}

  ExprPtr run() {
    ExprPtr e = expression();
    if (lex_.peek().kind != Token::Kind::End)
      throw ParseError("trailing input after expression", lex_.peek().pos);
    return e;
  }

 private:
  bool punct(const char* c) const {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == c;
  }

  Token expect_punct(const char* c) {
    if (!punct(c))
      throw ParseError(std::string("expected '") + c + "'", lex_.peek().pos);
    return lex_.take();
  }

  static ExprPtr node(Expr e) { return std::make_shared<Expr>(std::move(e)); }

  ExprPtr expression() {
    ExprPtr e;
    if (punct("-")) {
      Token minus = lex_.take();
      Expr neg{Expr::Kind::Negate};
      neg.pos = minus.pos;
      neg.a = term();
      e = node(std::move(neg));
    } else {
      e = term();
    }
    while (punct("+") || punct("-")) {
      Token op = lex_.take();
      Expr s{op.text == "+" ? Expr::Kind::Sum : Expr::Kind::Difference};
      s.pos = op.pos;
      s.a = e;
      s.b = term();
      e = node(std::move(s));
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (punct("*")) {
      Token op = lex_.take();
      Expr p{Expr::Kind::Product};
      p.pos = op.pos;
      p.a = e;
      p.b = factor();
      e = node(std::move(p));
    }
    return e;
  }

  ExprPtr factor() {
    ExprPtr base = atom();
    if (!punct("^")) return base;
    Token hat = lex_.take();
    bool neg = false;
    if (punct("-")) {
      lex_.take();
      neg = true;
    }
    if (lex_.peek().kind != Token::Kind::Number)
      throw ParseError("expected an integer exponent", lex_.peek().pos);
    Token k = lex_.take();
    Expr p{Expr::Kind::Power};
    p.pos = hat.pos;
    p.a = base;
    try {
      p.exponent = std::stoll(k.text);
    } catch (const std::exception&) {
      throw ParseError("exponent out of range", k.pos);
    }
    if (neg) p.exponent = -p.exponent;
    return node(std::move(p));
  }

  ExprPtr atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Kind::Number: {
        Token num = lex_.take();
        Expr e{Expr::Kind::Literal};
        e.pos = num.pos;
        Int p(num.text);
        if (punct("/")) {
          lex_.take();
          if (lex_.peek().kind != Token::Kind::Number)
            throw ParseError("expected a denominator", lex_.peek().pos);
          Token den = lex_.take();
          Int q(den.text);
          if (q == 0) throw ParseError("zero denominator", den.pos);
          e.lit = Rational(p, q);
        } else {
          e.lit = Rational(p);
        }
        return node(std::move(e));
      }
      case Token::Kind::Ident: {
        Token id = lex_.take();
        if (id.text == "inv") {
          expect_punct("(");
          Expr e{Expr::Kind::Inverse};
          e.pos = id.pos;
          e.a = expression();
          expect_punct(")");
          return node(std::move(e));
        }
        if (id.text == "sym") {
          expect_punct("(");
          if (lex_.peek().kind != Token::Kind::String)
            throw ParseError("sym expects a quoted polynomial",
                             lex_.peek().pos);
          Token s = lex_.take();
          expect_punct(")");
          Expr e{Expr::Kind::Symbol};
          e.pos = id.pos;
          e.text = s.text;
          return node(std::move(e));
        }
        bool var_shape = id.text.size() >= 2 && id.text[0] == 'x';
        for (size_t t = 1; var_shape && t < id.text.size(); ++t)
          var_shape = std::isdigit(unsigned(id.text[t]));
        if (var_shape) {
          unsigned long k = 0;
          try {
            k = std::stoul(id.text.substr(1));
          } catch (const std::exception&) {
          }
          if (k == 0 || k > n_)
            throw ParseError("unknown variable " + id.text, id.pos);
          Expr e{Expr::Kind::Variable};
          e.pos = id.pos;
          e.var = unsigned(k - 1);
          return node(std::move(e));
        }
        throw ParseError("unknown name '" + id.text + "'", id.pos);
      }
      case Token::Kind::Punct:
        if (t.text == "(") {
          lex_.take();
          ExprPtr e = expression();
          expect_punct(")");
          return e;
        }
        if (t.text == "[") {
          Token open = lex_.take();
          Expr e{Expr::Kind::Bracket};
          e.pos = open.pos;
          e.a = expression();
          expect_punct(",");
          e.b = expression();
          expect_punct("]");
          return node(std::move(e));
        }
        [[fallthrough]];
      default:
        throw ParseError("expected an expression", t.pos);
    }
  }

  Lexer lex_;
  unsigned n_;
};

MultiPoly commutative_pow(const MultiPoly& p, long long k, size_t pos) {
  if (k < 0)
    throw ParseError("negative power is not a commutative polynomial", pos);
  return p.pow(unsigned(k));
}

}  // namespace

ExprPtr parse_expression(const std::string& src, unsigned n) {
  return Parser(src, n).run();
}

MultiPoly evaluate_commutative(const ExprPtr& e, unsigned n) {
  switch (e->kind) {
    case Expr::Kind::Variable:
      return MultiPoly::variable(n, e->var);
    case Expr::Kind::Literal:
      return MultiPoly::constant(n, e->lit);
    case Expr::Kind::Sum:
      return evaluate_commutative(e->a, n) + evaluate_commutative(e->b, n);
    case Expr::Kind::Difference:
      return evaluate_commutative(e->a, n) - evaluate_commutative(e->b, n);
    case Expr::Kind::Negate:
      return -evaluate_commutative(e->a, n);
    case Expr::Kind::Product:
      return evaluate_commutative(e->a, n) * evaluate_commutative(e->b, n);
    case Expr::Kind::Power:
      return commutative_pow(evaluate_commutative(e->a, n), e->exponent,
                             e->pos);
    default:
      throw ParseError("not allowed in a commutative polynomial", e->pos);
  }
}

namespace {

MultiPoly symbol_payload(const Expr& e, unsigned n) {
  try {
    return evaluate_commutative(parse_expression(e.text, n), n);
  } catch (const ParseError& err) {
    throw ParseError(std::string("in sym literal: ") + err.what(), e.pos);
  }
}

NormalForm eval_element(const ExprPtr& e, const EvalConfig& cfg) {
  switch (e->kind) {
    case Expr::Kind::Variable:
      return NormalForm::generator(cfg.n, cfg.d, e->var);
    case Expr::Kind::Literal:
      return NormalForm::scalar(cfg.n, cfg.d,
                                MultiPoly::constant(cfg.n, e->lit));
    case Expr::Kind::Sum:
      return eval_element(e->a, cfg) + eval_element(e->b, cfg);
    case Expr::Kind::Difference:
      return eval_element(e->a, cfg) - eval_element(e->b, cfg);
    case Expr::Kind::Negate:
      return eval_element(e->a, cfg).scaled(Rational(-1));
    case Expr::Kind::Product:
      return eval_element(e->a, cfg) * eval_element(e->b, cfg);
    case Expr::Kind::Power: {
      if (e->exponent < 0)
        throw Error("inversion requires a localization context");
      NormalForm base = eval_element(e->a, cfg);
      NormalForm r = NormalForm::one(cfg.n, cfg.d);
      for (long long t = 0; t < e->exponent; ++t) r = r * base;
      return r;
    }
    case Expr::Kind::Bracket: {
      NormalForm a = eval_element(e->a, cfg), b = eval_element(e->b, cfg);
      return a * b - b * a;
    }
    case Expr::Kind::Inverse:
      throw Error("inversion requires a localization context");
    case Expr::Kind::Symbol:
      return NormalForm::scalar(cfg.n, cfg.d, symbol_payload(*e, cfg.n));
  }
  throw Error("unreachable expression kind");
}

LeftFraction eval_fraction(const ExprPtr& e, const EvalConfig& cfg) {
  const LocalizationPtr& ctx = cfg.localization;
  switch (e->kind) {
    case Expr::Kind::Variable:
      return LeftFraction::from_polynomial(
          ctx, NormalForm::generator(cfg.n, cfg.d, e->var));
    case Expr::Kind::Literal:
      return LeftFraction::from_polynomial(
          ctx,
          NormalForm::scalar(cfg.n, cfg.d, MultiPoly::constant(cfg.n, e->lit)));
    case Expr::Kind::Sum:
      return eval_fraction(e->a, cfg) + eval_fraction(e->b, cfg);
    case Expr::Kind::Difference:
      return eval_fraction(e->a, cfg) - eval_fraction(e->b, cfg);
    case Expr::Kind::Negate:
      return -eval_fraction(e->a, cfg);
    case Expr::Kind::Product:
      return eval_fraction(e->a, cfg) * eval_fraction(e->b, cfg);
    case Expr::Kind::Power: {
      LeftFraction base = eval_fraction(e->a, cfg);
      if (e->exponent < 0) base = invert(base);
      unsigned k = unsigned(e->exponent < 0 ? -e->exponent : e->exponent);
      return fraction_pow(base, k);
    }
    case Expr::Kind::Bracket: {
      LeftFraction a = eval_fraction(e->a, cfg), b = eval_fraction(e->b, cfg);
      return a * b - b * a;
    }
    case Expr::Kind::Inverse:
      return invert(eval_fraction(e->a, cfg));
    case Expr::Kind::Symbol:
      return LeftFraction::from_polynomial(
          ctx, NormalForm::scalar(cfg.n, cfg.d, symbol_payload(*e, cfg.n)));
  }
  throw Error("unreachable expression kind");
}

}  // namespace

EvalResult evaluate(const ExprPtr& e, const EvalConfig& cfg) {
  EvalResult r;
  if (cfg.localization)
    r.fraction = eval_fraction(e, cfg);
  else
    r.element = eval_element(e, cfg);
  return r;
}

WordPoly evaluate_words(const ExprPtr& e, unsigned n) {
  switch (e->kind) {
    case Expr::Kind::Variable:
      return WordPoly::letter(n, Letter(e->var));
    case Expr::Kind::Literal:
      return WordPoly::one(n).scaled(e->lit);
    case Expr::Kind::Sum:
      return evaluate_words(e->a, n) + evaluate_words(e->b, n);
    case Expr::Kind::Difference:
      return evaluate_words(e->a, n) - evaluate_words(e->b, n);
    case Expr::Kind::Negate:
      return -evaluate_words(e->a, n);
    case Expr::Kind::Product:
      return evaluate_words(e->a, n) * evaluate_words(e->b, n);
    case Expr::Kind::Power: {
      if (e->exponent < 0)
        throw Error("inversion requires a localization context");
      WordPoly base = evaluate_words(e->a, n);
      WordPoly r = WordPoly::one(n);
      for (long long t = 0; t < e->exponent; ++t) r = r * base;
      return r;
    }
    case Expr::Kind::Bracket: {
      WordPoly a = evaluate_words(e->a, n), b = evaluate_words(e->b, n);
      return a * b - b * a;
    }
    case Expr::Kind::Inverse:
      throw Error("inversion requires a localization context");
    case Expr::Kind::Symbol: {
      MultiPoly f = symbol_payload(*e, n);
      WordPoly r(n);
      for (const auto& [exp, c] : f.terms()) {
        Word w;
        for (unsigned v = 0; v < n; ++v)
          for (uint32_t t = 0; t < exp[v]; ++t) w.push_back(Letter(v));
        r.add_term(w, c);
      }
      return r;
    }
  }
  throw Error("unreachable expression kind");
}

}  // namespace ncalg
