#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncalg/expr.hpp"
#include "ncalg/json_io.hpp"
#include "support/random_gen.hpp"

using namespace ncalg;
using ncalg::testing::Rng;

namespace {

NormalForm eval_nf(const std::string& src, unsigned n, unsigned d) {
  EvalConfig cfg;
  cfg.n = n;
  cfg.d = d;
  return *evaluate(parse_expression(src, n), cfg).element;
}

LeftFraction eval_fr(const std::string& src, const LocalizationPtr& ctx) {
  EvalConfig cfg;
  cfg.n = ctx->n;
  cfg.d = ctx->d;
  cfg.localization = ctx;
  return *evaluate(parse_expression(src, ctx->n), cfg).fraction;
}

}  // namespace

TEST_CASE("parser builds the documented shapes") {
  ExprPtr e = parse_expression("x2*x1 - x1*x2", 2);
  CHECK(e->kind == Expr::Kind::Difference);
  CHECK(e->a->kind == Expr::Kind::Product);
  CHECK(e->b->kind == Expr::Kind::Product);

  e = parse_expression("[x1,x2]^2", 2);
  CHECK(e->kind == Expr::Kind::Power);
  CHECK(e->exponent == 2);
  CHECK(e->a->kind == Expr::Kind::Bracket);

  e = parse_expression("-3/4*x1 + x2^-1", 2);
  CHECK(e->kind == Expr::Kind::Sum);
  CHECK(e->a->kind == Expr::Kind::Negate);
  CHECK(e->b->kind == Expr::Kind::Power);
  CHECK(e->b->exponent == -1);

  e = parse_expression("sym(\"x1^2 + 1/2\")", 3);
  CHECK(e->kind == Expr::Kind::Symbol);
  CHECK(e->text == "x1^2 + 1/2");

  CHECK(parse_expression("inv(x1)", 1)->kind == Expr::Kind::Inverse);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_expression("x1 +", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("x3", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("x0", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("[x1,x2", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("x1 x2", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("foo(x1)", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("x1^x2", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("1/0", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("sym(\"oops", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("x1 ? x2", 2), ParseError);

  try {
    parse_expression("x1 + $", 2);
    CHECK(false);
  } catch (const ParseError& err) {
    CHECK(err.pos == 5);
  }

  // A variable misprint inside an identifier is not silently truncated.
  CHECK_THROWS_AS(parse_expression("x1a", 2), ParseError);
}

TEST_CASE("evaluation matches the engine operations") {
  NormalForm g1 = NormalForm::generator(2, 2, 0);
  NormalForm g2 = NormalForm::generator(2, 2, 1);

  CHECK(eval_nf("x2*x1", 2, 2) == g2 * g1);
  CHECK(eval_nf("x1*x2 - x2*x1", 2, 0) == NormalForm::zero(2, 0));
  CHECK(eval_nf("[x1,x2]", 2, 2) == g1 * g2 - g2 * g1);
  CHECK(eval_nf("[x1,x2]", 2, 2) == NormalForm::from_basis(2, 2, 2));
  CHECK(eval_nf("(x1 + x2)^3", 2, 2) == (g1 + g2) * (g1 + g2) * (g1 + g2));
  CHECK(eval_nf("sym(\"x1*x2\")", 2, 2) ==
        NormalForm::scalar(2, 2,
                           MultiPoly::variable(2, 0) *
                               MultiPoly::variable(2, 1)));
  CHECK(eval_nf("-x1^2", 2, 2) == (g1 * g1).scaled(Rational(-1)));
  CHECK(eval_nf("3/2", 2, 2) ==
        NormalForm::scalar(2, 2, MultiPoly::constant(2, Rational(3, 2))));

  // The ordered lift differs from the noncommutative square of a sum.
  CHECK(eval_nf("sym(\"(x1 + x2)^2\")", 2, 2) != eval_nf("(x1 + x2)^2", 2, 2));

  CHECK_THROWS_WITH(eval_nf("inv(x1)", 2, 2),
                    "inversion requires a localization context");
  CHECK_THROWS_WITH(eval_nf("x1^-1", 2, 2),
                    "inversion requires a localization context");
  CHECK_THROWS_AS(eval_nf("sym(\"[x1,x2]\")", 2, 2), ParseError);
}

TEST_CASE("word evaluation expands to the tensor algebra") {
  WordPoly w = evaluate_words(parse_expression("[x1,x2]", 2), 2);
  WordPoly expect(2);
  expect.add_term({0, 1}, Rational(1));
  expect.add_term({1, 0}, Rational(-1));
  CHECK(w == expect);
  CHECK(nc_order(w) == 1);

  WordPoly lift = evaluate_words(parse_expression("sym(\"x2^2*x1\")", 2), 2);
  WordPoly lift_expect(2);
  lift_expect.add_term({0, 1, 1}, Rational(1));
  CHECK(lift == lift_expect);
}

TEST_CASE("localized evaluation dispatches to the fraction calculus") {
  auto ctx = make_localization(2, 3, MultiPoly::variable(2, 0));
  LeftFraction flagship = eval_fr("x2*inv(x1)", ctx);
  CHECK(flagship == normalize_right_division(
                        NormalForm::generator(2, 3, 1), ctx));
  CHECK(eval_fr("x1^-1*x2", ctx) ==
        LeftFraction(ctx, 1, NormalForm::generator(2, 3, 1)));
  CHECK(eval_fr("inv(x1)*x1", ctx) == LeftFraction::one(ctx));
  CHECK(eval_fr("x1^-2", ctx) ==
        fraction_pow(invert(LeftFraction::from_polynomial(
                         ctx, NormalForm::generator(2, 3, 0))),
                     2));
  CHECK_THROWS_AS(eval_fr("inv(x2)", ctx), NotInvertible);
}

TEST_CASE("printed normal forms parse back to the same element") {
  Rng rng(59);
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned d = 0; d <= 2; ++d)
      for (int t = 0; t < 12; ++t) {
        NormalForm a = rng.normal_form(n, d, 3, 2);
        std::string text = a.to_string();
        CAPTURE(text);
        CHECK(eval_nf(text, n, d) == a);
      }
  CHECK(eval_nf(NormalForm::zero(2, 2).to_string(), 2, 2) ==
        NormalForm::zero(2, 2));
}

TEST_CASE("printed fractions parse back to the same fraction") {
  Rng rng(61);
  auto check_ctx = [&](const LocalizationPtr& ctx) {
    for (int t = 0; t < 6; ++t) {
      NormalForm num = rng.normal_form(ctx->n, ctx->d, 3, 2);
      LeftFraction f(ctx, unsigned(rng.int_in(0, 2)), num);
      std::string text = f.to_string();
      CAPTURE(text);
      CHECK(eval_fr(text, ctx) == f);
    }
  };
  check_ctx(make_localization(2, 2, MultiPoly::variable(2, 0)));
  check_ctx(make_localization(2, 2,
                              MultiPoly::variable(2, 0) +
                                  MultiPoly::variable(2, 1)));
  check_ctx(make_localization(1, 3, MultiPoly::variable(1, 0)));
}

TEST_CASE("json round trips are bit exact") {
  Rng rng(67);
  for (int t = 0; t < 25; ++t) {
    MultiPoly p = rng.multipoly(3, 3, 4);
    CHECK(multipoly_from_json(to_json(p)) == p);

    RatFunc f = rng.ratfunc(2, 2, 3);
    CHECK(ratfunc_from_json(to_json(f)) == f);

    NormalForm a = rng.normal_form(2, 2, 3, 2);
    CHECK(normal_form_from_json(to_json(a)) == a);
  }

  auto ctx = make_localization(2, 2, MultiPoly::variable(2, 0));
  for (int t = 0; t < 10; ++t) {
    LeftFraction f(ctx, unsigned(rng.int_in(0, 2)),
                   rng.normal_form(2, 2, 3, 2));
    LeftFraction back = fraction_from_json(to_json(f));
    CHECK(back.denominator_exponent() == f.denominator_exponent());
    CHECK(back.numerator() == f.numerator());
    CHECK(back.context()->g == ctx->g);

    RatNormalForm r = to_rational_normal_form(f);
    CHECK(rat_normal_form_from_json(to_json(r)) == r);
  }

  // Serialization is deterministic text.
  NormalForm a = rng.normal_form(2, 2, 3, 2);
  CHECK(to_json(a).dump() == to_json(a).dump());
}
