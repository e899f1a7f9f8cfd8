#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncalg/multipoly.hpp"
#include "ncalg/ratfunc.hpp"
#include "support/random_gen.hpp"

using namespace ncalg;
using ncalg::testing::Rng;

namespace {

MultiPoly x(unsigned n, unsigned i) { return MultiPoly::variable(n, i); }

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(rat_to_string(Rational(-3, 6)) == "-1/2");
  CHECK(rat_from_string("7/2") == Rational(7, 2));
  CHECK(rat_from_string("-5") == Rational(-5));
  CHECK_THROWS_AS(rat_from_string("1/0"), Error);
  CHECK(binomial(7, 3) == 35);
  CHECK(binomial(4, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(factorial(6) == 720);
}

TEST_CASE("constructors and basic queries") {
  MultiPoly z(2);
  CHECK(z.is_zero());
  CHECK(z.is_constant());
  CHECK(z.constant_value() == 0);
  CHECK(z.degree() == 0);

  MultiPoly c = MultiPoly::constant(2, Rational(5, 3));
  CHECK(c.is_constant());
  CHECK(c.constant_value() == Rational(5, 3));

  MultiPoly p = x(2, 0) * x(2, 0) + x(2, 1).scaled(Rational(2));
  CHECK(p.degree() == 2);
  CHECK(p.degree_in(0) == 2);
  CHECK(p.degree_in(1) == 1);
  CHECK(p.depends_on(0));
  CHECK(p.depends_on(1));
  CHECK_FALSE(x(2, 0).depends_on(1));
}

TEST_CASE("arithmetic identities on random polynomials") {
  Rng rng(101);
  for (int t = 0; t < 30; ++t) {
    MultiPoly a = rng.multipoly(3, 4, 4);
    MultiPoly b = rng.multipoly(3, 4, 4);
    MultiPoly c = rng.multipoly(3, 4, 4);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == MultiPoly(3));
    CHECK((a * b) * c == a * (b * c));
    CHECK(-(-a) == a);
  }
}

TEST_CASE("binomial square expands") {
  MultiPoly a = x(2, 0), b = x(2, 1);
  MultiPoly lhs = (a + b) * (a + b);
  MultiPoly rhs = a * a + (a * b).scaled(Rational(2)) + b * b;
  CHECK(lhs == rhs);
  CHECK(lhs.to_string() == "x1^2 + 2*x1*x2 + x2^2");
}

TEST_CASE("graded lex printing is degree-descending") {
  MultiPoly p = x(2, 1) + x(2, 0) * x(2, 0) - MultiPoly::constant(2, 3);
  CHECK(p.to_string() == "x1^2 + x2 - 3");
  CHECK(p.to_string("y") == "y1^2 + y2 - 3");
}

TEST_CASE("derivative rules") {
  Rng rng(102);
  for (int t = 0; t < 20; ++t) {
    MultiPoly a = rng.multipoly(3, 4, 4);
    MultiPoly b = rng.multipoly(3, 4, 4);
    for (unsigned v = 0; v < 3; ++v) {
      CHECK((a * b).derivative(v) ==
            a.derivative(v) * b + a * b.derivative(v));
      CHECK((a + b).derivative(v) == a.derivative(v) + b.derivative(v));
    }
  }
  MultiPoly p = x(2, 0).pow(3) * x(2, 1);
  CHECK(p.derivative(0) == x(2, 0).pow(2).scaled(Rational(3)) * x(2, 1));
  CHECK(p.derivative(1) == x(2, 0).pow(3));
}

TEST_CASE("exact division") {
  Rng rng(103);
  for (int t = 0; t < 20; ++t) {
    MultiPoly a = rng.nonzero_multipoly(2, 3, 3);
    MultiPoly b = rng.nonzero_multipoly(2, 3, 3);
    CHECK((a * b).exact_div(b) == a);
  }
  MultiPoly p = x(2, 0) * x(2, 0) - MultiPoly::constant(2, 1);
  CHECK(p.exact_div(x(2, 0) - MultiPoly::constant(2, 1)) ==
        x(2, 0) + MultiPoly::constant(2, 1));
  CHECK_THROWS_AS(x(2, 0).exact_div(x(2, 1)), InexactDivision);
  CHECK_THROWS_AS(MultiPoly::constant(2, 1).exact_div(MultiPoly(2)),
                  InexactDivision);
}

TEST_CASE("difference step") {
  MultiPoly f = x(2, 0).pow(3);
  CHECK(f.difference_step(0, 1) ==
        x(2, 0).pow(2) + x(2, 0) * x(2, 1) + x(2, 1).pow(2));
  Rng rng(104);
  for (int t = 0; t < 20; ++t) {
    MultiPoly g = rng.multipoly(3, 4, 4);
    MultiPoly step = g.difference_step(0, 2);
    CHECK(step * (x(3, 0) - x(3, 2)) == g - g.substitute_var(0, 2));
  }
}

TEST_CASE("substitution and remapping") {
  MultiPoly p = x(2, 0) * x(2, 1) + x(2, 1).pow(2);
  CHECK(p.substitute_var(1, 0) == x(2, 0).pow(2).scaled(Rational(2)));
  MultiPoly q = p.remap(3, {2, 0});
  CHECK(q == x(3, 2) * x(3, 0) + x(3, 0).pow(2));
  CHECK(p.eval_var(1, Rational(2)) ==
        x(2, 0).scaled(Rational(2)) + MultiPoly::constant(2, 4));
}

TEST_CASE("weighted degree truncation") {
  MultiPoly p = x(2, 0).pow(3) + x(2, 1);
  std::vector<uint32_t> w = {1, 2};
  CHECK(p.min_weighted_degree(w) == 2);
  CHECK(p.truncate_weighted(w, 2) == x(2, 1));
  CHECK(MultiPoly(2).min_weighted_degree(w) == 0);
}

TEST_CASE("gcd is a common divisor with canonical normalization") {
  Rng rng(105);
  for (int t = 0; t < 15; ++t) {
    MultiPoly a = rng.nonzero_multipoly(2, 2, 2);
    MultiPoly b = rng.nonzero_multipoly(2, 2, 2);
    MultiPoly c = rng.nonzero_multipoly(2, 2, 2);
    MultiPoly g = poly_gcd(a * c, b * c);
    CHECK_NOTHROW((a * c).exact_div(g));
    CHECK_NOTHROW((b * c).exact_div(g));
    CHECK_NOTHROW(g.exact_div(poly_gcd(g, c)));
    CHECK(poly_gcd(g, c) == poly_gcd(c, g));
    CHECK(g.lead_coeff() > 0);
    CHECK(poly_content(g) == 1);
  }
  CHECK(poly_gcd(MultiPoly(2), MultiPoly(2)) == MultiPoly(2));
  MultiPoly p = (x(2, 0) + x(2, 1)) * (x(2, 0) - x(2, 1));
  MultiPoly q = (x(2, 0) + x(2, 1)) * x(2, 0);
  CHECK(poly_gcd(p, q) == x(2, 0) + x(2, 1));
}

TEST_CASE("content") {
  MultiPoly p = x(2, 0).scaled(Rational(4, 3)) +
                MultiPoly::constant(2, Rational(2, 3));
  CHECK(poly_content(p) == Rational(2, 3));
}

TEST_CASE("ratfunc canonical form") {
  MultiPoly num = x(1, 0).pow(2) - MultiPoly::constant(1, 1);
  MultiPoly den = x(1, 0) - MultiPoly::constant(1, 1);
  RatFunc r(num, den);
  CHECK(r.is_polynomial());
  CHECK(r.as_polynomial() == x(1, 0) + MultiPoly::constant(1, 1));

  RatFunc s(MultiPoly::constant(1, 1), x(1, 0).scaled(Rational(2)));
  CHECK(s.den() == x(1, 0));
  CHECK(s.num() == MultiPoly::constant(1, Rational(1, 2)));
  CHECK(RatFunc(MultiPoly(1), den).is_zero());
  CHECK(RatFunc(MultiPoly(1), den).den() == MultiPoly::constant(1, 1));
  CHECK_THROWS_AS(RatFunc(num, MultiPoly(1)), NotInvertible);
}

TEST_CASE("ratfunc field identities on random values") {
  Rng rng(106);
  for (int t = 0; t < 20; ++t) {
    RatFunc a = rng.ratfunc(2, 2, 2);
    RatFunc b = rng.ratfunc(2, 2, 2);
    RatFunc c = rng.ratfunc(2, 2, 2);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == RatFunc(MultiPoly(2)));
    if (!b.is_zero()) {
      CHECK((a / b) * b == a);
      CHECK(b * b.pow(-1) == RatFunc::constant(2, 1));
    }
  }
  CHECK_THROWS_AS(rng.ratfunc(2, 2, 2) / RatFunc(MultiPoly(2)),
                  NotInvertible);
}

TEST_CASE("ratfunc derivative matches quotient rule") {
  Rng rng(107);
  for (int t = 0; t < 10; ++t) {
    MultiPoly p = rng.multipoly(2, 3, 3);
    MultiPoly q = rng.nonzero_multipoly(2, 3, 3);
    RatFunc r(p, q);
    for (unsigned v = 0; v < 2; ++v) {
      RatFunc expect(p.derivative(v) * q - p * q.derivative(v), q * q);
      CHECK(r.derivative(v) == expect);
    }
  }
}

TEST_CASE("ratfunc difference step") {
  RatFunc inv_x(MultiPoly::constant(2, 1), x(2, 0));
  // (1/x1 - 1/x2) / (x1 - x2) = -1/(x1*x2)
  CHECK(inv_x.difference_step(0, 1) ==
        RatFunc(MultiPoly::constant(2, -1), x(2, 0) * x(2, 1)));
  Rng rng(108);
  for (int t = 0; t < 10; ++t) {
    RatFunc f = rng.ratfunc(3, 2, 2);
    RatFunc step = f.difference_step(0, 1);
    RatFunc xd(x(3, 0) - x(3, 1));
    CHECK(step * xd == f - f.substitute_var(0, 1));
  }
}

TEST_CASE("ratfunc printing") {
  RatFunc r(x(2, 1), x(2, 0));
  CHECK(r.to_string() == "(x2)/(x1)");
  CHECK(RatFunc(x(2, 0) + x(2, 1)).to_string() == "x1 + x2");
}
