#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncalg/fraction.hpp"
#include "support/random_gen.hpp"

using namespace ncalg;
using ncalg::testing::Rng;

namespace {

NormalForm coeff_term(unsigned n, unsigned d, const MultiPoly& f) {
  NormalForm a(n, d);
  a.add_term({}, f);
  return a;
}

// Random fraction with a unit abelianization: c*g^j plus filtration terms.
LeftFraction random_unit(Rng& rng, const LocalizationPtr& ctx) {
  NormalForm num =
      coeff_term(ctx->n, ctx->d,
                 ctx->g.pow(unsigned(rng.int_in(0, 1)))
                     .scaled(rng.nonzero_rational()));
  NormalForm tail = rng.normal_form(ctx->n, ctx->d, 3, 2);
  num = num + (tail - coeff_term(ctx->n, ctx->d, tail.abelianize()));
  return {ctx, unsigned(rng.int_in(0, 2)), num};
}

}  // namespace

TEST_CASE("localization context validates its pieces") {
  CHECK_THROWS_AS(make_localization(2, 2, MultiPoly(2)), Error);
  CHECK_THROWS_AS(make_localization(2, 2, MultiPoly::variable(3, 0)),
                  ArityMismatch);

  NormalForm wrong(2, 2);
  wrong.add_term({}, MultiPoly::variable(2, 1));
  CHECK_THROWS_AS(
      make_localization(2, 2, MultiPoly::variable(2, 0), wrong), Error);

  auto ctx = make_localization(2, 2, MultiPoly::variable(2, 0));
  CHECK(ctx->lift.abelianize() == ctx->g);
  CHECK_THROWS_AS(LeftFraction(ctx, 0, NormalForm::one(3, 2)), Error);
}

TEST_CASE("left division inverts left multiplication") {
  Rng rng(1212);
  for (int trial = 0; trial < 20; ++trial) {
    unsigned n = unsigned(rng.int_in(2, 3));
    unsigned d = unsigned(rng.int_in(1, 3));
    NormalForm s = rng.normal_form(n, d, 3, 3);
    if (s.abelianize().is_zero())
      s = s + coeff_term(n, d, rng.nonzero_multipoly(n, 2, 2));
    NormalForm q = rng.normal_form(n, d, 3, 3);
    auto back = left_divide(s, s * q);
    REQUIRE(back.has_value());
    CHECK(*back == q);
  }

  auto basis = lie_basis(2, 3);
  NormalForm bracket = NormalForm::from_basis(2, 2, *basis->find({0, 1}));
  NormalForm x1 = coeff_term(2, 2, MultiPoly::variable(2, 0));
  CHECK_FALSE(left_divide(x1, bracket).has_value());
  CHECK(left_divide(x1, NormalForm::zero(2, 2)).has_value());
}

TEST_CASE("right division by the denominator has the closed-form numerator") {
  auto ctx = make_localization(2, 2, MultiPoly::variable(2, 0));
  auto basis = lie_basis(2, 3);
  uint32_t b2 = *basis->find({0, 1});
  uint32_t b3 = *basis->find({0, 0, 1});

  NormalForm x2 = coeff_term(2, 2, MultiPoly::variable(2, 1));
  LeftFraction f = normalize_right_division(x2, ctx);

  CHECK(f.denominator_exponent() == 3);
  NormalForm expect(2, 2);
  expect.add_term({}, MultiPoly::variable(2, 0).pow(2) *
                          MultiPoly::variable(2, 1));
  expect.add_term({{b2, 1}}, MultiPoly::variable(2, 0));
  expect.add_term({{b3, 1}}, MultiPoly::constant(2, 1));
  CHECK(f.numerator() == expect);

  // Multiplying the denominator back recovers the element.
  LeftFraction back = f * LeftFraction::from_polynomial(ctx, ctx->lift);
  CHECK(back == LeftFraction::from_polynomial(ctx, x2));
}

TEST_CASE("top-layer elements commute with the denominator") {
  auto ctx = make_localization(2, 2, MultiPoly::variable(2, 0));
  auto basis = lie_basis(2, 3);
  NormalForm a = NormalForm::from_basis(2, 2, *basis->find({0, 0, 1}));
  LeftFraction f = normalize_right_division(a, ctx);
  CHECK(f == LeftFraction(ctx, 1, a));
}

TEST_CASE("dividing the denominator by itself gives one") {
  auto ctx = make_localization(2, 2,
                               MultiPoly::variable(2, 0) +
                                   MultiPoly::variable(2, 1));
  CHECK(normalize_right_division(ctx->lift, ctx) == LeftFraction::one(ctx));
  CHECK(LeftFraction(ctx, 1, ctx->lift) == LeftFraction::one(ctx));
}

TEST_CASE("fractions satisfy the ring identities") {
  Rng rng(7272);
  auto ctx = make_localization(2, 2, MultiPoly::variable(2, 0));
  for (int trial = 0; trial < 12; ++trial) {
    LeftFraction a(ctx, unsigned(rng.int_in(0, 2)),
                   rng.normal_form(2, 2, 3, 3));
    LeftFraction b(ctx, unsigned(rng.int_in(0, 2)),
                   rng.normal_form(2, 2, 3, 3));
    LeftFraction c(ctx, unsigned(rng.int_in(0, 2)),
                   rng.normal_form(2, 2, 3, 3));
    CHECK(a + (-a) == LeftFraction::zero(ctx));
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * (b * c) == (a * b) * c);
    CHECK(a * LeftFraction::one(ctx) == a);
    CHECK(LeftFraction::one(ctx) * a == a);
  }
}

TEST_CASE("equal fractions canonicalize to the same representation") {
  auto ctx = make_localization(2, 3, MultiPoly::variable(2, 0));
  Rng rng(88);
  for (int trial = 0; trial < 10; ++trial) {
    unsigned k = unsigned(rng.int_in(0, 1));
    NormalForm num = rng.normal_form(2, 3, 3, 3);
    LeftFraction a(ctx, k, num);
    LeftFraction b(ctx, k + 2, ctx->lift * (ctx->lift * num));
    CHECK(a == b);
  }
}

TEST_CASE("the flagship fraction round trip recovers x2") {
  for (unsigned d = 2; d <= 4; ++d) {
    auto ctx = make_localization(2, d, MultiPoly::variable(2, 0));
    NormalForm x2 = coeff_term(2, d, MultiPoly::variable(2, 1));
    LeftFraction f = normalize_right_division(x2, ctx);
    CHECK(f * LeftFraction::from_polynomial(ctx, ctx->lift) ==
          LeftFraction::from_polynomial(ctx, x2));
  }
}

TEST_CASE("certificate search factors powers of g") {
  MultiPoly x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  auto c1 = invertibility_certificate(x1 * x1, x1 * x2);
  REQUIRE(c1.has_value());
  CHECK(c1->second == 2);
  CHECK(x1 * x1 * c1->first == (x1 * x2).pow(2));

  CHECK_FALSE(invertibility_certificate(x2, x1).has_value());
  CHECK_FALSE(invertibility_certificate(MultiPoly(2), x1).has_value());

  auto unit = invertibility_certificate(MultiPoly::constant(2, 4), x1);
  REQUIRE(unit.has_value());
  CHECK(unit->second == 0);
}

TEST_CASE("nilpotent perturbations invert by the geometric series") {
  auto ctx = make_localization(2, 2, MultiPoly::constant(2, 1));
  auto basis = lie_basis(2, 2);
  uint32_t b2 = *basis->find({0, 1});
  NormalForm u(2, 2);
  u.add_term({{b2, 1}},
             MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1));
  NormalForm a = NormalForm::one(2, 2) + u;

  NormalForm series = NormalForm::one(2, 2) - u + u * u;
  CHECK(invert(LeftFraction::from_polynomial(ctx, a)) ==
        LeftFraction::from_polynomial(ctx, series));
}

TEST_CASE("inverting the denominator itself gives the unit fraction") {
  auto ctx = make_localization(2, 2, MultiPoly::variable(2, 0));
  LeftFraction f = invert(LeftFraction::from_polynomial(ctx, ctx->lift));
  CHECK(f == LeftFraction(ctx, 1, NormalForm::one(2, 2)));
  CHECK(f * LeftFraction::from_polynomial(ctx, ctx->lift) ==
        LeftFraction::one(ctx));
}

TEST_CASE("inverting x1 + x2 yields a two-sided inverse") {
  MultiPoly g = MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1);
  auto ctx = make_localization(2, 2, g);
  LeftFraction a = LeftFraction::from_polynomial(ctx, ctx->lift);
  LeftFraction b = invert(a);
  CHECK(a * b == LeftFraction::one(ctx));
  CHECK(b * a == LeftFraction::one(ctx));
}

TEST_CASE("random units invert two-sidedly") {
  Rng rng(3434);
  MultiPoly gs[2] = {MultiPoly::variable(2, 0),
                     MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1)};
  for (const MultiPoly& g : gs) {
    auto ctx = make_localization(2, 2, g);
    for (int trial = 0; trial < 5; ++trial) {
      LeftFraction a = random_unit(rng, ctx);
      LeftFraction b = invert(a);
      CHECK(a * b == LeftFraction::one(ctx));
      CHECK(b * a == LeftFraction::one(ctx));
    }
  }
}

TEST_CASE("non-units are rejected") {
  auto ctx = make_localization(2, 2, MultiPoly::variable(2, 0));
  NormalForm x2 = coeff_term(2, 2, MultiPoly::variable(2, 1));
  CHECK_THROWS_AS(invert(LeftFraction::from_polynomial(ctx, x2)),
                  NotInvertible);
  CHECK_THROWS_AS(invert(LeftFraction::zero(ctx)), NotInvertible);
}

TEST_CASE("matrix inversion handles diagonal and tautological matrices") {
  MultiPoly x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  auto diag_ctx = make_localization(2, 2, x1 * x2);
  FractionMatrix diag = matrix_identity(diag_ctx, 2);
  diag[0][0] = LeftFraction::from_polynomial(diag_ctx, coeff_term(2, 2, x1));
  diag[1][1] = LeftFraction::from_polynomial(diag_ctx, coeff_term(2, 2, x2));
  FractionMatrix inv = matrix_invert(diag);
  CHECK(matrix_equal(matrix_mul(diag, inv), matrix_identity(diag_ctx, 2)));
  CHECK(matrix_equal(matrix_mul(inv, diag), matrix_identity(diag_ctx, 2)));

  // Matrix of independent generators over its abelianized determinant.
  std::vector<MultiPoly> x;
  for (unsigned i = 0; i < 4; ++i) x.push_back(MultiPoly::variable(4, i));
  MultiPoly det = x[0] * x[3] - x[1] * x[2];
  auto ctx = make_localization(4, 2, det);
  FractionMatrix m(2, std::vector<LeftFraction>(2, LeftFraction::zero(ctx)));
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j)
      m[i][j] = LeftFraction::from_polynomial(
          ctx, coeff_term(4, 2, x[2 * i + j]));
  FractionMatrix minv = matrix_invert(m);
  CHECK(matrix_equal(matrix_mul(m, minv), matrix_identity(ctx, 2)));
  CHECK(matrix_equal(matrix_mul(minv, m), matrix_identity(ctx, 2)));

  CHECK(matrix_equal(matrix_invert(matrix_identity(ctx, 3)),
                     matrix_identity(ctx, 3)));
}

TEST_CASE("singular matrices are rejected") {
  auto ctx = make_localization(2, 2, MultiPoly::variable(2, 0));
  FractionMatrix m(2, std::vector<LeftFraction>(
                          2, LeftFraction::from_polynomial(
                                 ctx, coeff_term(2, 2,
                                                 MultiPoly::variable(2, 0)))));
  CHECK_THROWS_AS(matrix_invert(m), NotInvertible);
}

TEST_CASE("rational normal form of the flagship fraction") {
  auto basis = lie_basis(2, 4);
  uint32_t b2 = *basis->find({0, 1});
  uint32_t b3 = *basis->find({0, 0, 1});
  uint32_t b4 = *basis->find({0, 0, 0, 1});

  auto ctx = make_localization(2, 3, MultiPoly::variable(2, 0));
  NormalForm x2 = coeff_term(2, 3, MultiPoly::variable(2, 1));
  LeftFraction f = normalize_right_division(x2, ctx);

  auto inv_pow = [&](unsigned p) {
    return RatFunc(MultiPoly::constant(2, 1),
                   MultiPoly::variable(2, 0).pow(p));
  };
  RatNormalForm expect(2, 3);
  expect.add_term({}, RatFunc(MultiPoly::variable(2, 1),
                              MultiPoly::variable(2, 0)));
  expect.add_term({{b2, 1}}, inv_pow(2));
  expect.add_term({{b3, 1}}, inv_pow(3));
  expect.add_term({{b4, 1}}, inv_pow(4));
  CHECK(to_rational_normal_form(f) == expect);

  // Dividing on the other side needs no corrections.
  LeftFraction left(ctx, 1, x2);
  RatNormalForm plain(2, 3);
  plain.add_term({}, RatFunc(MultiPoly::variable(2, 1),
                             MultiPoly::variable(2, 0)));
  CHECK(to_rational_normal_form(left) == plain);
}

TEST_CASE("one-generator inverses are plain reciprocals") {
  auto ctx = make_localization(1, 2, MultiPoly::variable(1, 0));
  LeftFraction f(ctx, 1, NormalForm::one(1, 2));
  RatNormalForm expect(1, 2);
  expect.add_term({}, RatFunc(MultiPoly::constant(1, 1),
                              MultiPoly::variable(1, 0)));
  CHECK(to_rational_normal_form(f) == expect);
}

TEST_CASE("rational normal form undoes the denominator exponent") {
  Rng rng(9611);
  MultiPoly gs[2] = {MultiPoly::variable(2, 0),
                     MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1)};
  for (const MultiPoly& g : gs) {
    auto ctx = make_localization(2, 2, g);
    RatNormalForm s = to_rational(ctx->lift);
    for (int trial = 0; trial < 6; ++trial) {
      LeftFraction f(ctx, unsigned(rng.int_in(0, 2)),
                     rng.normal_form(2, 2, 3, 3));
      RatNormalForm acc = to_rational_normal_form(f);
      for (unsigned i = 0; i < f.denominator_exponent(); ++i)
        acc = dn_product(s, acc);
      CHECK(acc == to_rational(f.numerator()));
    }
  }
}

TEST_CASE("gr layers of rational normal forms clear to polynomials") {
  Rng rng(424);
  MultiPoly g = MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1);
  auto ctx = make_localization(2, 2, g);
  for (int trial = 0; trial < 5; ++trial) {
    LeftFraction f(ctx, unsigned(rng.int_in(1, 2)),
                   rng.normal_form(2, 2, 3, 3));
    RatNormalForm r = to_rational_normal_form(f);
    for (unsigned o = 0; o <= 2; ++o) {
      RatNormalForm layer = r.gr_project(o);
      for (const auto& [em, c] : layer.terms()) {
        auto cert = invertibility_certificate(c.den(), g);
        REQUIRE(cert.has_value());
        RatFunc cleared = c * RatFunc(g.pow(cert->second));
        CHECK(cleared.is_polynomial());
      }
    }
  }
}

TEST_CASE("fraction abelianization and rendering") {
  auto ctx = make_localization(2, 2, MultiPoly::variable(2, 0));
  NormalForm x2 = coeff_term(2, 2, MultiPoly::variable(2, 1));
  LeftFraction f = normalize_right_division(x2, ctx);
  CHECK(f.abelianize() == RatFunc(MultiPoly::variable(2, 1),
                                  MultiPoly::variable(2, 0)));
  CHECK(f.to_string().rfind("x1^-3 * ( ", 0) == 0);
  CHECK(LeftFraction::one(ctx).to_string() == "(1)");
}
