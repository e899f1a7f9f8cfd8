#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncalg/geometry.hpp"
#include "support/random_gen.hpp"

using namespace ncalg;
using ncalg::testing::Rng;

namespace {

TrivialExtension random_extension(Rng& rng, unsigned n) {
  TrivialExtension e = TrivialExtension::from_polynomial(rng.multipoly(n, 2, 3));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j)
      e.add_form(i, j, rng.multipoly(n, 2, 2));
  return e;
}

MultiPoly var(unsigned n, unsigned i) { return MultiPoly::variable(n, i); }

}  // namespace

TEST_CASE("trivial extension multiplies by the two form product rule") {
  TrivialExtension x1 = TrivialExtension::from_polynomial(var(2, 0));
  TrivialExtension x2 = TrivialExtension::from_polynomial(var(2, 1));

  TrivialExtension p = x2 * x1;
  CHECK(p.scalar_part() == var(2, 0) * var(2, 1));
  CHECK(p.form(0, 1) == MultiPoly::constant(2, Rational(-1)));
  CHECK((x1 * x2).form(0, 1) == MultiPoly::constant(2, Rational(1)));

  TrivialExtension one = TrivialExtension::one(2);
  CHECK(one * p == p);
  CHECK(p * one == p);

  TrivialExtension w(2);
  w.add_form(1, 0, var(2, 0));
  CHECK(w.form(0, 1) == -var(2, 0));
  CHECK(w.form(1, 0) == var(2, 0));
  CHECK(w.form(0, 0).is_zero());
  CHECK_THROWS_AS(w.form(0, 2), ArityMismatch);
  CHECK_THROWS_AS(x1 + TrivialExtension::one(3), ArityMismatch);
}

TEST_CASE("trivial extension is associative with square zero central kernel") {
  Rng rng(41);
  for (unsigned n = 2; n <= 3; ++n) {
    for (int t = 0; t < 8; ++t) {
      TrivialExtension a = random_extension(rng, n);
      TrivialExtension b = random_extension(rng, n);
      TrivialExtension c = random_extension(rng, n);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }

    TrivialExtension w = random_extension(rng, n);
    TrivialExtension wp = random_extension(rng, n);
    w = w - TrivialExtension::from_polynomial(w.scalar_part());
    wp = wp - TrivialExtension::from_polynomial(wp.scalar_part());
    CHECK(w * wp == TrivialExtension(n));

    MultiPoly f = rng.multipoly(n, 2, 3);
    TrivialExtension fe = TrivialExtension::from_polynomial(f);
    TrivialExtension fw = w;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j) {
        fw.add_form(i, j, (f - MultiPoly::constant(n, Rational(1))) *
                              w.form(i, j));
      }
    CHECK(fe * w == fw);
    CHECK(w * fe == fw);
  }
}

TEST_CASE("first order truncation matches the two form extension") {
  auto basis = lie_basis(2, 2);
  uint32_t b12 = *basis->find({0, 1});

  NormalForm g1 = NormalForm::generator(2, 1, 0);
  NormalForm g2 = NormalForm::generator(2, 1, 1);

  TrivialExtension img = first_order_image(g2 * g1);
  CHECK(img.scalar_part() == var(2, 0) * var(2, 1));
  CHECK(img.form(0, 1) == MultiPoly::constant(2, Rational(-1)));
  CHECK(img == first_order_image(g2) * first_order_image(g1));

  CHECK(first_order_image(NormalForm::one(2, 1)) == TrivialExtension::one(2));

  // The bracket basis element lands on twice the basis form.
  TrivialExtension bracket = first_order_image(NormalForm::from_basis(2, 1, b12));
  CHECK(bracket.scalar_part().is_zero());
  CHECK(bracket.form(0, 1) == MultiPoly::constant(2, Rational(2)));

  CHECK_THROWS_AS(first_order_image(NormalForm::one(2, 2)), Error);

  // The degree-2 bracket basis and the two form basis have equal size.
  for (unsigned n = 2; n <= 3; ++n) {
    auto bn = lie_basis(n, 2);
    unsigned brackets = 0;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j)
        brackets += bn->find({Letter(i), Letter(j)}) ? 1 : 0;
    CHECK(brackets == n * (n - 1) / 2);
  }
}

TEST_CASE("first order round trips and random isomorphism checks pass") {
  Rng rng(43);
  for (unsigned n = 2; n <= 3; ++n) {
    for (int t = 0; t < 6; ++t) {
      TrivialExtension e = random_extension(rng, n);
      CHECK(first_order_image(first_order_preimage(e)) == e);
    }
  }
  for (unsigned n = 2; n <= 3; ++n) {
    GeoReport rep = compare_first_order(n, 12, 7 + n);
    CHECK(rep.pass);
    CHECK(rep.detail.empty());
  }
}

TEST_CASE("projective transition inverts the line chart and returns") {
  for (unsigned d = 0; d <= 3; ++d) {
    auto ctx0 = chart_localization(1, d, 0, {1});
    auto t01 = projective_transition(1, d, 0, 1, ctx0);
    REQUIRE(t01.size() == 1);
    CHECK(t01[0].value ==
          invert(LeftFraction::from_polynomial(
              ctx0, NormalForm::generator(1, d, 0))));

    auto ctx1 = chart_localization(1, d, 1, {0});
    auto t10 = projective_transition(1, d, 1, 0, ctx1);
    std::vector<LeftFraction> images = {t01[0].value};
    LeftFraction back = evaluate_fraction(t10[0].value, images, ctx0);
    CHECK(back == LeftFraction::from_polynomial(
                      ctx0, NormalForm::generator(1, d, 0)));
  }
}

TEST_CASE("plane chart change matches the right quotient expansion") {
  const unsigned d = 2;
  auto ctx = chart_localization(2, d, 0, {1});
  auto t01 = projective_transition(2, d, 0, 1, ctx);
  REQUIRE(t01.size() == 2);

  // x0^(1) = (x1^(0))^-1 and x2^(1) = x2^(0) * (x1^(0))^-1.
  LeftFraction x1chart =
      LeftFraction::from_polynomial(ctx, NormalForm::generator(2, d, 0));
  CHECK(t01[0].value == invert(x1chart));

  LeftFraction quotient =
      normalize_right_division(NormalForm::generator(2, d, 1), ctx);
  CHECK(t01[1].value == quotient);
  CHECK(to_rational_normal_form(t01[1].value) ==
        to_rational_normal_form(quotient));

  // Abelianizations are the classical transition functions.
  CHECK(t01[0].value.abelianize() ==
        RatFunc(MultiPoly::constant(2, Rational(1)), var(2, 0)));
  CHECK(t01[1].value.abelianize() == RatFunc(var(2, 1), var(2, 0)));

  // At d = 0 the quotient is the plain commutative fraction.
  auto ctx0 = chart_localization(2, 0, 0, {1});
  auto flat = projective_transition(2, 0, 0, 1, ctx0);
  CHECK(flat[1].value ==
        LeftFraction(ctx0, 1, NormalForm::generator(2, 0, 1)));
}

TEST_CASE("chart changes satisfy the cocycle identity") {
  for (unsigned d = 0; d <= 3; ++d) {
    GeoReport rep = cocycle_check(1, d);
    CHECK(rep.pass);
    CHECK(rep.detail.find(": ok") != std::string::npos);
    CHECK(rep.detail.find("residual") == std::string::npos);
  }
  for (unsigned d = 0; d <= 3; ++d) {
    GeoReport rep = cocycle_check(2, d);
    CHECK(rep.pass);
    CHECK(rep.detail.find("residual") == std::string::npos);
  }
}

TEST_CASE("line bundle cocycle composes left to right") {
  // Inverse pair on the line: phi_01 * phi_10 = 1.
  const unsigned d = 2;
  auto ctx = chart_localization(1, d, 0, {1});
  LeftFraction phi01 = invert(
      LeftFraction::from_polynomial(ctx, NormalForm::generator(1, d, 0)));
  auto ctx1 = chart_localization(1, d, 1, {0});
  LeftFraction phi10 = invert(
      LeftFraction::from_polynomial(ctx1, NormalForm::generator(1, d, 0)));
  auto t01 = projective_transition(1, d, 0, 1, ctx);
  std::vector<LeftFraction> images = {t01[0].value};
  LeftFraction mapped = evaluate_fraction(phi10, images, ctx);
  CHECK(phi01 * mapped == LeftFraction::one(ctx));

  for (unsigned dd = 0; dd <= 2; ++dd) {
    CHECK(line_bundle_cocycle(1, dd).pass);
    CHECK(line_bundle_cocycle(2, dd).pass);
  }
}

namespace {

// Word-level oracle for the graded dimensions: spans the degree-m slice of
// the d-th filtration ideal by products of letters and fully bracketed
// commutators carrying at least d bracket pairs, then takes a rank.
using OWord = std::vector<int>;
using OPoly = std::map<OWord, Rational>;

void oadd(OPoly& p, const OWord& w, const Rational& c) {
  auto [it, fresh] = p.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

OPoly omul(const OPoly& a, const OPoly& b) {
  OPoly r;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      OWord w = u;
      w.insert(w.end(), v.begin(), v.end());
      oadd(r, w, cu * cv);
    }
  return r;
}

std::vector<std::vector<OPoly>> bracket_trees(unsigned n, unsigned max_deg) {
  std::vector<std::vector<OPoly>> trees(max_deg + 1);
  for (unsigned l = 0; l < n; ++l)
    trees[1].push_back({{OWord{int(l)}, Rational(1)}});
  for (unsigned q = 2; q <= max_deg; ++q)
    for (unsigned s = 1; s < q; ++s)
      for (const OPoly& a : trees[s])
        for (const OPoly& b : trees[q - s]) {
          OPoly c = omul(a, b);
          for (const auto& [w, cf] : omul(b, a)) oadd(c, w, -cf);
          if (!c.empty()) trees[q].push_back(std::move(c));
        }
  return trees;
}

void spanning_products(const std::vector<std::vector<OPoly>>& trees,
                       unsigned m, unsigned weight, const OPoly& prefix,
                       std::vector<OPoly>& out) {
  if (m == 0) {
    if (weight == 0) out.push_back(prefix);
    return;
  }
  for (unsigned q = 1; q <= m; ++q) {
    unsigned w = q == 1 ? 0 : q - 1;
    for (const OPoly& f : trees[q])
      spanning_products(trees, m - q, weight > w ? weight - w : 0,
                        omul(prefix, f), out);
  }
}

uint64_t gauss_rank(std::vector<std::vector<Rational>> rows) {
  std::vector<std::vector<Rational>> basis;
  std::vector<size_t> pivots;
  uint64_t rank = 0;
  for (auto& row : rows) {
    for (size_t b = 0; b < basis.size(); ++b) {
      Rational c = row[pivots[b]];
      if (c == 0) continue;
      for (size_t t = 0; t < row.size(); ++t) row[t] -= c * basis[b][t];
    }
    size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (p == row.size()) continue;
    Rational inv = Rational(1) / row[p];
    for (size_t t = p; t < row.size(); ++t) row[t] *= inv;
    basis.push_back(std::move(row));
    pivots.push_back(p);
    ++rank;
  }
  return rank;
}

uint64_t filtration_rank(unsigned n, unsigned d, unsigned m) {
  auto trees = bracket_trees(n, m == 0 ? 1 : m);
  std::vector<OPoly> rows;
  spanning_products(trees, m, d, {{OWord{}, Rational(1)}}, rows);
  size_t cols = 1;
  for (unsigned t = 0; t < m; ++t) cols *= n;
  std::vector<std::vector<Rational>> dense;
  dense.reserve(rows.size());
  for (const OPoly& p : rows) {
    std::vector<Rational> v(cols);
    for (const auto& [w, c] : p) {
      size_t idx = 0;
      for (int l : w) idx = idx * n + size_t(l);
      v[idx] = c;
    }
    dense.push_back(std::move(v));
  }
  return gauss_rank(std::move(dense));
}

uint64_t rank_oracle(unsigned n, unsigned d, unsigned m) {
  return filtration_rank(n, d, m) - filtration_rank(n, d + 1, m);
}

uint64_t choose(uint64_t a, uint64_t b) {
  uint64_t r = 1;
  for (uint64_t t = 1; t <= b; ++t) r = r * (a - b + t) / t;
  return r;
}

}  // namespace

TEST_CASE("poisson envelope dimensions match the word level rank") {
  CHECK(poisson_envelope_dims(2, 1, 2) == 1);
  CHECK(poisson_envelope_dims(2, 2, 4) == 5);
  CHECK(rank_oracle(2, 2, 4) == 5);

  for (unsigned d = 0; d <= 3; ++d)
    for (unsigned m = 0; m <= 4; ++m)
      CHECK(poisson_envelope_dims(2, d, m) == rank_oracle(2, d, m));
  for (unsigned d = 0; d <= 3; ++d)
    for (unsigned m = 0; m <= 3; ++m)
      CHECK(poisson_envelope_dims(3, d, m) == rank_oracle(3, d, m));

  // The zeroth graded piece is the polynomial ring itself.
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned m = 0; m <= 5; ++m)
      CHECK(poisson_envelope_dims(n, 0, m) == choose(m + n - 1, n - 1));
}
