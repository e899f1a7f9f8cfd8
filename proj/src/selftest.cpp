#include "ncalg/selftest.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "ncalg/expr.hpp"
#include "ncalg/geometry.hpp"
#include "ncalg/json_io.hpp"

namespace ncalg {
namespace {

using nlohmann::json;

// Runs a sequence of expectations; keeps the count and the first failure.
struct Collector {
  bool pass = true;
  size_t count = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++count;
    if (!ok && pass) {
      pass = false;
      first = what;
    }
  }
};

CheckResult finish(const char* name, const Collector& c, const std::string& summary) {
  return {name, c.pass,
          c.pass ? summary + " (" + std::to_string(c.count) + " checks)" : c.first};
}

std::string ustr(uint64_t v) { return std::to_string(v); }

// ---------------------------------------------------------------------------
// Word-space filtration oracle. The d-th filtration layer of the degree-m
// word space is spanned by ordered products of letters and fully bracketed
// letter trees whose bracket weights (tree degree minus one) sum to at least
// d. Ranks come from sparse Gaussian elimination over Q, with no use of the
// engine's straightening or counting code.

using SparseRow = std::map<size_t, Rational>;

SparseRow to_sparse(const WordPoly& p, unsigned n) {
  SparseRow r;
  for (const auto& [w, cv] : p.terms()) {
    size_t ix = 0;
    for (Letter l : w) ix = ix * n + l;
    r[ix] = cv;
  }
  return r;
}

void row_axpy(SparseRow& r, const Rational& c, const SparseRow& p) {
  for (const auto& [col, v] : p) {
    auto it = r.find(col);
    if (it == r.end()) {
      Rational nv = c * v;
      if (nv != 0) r.emplace(col, nv);
    } else {
      it->second += c * v;
      if (it->second == 0) r.erase(it);
    }
  }
}

// Incremental row-echelon store; pivots are normalized to leading 1.
struct Independent {
  std::map<size_t, SparseRow> pivots;

  bool try_add(SparseRow row) {
    while (!row.empty()) {
      size_t lead = row.begin()->first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        Rational head = row.begin()->second;
        SparseRow norm;
        for (const auto& [col, v] : row) norm.emplace(col, v / head);
        pivots.emplace(lead, std::move(norm));
        return true;
      }
      row_axpy(row, -row.begin()->second, it->second);
    }
    return false;
  }
};

size_t sparse_rank(std::vector<SparseRow> rows) {
  Independent ind;
  size_t rank = 0;
  for (auto& r : rows)
    if (ind.try_add(std::move(r))) ++rank;
  return rank;
}

// Letters and an independent spanning set of bracketed trees per degree.
// Every tree is a combination of the kept trees of the same degree, so
// products of kept trees span exactly what products of all trees span.
std::vector<std::vector<WordPoly>> independent_trees(unsigned n, unsigned maxdeg) {
  std::vector<std::vector<WordPoly>> trees(maxdeg + 1);
  if (maxdeg >= 1)
    for (unsigned l = 0; l < n; ++l)
      trees[1].push_back(WordPoly::letter(n, Letter(l)));
  for (unsigned q = 2; q <= maxdeg; ++q) {
    Independent ind;
    for (unsigned s = 1; s < q; ++s)
      for (const auto& a : trees[s])
        for (const auto& b : trees[q - s]) {
          WordPoly cmt = a * b - b * a;
          if (!cmt.terms().empty() && ind.try_add(to_sparse(cmt, n)))
            trees[q].push_back(cmt);
        }
  }
  return trees;
}

struct WeightedRow {
  unsigned weight;
  WordPoly value;
};

void product_rows(const std::vector<std::vector<WordPoly>>& trees, unsigned m,
                  unsigned weight, const WordPoly& prefix,
                  std::vector<WeightedRow>& out) {
  if (m == 0) {
    out.push_back({weight, prefix});
    return;
  }
  for (unsigned q = 1; q <= m && q < trees.size(); ++q)
    for (const auto& t : trees[q])
      product_rows(trees, m - q, weight + (q >= 2 ? q - 1 : 0), prefix * t, out);
}

// ranks[dmin] = dim of the span of products with total weight >= dmin
// inside the degree-m word space.
std::vector<size_t> filtration_ranks(unsigned n, unsigned m) {
  auto trees = independent_trees(n, m);
  std::vector<WeightedRow> rows;
  product_rows(trees, m, 0, WordPoly::one(n), rows);
  std::vector<size_t> ranks(m + 2, 0);
  size_t full = 1;
  for (unsigned t = 0; t < m; ++t) full *= n;
  // The weight-0 products are the individual words, so the span is full.
  ranks[0] = full;
  for (unsigned dmin = 1; dmin <= m + 1; ++dmin) {
    std::vector<SparseRow> sel;
    for (const auto& wr : rows)
      if (wr.weight >= dmin) {
        SparseRow row = to_sparse(wr.value, n);
        if (!row.empty()) sel.push_back(std::move(row));
      }
    ranks[dmin] = sparse_rank(std::move(sel));
  }
  return ranks;
}

// ---------------------------------------------------------------------------
// Deterministic random values.

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(uint64_t seed) : rng(seed) {}

  unsigned pick(unsigned bound) { return unsigned(rng() % bound); }
  int span(int lo, int hi) { return lo + int(rng() % uint64_t(hi - lo + 1)); }

  Rational coeffv() {
    int v = span(-4, 4);
    return Rational(v == 0 ? 1 : v);
  }

  MultiPoly poly(unsigned arity, unsigned maxdeg, unsigned nterms) {
    MultiPoly p(arity);
    for (unsigned t = 0; t < nterms; ++t) {
      ExpVec e(arity, 0);
      unsigned budget = pick(maxdeg + 1);
      for (unsigned i = 0; i < arity && budget > 0; ++i) {
        unsigned k = pick(budget + 1);
        e[i] = k;
        budget -= k;
      }
      p += MultiPoly::monomial(arity, e, coeffv());
    }
    return p;
  }

  ExpMap expmap(unsigned n, unsigned d) {
    ExpMap em;
    if (d == 0) return em;
    auto basis = lie_basis(n, d + 1);
    std::vector<uint32_t> ids;
    for (uint32_t id = n; id < basis->size(); ++id)
      if (basis->degree(id) >= 2 && basis->degree(id) <= d + 1) ids.push_back(id);
    if (ids.empty()) return em;
    unsigned budget = d;
    std::map<uint32_t, uint32_t> mult;
    for (unsigned t = pick(3); t > 0; --t) {
      uint32_t id = ids[pick(unsigned(ids.size()))];
      unsigned w = basis->degree(id) - 1;
      if (w <= budget) {
        ++mult[id];
        budget -= w;
      }
    }
    em.assign(mult.begin(), mult.end());
    return em;
  }

  // bracket_d caps the random bracket parts; 0 means the truncation degree.
  NormalForm normal_form(unsigned n, unsigned d, unsigned nterms, unsigned maxdeg,
                         unsigned bracket_d = 0) {
    NormalForm a(n, d);
    for (unsigned t = 0; t < nterms; ++t) {
      MultiPoly cf = poly(n, maxdeg, 2);
      if (!cf.is_zero()) a.add_term(expmap(n, bracket_d ? bracket_d : d), cf);
    }
    return a;
  }

  RatFunc ratf(unsigned arity, unsigned maxdeg) {
    MultiPoly den = poly(arity, maxdeg, 2);
    if (den.is_zero()) den = MultiPoly::constant(arity, 1);
    return RatFunc(poly(arity, maxdeg, 3), den);
  }
};

MultiPoly poly_expr(const std::string& src, unsigned n) {
  return evaluate_commutative(parse_expression(src, n), n);
}

// ---------------------------------------------------------------------------
// Criterion 1: basis and dimension counts against combinatorial identities
// and the word-space rank oracle.

CheckResult check_basis_dimensions() {
  Collector c;
  for (unsigned n = 1; n <= 3; ++n) {
    std::vector<size_t> cnt(7, 0);
    for (const auto& w : lyndon_words(n, 6)) ++cnt[w.size()];
    for (unsigned k = 1; k <= 6; ++k)
      c.expect(cnt[k] == witt_dimension(n, k),
               "lyndon count != witt dimension at n=" + ustr(n) + " k=" + ustr(k));
  }
  c.expect(q_dimension(2, 1) == 1, "q_dimension(2,1) != 1");
  c.expect(q_dimension(2, 2) == 3, "q_dimension(2,2) != 3");
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned m = 0; m <= 5; ++m) {
      uint64_t total = 0;
      for (unsigned dd = 0; dd <= m; ++dd) total += graded_count(n, dd, m);
      uint64_t full = 1;
      for (unsigned t = 0; t < m; ++t) full *= n;
      c.expect(total == full,
               "graded counts do not sum to n^m at n=" + ustr(n) + " m=" + ustr(m));
      auto ranks = filtration_ranks(n, m);
      for (unsigned dd = 0; dd <= m; ++dd)
        c.expect(graded_count(n, dd, m) == uint64_t(ranks[dd] - ranks[dd + 1]),
                 "graded_count(" + ustr(n) + "," + ustr(dd) + "," + ustr(m) +
                     ")=" + ustr(graded_count(n, dd, m)) + " but word-space rank gives " +
                     ustr(ranks[dd] - ranks[dd + 1]));
    }
  return finish("basis-dimensions", c,
                "lyndon==witt to degree 6, graded layers match word-space ranks to m=5");
}

// ---------------------------------------------------------------------------
// Criterion 2: the PBW product against the word-level route and both
// ordered-symbol routes.

SymbolSum concat_product(const RatNormalForm& a, const RatNormalForm& b, unsigned n) {
  SymbolSum out;
  for (const auto& [ca, sa] : symbolize(a))
    for (const auto& [cb, sb] : symbolize(b)) {
      std::vector<uint32_t> slots = sa.slots;
      slots.insert(slots.end(), sb.slots.begin(), sb.slots.end());
      unsigned k = unsigned(sa.slots.size()), l = unsigned(sb.slots.size());
      std::vector<unsigned> ma(k), mb(l);
      for (unsigned i = 0; i < k; ++i) ma[i] = i;
      for (unsigned i = 0; i < l; ++i) mb[i] = k + i;
      RatFunc coeff = sa.coeff.remap(k + l, ma) * sb.coeff.remap(k + l, mb);
      out.push_back({ca * cb, make_symbol(n, std::move(slots), coeff)});
    }
  return out;
}

CheckResult check_product_vs_words() {
  Collector c;
  Gen gen(11);
  for (unsigned trial = 0; trial < 50; ++trial) {
    unsigned n = 1 + trial % 3;
    unsigned d = 1 + (trial / 3) % 3;
    NormalForm a = gen.normal_form(n, d, 2, 3);
    NormalForm b = gen.normal_form(n, d, 2, 3);
    NormalForm prod = a * b;
    c.expect(prod == straighten(expand_to_words(a) * expand_to_words(b), d),
             "product != straightened word concatenation at trial " + ustr(trial));
    RatNormalForm rp = to_rational(prod);
    c.expect(dn_product(to_rational(a), to_rational(b)) == rp,
             "rational symbol product disagrees at trial " + ustr(trial));
    c.expect(normal_order(concat_product(to_rational(a), to_rational(b), n), n, d) == rp,
             "slot-concatenation normal order disagrees at trial " + ustr(trial));
  }
  return finish("product-vs-words", c,
                "50 random pairs, word route and both symbol routes agree");
}

// ---------------------------------------------------------------------------
// Criterion 3: associativity and the NC-order lower bounds.

CheckResult check_ring_axioms() {
  Collector c;
  Gen gen(12);
  for (unsigned trial = 0; trial < 30; ++trial) {
    unsigned n = 1 + trial % 3;
    unsigned d = 1 + (trial / 3) % 3;
    NormalForm a = gen.normal_form(n, d, 2, 2);
    NormalForm b = gen.normal_form(n, d, 2, 2);
    NormalForm cc = gen.normal_form(n, d, 2, 2);
    c.expect((a * b) * cc == a * (b * cc), "associativity fails at trial " + ustr(trial));
    c.expect(a * (b + cc) == a * b + a * cc, "distributivity fails at trial " + ustr(trial));
  }
  for (unsigned trial = 0; trial < 50; ++trial) {
    unsigned n = 1 + trial % 3;
    unsigned d = 1 + (trial / 3) % 3;
    NormalForm a = gen.normal_form(n, d, 2, 2);
    NormalForm b = gen.normal_form(n, d, 2, 2);
    auto oa = a.nc_order(), ob = b.nc_order();
    if (!oa || !ob) continue;
    NormalForm prod = a * b;
    auto op = prod.nc_order();
    c.expect(!op || *op >= *oa + *ob, "product order below the sum at trial " + ustr(trial));
    NormalForm br = a * b - b * a;
    auto obr = br.nc_order();
    c.expect(!obr || *obr >= *oa + *ob + 1,
             "commutator order not above the sum at trial " + ustr(trial));
  }
  return finish("ring-axioms-and-order", c,
                "30 associativity triples, 50 order-bound pairs");
}

// ---------------------------------------------------------------------------
// Criterion 4: the truncation at degree 1 multiplies like the square-zero
// extension by 2-forms.

CheckResult check_first_order_product() {
  Collector c;
  Gen gen(13);
  for (unsigned trial = 0; trial < 20; ++trial) {
    unsigned n = 2 + trial % 2;
    NormalForm a = gen.normal_form(n, 1, 2, 3);
    NormalForm b = gen.normal_form(n, 1, 2, 3);
    c.expect(first_order_image(a * b) == first_order_image(a) * first_order_image(b),
             "image of the product differs at trial " + ustr(trial));
    c.expect(first_order_preimage(first_order_image(a)) == a,
             "preimage round trip fails at trial " + ustr(trial));
  }
  GeoReport r2 = compare_first_order(2, 20, 77);
  GeoReport r3 = compare_first_order(3, 20, 78);
  c.expect(r2.pass, "compare_first_order(2) failed: " + r2.detail);
  c.expect(r3.pass, "compare_first_order(3) failed: " + r3.detail);
  return finish("first-order-product", c,
                "20 image pairs plus 40 harness trials at n=2,3");
}

// ---------------------------------------------------------------------------
// Criterion 5: the ordered-calculus identities hold at word level, with no
// truncation in reach.

WordPoly ordered_words(const MultiPoly& f, unsigned n) {
  std::vector<WordPoly> contents;
  for (unsigned i = 0; i < n; ++i) contents.push_back(WordPoly::letter(n, Letter(i)));
  return evaluate_with_contents(f, n, contents);
}

CheckResult check_ordered_calculus() {
  Collector c;
  Gen gen(14);

  // Adjacent transposition preserves the word value exactly.
  for (unsigned trial = 0; trial < 12; ++trial) {
    unsigned len = 2 + trial % 2;
    std::vector<uint32_t> slots;
    for (unsigned i = 0; i < len; ++i) slots.push_back(gen.pick(3));
    MultiPoly cf = gen.poly(len, 2, 2);
    if (cf.is_zero()) cf = MultiPoly::constant(len, 1);
    OrderedSymbol s = make_symbol(2, slots, cf);
    unsigned p = gen.pick(len - 1);
    c.expect(evaluate_to_words(swap_adjacent(s, p), 2) == evaluate_to_words(s),
             "adjacent swap changes the word value at trial " + ustr(trial));
  }

  // Batched reordering of b^m a^l, and the frozen kernel values.
  for (unsigned l = 0; l <= 3; ++l)
    for (unsigned m = 0; m <= 3; ++m) {
      MultiPoly g = MultiPoly::monomial(2, ExpVec{l, m}, 1);
      Word direct;
      for (unsigned t = 0; t < m; ++t) direct.push_back(Letter(1));
      for (unsigned t = 0; t < l; ++t) direct.push_back(Letter(0));
      c.expect(evaluate_to_words(batched_swap(g, l + m + 2), 2) ==
                   WordPoly::word(2, direct, 1),
               "batched reorder of b^" + ustr(m) + " a^" + ustr(l) + " is off");
    }
  c.expect(swap_kernel(0, 0) == WordPoly::one(2), "K(0,0) != 1");
  for (unsigned l = 1; l <= 3; ++l)
    c.expect(swap_kernel(l, 0).terms().empty(), "K(" + ustr(l) + ",0) != 0");
  WordPoly a1 = WordPoly::letter(2, 0), b1 = WordPoly::letter(2, 1);
  c.expect(swap_kernel(0, 1) == b1 - a1, "K(0,1) != b - a");
  c.expect(swap_kernel(1, 1) == (b1 * a1 - a1 * b1), "K(1,1) != -[a,b]");

  // Right commutation past an ordered coefficient.
  for (unsigned trial = 0; trial < 10; ++trial) {
    unsigned n = 2 + trial % 2;
    NormalForm a = gen.normal_form(n, 14, 2, 2, 3);
    MultiPoly f = gen.poly(n, 2, 2);
    c.expect(evaluate_to_words(commutation_formula(a, f, 14), n) ==
                 expand_to_words(a) * ordered_words(f, n),
             "commutation formula off at word level, trial " + ustr(trial));
  }

  // Two-letter Taylor expansion with remainder kernels.
  WordPoly sum2 = WordPoly::letter(2, 0) + WordPoly::letter(2, 1);
  for (unsigned k = 0; k <= 5; ++k) {
    MultiPoly f = MultiPoly::monomial(1, ExpVec{k}, 1);
    WordPoly direct = WordPoly::one(2);
    for (unsigned t = 0; t < k; ++t) direct = direct * sum2;
    c.expect(evaluate_to_words(taylor(f, k + 2), 2) == direct,
             "taylor expansion of y^" + ustr(k) + " is off");
    if (k >= 1) {
      auto ox = nc_order(taylor_x(k));
      c.expect(!ox || *ox >= (k + 1) / 2,
               "remainder kernel X_" + ustr(k) + " has low order");
    }
  }
  WordPoly x2w = (b1 * a1 - a1 * b1).scaled(Rational(1) / 2);
  c.expect(taylor_x(2) == x2w, "X_2 != -1/2 [a,b]");

  return finish("ordered-calculus", c,
                "swap, batched reorder, commutation, taylor all exact on words");
}

// ---------------------------------------------------------------------------
// Criterion 6: the generator quotient x2 * x1^-1, term by term, for every
// truncation degree up to 4, and the exact left quotient.

uint32_t ad_tower_id(unsigned j) {
  Word w(j, Letter(0));
  w.push_back(Letter(1));
  return *lie_basis(2, j + 1)->find(w);
}

CheckResult check_quotient_expansion() {
  Collector c;
  MultiPoly x1 = MultiPoly::variable(2, 0), x2 = MultiPoly::variable(2, 1);
  for (unsigned dd = 1; dd <= 4; ++dd) {
    auto ctx = make_localization(2, dd, x1);
    LeftFraction f = normalize_right_division(NormalForm::generator(2, dd, 1), ctx);
    RatNormalForm want(2, dd);
    want.add_term({}, RatFunc(x2, x1));
    for (unsigned j = 1; j <= dd; ++j)
      want.add_term({{ad_tower_id(j), 1}}, RatFunc(MultiPoly::constant(2, 1), x1.pow(j + 1)));
    c.expect(to_rational_normal_form(f) == want,
             "right quotient expansion wrong at d=" + ustr(dd));
    LeftFraction gf = LeftFraction::from_polynomial(ctx, NormalForm::generator(2, dd, 0));
    LeftFraction num = LeftFraction::from_polynomial(ctx, NormalForm::generator(2, dd, 1));
    c.expect(f * gf == num, "right quotient times x1 != x2 at d=" + ustr(dd));

    LeftFraction left = invert(gf) * num;
    RatNormalForm single(2, dd);
    single.add_term({}, RatFunc(x2, x1));
    c.expect(to_rational_normal_form(left) == single,
             "left quotient is not the single ordered term at d=" + ustr(dd));
    c.expect(left.denominator_exponent() == 1 &&
                 left.numerator() == NormalForm::generator(2, dd, 1),
             "left quotient canonical form off at d=" + ustr(dd));
  }
  return finish("generator-quotient-expansion", c,
                "term-by-term match for d=1..4, exact left quotient");
}

// ---------------------------------------------------------------------------
// Criterion 7: scalar and matrix inversion, two-sided, with the 3x3
// generator matrix under its time budget.

CheckResult check_inversion() {
  Collector c;
  {
    MultiPoly g = MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1);
    auto ctx = make_localization(2, 2, g);
    LeftFraction u = LeftFraction::from_polynomial(ctx, NormalForm::scalar(2, 2, g));
    LeftFraction v = invert(u);
    c.expect(v * u == LeftFraction::one(ctx), "inverse of [[x1+x2]] fails on the left");
    c.expect(u * v == LeftFraction::one(ctx), "inverse of [[x1+x2]] fails on the right");
  }
  for (unsigned sz = 2; sz <= 3; ++sz) {
    unsigned n = sz * sz;
    std::vector<std::vector<MultiPoly>> entries(sz, std::vector<MultiPoly>(sz, MultiPoly(n)));
    for (unsigned r = 0; r < sz; ++r)
      for (unsigned cc = 0; cc < sz; ++cc)
        entries[r][cc] = MultiPoly::variable(n, sz * r + cc);
    auto ctx = make_localization(n, 2, poly_det(entries));
    FractionMatrix m(sz, std::vector<LeftFraction>(sz, LeftFraction::zero(ctx)));
    for (unsigned r = 0; r < sz; ++r)
      for (unsigned cc = 0; cc < sz; ++cc)
        m[r][cc] =
            LeftFraction::from_polynomial(ctx, NormalForm::generator(n, 2, sz * r + cc));
    auto start = std::chrono::steady_clock::now();
    FractionMatrix inv = matrix_invert(m);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    FractionMatrix id = matrix_identity(ctx, sz);
    c.expect(matrix_equal(matrix_mul(m, inv), id),
             ustr(sz) + "x" + ustr(sz) + " inverse fails on the right");
    c.expect(matrix_equal(matrix_mul(inv, m), id),
             ustr(sz) + "x" + ustr(sz) + " inverse fails on the left");
    if (sz == 3)
      c.expect(secs < 60.0, "3x3 inversion took " + std::to_string(secs) + "s");
  }
  return finish("inversion", c, "scalar and 2x2, 3x3 generator matrices, two-sided");
}

// ---------------------------------------------------------------------------
// Criterion 8: every graded layer of a rational normal form clears its
// denominators by a power of g.

CheckResult check_denominator_structure() {
  Collector c;
  Gen gen(15);
  struct Cfg {
    unsigned n, d;
    const char* g;
  };
  const Cfg cfgs[] = {{2, 2, "x1"}, {2, 2, "x1 + x2"}, {2, 3, "x1"}, {3, 2, "x1 + x2 + x3"}};
  unsigned fractions = 0;
  for (const auto& cfg : cfgs) {
    MultiPoly g = poly_expr(cfg.g, cfg.n);
    auto ctx = make_localization(cfg.n, cfg.d, g);
    for (unsigned trial = 0; trial < 3; ++trial, ++fractions) {
      LeftFraction f(ctx, gen.pick(3), gen.normal_form(cfg.n, cfg.d, 2, 2));
      RatNormalForm r = to_rational_normal_form(f);
      unsigned bound = f.denominator_exponent() * (cfg.d + 1) + cfg.d + 2;
      for (unsigned layer = 0; layer <= cfg.d; ++layer)
        for (const auto& [em, coeff] : r.gr_project(layer).terms()) {
          bool cleared = false;
          for (unsigned k = 0; k <= bound && !cleared; ++k)
            cleared = (coeff * RatFunc(g.pow(k))).is_polynomial();
          c.expect(cleared, "layer " + ustr(layer) + " coefficient " + coeff.to_string() +
                                " is not polynomial over powers of g");
          (void)em;
        }
    }
  }
  return finish("denominator-structure", c,
                ustr(fractions) + " random fractions, every graded layer clears by g^k");
}

// ---------------------------------------------------------------------------
// Criterion 9: chart gluing. Cocycle and line-bundle identities, classical
// abelianization of the transitions, and the envelope dimensions.

CheckResult check_chart_geometry() {
  Collector c;
  for (unsigned n = 1; n <= 2; ++n)
    for (unsigned dd = 0; dd <= 3; ++dd) {
      GeoReport r = cocycle_check(n, dd);
      c.expect(r.pass, "cocycle check fails at n=" + ustr(n) + " d=" + ustr(dd));
    }
  for (unsigned n = 1; n <= 2; ++n)
    for (unsigned dd = 0; dd <= 2; ++dd) {
      GeoReport r = line_bundle_cocycle(n, dd);
      c.expect(r.pass, "line bundle cocycle fails at n=" + ustr(n) + " d=" + ustr(dd));
    }
  {
    auto ctx = chart_localization(1, 2, 0, {1});
    auto tr = projective_transition(1, 2, 0, 1, ctx);
    c.expect(tr.size() == 1 && tr[0].value.abelianize() ==
                                   RatFunc(MultiPoly::constant(1, 1), MultiPoly::variable(1, 0)),
             "chart change on the line does not abelianize to 1/x1");
  }
  {
    auto ctx = chart_localization(2, 2, 0, {1});
    auto tr = projective_transition(2, 2, 0, 1, ctx);
    RatFunc inv1(MultiPoly::constant(2, 1), MultiPoly::variable(2, 0));
    RatFunc ratio(MultiPoly::variable(2, 1), MultiPoly::variable(2, 0));
    c.expect(tr.size() == 2 && tr[0].value.abelianize() == inv1 &&
                 tr[1].value.abelianize() == ratio,
             "plane chart change does not abelianize to 1/x1, x2/x1");
  }
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned dd = 0; dd <= 3; ++dd)
      for (unsigned m = 0; m <= 5; ++m)
        c.expect(poisson_envelope_dims(n, dd, m) == graded_count(n, dd, m),
                 "envelope dimension != graded count at n=" + ustr(n) + " d=" + ustr(dd) +
                     " m=" + ustr(m));
  return finish("chart-geometry", c,
                "cocycles to d=3, line bundles to d=2, classical abelianization");
}

// ---------------------------------------------------------------------------
// Criterion 10: print/parse and JSON round trips are the identity.

CheckResult check_serialization() {
  Collector c;
  Gen gen(16);

  for (unsigned trial = 0; trial < 40; ++trial) {
    unsigned n = 1 + trial % 3;
    unsigned d = 1 + trial % 2;
    NormalForm a = gen.normal_form(n, d, 2, 2);
    EvalResult back = evaluate(parse_expression(a.to_string(), n), EvalConfig{n, d, nullptr});
    c.expect(back.element && *back.element == a,
             "normal form print/parse trip fails at trial " + ustr(trial));
  }
  {
    struct Cfg {
      unsigned n, d;
      const char* g;
    };
    const Cfg cfgs[] = {{2, 2, "x1"}, {2, 2, "x1 + x2"}, {1, 3, "x1"}, {3, 2, "x1 + x2 + x3"}};
    for (const auto& cfg : cfgs) {
      auto ctx = make_localization(cfg.n, cfg.d, poly_expr(cfg.g, cfg.n));
      for (unsigned trial = 0; trial < 8; ++trial) {
        LeftFraction f(ctx, gen.pick(3), gen.normal_form(cfg.n, cfg.d, 2, 2));
        EvalResult back = evaluate(parse_expression(f.to_string(), cfg.n),
                                   EvalConfig{cfg.n, cfg.d, ctx});
        c.expect(back.fraction && *back.fraction == f,
                 "fraction print/parse trip fails for g=" + std::string(cfg.g));
      }
    }
  }
  for (unsigned trial = 0; trial < 30; ++trial) {
    unsigned n = 1 + trial % 3;
    MultiPoly p = gen.poly(n, 3, 3);
    c.expect(poly_expr(p.to_string(), n) == p,
             "polynomial print/parse trip fails at trial " + ustr(trial));
  }

  for (unsigned trial = 0; trial < 25; ++trial) {
    unsigned n = 1 + trial % 3;
    MultiPoly p = gen.poly(n, 3, 3);
    c.expect(multipoly_from_json(json::parse(to_json(p).dump())) == p,
             "polynomial json trip fails at trial " + ustr(trial));
    RatFunc r = gen.ratf(n, 2);
    c.expect(ratfunc_from_json(json::parse(to_json(r).dump())) == r,
             "rational function json trip fails at trial " + ustr(trial));
    NormalForm a = gen.normal_form(n, 2, 2, 2);
    c.expect(normal_form_from_json(json::parse(to_json(a).dump())) == a,
             "normal form json trip fails at trial " + ustr(trial));
  }
  {
    auto ctx = make_localization(2, 2, poly_expr("x1 + x2", 2));
    for (unsigned trial = 0; trial < 15; ++trial) {
      LeftFraction f(ctx, gen.pick(3), gen.normal_form(2, 2, 2, 2));
      c.expect(fraction_from_json(json::parse(to_json(f).dump())) == f,
               "fraction json trip fails at trial " + ustr(trial));
      RatNormalForm r = to_rational_normal_form(f);
      c.expect(rat_normal_form_from_json(json::parse(to_json(r).dump())) == r,
               "rational normal form json trip fails at trial " + ustr(trial));
    }
  }
  return finish("serialization-round-trip", c,
                "102 print/parse trips, 105 json trips, all exact");
}

// ---------------------------------------------------------------------------
// Golden fixtures.

ExpMap expmap_from(const json& j) {
  ExpMap em;
  for (const auto& p : j) em.push_back({p.at(0).get<uint32_t>(), p.at(1).get<uint32_t>()});
  return em;
}

void run_structure_eval(const json& j, Collector& c) {
  unsigned n = j.at("n"), d = j.at("d");
  MultiPoly got = structure_eval(n, d, expmap_from(j.at("lambda")), expmap_from(j.at("mu")),
                                 expmap_from(j.at("nu")), multipoly_from_json(j.at("f")),
                                 multipoly_from_json(j.at("g")));
  MultiPoly want = multipoly_from_json(j.at("expected"));
  c.expect(got == want, "structure coefficient is " + got.to_string() + ", expected " +
                            want.to_string());
}

void run_ordered_eval(const json& j, Collector& c, bool rational) {
  unsigned n = j.at("n"), d = j.at("d");
  std::vector<uint32_t> slots = j.at("slots").get<std::vector<uint32_t>>();
  if (rational) {
    SymbolSum s{{Rational(1), make_symbol(n, slots, ratfunc_from_json(j.at("coeff")))}};
    RatNormalForm got = normal_order(s, n, d);
    RatNormalForm want = rat_normal_form_from_json(j.at("expected"));
    c.expect(got == want, "normal order gives " + got.to_string() + ", expected " +
                              want.to_string());
  } else {
    SymbolSum s{{Rational(1), make_symbol(n, slots, multipoly_from_json(j.at("coeff")))}};
    NormalForm got = normal_order_poly(s, n, d);
    NormalForm want = normal_form_from_json(j.at("expected"));
    c.expect(got == want, "normal order gives " + got.to_string() + ", expected " +
                              want.to_string());
  }
}

void run_dn_product(const json& j, Collector& c) {
  RatNormalForm got =
      dn_product(rat_normal_form_from_json(j.at("a")), rat_normal_form_from_json(j.at("b")));
  RatNormalForm want = rat_normal_form_from_json(j.at("expected"));
  c.expect(got == want,
           "product is " + got.to_string() + ", expected " + want.to_string());
}

void run_matrix_inverse(const json& j, Collector& c) {
  unsigned n = j.at("n"), d = j.at("d");
  auto ctx = make_localization(n, d, poly_expr(j.at("g"), n));
  EvalConfig cfg{n, d, ctx};
  FractionMatrix m;
  for (const auto& row : j.at("entries")) {
    std::vector<LeftFraction> out;
    for (const auto& cell : row)
      out.push_back(*evaluate(parse_expression(cell.get<std::string>(), n), cfg).fraction);
    m.push_back(std::move(out));
  }
  FractionMatrix inv = matrix_invert(m);
  FractionMatrix id = matrix_identity(ctx, m.size());
  c.expect(matrix_equal(matrix_mul(m, inv), id), "matrix times inverse != identity");
  c.expect(matrix_equal(matrix_mul(inv, m), id), "inverse times matrix != identity");
  if (j.contains("expected_abelianized")) {
    const json& ab = j.at("expected_abelianized");
    MultiPoly den = poly_expr(ab.at("den"), n);
    const json& num = ab.at("num");
    for (size_t r = 0; r < m.size(); ++r)
      for (size_t cc = 0; cc < m.size(); ++cc)
        c.expect(inv[r][cc].abelianize() ==
                     RatFunc(poly_expr(num.at(r).at(cc).get<std::string>(), n), den),
                 "abelianized inverse entry (" + ustr(r) + "," + ustr(cc) + ") is off");
  }
}

void run_fraction_expansion(const json& j, Collector& c) {
  unsigned n = j.at("n"), d = j.at("d");
  MultiPoly g = poly_expr(j.at("g"), n);
  auto ctx = make_localization(n, d, g);
  NormalForm num =
      *evaluate(parse_expression(j.at("numerator"), n), EvalConfig{n, d, nullptr}).element;
  LeftFraction gf = LeftFraction::from_polynomial(ctx, NormalForm::scalar(n, d, g));
  LeftFraction numf = LeftFraction::from_polynomial(ctx, num);
  bool left = j.at("route").get<std::string>() == "left";
  LeftFraction f = left ? invert(gf) * numf : normalize_right_division(num, ctx);
  RatNormalForm got = to_rational_normal_form(f);
  RatNormalForm want = rat_normal_form_from_json(j.at("expected_expansion"));
  c.expect(got == want,
           "expansion is " + got.to_string() + ", expected " + want.to_string());
  c.expect(left ? gf * f == numf : f * gf == numf, "quotient does not reconstruct");
  if (j.contains("expected_denom_exp"))
    c.expect(f.denominator_exponent() == j.at("expected_denom_exp").get<unsigned>() &&
                 f.numerator() == normal_form_from_json(j.at("expected_numerator")),
             "canonical fraction form is off");
}

void run_eval_fraction(const json& j, Collector& c) {
  unsigned n = j.at("n"), d = j.at("d");
  EvalConfig cfg{n, d, make_localization(n, d, poly_expr(j.at("g"), n))};
  LeftFraction f = *evaluate(parse_expression(j.at("expr"), n), cfg).fraction;
  RatNormalForm got = to_rational_normal_form(f);
  RatNormalForm want = rat_normal_form_from_json(j.at("expected_expansion"));
  c.expect(got == want,
           "expansion is " + got.to_string() + ", expected " + want.to_string());
  LeftFraction back = *evaluate(parse_expression(f.to_string(), n), cfg).fraction;
  c.expect(back == f, "printed result does not parse back to itself");
}

TrivialExtension read_extension(const json& j, unsigned n) {
  TrivialExtension e = TrivialExtension::from_polynomial(poly_expr(j.at("f"), n));
  for (const auto& o : j.at("omega"))
    e.add_form(o.at("i").get<unsigned>(), o.at("j").get<unsigned>(),
               poly_expr(o.at("w").get<std::string>(), n));
  return e;
}

void run_extension_product(const json& j, Collector& c) {
  unsigned n = j.at("n");
  TrivialExtension got = read_extension(j.at("a"), n) * read_extension(j.at("b"), n);
  TrivialExtension want = read_extension(j.at("expected"), n);
  c.expect(got == want,
           "product is " + got.to_string() + ", expected " + want.to_string());
}

void run_fixture(const json& j, Collector& c) {
  std::string kind = j.at("kind");
  if (kind == "structure-eval")
    run_structure_eval(j, c);
  else if (kind == "ordered-eval")
    run_ordered_eval(j, c, false);
  else if (kind == "ordered-eval-rational")
    run_ordered_eval(j, c, true);
  else if (kind == "dn-product")
    run_dn_product(j, c);
  else if (kind == "matrix-inverse")
    run_matrix_inverse(j, c);
  else if (kind == "fraction-expansion")
    run_fraction_expansion(j, c);
  else if (kind == "eval-fraction")
    run_eval_fraction(j, c);
  else if (kind == "extension-product")
    run_extension_product(j, c);
  else
    c.expect(false, "unknown fixture kind " + kind);
}

}  // namespace

const std::vector<NamedCheck>& acceptance_suite() {
  static const std::vector<NamedCheck> suite = {
      {"basis-dimensions", check_basis_dimensions},
      {"product-vs-words", check_product_vs_words},
      {"ring-axioms-and-order", check_ring_axioms},
      {"first-order-product", check_first_order_product},
      {"ordered-calculus", check_ordered_calculus},
      {"generator-quotient-expansion", check_quotient_expansion},
      {"inversion", check_inversion},
      {"denominator-structure", check_denominator_structure},
      {"chart-geometry", check_chart_geometry},
      {"serialization-round-trip", check_serialization},
  };
  return suite;
}

std::vector<CheckResult> acceptance_checks() {
  std::vector<CheckResult> out;
  for (const auto& entry : acceptance_suite()) out.push_back(entry.run());
  return out;
}

std::vector<CheckResult> fixture_checks(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<CheckResult> out;
  std::vector<fs::path> files;
  std::error_code ec;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec))
    if (it->path().extension() == ".json") files.push_back(it->path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    out.push_back({"fixtures", false, "no fixture files under " + dir});
    return out;
  }
  for (const auto& p : files) {
    CheckResult r{p.stem().string(), false, ""};
    try {
      std::ifstream in(p);
      json j = json::parse(in);
      if (j.contains("name")) r.name = j.at("name").get<std::string>();
      Collector c;
      run_fixture(j, c);
      r.pass = c.pass;
      r.note = c.pass ? std::to_string(c.count) + " checks" : c.first;
    } catch (const std::exception& e) {
      r.pass = false;
      r.note = e.what();
    }
    out.push_back(r);
  }
  return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace ncalg
