#include "ncalg/geometry.hpp"

#include <cassert>
#include <random>
#include <sstream>

namespace ncalg {

TrivialExtension::TrivialExtension(unsigned arity)
    : arity_(arity),
      f_(arity),
      omega_(arity < 2 ? 0 : size_t(arity) * (arity - 1) / 2,
             MultiPoly(arity)) {}

TrivialExtension TrivialExtension::from_polynomial(MultiPoly f) {
  TrivialExtension e(f.arity());
  e.f_ = std::move(f);
  return e;
}

TrivialExtension TrivialExtension::one(unsigned arity) {
  return from_polynomial(MultiPoly::constant(arity, Rational(1)));
}

size_t TrivialExtension::index(unsigned i, unsigned j) const {
  assert(i < j && j < arity_);
  // Row-major position of (i,j) among pairs i < j.
  return size_t(i) * arity_ - size_t(i) * (i + 1) / 2 + (j - i - 1);
}

MultiPoly TrivialExtension::form(unsigned i, unsigned j) const {
  if (i >= arity_ || j >= arity_)
    throw ArityMismatch("form index out of range");
  if (i == j) return MultiPoly(arity_);
  if (i < j) return omega_[index(i, j)];
  return -omega_[index(j, i)];
}

void TrivialExtension::add_form(unsigned i, unsigned j, const MultiPoly& w) {
  if (i >= arity_ || j >= arity_ || i == j)
    throw ArityMismatch("form index out of range");
  if (i < j)
    omega_[index(i, j)] += w;
  else
    omega_[index(j, i)] -= w;
}

TrivialExtension TrivialExtension::operator+(const TrivialExtension& o) const {
  if (arity_ != o.arity_) throw ArityMismatch("trivial extension arity");
  TrivialExtension r = *this;
  r.f_ += o.f_;
  for (size_t t = 0; t < omega_.size(); ++t) r.omega_[t] += o.omega_[t];
  return r;
}

TrivialExtension TrivialExtension::operator-(const TrivialExtension& o) const {
  if (arity_ != o.arity_) throw ArityMismatch("trivial extension arity");
  TrivialExtension r = *this;
  r.f_ -= o.f_;
  for (size_t t = 0; t < omega_.size(); ++t) r.omega_[t] -= o.omega_[t];
  return r;
}

TrivialExtension TrivialExtension::operator*(const TrivialExtension& o) const {
  if (arity_ != o.arity_) throw ArityMismatch("trivial extension arity");
  TrivialExtension r(arity_);
  r.f_ = f_ * o.f_;
  for (unsigned i = 0; i < arity_; ++i) {
    for (unsigned j = i + 1; j < arity_; ++j) {
      size_t t = index(i, j);
      r.omega_[t] = f_ * o.omega_[t] + o.f_ * omega_[t] +
                    f_.derivative(i) * o.f_.derivative(j) -
                    f_.derivative(j) * o.f_.derivative(i);
    }
  }
  return r;
}

std::string TrivialExtension::to_string() const {
  std::ostringstream out;
  out << "(" << f_.to_string("x");
  for (unsigned i = 0; i < arity_; ++i)
    for (unsigned j = i + 1; j < arity_; ++j) {
      const MultiPoly& w = omega_[index(i, j)];
      if (w.is_zero()) continue;
      out << " + (" << w.to_string("x") << ")*dx" << (i + 1) << "^dx"
          << (j + 1);
    }
  out << ")";
  return out.str();
}

namespace {

// Basis ids of the degree-2 brackets [x_i,x_j], i < j.
std::vector<std::vector<uint32_t>> pair_bracket_ids(unsigned n) {
  auto basis = lie_basis(n, 2);
  std::vector<std::vector<uint32_t>> ids(n, std::vector<uint32_t>(n, 0));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j)
      ids[i][j] = *basis->find({Letter(i), Letter(j)});
  return ids;
}

}  // namespace

TrivialExtension first_order_image(const NormalForm& a) {
  if (a.d() != 1) throw Error("first order map needs truncation degree 1");
  const unsigned n = a.n();
  auto ids = pair_bracket_ids(n);
  MultiPoly f(n);
  if (const MultiPoly* c = a.coeff({})) f = *c;
  TrivialExtension e = TrivialExtension::from_polynomial(f);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      MultiPoly w = f.derivative(i).derivative(j);
      if (const MultiPoly* c = a.coeff({{ids[i][j], 1}}))
        w += c->scaled(Rational(2));
      e.add_form(i, j, w);
    }
  return e;
}

NormalForm first_order_preimage(const TrivialExtension& e) {
  const unsigned n = e.arity();
  auto ids = pair_bracket_ids(n);
  NormalForm a(n, 1);
  const MultiPoly& f = e.scalar_part();
  if (!f.is_zero()) a.add_term({}, f);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) {
      MultiPoly c =
          (e.form(i, j) - f.derivative(i).derivative(j)).scaled(Rational(1, 2));
      if (!c.is_zero()) a.add_term({{ids[i][j], 1}}, c);
    }
  return a;
}

GeoReport compare_first_order(unsigned n, unsigned trials, uint64_t seed) {
  if (n < 2) throw Error("compare_first_order needs n >= 2");
  std::mt19937_64 rng(seed);
  auto rand_poly = [&](unsigned deg) {
    MultiPoly p(n);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<unsigned> expo(0, deg);
    for (int t = 0; t < 4; ++t) {
      ExpVec e(n, 0);
      unsigned left = deg;
      for (unsigned v = 0; v < n; ++v) {
        unsigned k = expo(rng) % (left + 1);
        e[v] = k;
        left -= k;
      }
      p += MultiPoly::monomial(n, e, Rational(coeff(rng)));
    }
    return p;
  };
  auto ids = pair_bracket_ids(n);
  auto rand_elem = [&]() {
    NormalForm a(n, 1);
    MultiPoly f = rand_poly(3);
    if (!f.is_zero()) a.add_term({}, f);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j) {
        MultiPoly c = rand_poly(2);
        if (!c.is_zero()) a.add_term({{ids[i][j], 1}}, c);
      }
    return a;
  };

  GeoReport rep{true, ""};
  std::ostringstream detail;
  auto fail = [&](const std::string& what) {
    rep.pass = false;
    detail << what << "\n";
  };

  if (first_order_image(NormalForm::one(n, 1)) != TrivialExtension::one(n))
    fail("unit is not preserved");
  for (unsigned t = 0; t < trials; ++t) {
    NormalForm a = rand_elem(), b = rand_elem();
    TrivialExtension fa = first_order_image(a), fb = first_order_image(b);
    if (first_order_image(a * b) != fa * fb)
      fail("multiplicativity fails on trial " + std::to_string(t));
    if (first_order_image(a + b) != fa + fb)
      fail("additivity fails on trial " + std::to_string(t));
    if (first_order_preimage(fa) != a)
      fail("preimage round trip fails on trial " + std::to_string(t));
  }
  rep.detail = detail.str();
  return rep;
}

unsigned chart_slot(unsigned n, unsigned i, unsigned j) {
  if (i > n || j > n || i == j) throw Error("chart coordinate out of range");
  return j < i ? j : j - 1;
}

LocalizationPtr chart_localization(unsigned n, unsigned d, unsigned i,
                                   const std::vector<unsigned>& ds) {
  MultiPoly g = MultiPoly::constant(n, Rational(1));
  std::vector<bool> seen(n, false);
  for (unsigned j : ds) {
    unsigned slot = chart_slot(n, i, j);
    if (seen[slot]) continue;
    seen[slot] = true;
    g = g * MultiPoly::variable(n, slot);
  }
  return make_localization(n, d, g);
}

namespace {

LeftFraction chart_generator(const LocalizationPtr& ctx, unsigned slot) {
  return LeftFraction::from_polynomial(
      ctx, NormalForm::generator(ctx->n, ctx->d, slot));
}

}  // namespace

std::vector<ChartElement> projective_transition(unsigned n, unsigned d,
                                                unsigned i, unsigned k,
                                                const LocalizationPtr& ctx) {
  if (i > n || k > n) throw Error("chart index out of range");
  if (ctx->n != n || ctx->d != d)
    throw Error("localization context mismatch");
  std::vector<ChartElement> out;
  if (k == i) {
    for (unsigned a = 0; a <= n; ++a) {
      if (a == k) continue;
      out.push_back({i, chart_generator(ctx, chart_slot(n, i, a))});
    }
    return out;
  }
  LeftFraction inv_k = invert(chart_generator(ctx, chart_slot(n, i, k)));
  for (unsigned a = 0; a <= n; ++a) {
    if (a == k) continue;
    if (a == i)
      out.push_back({i, inv_k});
    else
      out.push_back({i, chart_generator(ctx, chart_slot(n, i, a)) * inv_k});
  }
  return out;
}

LeftFraction evaluate_normal_form(const NormalForm& a,
                                  const std::vector<LeftFraction>& images,
                                  const LocalizationPtr& ctx) {
  if (images.size() != a.n()) throw ArityMismatch("one image per generator");
  WordPoly words = expand_to_words(a);
  LeftFraction acc = LeftFraction::zero(ctx);
  for (const auto& [w, c] : words.terms()) {
    LeftFraction term = LeftFraction::one(ctx);
    for (Letter l : w) term = term * images[l];
    acc = acc + term.scaled(c);
  }
  return acc;
}

LeftFraction evaluate_fraction(const LeftFraction& f,
                               const std::vector<LeftFraction>& images,
                               const LocalizationPtr& ctx) {
  LeftFraction num = evaluate_normal_form(f.numerator(), images, ctx);
  if (f.denominator_exponent() == 0) return num;
  LeftFraction s = evaluate_normal_form(f.context()->lift, images, ctx);
  return fraction_pow(invert(s), f.denominator_exponent()) * num;
}

namespace {

// Shared harness for the two cocycle reports: visits every ordered (i,j,k)
// with i != j, j != k (k == i covers the round trips) and hands the visitor
// the triple-overlap data in chart i.
struct TripleData {
  unsigned i, j, k;
  LocalizationPtr ctx;                      // chart i, x_j and x_k inverted
  std::vector<LeftFraction> into_chart_i;   // images of the chart-j generators
};

template <class Visit>
GeoReport check_triples(unsigned n, unsigned d, Visit visit) {
  GeoReport rep{true, ""};
  std::ostringstream detail;
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = 0; j <= n; ++j) {
      if (j == i) continue;
      for (unsigned k = 0; k <= n; ++k) {
        if (k == j) continue;
        std::vector<unsigned> ds = {j};
        if (k != i) ds.push_back(k);
        TripleData t{i, j, k, chart_localization(n, d, i, ds), {}};
        for (const ChartElement& e : projective_transition(n, d, i, j, t.ctx))
          t.into_chart_i.push_back(e.value);
        visit(t, rep, detail);
      }
    }
  rep.detail = detail.str();
  return rep;
}

std::string coordinate_name(unsigned a, unsigned k) {
  return "x" + std::to_string(a) + "^(" + std::to_string(k) + ")";
}

}  // namespace

GeoReport cocycle_check(unsigned n, unsigned d) {
  return check_triples(n, d, [n, d](const TripleData& t, GeoReport& rep,
                                    std::ostringstream& detail) {
    auto ctx_j = chart_localization(n, d, t.j, {t.k});
    auto through_j = projective_transition(n, d, t.j, t.k, ctx_j);
    auto direct = projective_transition(n, d, t.i, t.k, t.ctx);
    unsigned pos = 0;
    for (unsigned a = 0; a <= n; ++a) {
      if (a == t.k) continue;
      LeftFraction composed =
          evaluate_fraction(through_j[pos].value, t.into_chart_i, t.ctx);
      detail << "triple (" << t.i << "," << t.j << "," << t.k
             << ") coordinate " << coordinate_name(a, t.k);
      if (composed == direct[pos].value) {
        detail << ": ok\n";
      } else {
        rep.pass = false;
        detail << ": residual "
               << (composed - direct[pos].value).to_string() << "\n";
      }
      ++pos;
    }
  });
}

GeoReport line_bundle_cocycle(unsigned n, unsigned d) {
  return check_triples(n, d, [n, d](const TripleData& t, GeoReport& rep,
                                    std::ostringstream& detail) {
    LeftFraction phi_ij =
        invert(chart_generator(t.ctx, chart_slot(n, t.i, t.j)));
    LeftFraction phi_ik =
        t.k == t.i ? LeftFraction::one(t.ctx)
                   : invert(chart_generator(t.ctx, chart_slot(n, t.i, t.k)));
    auto ctx_j = chart_localization(n, d, t.j, {t.k});
    LeftFraction phi_jk =
        t.k == t.j
            ? LeftFraction::one(ctx_j)
            : invert(chart_generator(ctx_j, chart_slot(n, t.j, t.k)));
    LeftFraction mapped = evaluate_fraction(phi_jk, t.into_chart_i, t.ctx);
    detail << "triple (" << t.i << "," << t.j << "," << t.k << ")";
    if (phi_ij * mapped == phi_ik) {
      detail << ": ok\n";
    } else {
      rep.pass = false;
      detail << ": residual " << (phi_ij * mapped - phi_ik).to_string()
             << "\n";
    }
  });
}

uint64_t poisson_envelope_dims(unsigned n, unsigned d, unsigned m) {
  return graded_count(n, d, m);
}

}  // namespace ncalg
