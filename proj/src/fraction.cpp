#include "ncalg/fraction.hpp"

#include <cassert>
#include <cstdlib>
#include <sstream>

namespace ncalg {

namespace {

void check_element(const LocalizationContext& ctx, const NormalForm& a) {
  if (a.n() != ctx.n || a.d() != ctx.d)
    throw Error("localization context mismatch");
}

bool same_context(const LocalizationPtr& a, const LocalizationPtr& b) {
  if (a.get() == b.get()) return true;
  return a->n == b->n && a->d == b->d && a->g == b->g && a->lift == b->lift;
}

NormalForm nf_pow(const NormalForm& s, unsigned e) {
  NormalForm r = NormalForm::one(s.n(), s.d());
  for (unsigned i = 0; i < e; ++i) r = r * s;
  return r;
}

NormalForm bracket_with(const NormalForm& s, const NormalForm& a) {
  return s * a - a * s;
}

}  // namespace

LocalizationPtr make_localization(unsigned n, unsigned d, MultiPoly g) {
  NormalForm lift(n, d);
  lift.add_term({}, g);
  return make_localization(n, d, std::move(g), std::move(lift));
}

LocalizationPtr make_localization(unsigned n, unsigned d, MultiPoly g,
                                  NormalForm lift) {
  if (g.arity() != n) throw ArityMismatch("denominator arity mismatch");
  if (g.is_zero()) throw Error("denominator polynomial is zero");
  check_element({n, d, g, lift}, lift);
  if (lift.abelianize() != g)
    throw Error("lift does not abelianize to the denominator");
  auto ctx = std::make_shared<LocalizationContext>();
  ctx->n = n;
  ctx->d = d;
  ctx->g = std::move(g);
  ctx->lift = std::move(lift);
  return ctx;
}

std::optional<NormalForm> left_divide(const NormalForm& s,
                                      const NormalForm& u) {
  if (s.n() != u.n() || s.d() != u.d())
    throw Error("localization context mismatch");
  NormalForm q(u.n(), u.d());
  if (u.is_zero()) return q;
  MultiPoly top = s.abelianize();
  if (top.is_zero()) return std::nullopt;
  NormalForm r = u;
  for (unsigned o = 0; o <= u.d(); ++o) {
    NormalForm layer = r.gr_project(o);
    if (layer.is_zero()) continue;
    NormalForm qo(u.n(), u.d());
    for (const auto& [em, c] : layer.terms()) {
      try {
        qo.add_term(em, c.exact_div(top));
      } catch (const InexactDivision&) {
        return std::nullopt;
      }
    }
    q = q + qo;
    r = r - s * qo;
  }
  assert(r.is_zero());
  return q;
}

LeftFraction::LeftFraction(LocalizationPtr ctx, unsigned k,
                           NormalForm numerator)
    : ctx_(std::move(ctx)), k_(k), num_(std::move(numerator)) {
  check_element(*ctx_, num_);
  if (num_.is_zero()) {
    k_ = 0;
    return;
  }
  while (k_ > 0) {
    auto q = left_divide(ctx_->lift, num_);
    if (!q) break;
    num_ = std::move(*q);
    --k_;
  }
}

LeftFraction LeftFraction::zero(const LocalizationPtr& ctx) {
  return {ctx, 0, NormalForm::zero(ctx->n, ctx->d)};
}

LeftFraction LeftFraction::one(const LocalizationPtr& ctx) {
  return {ctx, 0, NormalForm::one(ctx->n, ctx->d)};
}

LeftFraction LeftFraction::from_polynomial(const LocalizationPtr& ctx,
                                           const NormalForm& a) {
  return {ctx, 0, a};
}

LeftFraction LeftFraction::operator+(const LeftFraction& o) const {
  if (!same_context(ctx_, o.ctx_))
    throw Error("localization context mismatch");
  unsigned k = std::max(k_, o.k_);
  NormalForm num = nf_pow(ctx_->lift, k - k_) * num_ +
                   nf_pow(ctx_->lift, k - o.k_) * o.num_;
  return {ctx_, k, std::move(num)};
}

LeftFraction LeftFraction::operator-() const {
  return {ctx_, k_, num_.scaled(Rational(-1))};
}

LeftFraction LeftFraction::scaled(const Rational& c) const {
  if (c == 0) return zero(ctx_);
  return {ctx_, k_, num_.scaled(c)};
}

LeftFraction fraction_pow(const LeftFraction& f, unsigned k) {
  LeftFraction r = LeftFraction::one(f.context());
  for (unsigned t = 0; t < k; ++t) r = r * f;
  return r;
}

LeftFraction LeftFraction::operator-(const LeftFraction& o) const {
  return *this + (-o);
}

LeftFraction LeftFraction::operator*(const LeftFraction& o) const {
  if (!same_context(ctx_, o.ctx_))
    throw Error("localization context mismatch");
  if (o.k_ == 0) return {ctx_, k_, num_ * o.num_};
  // num * s^-k' = sum_i C(k'-1+i, i) s^-(k'+i) ad(s)^i(num), so the product
  // sits over the common exponent k + k' + d.  The right factor distributes
  // out of the sum, so only one large product is needed.
  const unsigned d = ctx_->d;
  const NormalForm& s = ctx_->lift;
  NormalForm left(ctx_->n, d);
  NormalForm cur = num_;
  for (unsigned i = 0; i <= d; ++i) {
    if (i > 0) {
      cur = bracket_with(s, cur);
      if (cur.is_zero()) break;
    }
    Rational c(binomial(o.k_ - 1 + i, i));
    left = left + (nf_pow(s, d - i) * cur).scaled(c);
  }
  return {ctx_, k_ + o.k_ + d, left * o.num_};
}

bool LeftFraction::operator==(const LeftFraction& o) const {
  if (!same_context(ctx_, o.ctx_))
    throw Error("localization context mismatch");
  return k_ == o.k_ && num_ == o.num_;
}

RatFunc LeftFraction::abelianize() const {
  return RatFunc(num_.abelianize(), ctx_->g.pow(k_));
}

std::string LeftFraction::to_string() const {
  if (k_ == 0) return num_.to_string();
  std::ostringstream out;
  const auto& terms = ctx_->g.terms();
  bool atomic = terms.size() == 1 && terms.begin()->second == 1 &&
                total_degree(terms.begin()->first) == 1;
  if (atomic)
    out << ctx_->g.to_string();
  else
    out << "(" << ctx_->g.to_string() << ")";
  out << "^-" << k_ << " * ( " << num_.to_string() << " )";
  return out.str();
}

LeftFraction normalize_right_division(const NormalForm& a,
                                      const LocalizationPtr& ctx) {
  check_element(*ctx, a);
  const unsigned d = ctx->d;
  const NormalForm& s = ctx->lift;
  NormalForm acc(ctx->n, d);
  NormalForm cur = a;
  for (unsigned i = 0; i <= d; ++i) {
    if (i > 0) {
      cur = bracket_with(s, cur);
      if (cur.is_zero()) break;
    }
    acc = acc + nf_pow(s, d - i) * cur;
  }
  return {ctx, d + 1, std::move(acc)};
}

std::optional<std::pair<MultiPoly, unsigned>> invertibility_certificate(
    const MultiPoly& r, const MultiPoly& g, unsigned bound) {
  if (r.is_zero()) return std::nullopt;
  if (bound == 0) {
    if (const char* env = std::getenv("NCALG_CERT_BOUND")) {
      int v = std::atoi(env);
      if (v > 0) bound = unsigned(v);
    }
    if (bound == 0) bound = std::max<unsigned>(1, r.degree());
  }
  MultiPoly gm = MultiPoly::constant(g.arity(), 1);
  for (unsigned m = 0; m <= bound; ++m) {
    if (m > 0) gm = gm * g;
    try {
      return {{gm.exact_div(r), m}};
    } catch (const InexactDivision&) {
    }
  }
  return std::nullopt;
}

LeftFraction invert(const LeftFraction& a) {
  const LocalizationPtr& ctx = a.context();
  MultiPoly rbar = a.numerator().abelianize();
  auto cert = invertibility_certificate(rbar, ctx->g);
  if (!cert) throw NotInvertible("abelianization not invertible on D_g");
  const auto& [p, m] = *cert;

  NormalForm seed(ctx->n, ctx->d);
  seed.add_term({}, p * ctx->g.pow(a.denominator_exponent()));
  LeftFraction b(ctx, m, std::move(seed));

  LeftFraction one = LeftFraction::one(ctx);
  LeftFraction u = one - a * b;
  LeftFraction acc = one;
  for (unsigned j = 0; j < ctx->d; ++j) acc = one + u * acc;
  return b * acc;
}

FractionMatrix matrix_identity(const LocalizationPtr& ctx, size_t size) {
  FractionMatrix m(size, std::vector<LeftFraction>(size,
                                                   LeftFraction::zero(ctx)));
  for (size_t i = 0; i < size; ++i) m[i][i] = LeftFraction::one(ctx);
  return m;
}

FractionMatrix matrix_add(const FractionMatrix& a, const FractionMatrix& b) {
  if (a.size() != b.size()) throw Error("matrix shape mismatch");
  FractionMatrix r = a;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw Error("matrix shape mismatch");
    for (size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j] + b[i][j];
  }
  return r;
}

FractionMatrix matrix_mul(const FractionMatrix& a, const FractionMatrix& b) {
  size_t rows = a.size(), inner = b.size();
  if (rows == 0 || inner == 0) throw Error("matrix shape mismatch");
  size_t cols = b[0].size();
  for (const auto& row : a)
    if (row.size() != inner) throw Error("matrix shape mismatch");
  for (const auto& row : b)
    if (row.size() != cols) throw Error("matrix shape mismatch");
  FractionMatrix r(rows, std::vector<LeftFraction>(
                             cols, LeftFraction::zero(a[0][0].context())));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j)
      for (size_t t = 0; t < inner; ++t)
        r[i][j] = r[i][j] + a[i][t] * b[t][j];
  return r;
}

bool matrix_equal(const FractionMatrix& a, const FractionMatrix& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b[i][j]) return false;
  }
  return true;
}

MultiPoly poly_det(const std::vector<std::vector<MultiPoly>>& p) {
  size_t size = p.size();
  if (size == 0) throw Error("matrix shape mismatch");
  for (const auto& row : p)
    if (row.size() != size) throw Error("matrix shape mismatch");
  if (size == 1) return p[0][0];
  const unsigned arity = p[0][0].arity();
  MultiPoly det(arity);
  for (size_t j = 0; j < size; ++j) {
    std::vector<std::vector<MultiPoly>> minor;
    for (size_t i = 1; i < size; ++i) {
      std::vector<MultiPoly> row;
      for (size_t t = 0; t < size; ++t)
        if (t != j) row.push_back(p[i][t]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = p[0][j] * poly_det(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

std::vector<std::vector<MultiPoly>> poly_adjugate(
    const std::vector<std::vector<MultiPoly>>& p) {
  size_t size = p.size();
  const unsigned arity = p[0][0].arity();
  std::vector<std::vector<MultiPoly>> adj(
      size, std::vector<MultiPoly>(size, MultiPoly(arity)));
  if (size == 1) {
    adj[0][0] = MultiPoly::constant(arity, 1);
    return adj;
  }
  for (size_t i = 0; i < size; ++i) {
    for (size_t j = 0; j < size; ++j) {
      std::vector<std::vector<MultiPoly>> minor;
      for (size_t r = 0; r < size; ++r) {
        if (r == j) continue;
        std::vector<MultiPoly> row;
        for (size_t c = 0; c < size; ++c)
          if (c != i) row.push_back(p[r][c]);
        minor.push_back(std::move(row));
      }
      MultiPoly m = poly_det(minor);
      adj[i][j] = ((i + j) % 2 == 0) ? m : m.scaled(Rational(-1));
    }
  }
  return adj;
}

FractionMatrix matrix_invert(const FractionMatrix& m) {
  size_t size = m.size();
  if (size == 0) throw Error("matrix shape mismatch");
  for (const auto& row : m)
    if (row.size() != size) throw Error("matrix shape mismatch");
  const LocalizationPtr& ctx = m[0][0].context();
  const unsigned d = ctx->d;

  unsigned kmax = 0;
  for (const auto& row : m)
    for (const auto& e : row)
      kmax = std::max(kmax, e.denominator_exponent());
  std::vector<std::vector<MultiPoly>> p(
      size, std::vector<MultiPoly>(size, MultiPoly(ctx->n)));
  for (size_t i = 0; i < size; ++i)
    for (size_t j = 0; j < size; ++j)
      p[i][j] = m[i][j].numerator().abelianize() *
                ctx->g.pow(kmax - m[i][j].denominator_exponent());

  MultiPoly det = poly_det(p);
  if (det.is_zero()) throw NotInvertible("singular abelianization");
  auto cert = invertibility_certificate(det, ctx->g);
  if (!cert) throw NotInvertible("abelianization not invertible on D_g");
  const auto& [q, mm] = *cert;

  // g^-kmax P inverts to g^kmax adj(P) q / g^mm.
  auto adj = poly_adjugate(p);
  MultiPoly gk = ctx->g.pow(kmax);
  FractionMatrix b(size, std::vector<LeftFraction>(
                             size, LeftFraction::zero(ctx)));
  for (size_t i = 0; i < size; ++i) {
    for (size_t j = 0; j < size; ++j) {
      NormalForm num(ctx->n, d);
      num.add_term({}, adj[i][j] * q * gk);
      b[i][j] = LeftFraction(ctx, mm, std::move(num));
    }
  }

  // Newton corrections: with R = I - M X the update X += B R multiplies R by
  // I - M B on the left, raising its order each step, so d steps are exact.
  FractionMatrix identity = matrix_identity(ctx, size);
  FractionMatrix x = b;
  for (unsigned t = 0; t < d; ++t) {
    FractionMatrix mx = matrix_mul(m, x);
    FractionMatrix r = identity;
    bool settled = true;
    for (size_t i = 0; i < size; ++i) {
      for (size_t j = 0; j < size; ++j) {
        r[i][j] = identity[i][j] - mx[i][j];
        if (!r[i][j].numerator().is_zero()) settled = false;
      }
    }
    if (settled) break;
    x = matrix_add(x, matrix_mul(b, r));
  }
  return x;
}

RatNormalForm to_rational_normal_form(const LeftFraction& a) {
  const LocalizationPtr& ctx = a.context();
  const unsigned n = ctx->n, d = ctx->d;
  RatNormalForm s = to_rational(ctx->lift);
  RatNormalForm b0(n, d);
  b0.add_term({}, RatFunc(MultiPoly::constant(n, 1), ctx->g));

  RatNormalForm one = RatNormalForm::one(n, d);
  RatNormalForm u = one - dn_product(b0, s);
  RatNormalForm acc = one;
  for (unsigned j = 0; j < d; ++j) acc = one + dn_product(u, acc);
  RatNormalForm sinv = dn_product(acc, b0);

  RatNormalForm res = to_rational(a.numerator());
  for (unsigned i = 0; i < a.denominator_exponent(); ++i)
    res = dn_product(sinv, res);
  return res;
}

}  // namespace ncalg
