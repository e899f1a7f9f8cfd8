#include "ncalg/ratfunc.hpp"

namespace ncalg {

RatFunc::RatFunc(MultiPoly num)
    : num_(std::move(num)),
      den_(MultiPoly::constant(num_.arity(), Rational(1))) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.arity() != den_.arity())
    throw ArityMismatch("rational function arity mismatch");
  if (den_.is_zero()) throw NotInvertible("zero denominator");
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.arity(), Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
  }
  Rational lc = den_.lead_coeff();
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
}

const MultiPoly& RatFunc::as_polynomial() const {
  if (!is_polynomial()) throw Error("rational function is not a polynomial");
  return num_;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::reduced(MultiPoly num, MultiPoly den) {
  RatFunc r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  if (r.num_.is_zero()) {
    r.den_ = MultiPoly::constant(r.num_.arity(), Rational(1));
    return r;
  }
  Rational lc = r.den_.lead_coeff();
  if (lc != 1) {
    r.num_ = r.num_.scaled(1 / lc);
    r.den_ = r.den_.scaled(1 / lc);
  }
  return r;
}

// Sum over the lcm of the denominators; with both operands in lowest terms
// only gcd(t, g) can cancel, so the full-size product gcd never runs.
RatFunc RatFunc::add_impl(const RatFunc& o, bool negate) const {
  const MultiPoly& n2 = o.num_;
  if (den_ == o.den_)
    return RatFunc(negate ? num_ - n2 : num_ + n2, den_);
  MultiPoly g = poly_gcd(den_, o.den_);
  if (g.is_constant()) {
    MultiPoly cross = n2 * den_;
    return reduced(negate ? num_ * o.den_ - cross : num_ * o.den_ + cross,
                   den_ * o.den_);
  }
  MultiPoly d1r = den_.exact_div(g), d2r = o.den_.exact_div(g);
  MultiPoly cross = n2 * d1r;
  MultiPoly t = negate ? num_ * d2r - cross : num_ * d2r + cross;
  if (t.is_zero()) return constant(arity(), Rational(0));
  MultiPoly h = poly_gcd(t, g);
  if (h.is_constant()) return reduced(std::move(t), d1r * o.den_);
  return reduced(t.exact_div(h), d1r * o.den_.exact_div(h));
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return add_impl(o, false);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return add_impl(o, true); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_polynomial() && o.is_polynomial()) {
    RatFunc r;
    r.num_ = num_ * o.num_;
    r.den_ = MultiPoly::constant(num_.arity(), Rational(1));
    Rational c = den_.constant_value() * o.den_.constant_value();
    if (c != 1) r.num_ = r.num_.scaled(1 / c);
    return r;
  }
  // Cross-reduction keeps the factors coprime, no product-size gcd.
  MultiPoly g1 = poly_gcd(num_, o.den_);
  MultiPoly g2 = poly_gcd(o.num_, den_);
  MultiPoly n = g1.is_constant() ? num_ : num_.exact_div(g1);
  MultiPoly d2 = g1.is_constant() ? o.den_ : o.den_.exact_div(g1);
  MultiPoly m = g2.is_constant() ? o.num_ : o.num_.exact_div(g2);
  MultiPoly d1 = g2.is_constant() ? den_ : den_.exact_div(g2);
  return reduced(n * m, d1 * d2);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw NotInvertible("division by zero rational function");
  return *this * reduced(o.den_, o.num_);
}

RatFunc RatFunc::scaled(const Rational& c) const {
  RatFunc r = *this;
  r.num_ = r.num_.scaled(c);
  if (c == 0) r.den_ = MultiPoly::constant(num_.arity(), Rational(1));
  return r;
}

RatFunc RatFunc::pow(int k) const {
  if (k < 0) return RatFunc(MultiPoly::constant(arity(), Rational(1))) / pow(-k);
  RatFunc r = constant(arity(), Rational(1));
  RatFunc b = *this;
  unsigned e = unsigned(k);
  while (e) {
    if (e & 1) r = r * b;
    b = (e >>= 1) ? b * b : b;
  }
  return r;
}

RatFunc RatFunc::derivative(unsigned var) const {
  if (is_polynomial()) {
    RatFunc r = *this;
    r.num_ = num_.derivative(var).scaled(1 / den_.constant_value());
    r.den_ = MultiPoly::constant(arity(), Rational(1));
    return r;
  }
  return RatFunc(num_.derivative(var) * den_ - num_ * den_.derivative(var),
                 den_ * den_);
}

RatFunc RatFunc::substitute_var(unsigned src, unsigned dst) const {
  return RatFunc(num_.substitute_var(src, dst), den_.substitute_var(src, dst));
}

RatFunc RatFunc::remap(unsigned new_arity,
                       const std::vector<unsigned>& map) const {
  return RatFunc(num_.remap(new_arity, map), den_.remap(new_arity, map));
}

RatFunc RatFunc::difference_step(unsigned src, unsigned dst) const {
  if (is_polynomial()) {
    RatFunc r;
    r.num_ = num_.difference_step(src, dst).scaled(1 / den_.constant_value());
    r.den_ = MultiPoly::constant(arity(), Rational(1));
    return r;
  }
  RatFunc shifted = substitute_var(src, dst);
  RatFunc denom(MultiPoly::variable(arity(), src) -
                MultiPoly::variable(arity(), dst));
  return (*this - shifted) / denom;
}

std::string RatFunc::to_string() const { return to_string("x"); }

std::string RatFunc::to_string(const std::string& pfx) const {
  if (is_polynomial()) {
    Rational c = den_.constant_value();
    if (c == 1) return num_.to_string(pfx);
    return num_.scaled(1 / c).to_string(pfx);
  }
  return "(" + num_.to_string(pfx) + ")/(" + den_.to_string(pfx) + ")";
}

}  // namespace ncalg
