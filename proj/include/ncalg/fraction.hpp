#pragma once

#include <memory>

#include "ncalg/symbol.hpp"

namespace ncalg {

// Localization of the truncated algebra at the powers of one polynomial g.
// Denominators are powers of the ordered lift [[g]]; the lift defaults to
// the plain coefficient term and must abelianize back to g.
struct LocalizationContext {
  unsigned n;
  unsigned d;
  MultiPoly g;
  NormalForm lift;
};

using LocalizationPtr = std::shared_ptr<const LocalizationContext>;

LocalizationPtr make_localization(unsigned n, unsigned d, MultiPoly g);
LocalizationPtr make_localization(unsigned n, unsigned d, MultiPoly g,
                                  NormalForm lift);

// Exact left division: the q with u = s*q, empty if no such q exists.
// Solved one NC-order layer at a time; the top coefficient of each layer
// must divide exactly.
std::optional<NormalForm> left_divide(const NormalForm& s,
                                      const NormalForm& u);

// Element [[g]]^-k * numerator of the localized algebra. Canonical form
// has the smallest k: the numerator keeps no left [[g]] factor, and the
// zero fraction sits at k = 0. Equality is structural on canonical forms.
class LeftFraction {
 public:
  LeftFraction(LocalizationPtr ctx, unsigned k, NormalForm numerator);

  static LeftFraction zero(const LocalizationPtr& ctx);
  static LeftFraction one(const LocalizationPtr& ctx);
  // Plain algebra element as a fraction with k = 0.
  static LeftFraction from_polynomial(const LocalizationPtr& ctx,
                                      const NormalForm& a);

  const LocalizationPtr& context() const { return ctx_; }
  unsigned denominator_exponent() const { return k_; }
  const NormalForm& numerator() const { return num_; }
  bool is_zero() const { return num_.is_zero(); }

  LeftFraction operator+(const LeftFraction& o) const;
  LeftFraction operator-(const LeftFraction& o) const;
  LeftFraction operator-() const;
  LeftFraction operator*(const LeftFraction& o) const;
  LeftFraction scaled(const Rational& c) const;
  bool operator==(const LeftFraction& o) const;
  bool operator!=(const LeftFraction& o) const { return !(*this == o); }

  // Abelianization as a reduced commutative fraction numerator / g^k.
  RatFunc abelianize() const;

  std::string to_string() const;

 private:
  LocalizationPtr ctx_;
  unsigned k_ = 0;
  NormalForm num_;
};

LeftFraction fraction_pow(const LeftFraction& f, unsigned k);

// a * [[g]]^-1 as a left fraction: exponent d+1 with numerator
// sum over i <= d of [[g]]^(d-i) * ad([[g]])^i(a), then canonicalized.
LeftFraction normalize_right_division(const NormalForm& a,
                                      const LocalizationPtr& ctx);

// Certificate (p, m) with r*p = g^m, searched by exact division for
// m = 0..bound. bound 0 means automatic: max(1, deg r) suffices whenever a
// certificate exists at all, and NCALG_CERT_BOUND overrides it.
std::optional<std::pair<MultiPoly, unsigned>> invertibility_certificate(
    const MultiPoly& r, const MultiPoly& g, unsigned bound = 0);

// Two-sided inverse via the geometric series: seed B with the commutative
// inverse certificate, then invert 1 - (a*B - 1) ... 1 - U with U nilpotent.
// Throws NotInvertible without a certificate for the abelianization.
LeftFraction invert(const LeftFraction& a);

using FractionMatrix = std::vector<std::vector<LeftFraction>>;

FractionMatrix matrix_identity(const LocalizationPtr& ctx, size_t size);
FractionMatrix matrix_add(const FractionMatrix& a, const FractionMatrix& b);
FractionMatrix matrix_mul(const FractionMatrix& a, const FractionMatrix& b);
bool matrix_equal(const FractionMatrix& a, const FractionMatrix& b);

// Two-sided matrix inverse: seed from the adjugate of the abelianized
// matrix over C[x][1/g], then the matrix geometric series. Throws
// NotInvertible when the abelianized determinant is singular or admits no
// certificate.
FractionMatrix matrix_invert(const FractionMatrix& m);

// Determinant and adjugate of a commutative polynomial matrix.
MultiPoly poly_det(const std::vector<std::vector<MultiPoly>>& p);
std::vector<std::vector<MultiPoly>> poly_adjugate(
    const std::vector<std::vector<MultiPoly>>& p);

// Rational normal form of [[g]]^-k * numerator: the dn-algebra inverse of
// [[g]] (seeded by [[1/g]]) applied k times to the numerator.
RatNormalForm to_rational_normal_form(const LeftFraction& a);

}  // namespace ncalg
