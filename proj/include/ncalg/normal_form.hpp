#pragma once

#include <optional>

#include "ncalg/lyndon.hpp"
#include "ncalg/multipoly.hpp"
#include "ncalg/ratfunc.hpp"

namespace ncalg {

// Bracket part of a PBW monomial: (basis id, multiplicity) pairs, sorted by
// id, ids of degree >= 2 only, multiplicities positive.
using ExpMap = std::vector<std::pair<uint32_t, uint32_t>>;

unsigned basis_degree(unsigned n, uint32_t id);
// ord(lambda) = sum over factors of multiplicity * (degree - 1).
uint64_t ord_of(unsigned n, const ExpMap& em);
// Total word degree of the bracket part.
uint64_t bracket_degree(unsigned n, const ExpMap& em);
std::string expmap_to_string(unsigned n, const ExpMap& em);

// Element of the truncated algebra Q<x1..xn>/F^{d+1} in PBW normal form:
// sum over lambda of coeff_lambda(x) * M_lambda, where M_lambda multiplies
// bracket basis elements in id order and coeff_lambda is a commutative
// coefficient (polynomial, or rational with denominators in a localization).
// Terms with ord(lambda) > d are never stored.
template <class C>
class NormalFormT {
 public:
  NormalFormT() : n_(0), d_(0) {}
  NormalFormT(unsigned n, unsigned d) : n_(n), d_(d) {}

  static NormalFormT zero(unsigned n, unsigned d) { return {n, d}; }
  static NormalFormT one(unsigned n, unsigned d);
  static NormalFormT scalar(unsigned n, unsigned d, const C& f);
  static NormalFormT generator(unsigned n, unsigned d, unsigned index);
  static NormalFormT from_basis(unsigned n, unsigned d, uint32_t id);

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  const std::map<ExpMap, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const ExpMap& em, const C& coeff);
  const C* coeff(const ExpMap& em) const;

  NormalFormT operator-() const;
  NormalFormT operator+(const NormalFormT& o) const;
  NormalFormT operator-(const NormalFormT& o) const;
  NormalFormT& operator+=(const NormalFormT& o);
  NormalFormT& operator-=(const NormalFormT& o);
  bool operator==(const NormalFormT& o) const {
    return n_ == o.n_ && d_ == o.d_ && terms_ == o.terms_;
  }
  bool operator!=(const NormalFormT& o) const { return !(*this == o); }

  NormalFormT scaled(const Rational& c) const;

  // Image in gr^0, the polynomial (or rational-function) algebra.
  C abelianize() const;
  // Terms with ord(lambda) == d0 exactly.
  NormalFormT gr_project(uint64_t d0) const;
  // min ord(lambda) over the support; empty for zero.
  std::optional<uint64_t> nc_order() const;
  // Reinterpret at a different truncation degree, dropping excess terms.
  NormalFormT truncated(unsigned new_d) const;

  std::string to_string() const;

 private:
  void check_compatible(const NormalFormT& o) const;
  unsigned n_, d_;
  std::map<ExpMap, C> terms_;
};

using NormalForm = NormalFormT<MultiPoly>;
using RatNormalForm = NormalFormT<RatFunc>;

// PBW product by straightening mixed factor sequences; NC-order pruning
// keeps everything inside the truncation.
NormalForm multiply(const NormalForm& a, const NormalForm& b);
inline NormalForm operator*(const NormalForm& a, const NormalForm& b) {
  return multiply(a, b);
}

// Rewrites every word into PBW normal form, discarding NC-order > d:
// adjacent out-of-order factors u*v with u > v become v*u + [u,v].
NormalForm straighten(const WordPoly& w, unsigned d);

// A sequence of basis-element factors, leftmost first.
using Seq = std::vector<uint32_t>;
NormalForm straighten_sequences(std::map<Seq, Rational>&& pending, unsigned n,
                                unsigned d);

WordPoly expand_to_words(const NormalForm& a);

// Coefficient-type bridges; to_polynomial throws Error on a true denominator.
RatNormalForm to_rational(const NormalForm& a);
NormalForm to_polynomial(const RatNormalForm& a);

// min over the support of straighten(w, total degree of w); empty for 0.
std::optional<uint64_t> nc_order(const WordPoly& w);

// Coefficient of M_nu in the product scalar_lambda(f)*M_lambda times
// scalar_mu(g)*M_mu; the structure operators are never materialized.
MultiPoly structure_eval(unsigned n, unsigned d, const ExpMap& lambda,
                         const ExpMap& mu, const ExpMap& nu, const MultiPoly& f,
                         const MultiPoly& g);

// dim Q^d(V) for dim V = n: multisets of bracket factors with ord = d.
uint64_t q_dimension(unsigned n, unsigned d);
// Number of PBW monomials with ord(lambda) = d and total word degree m:
// the dimension of the degree-m slice of gr^d.
uint64_t graded_count(unsigned n, unsigned d, unsigned m);

}  // namespace ncalg
