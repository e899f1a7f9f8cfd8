#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ncalg/rational.hpp"

namespace ncalg {

// Exponent vector; size equals the arity of the owning polynomial.
using ExpVec = std::vector<uint32_t>;

inline uint64_t total_degree(const ExpVec& e) {
  uint64_t s = 0;
  for (auto x : e) s += x;
  return s;
}

// Graded lexicographic order. Ties are broken with the x1 exponent most
// significant; canonical printing walks the map in descending order.
struct GradedLexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    uint64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

// Exact multivariate polynomial over Q with a fixed arity.
// Zero is the empty term map; stored coefficients are never zero.
class MultiPoly {
 public:
  using TermMap = std::map<ExpVec, Rational, GradedLexLess>;

  MultiPoly() : arity_(0) {}
  explicit MultiPoly(unsigned arity) : arity_(arity) {}

  static MultiPoly constant(unsigned arity, const Rational& c);
  static MultiPoly variable(unsigned arity, unsigned index);  // 0-based
  static MultiPoly monomial(unsigned arity, const ExpVec& e, const Rational& c);

  unsigned arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Zero polynomial reports constant_value 0.
  Rational constant_value() const;
  uint64_t degree() const;  // total degree; 0 for the zero polynomial
  uint64_t degree_in(unsigned var) const;
  bool depends_on(unsigned var) const;

  // Leading term under graded-lex (largest). Requires nonzero.
  const ExpVec& lead_exponent() const;
  const Rational& lead_coeff() const;

  void add_term(const ExpVec& e, const Rational& c);

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  bool operator==(const MultiPoly& o) const {
    return arity_ == o.arity_ && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }
  bool operator<(const MultiPoly& o) const;  // arbitrary total order for keys

  MultiPoly scaled(const Rational& c) const;
  MultiPoly pow(unsigned k) const;
  MultiPoly derivative(unsigned var) const;

  // Substitute x[src] -> x[dst] (both within arity).
  MultiPoly substitute_var(unsigned src, unsigned dst) const;
  // Relabel variables: new exponent of map[i] is the old exponent of i.
  // map.size() == arity(); every old variable must land inside new_arity.
  MultiPoly remap(unsigned new_arity, const std::vector<unsigned>& map) const;
  // Evaluate one variable at a rational point, keeping the arity.
  MultiPoly eval_var(unsigned var, const Rational& value) const;

  // Throws InexactDivision unless o divides exactly.
  MultiPoly exact_div(const MultiPoly& o) const;

  // (f - f[src->dst]) / (x_src - x_dst); exact for polynomials.
  MultiPoly difference_step(unsigned src, unsigned dst) const;

  // Minimum over monomials of sum(exp[i] * weight[i]); 0 for the zero poly.
  uint64_t min_weighted_degree(const std::vector<uint32_t>& weights) const;
  // Drop monomials whose weighted degree exceeds bound.
  MultiPoly truncate_weighted(const std::vector<uint32_t>& weights,
                              uint64_t bound) const;

  std::string to_string() const;                       // variables x1..xn
  std::string to_string(const std::string& pfx) const; // custom variable prefix

 private:
  void check_arity(const MultiPoly& o) const;
  unsigned arity_;
  TermMap terms_;
};

// gcd over Q[x1..xn]: primitive with integer coefficients and positive
// leading coefficient; gcd(0,0) = 0.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Content of the rational-coefficient polynomial as a positive rational c
// such that p/c has coprime integer coefficients.
Rational poly_content(const MultiPoly& p);

}  // namespace ncalg
