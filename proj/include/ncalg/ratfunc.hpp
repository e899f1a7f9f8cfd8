#pragma once

#include "ncalg/multipoly.hpp"

namespace ncalg {

// Rational function over Q in a fixed arity. Canonical form: numerator and
// denominator coprime, denominator monic under graded-lex (so zero is 0/1).
class RatFunc {
 public:
  RatFunc() : num_(0), den_(MultiPoly::constant(0, Rational(1))) {}
  explicit RatFunc(MultiPoly num);
  RatFunc(MultiPoly num, MultiPoly den);

  static RatFunc constant(unsigned arity, const Rational& c) {
    return RatFunc(MultiPoly::constant(arity, c));
  }
  static RatFunc variable(unsigned arity, unsigned index) {
    return RatFunc(MultiPoly::variable(arity, index));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  unsigned arity() const { return num_.arity(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  // Requires is_polynomial().
  const MultiPoly& as_polynomial() const;
  bool depends_on(unsigned var) const {
    return num_.depends_on(var) || den_.depends_on(var);
  }

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;  // throws NotInvertible on 0
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  bool operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  bool operator<(const RatFunc& o) const {
    if (num_ < o.num_) return true;
    if (o.num_ < num_) return false;
    return den_ < o.den_;
  }

  RatFunc scaled(const Rational& c) const;
  RatFunc pow(int k) const;
  RatFunc derivative(unsigned var) const;
  RatFunc substitute_var(unsigned src, unsigned dst) const;
  RatFunc remap(unsigned new_arity, const std::vector<unsigned>& map) const;

  // (f - f[src->dst]) / (x_src - x_dst), exact as a rational function.
  RatFunc difference_step(unsigned src, unsigned dst) const;

  std::string to_string() const;
  std::string to_string(const std::string& pfx) const;

 private:
  void reduce();
  // Assumes num and den already coprime; only restores the monic denominator.
  static RatFunc reduced(MultiPoly num, MultiPoly den);
  RatFunc add_impl(const RatFunc& o, bool negate) const;
  MultiPoly num_, den_;
};

}  // namespace ncalg
