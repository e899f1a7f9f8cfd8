#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncalg/rational.hpp"

namespace ncalg {

// Letters are 0-based indices of the generators x1..xn.
using Letter = uint8_t;
using Word = std::vector<Letter>;

// Element of the free associative algebra Q<x1..xn>: finite formal sum of
// words with nonzero rational coefficients.
class WordPoly {
 public:
  WordPoly() : n_(0) {}
  explicit WordPoly(unsigned n) : n_(n) {}

  static WordPoly one(unsigned n);
  static WordPoly letter(unsigned n, Letter l);
  static WordPoly word(unsigned n, const Word& w, const Rational& c = 1);

  unsigned n() const { return n_; }
  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t max_length() const;

  void add_term(const Word& w, const Rational& c);

  WordPoly operator-() const;
  WordPoly operator+(const WordPoly& o) const;
  WordPoly operator-(const WordPoly& o) const;
  WordPoly operator*(const WordPoly& o) const;
  WordPoly& operator+=(const WordPoly& o);
  WordPoly& operator-=(const WordPoly& o);
  bool operator==(const WordPoly& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }
  bool operator!=(const WordPoly& o) const { return !(*this == o); }

  WordPoly scaled(const Rational& c) const;
  WordPoly pow(unsigned k) const;

  std::string to_string() const;  // words render as products: "x2*x1*x1"

 private:
  unsigned n_;
  std::map<Word, Rational> terms_;
};

inline WordPoly mul_words(const WordPoly& a, const WordPoly& b) {
  return a * b;
}

// commutator(s, a) = s*a - a*s
WordPoly commutator(const WordPoly& s, const WordPoly& a);
// ad(s)^i (a)
WordPoly ad_power(const WordPoly& s, const WordPoly& a, unsigned i);

std::string word_to_string(const Word& w);

}  // namespace ncalg
