#include "ncalg/word.hpp"

#include <sstream>

namespace ncalg {

WordPoly WordPoly::one(unsigned n) {
  WordPoly p(n);
  p.add_term({}, Rational(1));
  return p;
}

WordPoly WordPoly::letter(unsigned n, Letter l) {
  if (l >= n) throw ArityMismatch("letter out of range");
  WordPoly p(n);
  p.add_term({l}, Rational(1));
  return p;
}

WordPoly WordPoly::word(unsigned n, const Word& w, const Rational& c) {
  WordPoly p(n);
  for (Letter l : w)
    if (l >= n) throw ArityMismatch("letter out of range");
  p.add_term(w, c);
  return p;
}

size_t WordPoly::max_length() const {
  size_t m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.size());
  return m;
}

void WordPoly::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

WordPoly WordPoly::operator-() const {
  WordPoly r(n_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

WordPoly WordPoly::operator+(const WordPoly& o) const {
  WordPoly r = *this;
  r += o;
  return r;
}

WordPoly WordPoly::operator-(const WordPoly& o) const {
  WordPoly r = *this;
  r -= o;
  return r;
}

WordPoly& WordPoly::operator+=(const WordPoly& o) {
  if (n_ != o.n_) throw ArityMismatch("word algebra arity mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

WordPoly& WordPoly::operator-=(const WordPoly& o) {
  if (n_ != o.n_) throw ArityMismatch("word algebra arity mismatch");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

WordPoly WordPoly::operator*(const WordPoly& o) const {
  if (n_ != o.n_) throw ArityMismatch("word algebra arity mismatch");
  WordPoly r(n_);
  for (const auto& [wa, ca] : terms_)
    for (const auto& [wb, cb] : o.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_term(w, ca * cb);
    }
  return r;
}

WordPoly WordPoly::scaled(const Rational& c) const {
  WordPoly r(n_);
  if (c == 0) return r;
  for (const auto& [w, k] : terms_) r.terms_.emplace(w, k * c);
  return r;
}

WordPoly WordPoly::pow(unsigned k) const {
  WordPoly r = one(n_);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::string WordPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (w.empty()) {
      out << rat_to_string(a);
      continue;
    }
    if (a != 1) out << rat_to_string(a) << "*";
    out << word_to_string(w);
  }
  return out.str();
}

std::string word_to_string(const Word& w) {
  std::ostringstream out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out << "*";
    out << "x" << unsigned(w[i]) + 1;
  }
  return out.str();
}

WordPoly commutator(const WordPoly& s, const WordPoly& a) {
  return s * a - a * s;
}

WordPoly ad_power(const WordPoly& s, const WordPoly& a, unsigned i) {
  WordPoly r = a;
  for (unsigned k = 0; k < i; ++k) r = commutator(s, r);
  return r;
}

}  // namespace ncalg
