#include "ncalg/multipoly.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <sstream>

namespace ncalg {

MultiPoly MultiPoly::constant(unsigned arity, const Rational& c) {
  MultiPoly p(arity);
  p.add_term(ExpVec(arity, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(unsigned arity, unsigned index) {
  if (index >= arity) throw ArityMismatch("variable index out of range");
  MultiPoly p(arity);
  ExpVec e(arity, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

MultiPoly MultiPoly::monomial(unsigned arity, const ExpVec& e,
                              const Rational& c) {
  if (e.size() != arity) throw ArityMismatch("exponent size != arity");
  MultiPoly p(arity);
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw Error("constant_value of non-constant polynomial");
  return terms_.begin()->second;
}

uint64_t MultiPoly::degree() const {
  return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
}

uint64_t MultiPoly::degree_in(unsigned var) const {
  uint64_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max<uint64_t>(d, e[var]);
  return d;
}

bool MultiPoly::depends_on(unsigned var) const {
  for (const auto& [e, c] : terms_)
    if (e[var] != 0) return true;
  return false;
}

const ExpVec& MultiPoly::lead_exponent() const {
  if (terms_.empty()) throw Error("lead of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& MultiPoly::lead_coeff() const {
  if (terms_.empty()) throw Error("lead of zero polynomial");
  return terms_.rbegin()->second;
}

void MultiPoly::add_term(const ExpVec& e, const Rational& c) {
  if (c == 0) return;
  if (e.size() != arity_) throw ArityMismatch("exponent size != arity");
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_arity(const MultiPoly& o) const {
  if (arity_ != o.arity_) throw ArityMismatch("polynomial arity mismatch");
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  r -= o;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_arity(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_arity(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_arity(o);
  MultiPoly r(arity_);
  ExpVec e(arity_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (unsigned i = 0; i < arity_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

bool MultiPoly::operator<(const MultiPoly& o) const {
  if (arity_ != o.arity_) return arity_ < o.arity_;
  return std::lexicographical_compare(
      terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
      [](const auto& a, const auto& b) {
        GradedLexLess less;
        if (less(a.first, b.first)) return true;
        if (less(b.first, a.first)) return false;
        return a.second < b.second;
      });
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  MultiPoly r(arity_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r = constant(arity_, Rational(1));
  MultiPoly b = *this;
  while (k) {
    if (k & 1) r = r * b;
    b = (k >>= 1) ? b * b : b;
  }
  return r;
}

MultiPoly MultiPoly::derivative(unsigned var) const {
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    ExpVec d = e;
    d[var] -= 1;
    r.add_term(d, c * Rational(e[var]));
  }
  return r;
}

MultiPoly MultiPoly::substitute_var(unsigned src, unsigned dst) const {
  if (src == dst) return *this;
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) {
    ExpVec d = e;
    d[dst] += d[src];
    d[src] = 0;
    r.add_term(d, c);
  }
  return r;
}

MultiPoly MultiPoly::remap(unsigned new_arity,
                           const std::vector<unsigned>& map) const {
  if (map.size() != arity_) throw ArityMismatch("remap size != arity");
  MultiPoly r(new_arity);
  ExpVec d(new_arity);
  for (const auto& [e, c] : terms_) {
    std::fill(d.begin(), d.end(), 0u);
    for (unsigned i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      if (map[i] >= new_arity) throw ArityMismatch("remap target out of range");
      d[map[i]] += e[i];
    }
    r.add_term(d, c);
  }
  return r;
}

MultiPoly MultiPoly::eval_var(unsigned var, const Rational& value) const {
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) {
    Rational k = c;
    for (uint32_t i = 0; i < e[var]; ++i) k *= value;
    ExpVec d = e;
    d[var] = 0;
    r.add_term(d, k);
  }
  return r;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& o) const {
  check_arity(o);
  if (o.is_zero()) throw InexactDivision("division by zero polynomial");
  MultiPoly q(arity_);
  MultiPoly r = *this;
  const ExpVec& le = o.lead_exponent();
  const Rational& lc = o.lead_coeff();
  while (!r.is_zero()) {
    const ExpVec& re = r.lead_exponent();
    ExpVec qe(arity_);
    for (unsigned i = 0; i < arity_; ++i) {
      if (re[i] < le[i]) throw InexactDivision("polynomial division not exact");
      qe[i] = re[i] - le[i];
    }
    Rational qc = r.lead_coeff() / lc;
    MultiPoly t = monomial(arity_, qe, qc);
    q += t;
    r -= t * o;
  }
  return q;
}

MultiPoly MultiPoly::difference_step(unsigned src, unsigned dst) const {
  MultiPoly delta = *this - substitute_var(src, dst);
  MultiPoly denom = variable(arity_, src) - variable(arity_, dst);
  return delta.exact_div(denom);
}

uint64_t MultiPoly::min_weighted_degree(
    const std::vector<uint32_t>& weights) const {
  uint64_t best = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    uint64_t w = 0;
    for (unsigned i = 0; i < arity_; ++i) w += uint64_t(e[i]) * weights[i];
    if (first || w < best) best = w, first = false;
  }
  return best;
}

MultiPoly MultiPoly::truncate_weighted(const std::vector<uint32_t>& weights,
                                       uint64_t bound) const {
  MultiPoly r(arity_);
  for (const auto& [e, c] : terms_) {
    uint64_t w = 0;
    for (unsigned i = 0; i < arity_; ++i) w += uint64_t(e[i]) * weights[i];
    if (w <= bound) r.terms_.emplace(e, c);
  }
  return r;
}

std::string MultiPoly::to_string() const { return to_string("x"); }

std::string MultiPoly::to_string(const std::string& pfx) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
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
    bool has_vars = total_degree(e) > 0;
    if (!has_vars || a != 1) {
      out << rat_to_string(a);
      if (has_vars) out << "*";
    }
    bool sep = false;
    for (unsigned i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      if (sep) out << "*";
      sep = true;
      out << pfx << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

Rational poly_content(const MultiPoly& p) {
  if (p.is_zero()) return Rational(1);
  Int num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : p.terms()) {
    num_gcd = boost::multiprecision::gcd(num_gcd,
                                         boost::multiprecision::numerator(c));
    den_lcm = boost::multiprecision::lcm(den_lcm,
                                         boost::multiprecision::denominator(c));
  }
  Rational content(num_gcd, den_lcm);
  if (content < 0) content = -content;
  return content;
}

namespace {

// Collect p as a univariate polynomial in x[var]; index = degree in var,
// coefficients keep the full arity with exponent 0 in var.
std::vector<MultiPoly> collect(const MultiPoly& p, unsigned var) {
  std::vector<MultiPoly> out(p.degree_in(var) + 1, MultiPoly(p.arity()));
  for (const auto& [e, c] : p.terms()) {
    ExpVec d = e;
    uint32_t k = d[var];
    d[var] = 0;
    out[k].add_term(d, c);
  }
  return out;
}

// gcd of all coefficients of p viewed in x[var] (a polynomial in the
// remaining variables).
MultiPoly coeff_content(const MultiPoly& p, unsigned var) {
  MultiPoly g(p.arity());
  for (const auto& c : collect(p, var)) {
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

// Primes below 2^31 so modular products fit in uint64_t.
constexpr uint64_t kGcdPrimes[] = {2147483647ull, 2147483629ull,
                                   2147483587ull};

uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t p) { return a * b % p; }

uint64_t mod_pow(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  b %= p;
  for (; e; e >>= 1) {
    if (e & 1) r = mod_mul(r, b, p);
    b = mod_mul(b, b, p);
  }
  return r;
}

uint64_t mod_inv(uint64_t a, uint64_t p) { return mod_pow(a, p - 2, p); }

uint64_t int_mod(const Int& v, uint64_t p) {
  long long x = (v % Int(p)).convert_to<long long>();
  if (x < 0) x += (long long)p;
  return (uint64_t)x;
}

// Reduction mod p fails when the denominator vanishes there.
bool rational_mod(const Rational& c, uint64_t p, uint64_t* out) {
  uint64_t dn = int_mod(Int(boost::multiprecision::denominator(c)), p);
  if (dn == 0) return false;
  uint64_t nm = int_mod(Int(boost::multiprecision::numerator(c)), p);
  *out = mod_mul(nm, mod_inv(dn, p), p);
  return true;
}

unsigned uni_gcd_degree(std::vector<uint64_t> u, std::vector<uint64_t> v,
                        uint64_t p) {
  auto trim = [](std::vector<uint64_t>& w) {
    while (!w.empty() && w.back() == 0) w.pop_back();
  };
  trim(u);
  trim(v);
  while (!v.empty()) {
    uint64_t vinv = mod_inv(v.back(), p);
    while (u.size() >= v.size()) {
      uint64_t c = mod_mul(u.back(), vinv, p);
      size_t off = u.size() - v.size();
      for (size_t i = 0; i + 1 < v.size(); ++i)
        u[off + i] = (u[off + i] + p - mod_mul(c, v[i], p)) % p;
      u.pop_back();
      trim(u);
    }
    std::swap(u, v);
  }
  assert(!u.empty());
  return unsigned(u.size() - 1);
}

// Degree in x[var] of gcd(a mod phi, b mod phi) for a random evaluation phi
// of the other variables over F_p. When the leading coefficients survive phi
// this bounds deg_var(gcd(a, b)) from above; a degenerate phi yields nullopt.
std::optional<unsigned> image_gcd_degree(const MultiPoly& a,
                                         const MultiPoly& b, unsigned var,
                                         uint64_t p, uint64_t salt) {
  const unsigned arity = a.arity();
  uint64_t state = salt * 0x9e3779b97f4a7c15ull + p + var;
  auto next = [&state]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 11;
  };
  std::vector<uint64_t> pts(arity, 1);
  for (unsigned v = 0; v < arity; ++v)
    if (v != var) pts[v] = 1 + next() % (p - 1);

  auto project = [&](const MultiPoly& f) -> std::optional<std::vector<uint64_t>> {
    std::vector<uint64_t> u(f.degree_in(var) + 1, 0);
    for (const auto& [e, c] : f.terms()) {
      uint64_t val;
      if (!rational_mod(c, p, &val)) return std::nullopt;
      for (unsigned v = 0; v < arity; ++v)
        if (v != var && e[v]) val = mod_mul(val, mod_pow(pts[v], e[v], p), p);
      u[e[var]] = (u[e[var]] + val) % p;
    }
    if (u.back() == 0) return std::nullopt;
    return u;
  };
  auto ua = project(a), ub = project(b);
  if (!ua || !ub) return std::nullopt;
  return uni_gcd_degree(std::move(*ua), std::move(*ub), p);
}

// Certifies gcd(a, b) constant: for every shared variable some valid modular
// image has a coprime univariate gcd, which caps the true degree at zero.
bool gcd_is_constant(const MultiPoly& a, const MultiPoly& b) {
  for (unsigned v = 0; v < a.arity(); ++v) {
    if (a.degree_in(v) == 0 || b.degree_in(v) == 0) continue;
    bool cleared = false;
    for (unsigned trial = 0; trial < 3 && !cleared; ++trial) {
      auto deg = image_gcd_degree(a, b, v, kGcdPrimes[trial], trial + 1);
      cleared = deg && *deg == 0;
    }
    if (!cleared) return false;
  }
  return true;
}

// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b in variable var,
// padded to the exact leading-coefficient power the subresultant divisions
// rely on.
MultiPoly pseudo_rem(MultiPoly a, const MultiPoly& b, unsigned var) {
  const unsigned arity = a.arity();
  auto bc = collect(b, var);
  const uint64_t db = bc.size() - 1;
  const MultiPoly& blead = bc.back();
  uint64_t e = a.degree_in(var) - db + 1;
  while (true) {
    auto ac = collect(a, var);
    uint64_t da = ac.size() - 1;
    if (a.is_zero() || da < db) break;
    // a := blead * a - alead * x^(da-db) * b
    MultiPoly alead = ac.back();
    MultiPoly shift(arity);
    ExpVec ee(arity, 0);
    ee[var] = uint32_t(da - db);
    shift.add_term(ee, Rational(1));
    a = a * blead - b * shift * alead;
    --e;
  }
  for (; e > 0; --e) a = a * blead;
  return a;
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity() != b.arity()) throw ArityMismatch("gcd arity mismatch");
  const unsigned arity = a.arity();
  if (a.is_zero() && b.is_zero()) return MultiPoly(arity);
  auto normalize = [](MultiPoly p) {
    Rational c = poly_content(p);
    if (!p.is_zero() && p.lead_coeff() < 0) c = -c;
    if (c != 1) {
      MultiPoly r(p.arity());
      for (const auto& [e, k] : p.terms()) r.add_term(e, k / c);
      return r;
    }
    return p;
  };
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant())
    return MultiPoly::constant(arity, Rational(1));

  // Monomial operand: the gcd is the largest monomial dividing both.
  if (a.terms().size() == 1 || b.terms().size() == 1) {
    ExpVec e(arity, 0);
    bool first = true;
    for (const MultiPoly* p : {&a, &b}) {
      for (const auto& [te, c] : p->terms()) {
        for (unsigned v = 0; v < arity; ++v)
          e[v] = first ? te[v] : std::min(e[v], te[v]);
        first = false;
      }
    }
    return MultiPoly::monomial(arity, e, Rational(1));
  }

  // One operand dividing the other settles the gcd at once.
  auto divides = [arity](const MultiPoly& d, const MultiPoly& n) {
    if (d.degree() > n.degree()) return false;
    for (unsigned v = 0; v < arity; ++v)
      if (d.degree_in(v) > n.degree_in(v)) return false;
    try {
      n.exact_div(d);
      return true;
    } catch (const InexactDivision&) {
      return false;
    }
  };
  if (divides(b, a)) return normalize(b);
  if (divides(a, b)) return normalize(a);

  if (gcd_is_constant(a, b)) return MultiPoly::constant(arity, Rational(1));

  // Main variable: shared variable with the shortest possible chain.
  unsigned var = 0;
  uint64_t best = UINT64_MAX;
  for (unsigned i = 0; i < arity; ++i) {
    uint64_t da = a.degree_in(i), db = b.degree_in(i);
    if (da == 0 || db == 0) continue;
    if (std::min(da, db) < best) {
      best = std::min(da, db);
      var = i;
    }
  }
  assert(best != UINT64_MAX);

  MultiPoly ca = coeff_content(a, var), cb = coeff_content(b, var);
  MultiPoly cont = poly_gcd(ca, cb);
  MultiPoly pa = a.exact_div(ca), pb = b.exact_div(cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  // Subresultant PRS: the divisors are known exactly, so the chain needs no
  // content recursion until the final candidate.
  MultiPoly g = MultiPoly::constant(arity, Rational(1));
  MultiPoly h = g;
  while (true) {
    uint64_t delta = pa.degree_in(var) - pb.degree_in(var);
    MultiPoly r = pseudo_rem(pa, pb, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return normalize(std::move(cont));
    MultiPoly divisor = g * h.pow(unsigned(delta));
    pa = std::move(pb);
    pb = r.exact_div(divisor);
    g = collect(pa, var).back();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = g.pow(unsigned(delta)).exact_div(h.pow(unsigned(delta - 1)));
    }
  }
  MultiPoly pp = pb.exact_div(coeff_content(pb, var));
  return normalize(cont * pp);
}

}  // namespace ncalg
