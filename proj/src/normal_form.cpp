#include "ncalg/normal_form.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>

namespace ncalg {

unsigned basis_degree(unsigned n, uint32_t id) {
  if (id < n) return 1;
  auto basis = lie_basis(n, 2);
  while (id >= basis->size()) basis = lie_basis(n, basis->max_degree() + 1);
  return basis->degree(id);
}

uint64_t ord_of(unsigned n, const ExpMap& em) {
  uint64_t s = 0;
  for (const auto& [id, m] : em) s += uint64_t(m) * (basis_degree(n, id) - 1);
  return s;
}

uint64_t bracket_degree(unsigned n, const ExpMap& em) {
  uint64_t s = 0;
  for (const auto& [id, m] : em) s += uint64_t(m) * basis_degree(n, id);
  return s;
}

std::string expmap_to_string(unsigned n, const ExpMap& em) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [id, m] : em) {
    if (!first) out << "*";
    first = false;
    out << basis_render(n, id);
    if (m > 1) out << "^" << m;
  }
  return out.str();
}

template <class C>
NormalFormT<C> NormalFormT<C>::one(unsigned n, unsigned d) {
  return scalar(n, d, C::constant(n, Rational(1)));
}

template <class C>
NormalFormT<C> NormalFormT<C>::scalar(unsigned n, unsigned d, const C& f) {
  NormalFormT r(n, d);
  r.add_term({}, f);
  return r;
}

template <class C>
NormalFormT<C> NormalFormT<C>::generator(unsigned n, unsigned d,
                                         unsigned index) {
  return scalar(n, d, C::variable(n, index));
}

template <class C>
NormalFormT<C> NormalFormT<C>::from_basis(unsigned n, unsigned d, uint32_t id) {
  NormalFormT r(n, d);
  if (id < n) return generator(n, d, id);
  r.add_term({{id, 1}}, C::constant(n, Rational(1)));
  return r;
}

template <class C>
void NormalFormT<C>::add_term(const ExpMap& em, const C& coeff) {
  if (coeff.is_zero()) return;
  if (ord_of(n_, em) > d_) return;
  auto [it, fresh] = terms_.emplace(em, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

template <class C>
const C* NormalFormT<C>::coeff(const ExpMap& em) const {
  auto it = terms_.find(em);
  return it == terms_.end() ? nullptr : &it->second;
}

template <class C>
void NormalFormT<C>::check_compatible(const NormalFormT& o) const {
  if (n_ != o.n_) throw ArityMismatch("normal form arity mismatch");
  if (d_ != o.d_)
    throw ArityMismatch("normal forms have different truncation degrees");
}

template <class C>
NormalFormT<C> NormalFormT<C>::operator-() const {
  NormalFormT r(n_, d_);
  for (const auto& [em, c] : terms_) r.terms_.emplace(em, -c);
  return r;
}

template <class C>
NormalFormT<C> NormalFormT<C>::operator+(const NormalFormT& o) const {
  NormalFormT r = *this;
  r += o;
  return r;
}

template <class C>
NormalFormT<C> NormalFormT<C>::operator-(const NormalFormT& o) const {
  NormalFormT r = *this;
  r -= o;
  return r;
}

template <class C>
NormalFormT<C>& NormalFormT<C>::operator+=(const NormalFormT& o) {
  check_compatible(o);
  for (const auto& [em, c] : o.terms_) add_term(em, c);
  return *this;
}

template <class C>
NormalFormT<C>& NormalFormT<C>::operator-=(const NormalFormT& o) {
  check_compatible(o);
  for (const auto& [em, c] : o.terms_) add_term(em, -c);
  return *this;
}

template <class C>
NormalFormT<C> NormalFormT<C>::scaled(const Rational& c) const {
  NormalFormT r(n_, d_);
  if (c == 0) return r;
  for (const auto& [em, k] : terms_) r.terms_.emplace(em, k.scaled(c));
  return r;
}

template <class C>
C NormalFormT<C>::abelianize() const {
  const C* c = coeff({});
  return c ? *c : C(MultiPoly(n_));
}

template <class C>
NormalFormT<C> NormalFormT<C>::gr_project(uint64_t d0) const {
  NormalFormT r(n_, d_);
  for (const auto& [em, c] : terms_)
    if (ord_of(n_, em) == d0) r.terms_.emplace(em, c);
  return r;
}

template <class C>
std::optional<uint64_t> NormalFormT<C>::nc_order() const {
  std::optional<uint64_t> best;
  for (const auto& [em, c] : terms_) {
    uint64_t o = ord_of(n_, em);
    if (!best || o < *best) best = o;
  }
  return best;
}

template <class C>
NormalFormT<C> NormalFormT<C>::truncated(unsigned new_d) const {
  NormalFormT r(n_, new_d);
  for (const auto& [em, c] : terms_)
    if (ord_of(n_, em) <= new_d) r.terms_.emplace(em, c);
  return r;
}

template <class C>
std::string NormalFormT<C>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [em, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")";
    if (!em.empty()) out << "*" << expmap_to_string(n_, em);
  }
  return out.str();
}

template class NormalFormT<MultiPoly>;
template class NormalFormT<RatFunc>;

namespace {

uint64_t seq_ord(unsigned n, const Seq& s,
                 const std::shared_ptr<const LieBasis>& basis) {
  uint64_t o = 0;
  for (uint32_t id : s) o += (id < n ? 1 : (*basis)[id].degree) - 1;
  return o;
}

#ifndef NDEBUG
uint64_t seq_inversions(const Seq& s) {
  uint64_t inv = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) ++inv;
  return inv;
}
#endif

void emit_sorted(NormalForm& out, unsigned n, Seq seq, const Rational& c) {
  std::sort(seq.begin(), seq.end());
  ExpVec mono(n, 0);
  ExpMap em;
  for (uint32_t id : seq) {
    if (id < n) {
      mono[id] += 1;
    } else if (!em.empty() && em.back().first == id) {
      em.back().second += 1;
    } else {
      em.emplace_back(id, 1);
    }
  }
  out.add_term(em, MultiPoly::monomial(n, mono, c));
}

ExpMap expmap_merge(const ExpMap& a, const ExpMap& b) {
  ExpMap r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    } else if (a[i].first < b[j].first) {
      r.push_back(a[i++]);
    } else {
      r.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

ExpMap expmap_less_one(const ExpMap& a, uint32_t id) {
  ExpMap r;
  r.reserve(a.size());
  for (const auto& [x, m] : a) {
    if (x == id) {
      if (m > 1) r.emplace_back(x, m - 1);
    } else {
      r.emplace_back(x, m);
    }
  }
  return r;
}

ExpMap expmap_plus_one(const ExpMap& a, uint32_t id) {
  ExpMap r;
  r.reserve(a.size() + 1);
  bool placed = false;
  for (const auto& [x, m] : a) {
    if (!placed && id == x) {
      r.emplace_back(x, m + 1);
      placed = true;
    } else if (!placed && id < x) {
      r.emplace_back(id, 1);
      r.emplace_back(x, m);
      placed = true;
    } else {
      r.emplace_back(x, m);
    }
  }
  if (!placed) r.emplace_back(id, 1);
  return r;
}

// Lazily caches partial derivatives of coefficient polynomials, keyed by the
// address of the coefficient inside the operand (stable during a product).
class DerivTable {
 public:
  explicit DerivTable(unsigned n) : n_(n) {}
  const MultiPoly& get(const MultiPoly& f, unsigned v) {
    auto& slot = cache_[&f];
    if (slot.empty()) slot.resize(n_);
    if (!slot[v]) slot[v] = f.derivative(v);
    return *slot[v];
  }

 private:
  unsigned n_;
  std::map<const MultiPoly*, std::vector<std::optional<MultiPoly>>> cache_;
};

// Product of two PBW terms whose orders leave exactly one unit of filtration
// budget: every inverted position pair of the concatenated sequence yields
// its bracket exactly once, and all residual factors commute.  Inverted
// pairs are (left letter p, right letter q) with p > q, (left bracket,
// right letter), and (left bracket X, right bracket Y) with X > Y; letter
// multiplicities turn into partial derivatives.  Only the corrections are
// emitted; the caller adds the commutative main term.
void level_one_corrections(NormalForm& out, unsigned n, const ExpMap& la,
                           const MultiPoly& fa, const ExpMap& lb,
                           const MultiPoly& fb, const MultiPoly& fafb,
                           const ExpMap& base, DerivTable& derivs) {
  for (unsigned p = 1; p < n; ++p) {
    const MultiPoly& dfa = derivs.get(fa, p);
    if (dfa.is_zero()) continue;
    for (unsigned q = 0; q < p; ++q) {
      const MultiPoly& dfb = derivs.get(fb, q);
      if (dfb.is_zero()) continue;
      MultiPoly prod = dfa * dfb;
      for (const auto& [id, k] : bracket_basis(n, p, q).comps)
        out.add_term(expmap_plus_one(base, id), prod.scaled(k));
    }
  }
  for (const auto& [X, mx] : la) {
    ExpMap rest = expmap_merge(expmap_less_one(la, X), lb);
    for (unsigned q = 0; q < n; ++q) {
      const MultiPoly& dfb = derivs.get(fb, q);
      if (dfb.is_zero()) continue;
      MultiPoly prod = (fa * dfb).scaled(Rational(mx));
      for (const auto& [id, k] : bracket_basis(n, X, q).comps)
        out.add_term(expmap_plus_one(rest, id), prod.scaled(k));
    }
    for (const auto& [Y, my] : lb) {
      if (X <= Y) continue;
      ExpMap rest2 = expmap_merge(expmap_less_one(la, X), expmap_less_one(lb, Y));
      MultiPoly prod = fafb.scaled(Rational(mx) * Rational(my));
      for (const auto& [id, k] : bracket_basis(n, X, Y).comps)
        out.add_term(expmap_plus_one(rest2, id), prod.scaled(k));
    }
  }
}

}  // namespace

NormalForm straighten_sequences(std::map<Seq, Rational>&& pending, unsigned n,
                                unsigned d) {
  NormalForm out(n, d);
  auto basis = lie_basis(n, d + 1);
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    Seq& seq = node.key();
    const Rational& c = node.mapped();
    if (c == 0) continue;
    uint64_t o = seq_ord(n, seq, basis);
    if (o > d) continue;
    if (o == d) {
      // Top filtration layer: every correction would be discarded, so the
      // factors commute and the sequence sorts freely.
      emit_sorted(out, n, std::move(seq), c);
      continue;
    }
    size_t t = seq.size();
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
      if (seq[i] > seq[i + 1]) {
        t = i;
        break;
      }
    }
    if (t == seq.size()) {
      emit_sorted(out, n, std::move(seq), c);
      continue;
    }
    // o < d here, so the correction ord o + 1 stays inside the truncation.
    const uint32_t u = seq[t], v = seq[t + 1];
    const LieElement& dec = bracket_basis(n, u, v);
    for (const auto& [id, k] : dec.comps) {
      Seq corr;
      corr.reserve(seq.size() - 1);
      corr.insert(corr.end(), seq.begin(), seq.begin() + t);
      corr.push_back(id);
      corr.insert(corr.end(), seq.begin() + t + 2, seq.end());
      assert(seq_ord(n, corr, basis) == o + 1);
      auto [it, fresh] = pending.emplace(std::move(corr), c * k);
      if (!fresh) {
        it->second += c * k;
        if (it->second == 0) pending.erase(it);
      }
    }
#ifndef NDEBUG
    uint64_t inv_before = seq_inversions(seq);
#endif
    std::swap(seq[t], seq[t + 1]);
    assert(seq_inversions(seq) == inv_before - 1);
    auto pos = pending.find(seq);
    if (pos != pending.end()) {
      pos->second += c;
      if (pos->second == 0) pending.erase(pos);
    } else {
      pending.insert(std::move(node));
    }
  }
  return out;
}

NormalForm straighten(const WordPoly& w, unsigned d) {
  std::map<Seq, Rational> pending;
  for (const auto& [word, c] : w.terms()) {
    Seq s(word.begin(), word.end());
    auto [it, fresh] = pending.emplace(std::move(s), c);
    if (!fresh) it->second += c;
  }
  return straighten_sequences(std::move(pending), w.n(), d);
}

std::optional<uint64_t> nc_order(const WordPoly& w) {
  if (w.is_zero()) return std::nullopt;
  return straighten(w, unsigned(w.max_length())).nc_order();
}

NormalForm multiply(const NormalForm& a, const NormalForm& b) {
  if (a.n() != b.n()) throw ArityMismatch("normal form arity mismatch");
  if (a.d() != b.d())
    throw ArityMismatch("normal forms have different truncation degrees");
  const unsigned n = a.n(), d = a.d();
  NormalForm out(n, d);
  DerivTable derivs(n);
  std::map<Seq, Rational> pending;
  for (const auto& [la, fa] : a.terms()) {
    uint64_t oa = ord_of(n, la);
    for (const auto& [lb, fb] : b.terms()) {
      uint64_t o = oa + ord_of(n, lb);
      if (o > d) continue;
      if (d - o >= 2) {
        // Deep pairs go through the general rewriting engine.
        for (const auto& [ea, ca] : fa.terms()) {
          for (const auto& [eb, cb] : fb.terms()) {
            Seq s;
            for (unsigned i = 0; i < n; ++i)
              for (uint32_t k = 0; k < ea[i]; ++k) s.push_back(i);
            for (const auto& [id, m] : la)
              for (uint32_t k = 0; k < m; ++k) s.push_back(id);
            for (unsigned i = 0; i < n; ++i)
              for (uint32_t k = 0; k < eb[i]; ++k) s.push_back(i);
            for (const auto& [id, m] : lb)
              for (uint32_t k = 0; k < m; ++k) s.push_back(id);
            auto [it, fresh] = pending.emplace(std::move(s), ca * cb);
            if (!fresh) {
              it->second += ca * cb;
              if (it->second == 0) pending.erase(it);
            }
          }
        }
        continue;
      }
      MultiPoly fafb = fa * fb;
      ExpMap base = expmap_merge(la, lb);
      if (d - o == 1)
        level_one_corrections(out, n, la, fa, lb, fb, fafb, base, derivs);
      out.add_term(base, fafb);
    }
  }
  if (!pending.empty()) out += straighten_sequences(std::move(pending), n, d);
  return out;
}

WordPoly expand_to_words(const NormalForm& a) {
  const unsigned n = a.n();
  WordPoly out(n);
  for (const auto& [em, f] : a.terms()) {
    WordPoly m = WordPoly::one(n);
    for (const auto& [id, mult] : em)
      for (uint32_t k = 0; k < mult; ++k) m = m * expand_basis(n, id);
    for (const auto& [e, c] : f.terms()) {
      Word w;
      for (unsigned i = 0; i < n; ++i)
        for (uint32_t k = 0; k < e[i]; ++k) w.push_back(Letter(i));
      out += WordPoly::word(n, w, c) * m;
    }
  }
  return out;
}

RatNormalForm to_rational(const NormalForm& a) {
  RatNormalForm r(a.n(), a.d());
  for (const auto& [em, f] : a.terms()) r.add_term(em, RatFunc(f));
  return r;
}

NormalForm to_polynomial(const RatNormalForm& a) {
  NormalForm r(a.n(), a.d());
  for (const auto& [em, f] : a.terms()) {
    if (!f.is_polynomial())
      throw Error("normal form coefficient has a denominator");
    r.add_term(em, f.as_polynomial());
  }
  return r;
}

MultiPoly structure_eval(unsigned n, unsigned d, const ExpMap& lambda,
                         const ExpMap& mu, const ExpMap& nu, const MultiPoly& f,
                         const MultiPoly& g) {
  NormalForm a(n, d), b(n, d);
  a.add_term(lambda, f);
  b.add_term(mu, g);
  NormalForm p = multiply(a, b);
  const MultiPoly* c = p.coeff(nu);
  return c ? *c : MultiPoly(n);
}

uint64_t q_dimension(unsigned n, unsigned d) {
  // Multisets of bracket factors (degree >= 2) with total ord = d: DP over
  // the ord contribution k-1 of degree-k factors, witt(n,k) colors each.
  std::vector<uint64_t> ways(d + 1, 0);
  ways[0] = 1;
  for (unsigned k = 2; k <= d + 1; ++k) {
    uint64_t colors = witt_dimension(n, k);
    unsigned w = k - 1;
    // Unbounded multiset pick of an item class with weight w and
    // `colors` distinguishable members: stars and bars per count j.
    std::vector<uint64_t> next(d + 1, 0);
    for (unsigned used = 0; used <= d; ++used) {
      if (!ways[used]) continue;
      for (unsigned j = 0; used + j * w <= d; ++j) {
        uint64_t choose = 1;
        // C(colors + j - 1, j)
        for (unsigned i = 1; i <= j; ++i)
          choose = choose * (colors + i - 1) / i;
        next[used + j * w] += ways[used] * choose;
      }
    }
    ways = std::move(next);
  }
  return ways[d];
}

uint64_t graded_count(unsigned n, unsigned d, unsigned m) {
  // Pairs (ord used, word degree used) over bracket factors, then a free
  // commutative monomial of the remaining degree.
  std::map<std::pair<unsigned, unsigned>, uint64_t> ways;
  ways[{0, 0}] = 1;
  for (unsigned k = 2; k <= d + 1 && k <= m; ++k) {
    uint64_t colors = witt_dimension(n, k);
    std::map<std::pair<unsigned, unsigned>, uint64_t> next;
    for (const auto& [key, cnt] : ways) {
      auto [od, dg] = key;
      for (unsigned j = 0; od + j * (k - 1) <= d && dg + j * k <= m; ++j) {
        uint64_t choose = 1;
        for (unsigned i = 1; i <= j; ++i)
          choose = choose * (colors + i - 1) / i;
        next[{od + unsigned(j * (k - 1)), dg + unsigned(j * k)}] +=
            cnt * choose;
      }
    }
    ways = std::move(next);
  }
  uint64_t total = 0;
  for (const auto& [key, cnt] : ways) {
    auto [od, dg] = key;
    if (od != d || dg > m) continue;
    unsigned rest = m - dg;
    // Monomials of exact degree `rest` in n variables.
    uint64_t mono = 1;
    for (unsigned i = 1; i < n; ++i) mono = mono * (rest + i) / i;
    total += cnt * mono;
  }
  return total;
}

}  // namespace ncalg
