#include "ncalg/symbol.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <ostream>
#include <sstream>

namespace ncalg {

namespace {

std::vector<unsigned> identity_map(size_t k) {
  std::vector<unsigned> m(k);
  for (size_t i = 0; i < k; ++i) m[i] = unsigned(i);
  return m;
}

void check_denominator_slots(const OrderedSymbol& s) {
  for (size_t i = 0; i < s.slots.size(); ++i) {
    if (s.slots[i] >= s.n && s.coeff.den().depends_on(unsigned(i)))
      throw Error("symbol denominator depends on a bracket slot");
  }
}

#ifndef NDEBUG
uint64_t slot_inversions(const std::vector<uint32_t>& s) {
  uint64_t inv = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) ++inv;
  return inv;
}
#endif

}  // namespace

OrderedSymbol make_symbol(unsigned n, std::vector<uint32_t> slots,
                          const MultiPoly& coeff) {
  return make_symbol(n, std::move(slots), RatFunc(coeff));
}

OrderedSymbol make_symbol(unsigned n, std::vector<uint32_t> slots,
                          const RatFunc& coeff) {
  if (coeff.arity() != slots.size())
    throw ArityMismatch("symbol coefficient arity differs from slot count");
  OrderedSymbol s;
  s.n = n;
  s.slots = std::move(slots);
  s.coeff = coeff;
  check_denominator_slots(s);
  return s;
}

std::vector<uint32_t> slot_weights(const OrderedSymbol& s) {
  std::vector<uint32_t> w(s.slots.size());
  for (size_t i = 0; i < s.slots.size(); ++i)
    w[i] = basis_degree(s.n, s.slots[i]) - 1;
  return w;
}

std::optional<uint64_t> symbol_ord(const OrderedSymbol& s) {
  if (s.coeff.is_zero()) return std::nullopt;
  return s.coeff.num().min_weighted_degree(slot_weights(s));
}

OrderedSymbol truncate_symbol(const OrderedSymbol& s, unsigned d) {
  if (s.coeff.is_zero()) return s;
  MultiPoly num = s.coeff.num().truncate_weighted(slot_weights(s), d);
  OrderedSymbol r = s;
  r.coeff = num.is_zero() ? RatFunc(MultiPoly(s.coeff.arity()))
                          : RatFunc(num, s.coeff.den());
  return r;
}

WordPoly evaluate_with_contents(const MultiPoly& coeff, unsigned n,
                                const std::vector<WordPoly>& contents) {
  if (coeff.arity() != contents.size())
    throw ArityMismatch("coefficient arity differs from content count");
  WordPoly out(n);
  for (const auto& [e, c] : coeff.terms()) {
    WordPoly m = WordPoly::one(n);
    for (size_t i = 0; i < contents.size(); ++i)
      if (e[i] > 0) m = m * contents[i].pow(e[i]);
    out += m.scaled(c);
  }
  return out;
}

WordPoly evaluate_to_words(const OrderedSymbol& s) {
  if (!s.coeff.is_polynomial())
    throw Error("rational symbol coefficient is not word-expandable");
  std::vector<WordPoly> contents;
  contents.reserve(s.slots.size());
  for (uint32_t id : s.slots) contents.push_back(expand_basis(s.n, id));
  return evaluate_with_contents(s.coeff.as_polynomial(), s.n, contents);
}

WordPoly evaluate_to_words(const SymbolSum& s, unsigned n) {
  WordPoly out(n);
  for (const auto& [c, sym] : s) {
    if (sym.n != n) throw ArityMismatch("symbol generator count mismatch");
    out += evaluate_to_words(sym).scaled(c);
  }
  return out;
}

namespace {

OrderedSymbol drop_slot(const OrderedSymbol& s, size_t p) {
  std::vector<unsigned> map(s.slots.size());
  for (size_t i = 0; i < s.slots.size(); ++i)
    map[i] = unsigned(i < p ? i : (i == p ? 0 : i - 1));
  OrderedSymbol r;
  r.n = s.n;
  r.slots = s.slots;
  r.slots.erase(r.slots.begin() + ptrdiff_t(p));
  r.coeff = s.coeff.remap(unsigned(s.slots.size() - 1), map);
  return r;
}

}  // namespace

OrderedSymbol apply_cancellation(const OrderedSymbol& s) {
  OrderedSymbol r = s;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t p = 0; p + 1 < r.slots.size(); ++p) {
      if (r.slots[p] == r.slots[p + 1]) {
        r.coeff = r.coeff.substitute_var(unsigned(p + 1), unsigned(p));
        r = drop_slot(r, p + 1);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (size_t p = 0; p < r.slots.size(); ++p) {
      if (!r.coeff.depends_on(unsigned(p))) {
        r = drop_slot(r, p);
        changed = true;
        break;
      }
    }
  }
  return r;
}

SymbolSum swap_adjacent(const OrderedSymbol& s, size_t p) {
  const size_t N = s.slots.size();
  if (p + 1 >= N) throw Error("swap position out of range");

  OrderedSymbol head;
  head.n = s.n;
  head.slots = s.slots;
  std::swap(head.slots[p], head.slots[p + 1]);
  std::vector<unsigned> perm = identity_map(N);
  perm[p] = unsigned(p + 1);
  perm[p + 1] = unsigned(p);
  head.coeff = s.coeff.remap(unsigned(N), perm);

  SymbolSum out;
  out.emplace_back(Rational(1), std::move(head));

  const LieElement& br = bracket_basis(s.n, s.slots[p], s.slots[p + 1]);
  if (br.is_zero()) return out;

  // Layout p..p+4 of each correction: (B, A, [A,B], A, B); the original
  // exponents i of A and j of B spread as A^u ... A^{i-1-u}, B^v ... B^{j-1-v}
  // through the two difference derivatives.
  std::vector<unsigned> map(N);
  for (size_t q = 0; q < N; ++q)
    map[q] = unsigned(q < p ? q
                            : (q == p ? p + 1 : (q == p + 1 ? p : q + 3)));
  RatFunc base = s.coeff.remap(unsigned(N + 3), map);
  RatFunc crossed = base.difference_step(unsigned(p + 1), unsigned(p + 3))
                        .difference_step(unsigned(p), unsigned(p + 4));
  if (crossed.is_zero()) return out;
  RatFunc withy =
      crossed * RatFunc::variable(unsigned(N + 3), unsigned(p + 2));

  std::vector<uint32_t> corr_slots;
  corr_slots.reserve(N + 3);
  corr_slots.insert(corr_slots.end(), s.slots.begin(),
                    s.slots.begin() + ptrdiff_t(p));
  corr_slots.push_back(s.slots[p + 1]);
  corr_slots.push_back(s.slots[p]);
  corr_slots.push_back(0);  // bracket component, filled per term
  corr_slots.push_back(s.slots[p]);
  corr_slots.push_back(s.slots[p + 1]);
  corr_slots.insert(corr_slots.end(), s.slots.begin() + ptrdiff_t(p + 2),
                    s.slots.end());

  for (const auto& [id, c] : br.comps) {
    OrderedSymbol corr;
    corr.n = s.n;
    corr.slots = corr_slots;
    corr.slots[p + 2] = id;
    corr.coeff = withy;
    out.emplace_back(c, std::move(corr));
  }
  return out;
}

SymbolSum symbolize(const RatNormalForm& a) {
  const unsigned n = a.n();
  SymbolSum out;
  for (const auto& [em, f] : a.terms()) {
    const unsigned N = unsigned(n + em.size());
    std::vector<uint32_t> slots;
    slots.reserve(N);
    for (unsigned i = 0; i < n; ++i) slots.push_back(i);
    RatFunc coeff = f.remap(N, identity_map(n));
    for (size_t j = 0; j < em.size(); ++j) {
      slots.push_back(em[j].first);
      ExpVec e(N, 0);
      e[n + j] = em[j].second;
      coeff = coeff * RatFunc(MultiPoly::monomial(N, e, 1));
    }
    out.emplace_back(Rational(1), make_symbol(n, std::move(slots), coeff));
  }
  return out;
}

SymbolSum symbolize(const NormalForm& a) { return symbolize(to_rational(a)); }

namespace {

void read_off(RatNormalForm& out, const Rational& scalar,
              const OrderedSymbol& s) {
  const unsigned n = s.n;
  const size_t N = s.slots.size();
  check_denominator_slots(s);
  std::vector<unsigned> xmap(N, 0);
  for (size_t i = 0; i < N; ++i)
    if (s.slots[i] < n) xmap[i] = s.slots[i];
  MultiPoly den_n = s.coeff.den().remap(n, xmap);
  std::map<ExpMap, MultiPoly> grouped;
  for (const auto& [e, c] : s.coeff.num().terms()) {
    ExpMap em;
    ExpVec xe(n, 0);
    for (size_t i = 0; i < N; ++i) {
      if (e[i] == 0) continue;
      if (s.slots[i] < n) {
        xe[s.slots[i]] += e[i];
      } else {
        em.emplace_back(s.slots[i], e[i]);
      }
    }
    auto [it, fresh] = grouped.emplace(std::move(em), MultiPoly(n));
    it->second.add_term(xe, c);
  }
  for (const auto& [em, num] : grouped)
    out.add_term(em, RatFunc(num, den_n).scaled(scalar));
}

}  // namespace

RatNormalForm normal_order(const SymbolSum& s, unsigned n, unsigned d,
                           std::ostream* trace) {
  RatNormalForm out(n, d);
  std::vector<SymbolTerm> stack(s.begin(), s.end());
  while (!stack.empty()) {
    auto [c, sym] = std::move(stack.back());
    stack.pop_back();
    if (c == 0 || sym.n != n) {
      if (sym.n != n && c != 0)
        throw ArityMismatch("symbol generator count mismatch");
      continue;
    }
    sym = apply_cancellation(truncate_symbol(sym, d));
    if (sym.coeff.is_zero()) continue;
    size_t p = sym.slots.size();
    for (size_t i = 0; i + 1 < sym.slots.size(); ++i) {
      if (sym.slots[i] > sym.slots[i + 1]) {
        p = i;
        break;
      }
    }
    if (p == sym.slots.size()) {
      read_off(out, c, sym);
      continue;
    }
    if (trace)
      *trace << "swap@" << p + 1 << " " << symbol_to_string(sym) << "\n";
#ifndef NDEBUG
    auto base_ord = symbol_ord(sym);
    uint64_t base_inv = slot_inversions(sym.slots);
#endif
    SymbolSum pieces = swap_adjacent(sym, p);
    for (auto& [sc, piece] : pieces) {
#ifndef NDEBUG
      if (&piece == &pieces.front().second) {
        assert(slot_inversions(piece.slots) == base_inv - 1);
      } else {
        auto po = symbol_ord(piece);
        assert(!po || *po > *base_ord);
      }
#endif
      stack.emplace_back(c * sc, std::move(piece));
    }
  }
  return out;
}

NormalForm normal_order_poly(const SymbolSum& s, unsigned n, unsigned d) {
  return to_polynomial(normal_order(s, n, d));
}

namespace {

void emit_commutation_terms(SymbolSum& out, const NormalForm& cur,
                            const MultiPoly& df, const Rational& scale) {
  const unsigned n = cur.n();
  for (auto& [sc, sym] : symbolize(cur)) {
    const unsigned M = unsigned(sym.slots.size());
    std::vector<uint32_t> slots;
    slots.reserve(n + M);
    for (unsigned i = 0; i < n; ++i) slots.push_back(i);
    slots.insert(slots.end(), sym.slots.begin(), sym.slots.end());
    std::vector<unsigned> shift(M);
    for (unsigned i = 0; i < M; ++i) shift[i] = n + i;
    RatFunc coeff = RatFunc(df.remap(n + M, identity_map(n))) *
                    sym.coeff.remap(n + M, shift);
    out.emplace_back(scale * sc, make_symbol(n, std::move(slots), coeff));
  }
}

void commutation_rec(SymbolSum& out, unsigned var, const NormalForm& cur,
                     const MultiPoly& df, const Rational& scale, unsigned d) {
  const unsigned n = cur.n();
  if (var == n) {
    emit_commutation_terms(out, cur, df, scale);
    return;
  }
  commutation_rec(out, var + 1, cur, df, scale, d);
  NormalForm gen = NormalForm::generator(n, d, var);
  NormalForm ad = cur;
  MultiPoly deriv = df;
  Rational sc = scale;
  for (unsigned k = 1;; ++k) {
    ad = gen * ad - ad * gen;
    deriv = deriv.derivative(var);
    if (ad.is_zero() || deriv.is_zero()) return;
    sc *= Rational(-1, k);
    commutation_rec(out, var + 1, ad, deriv, sc, d);
  }
}

}  // namespace

SymbolSum commutation_formula(const NormalForm& a, const MultiPoly& f,
                              unsigned d) {
  if (f.arity() != a.n())
    throw ArityMismatch("coefficient arity differs from generator count");
  SymbolSum out;
  commutation_rec(out, 0, a.truncated(d), f, Rational(1), d);
  return out;
}

WordPoly taylor_x(unsigned k) {
  WordPoly a = WordPoly::letter(2, 0), b = WordPoly::letter(2, 1);
  MultiPoly gap = MultiPoly::variable(3, 1) - MultiPoly::variable(3, 0) -
                  MultiPoly::variable(3, 2);
  WordPoly val = evaluate_with_contents(gap.pow(k), 2, {a, a + b, b});
  return val.scaled(Rational(Int(1), factorial(k)));
}

namespace {

// [[ outer(y@first, y@last) * (two-letter normal form)@middle ]]: the middle
// occupies slots 1..N-2 as (a, b, brackets...) per PBW term.
void splice_two_letter(SymbolSum& out, const MultiPoly& outer, uint32_t left,
                       uint32_t right, const NormalForm& mid,
                       const Rational& scale) {
  for (const auto& [em, h] : mid.terms()) {
    const unsigned N = unsigned(4 + em.size());
    std::vector<uint32_t> slots;
    slots.reserve(N);
    slots.push_back(left);
    slots.push_back(0);
    slots.push_back(1);
    for (const auto& [id, mult] : em) slots.push_back(id);
    slots.push_back(right);
    MultiPoly coeff = outer.remap(N, {0, N - 1}) * h.remap(N, {1, 2});
    for (size_t j = 0; j < em.size(); ++j) {
      ExpVec e(N, 0);
      e[3 + j] = em[j].second;
      coeff = coeff * MultiPoly::monomial(N, e, 1);
    }
    out.emplace_back(scale, make_symbol(2, std::move(slots), coeff));
  }
}

}  // namespace

SymbolSum taylor(const MultiPoly& f, unsigned d) {
  if (f.arity() != 1) throw ArityMismatch("taylor input must be univariate");
  SymbolSum out;
  MultiPoly df = f;
  for (unsigned k = 0; k <= 2 * d + 1; ++k) {
    if (k > 0) df = df.derivative(0);
    if (df.is_zero()) break;
    NormalForm xk = straighten(taylor_x(k), d);
    if (xk.is_zero()) continue;
    // outer(u, v) = f^(k)(u + v); the 1/k! lives inside taylor_x already
    MultiPoly sum2 = MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1);
    MultiPoly outer(2);
    for (const auto& [e, c] : df.terms())
      outer += sum2.pow(e[0]).scaled(c);
    splice_two_letter(out, outer, 0, 1, xk, Rational(1));
  }
  return out;
}

WordPoly swap_kernel(unsigned l, unsigned m) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, unsigned>, WordPoly> memo;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = memo.find({l, m});
    if (it != memo.end()) return it->second;
  }
  WordPoly a = WordPoly::letter(2, 0), b = WordPoly::letter(2, 1);
  WordPoly k = b.pow(m) * a.pow(l);
  for (unsigned lp = 0; lp <= l; ++lp) {
    for (unsigned mp = 0; mp <= m; ++mp) {
      if (lp == l && mp == m) continue;
      Rational c(binomial(l, lp) * binomial(m, mp));
      k -= (a.pow(l - lp) * swap_kernel(lp, mp) * a.pow(m - mp)).scaled(c);
    }
  }
  std::lock_guard<std::mutex> lock(mutex);
  return memo.emplace(std::make_pair(l, m), std::move(k)).first->second;
}

SymbolSum batched_swap(const MultiPoly& g, unsigned d) {
  if (g.arity() != 2)
    throw ArityMismatch("batched swap input must be bivariate");
  SymbolSum out;
  for (unsigned l = 0; l <= g.degree_in(0); ++l) {
    for (unsigned m = 0; m <= g.degree_in(1); ++m) {
      MultiPoly dg = g;
      for (unsigned i = 0; i < l; ++i) dg = dg.derivative(0);
      for (unsigned i = 0; i < m; ++i) dg = dg.derivative(1);
      if (dg.is_zero()) continue;
      NormalForm knf = straighten(swap_kernel(l, m), d);
      if (knf.is_zero()) continue;
      splice_two_letter(out, dg, 0, 0, knf,
                        Rational(Int(1), factorial(l) * factorial(m)));
    }
  }
  return out;
}

RatNormalForm dn_product(const RatNormalForm& a, const RatNormalForm& b) {
  if (a.n() != b.n()) throw ArityMismatch("normal form arity mismatch");
  if (a.d() != b.d())
    throw ArityMismatch("normal forms have different truncation degrees");
  const unsigned n = a.n(), d = a.d();
  SymbolSum s;
  for (const auto& [la, fa] : a.terms()) {
    uint64_t oa = ord_of(n, la);
    for (const auto& [lb, fb] : b.terms()) {
      if (oa + ord_of(n, lb) > d) continue;
      const unsigned N = unsigned(2 * n + la.size() + lb.size());
      std::vector<uint32_t> slots;
      slots.reserve(N);
      std::vector<unsigned> map_a(n), map_b(n);
      for (unsigned i = 0; i < n; ++i) map_a[i] = i;
      for (unsigned i = 0; i < n; ++i)
        map_b[i] = unsigned(n + la.size() + i);
      for (unsigned i = 0; i < n; ++i) slots.push_back(i);
      for (const auto& [id, mult] : la) slots.push_back(id);
      for (unsigned i = 0; i < n; ++i) slots.push_back(i);
      for (const auto& [id, mult] : lb) slots.push_back(id);
      RatFunc coeff = fa.remap(N, map_a) * fb.remap(N, map_b);
      ExpVec powers(N, 0);
      for (size_t j = 0; j < la.size(); ++j) powers[n + j] = la[j].second;
      for (size_t j = 0; j < lb.size(); ++j)
        powers[2 * n + la.size() + j] = lb[j].second;
      coeff = coeff * RatFunc(MultiPoly::monomial(N, powers, 1));
      s.emplace_back(Rational(1), make_symbol(n, std::move(slots), coeff));
    }
  }
  return normal_order(s, n, d);
}

std::string symbol_to_string(const OrderedSymbol& s) {
  std::ostringstream out;
  out << "[[ (" << s.coeff.to_string("y") << ")(";
  for (size_t i = 0; i < s.slots.size(); ++i) {
    if (i) out << ",";
    out << basis_render(s.n, s.slots[i]) << "^" << i + 1;
  }
  out << ") ]]";
  return out.str();
}

}  // namespace ncalg
