#pragma once

#include <iosfwd>

#include "ncalg/normal_form.hpp"

namespace ncalg {

// Ordered-operator symbol: a commutative coefficient in slot variables
// y1..yN together with N slots holding Lie basis elements. Slot order is
// operator order, slot 1 leftmost: a coefficient monomial y1^i1...yN^iN
// stands for the word (slot 1)^i1 (slot 2)^i2 ... (slot N)^iN.
// Denominators of a rational coefficient may involve generator slots only.
struct OrderedSymbol {
  unsigned n = 0;               // generator count of the slot contents
  std::vector<uint32_t> slots;  // Lie basis ids, leftmost first
  RatFunc coeff;                // arity = slots.size()
};

using SymbolTerm = std::pair<Rational, OrderedSymbol>;
using SymbolSum = std::vector<SymbolTerm>;

OrderedSymbol make_symbol(unsigned n, std::vector<uint32_t> slots,
                          const MultiPoly& coeff);
OrderedSymbol make_symbol(unsigned n, std::vector<uint32_t> slots,
                          const RatFunc& coeff);

// Contribution of one extra power of each slot to the NC-order.
std::vector<uint32_t> slot_weights(const OrderedSymbol& s);

// Smallest NC-order any coefficient monomial can produce; empty for zero.
std::optional<uint64_t> symbol_ord(const OrderedSymbol& s);

// Drop coefficient monomials whose slot-weighted degree exceeds d.
OrderedSymbol truncate_symbol(const OrderedSymbol& s, unsigned d);

// Substitute the slot contents in slot order. Throws Error for a rational
// coefficient.
WordPoly evaluate_to_words(const OrderedSymbol& s);
WordPoly evaluate_to_words(const SymbolSum& s, unsigned n);

// Generalized evaluation: slot i holds an arbitrary word polynomial.
WordPoly evaluate_with_contents(const MultiPoly& coeff, unsigned n,
                                const std::vector<WordPoly>& contents);

// Merge adjacent equal slots into one variable and delete slots the
// coefficient does not depend on. Idempotent; preserves the word value.
OrderedSymbol apply_cancellation(const OrderedSymbol& s);

// Transpose slots p and p+1 (0-based p indexes the left slot). The head
// term carries the transposed slots; each correction term inserts the
// bracket of the two contents (decomposed in the Lie basis) between
// duplicated outer slots, with a double difference-derivative coefficient.
// Preserves the word value exactly; every correction has strictly larger
// symbol NC-order. Throws Error if p+1 is not a valid slot index.
SymbolSum swap_adjacent(const OrderedSymbol& s, size_t p);

// One PBW term per symbol, slots already in normal order.
SymbolSum symbolize(const RatNormalForm& a);
SymbolSum symbolize(const NormalForm& a);

// Repeated swap_adjacent + apply_cancellation until every slot sequence is
// ascending, then read off the PBW normal form. Corrections are truncated
// at NC-order d throughout. With trace set, emits one line per swap.
RatNormalForm normal_order(const SymbolSum& s, unsigned n, unsigned d,
                           std::ostream* trace = nullptr);
// Same, for sums whose coefficients stay polynomial.
NormalForm normal_order_poly(const SymbolSum& s, unsigned n, unsigned d);

// Right-multiplication by an ordered coefficient, as a symbol sum:
// a*[[f]] = sum over multi-indices i of (-1)^|i|/(i1!...in!) *
// [[d^i f]] * ad(x_n)^{i_n}...ad(x_1)^{i_1}(a), truncated at order d.
SymbolSum commutation_formula(const NormalForm& a, const MultiPoly& f,
                              unsigned d);

// Remainder kernels of the two-letter Taylor expansion: X_k is 1/k! times
// the value of (y2 - y1 - y3)^k on contents (a, a+b, b), exact in the free
// algebra on a=x1, b=x2. nc_order(X_k) >= floor((k+1)/2).
WordPoly taylor_x(unsigned k);

// f(a+b) = sum_k [[ f^(k)(a@1 + b@3) * X_k@2 ]] for univariate f,
// truncated at NC-order d; two letters a=x1, b=x2.
SymbolSum taylor(const MultiPoly& f, unsigned d);

// Reordering kernel of the batched swap: K(l,m) in letters a=x1, b=x2 is
// the unique family with b^m a^l = sum over l' <= l, m' <= m of
// C(l,l')C(m,m') a^(l-l') K(l',m') a^(m-m').
// K(0,0)=1, K(l,0)=0 for l >= 1, K(0,1)=b-a, K(1,1)=-[a,b].
WordPoly swap_kernel(unsigned l, unsigned m);

// Batched reordering of [[g(a@2, b@1)]] (b left of a) in one pass:
// sum over (l,m) of 1/(l!m!) [[ (d^(l+m)g/dy1^l dy2^m)(a@1, a@3) *
// K(l,m)@2 ]], truncated at NC-order d.
SymbolSum batched_swap(const MultiPoly& g, unsigned d);

// Product of PBW elements with rational coefficients: concatenate the slot
// presentations and normal-order at the common truncation.
RatNormalForm dn_product(const RatNormalForm& a, const RatNormalForm& b);

// ASCII rendering with 1-based position superscripts:
// [[ (y1*y2)(x2^1,x1^2) ]].
std::string symbol_to_string(const OrderedSymbol& s);

}  // namespace ncalg
