#pragma once

#include <memory>
#include <optional>

#include "ncalg/word.hpp"

namespace ncalg {

bool is_lyndon(const Word& w);

// All Lyndon words over n letters with 1 <= length <= max_degree, ordered by
// degree, then lexicographically. Generated with Duval's algorithm.
std::vector<Word> lyndon_words(unsigned n, unsigned max_degree);

// Dimension of the degree-k component of the free Lie algebra on n
// generators: (1/k) * sum_{e | k} mu(e) * n^(k/e).
uint64_t witt_dimension(unsigned n, unsigned k);

struct BasisElement {
  Word word;       // the Lyndon word
  unsigned degree;  // word length
  // Standard factors for degree >= 2: the longest proper Lyndon prefix whose
  // complementary suffix is also Lyndon. The bracketing is [left, right].
  uint32_t left = 0, right = 0;
};

// Ordered basis of the free Lie algebra on x1..xn up to a degree bound.
// Ids are degree-major, lex within a degree, so they do not depend on the
// bound; ids 0..n-1 are the generators.
class LieBasis {
 public:
  LieBasis(unsigned n, unsigned max_degree);

  unsigned n() const { return n_; }
  unsigned max_degree() const { return max_degree_; }
  uint32_t size() const { return uint32_t(elems_.size()); }
  const BasisElement& operator[](uint32_t id) const { return elems_[id]; }
  unsigned degree(uint32_t id) const { return elems_[id].degree; }
  std::optional<uint32_t> find(const Word& w) const;
  // Nested-bracket rendering: "x1", "[x1,x2]", "[x1,[x1,x2]]".
  std::string render(uint32_t id) const;

 private:
  unsigned n_, max_degree_;
  std::vector<BasisElement> elems_;
  std::map<Word, uint32_t> index_;
};

// Shared cached table; grows on demand. Snapshots are immutable.
std::shared_ptr<const LieBasis> lie_basis(unsigned n, unsigned max_degree);

// render via the cached table, growing it as needed.
std::string basis_render(unsigned n, uint32_t id);

// Q-linear combination of basis elements of one LieBasis family.
struct LieElement {
  unsigned n = 0;
  std::map<uint32_t, Rational> comps;

  bool is_zero() const { return comps.empty(); }
  void add(uint32_t id, const Rational& c);
  LieElement& operator+=(const LieElement& o);
  LieElement scaled(const Rational& c) const;
  bool operator==(const LieElement& o) const {
    return n == o.n && comps == o.comps;
  }
};

// Decomposition of [beta_i, beta_j] in the basis; memoized per n.
const LieElement& bracket_basis(unsigned n, uint32_t i, uint32_t j);
LieElement bracket(const LieElement& a, const LieElement& b);

// Expansion of a basis element into the free associative algebra; memoized.
const WordPoly& expand_basis(unsigned n, uint32_t id);
WordPoly expand(const LieElement& a);

// Inverse of expand on Lie elements; throws NotLieElement otherwise.
LieElement decompose_lie(const WordPoly& p);

}  // namespace ncalg
