#pragma once

#include "ncalg/fraction.hpp"

namespace ncalg {

// Square-zero extension of the polynomial ring by alternating 2-forms:
// pairs (f, w) with w = sum_{i<j} w_ij dx_i^dx_j, multiplied as
// (f1,w1)(f2,w2) = (f1*f2, f1*w2 + f2*w1 + df1^df2).
class TrivialExtension {
 public:
  explicit TrivialExtension(unsigned arity);
  static TrivialExtension from_polynomial(MultiPoly f);
  static TrivialExtension one(unsigned arity);

  unsigned arity() const { return arity_; }
  const MultiPoly& scalar_part() const { return f_; }
  // Signed coefficient of dx_i^dx_j; zero when i == j.
  MultiPoly form(unsigned i, unsigned j) const;
  // Adds w * dx_i^dx_j, antisymmetrically. Requires i != j.
  void add_form(unsigned i, unsigned j, const MultiPoly& w);

  TrivialExtension operator+(const TrivialExtension& o) const;
  TrivialExtension operator-(const TrivialExtension& o) const;
  TrivialExtension operator*(const TrivialExtension& o) const;
  bool operator==(const TrivialExtension& o) const {
    return arity_ == o.arity_ && f_ == o.f_ && omega_ == o.omega_;
  }
  bool operator!=(const TrivialExtension& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  size_t index(unsigned i, unsigned j) const;  // i < j
  unsigned arity_;
  MultiPoly f_;
  std::vector<MultiPoly> omega_;  // dx_i^dx_j, (i,j) lex over i < j
};

// Isomorphism of the truncation at degree 1 with the trivial extension:
// [[f]] + sum_{i<j} c_ij [x_i,x_j]  |->  (f, sum_{i<j} (didj f + 2 c_ij)
// dx_i^dx_j). The second-derivative shift is what makes the map
// multiplicative; [x_i,x_j] alone lands on 2 dx_i^dx_j.
TrivialExtension first_order_image(const NormalForm& a);
NormalForm first_order_preimage(const TrivialExtension& e);

struct GeoReport {
  bool pass;
  std::string detail;  // chart reports log every item; others log failures
};

// Random-product verification that first_order_image is a unital algebra
// isomorphism in arity n.
GeoReport compare_first_order(unsigned n, unsigned trials = 20,
                              uint64_t seed = 1);

// Value expressed in the coordinate ring of one projective chart.
struct ChartElement {
  unsigned chart;
  LeftFraction value;
};

// Chart i of NC projective n-space has coordinates x_j^(i) for j in
// {0..n}\{i}; this is the generator slot storing x_j^(i).
unsigned chart_slot(unsigned n, unsigned i, unsigned j);

// Chart-i coordinate ring localized at the product of the abelianized
// coordinates x_j^(i), j in ds.
LocalizationPtr chart_localization(unsigned n, unsigned d, unsigned i,
                                   const std::vector<unsigned>& ds);

// Images of the chart-k coordinates under the change into chart i, listed
// for targets a in ascending order over {0..n}\{k}:
//   x_a^(k) = x_a^(i) * (x_k^(i))^{-1}   for a != i,
//   x_i^(k) = (x_k^(i))^{-1},
// and the identity family when k == i. ctx must be a chart-i localization
// inverting x_k^(i).
std::vector<ChartElement> projective_transition(unsigned n, unsigned d,
                                                unsigned i, unsigned k,
                                                const LocalizationPtr& ctx);

// Image of a chart expression under the substitution sending generator t to
// images[t]; computed word by word, so it is the unique ring homomorphism
// extending the assignment.
LeftFraction evaluate_normal_form(const NormalForm& a,
                                  const std::vector<LeftFraction>& images,
                                  const LocalizationPtr& ctx);
LeftFraction evaluate_fraction(const LeftFraction& f,
                               const std::vector<LeftFraction>& images,
                               const LocalizationPtr& ctx);

// For every ordered (i,j,k) with i != j, j != k: the composite of the
// transitions i->j and j->k equals the direct transition i->k on every
// chart-k coordinate, exactly in the triple-overlap localization. k == i
// checks the round trip against the identity.
GeoReport cocycle_check(unsigned n, unsigned d);

// Twisting cocycle phi_ij = (x_j^(i))^{-1}. Convention (the side is fixed
// here once): factors compose left to right in chart i, so the identity
// checked is phi_ij * (image of phi_jk under i->j) = phi_ik.
GeoReport line_bundle_cocycle(unsigned n, unsigned d);

// Dimension of the word-degree-m slice of the d-th graded piece of the
// Poisson envelope of the polynomial ring, via its identification with the
// corresponding slice of gr of the free algebra.
uint64_t poisson_envelope_dims(unsigned n, unsigned d, unsigned m);

}  // namespace ncalg
