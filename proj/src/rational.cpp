#include "ncalg/rational.hpp"

namespace ncalg {

Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw Error("empty rational literal");
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw Error("bad rational literal: " + s);
  }
}

Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace ncalg
