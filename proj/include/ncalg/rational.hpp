#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace ncalg {

using Int = boost::multiprecision::cpp_int;
// Always stored reduced with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ArityMismatch : Error {
  using Error::Error;
};
struct InexactDivision : Error {
  using Error::Error;
};
struct NotLieElement : Error {
  using Error::Error;
};
struct NotInvertible : Error {
  using Error::Error;
};
struct ParseError : Error {
  size_t pos;
  ParseError(const std::string& msg, size_t at) : Error(msg), pos(at) {}
};

inline std::string rat_to_string(const Rational& r) { return r.str(); }

// Accepts "p" or "p/q" with optional leading minus.
Rational rat_from_string(const std::string& s);

Int binomial(unsigned n, unsigned k);
Int factorial(unsigned n);

}  // namespace ncalg
