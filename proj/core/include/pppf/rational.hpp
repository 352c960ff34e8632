#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <stdexcept>
#include <string>

namespace pppf {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

/// Parses "p/q", integers, and plain decimal strings ("0.25", "-1.5e-3") exactly.
Rational parse_rational(const std::string& s);

/// Canonical text form: integer if the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& q);

}  // namespace pppf
