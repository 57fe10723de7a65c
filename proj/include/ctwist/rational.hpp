#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctwist {

// Exact arithmetic carrier for all algebraic data. cpp_rational keeps values
// in lowest terms with a positive denominator, which is exactly the contract
// the rest of the library assumes.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

inline Rational rat(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p" or "p/q" with optional sign; q must be nonzero.
std::optional<Rational> parse_rational(std::string_view s);

std::string rational_string(const Rational& r);

}  // namespace ctwist
