#pragma once

// Exact integer and rational arithmetic plus the small number-theory helpers
// shared by every module. Nothing here uses floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace narcert {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator_of(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

/// Strict parser for the canonical form written by to_string: optional '-',
/// digits without leading zeros, optional "/den" with den > 1 in lowest terms.
Rational parse_rational(std::string_view text);

/// Renders x·π the way the signature table does: "π/21", "5π/33", "π", "2π".
std::string format_pi_multiple(const Rational& x);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
bool is_prime_power(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
Integer factorial(unsigned n);

}  // namespace narcert
