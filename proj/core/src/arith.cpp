#include "narcert/arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "narcert/error.hpp"

namespace narcert {

std::string to_string(const Integer& n) { return n.str(); }

std::string to_string(const Rational& q) {
  const Integer den = denominator_of(q);
  if (den == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + den.str();
}

namespace {

bool canonical_digits(std::string_view s) {
  if (s.empty()) return false;
  if (!std::all_of(s.begin(), s.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return false;
  }
  return s.size() == 1 || s.front() != '0';
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!canonical_digits(num)) {
    throw Error(ErrorKind::kParse, "malformed rational '" + original + "'");
  }
  Integer n{std::string(num)};
  Integer d = 1;
  if (slash != std::string_view::npos) {
    const std::string_view den = text.substr(slash + 1);
    if (!canonical_digits(den)) {
      throw Error(ErrorKind::kParse, "malformed rational '" + original + "'");
    }
    d = Integer(std::string(den));
    if (d <= 1 || boost::multiprecision::gcd(n, d) != 1) {
      throw Error(ErrorKind::kParse,
                  "rational '" + original + "' is not in lowest terms");
    }
  }
  if (negative) {
    if (n == 0) throw Error(ErrorKind::kParse, "negative zero '" + original + "'");
    n = -n;
  }
  return Rational(n, d);
}

std::string format_pi_multiple(const Rational& x) {
  if (x == 0) return "0";
  const Integer num = numerator_of(x);
  const Integer den = denominator_of(x);
  std::string out;
  if (num == -1) {
    out = "-";
  } else if (num != 1) {
    out = num.str();
  }
  out += "π";
  if (den != 1) out += "/" + den.str();
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 7; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime_power(std::uint64_t n) { return n > 1 && prime_factors(n).size() == 1; }

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

Integer factorial(unsigned n) {
  Integer out = 1;
  for (unsigned k = 2; k <= n; ++k) out *= k;
  return out;
}

}  // namespace narcert
