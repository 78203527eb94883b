#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace decat {

using Integer = mpz_class;
using Rational = mpq_class;

Integer factorial(std::uint64_t n);
Integer binomial(std::uint64_t n, std::uint64_t k);

/// n!/(n-k)!, zero when k > n.
Integer falling_factorial(std::uint64_t n, std::uint64_t k);

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

/// Lossless "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);

/// Decimal rendering to `digits` significant digits. Approximate by nature.
std::string to_decimal(const Rational& q, int digits = 10);

double to_double(const Rational& q);

/// Accepts "p/q", integers, fixed decimals ("0.125") and scientific
/// notation ("1e-9"). Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

}  // namespace decat
