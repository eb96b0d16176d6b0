#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nncs {

using BigInt = mpz_class;
using Rational = mpq_class;
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

/// "p/q", or "p" when the value is integral.
std::string format_rational(const Rational& q);
std::string format_vector(std::span<const Rational> v);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else
/// (including a zero denominator).
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);

/// Narrowing conversion; throws std::overflow_error when out of range.
std::int64_t to_int64(const BigInt& z);

BigInt lcm_of_denominators(std::span<const Rational> values);

}  // namespace nncs
