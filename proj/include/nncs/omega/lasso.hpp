#pragma once

#include "nncs/omega/alphabet.hpp"
#include "nncs/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nncs::omega {

/// Binary expansion s I . F (C)^omega of a rational.
struct Expansion {
  bool negative = false;
  std::string int_digits;   // at least one digit
  std::string frac_prefix;
  std::string frac_cycle;   // nonempty
};

/// Minimal integer digits, shortest pre-period and period.
Expansion expand(const Rational& q);
/// The other expansion of a nonzero dyadic rational (tail of ones); nullopt otherwise.
std::optional<Expansion> dual_expansion(const Rational& q);

LassoWord to_lasso(const Expansion& e);
LassoWord encode(const Rational& q);
/// Throws std::invalid_argument unless w is a single well-formed track whose
/// cycle lies after the point.
Rational decode(const LassoWord& w);

struct EncodeOptions {
  std::size_t extra_leading_zeros = 0;
  std::vector<bool> dual;           // per track; ignored where no dual exists
  std::vector<bool> negative_zero;  // per track; "-0" for zero entries
};

/// Aligned multi-track encoding of a vector.
LassoWord encode_vector(std::span<const Rational> x, const EncodeOptions& opts = {});
Vector decode_vector(const LassoWord& w);

}  // namespace nncs::omega
