#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nncs::omega {

/// Sets of base letters {+, -, 0, 1, .} as bitmasks.
using Mask = std::uint8_t;
inline constexpr Mask kPlus = 1;
inline constexpr Mask kMinus = 2;
inline constexpr Mask kZero = 4;
inline constexpr Mask kOne = 8;
inline constexpr Mask kPoint = 16;
inline constexpr Mask kSign = kPlus | kMinus;
inline constexpr Mask kDigit = kZero | kOne;
inline constexpr Mask kAny = 31;

/// Throws std::invalid_argument for characters outside the alphabet.
Mask mask_of(char c);
/// Lowest letter of a nonempty mask.
char first_char(Mask m);
/// "+-01." order; e.g. kDigit -> "01".
std::string mask_chars(Mask m);
Mask parse_mask(std::string_view chars);

/// One mask per track: the set of symbols it stands for is the product.
using Cube = boost::container::small_vector<Mask, 32>;

/// Intersects in place; false if some track becomes empty.
bool meet(Cube& into, const Cube& other);
bool is_subcube(const Cube& a, const Cube& b);

/// A symbol of the product alphabet, one character per track.
using Symbol = std::string;

/// Ultimately periodic word prefix . cycle^omega.
struct LassoWord {
  std::size_t arity = 1;
  std::vector<Symbol> prefix;
  std::vector<Symbol> cycle;

  /// Throws std::invalid_argument on an empty cycle, ragged symbols or bad letters.
  void validate() const;
  std::string str() const;  // tracks separated by '|', e.g. "+1.(0)" per track
  bool operator==(const LassoWord&) const = default;
};

/// The word of one track.
LassoWord track(const LassoWord& w, std::size_t i);
/// Tracks side by side; all words must have the same prefix/cycle lengths.
LassoWord zip(const std::vector<LassoWord>& tracks);
/// Single-track word from text such as "+0.(01)" (cycle in parentheses).
LassoWord parse_lasso(std::string_view text);

}  // namespace nncs::omega
