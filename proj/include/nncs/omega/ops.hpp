#pragma once

#include "nncs/omega/nba.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nncs::omega {

/// Automaton with no accepting run.
Nba empty_nba(std::size_t arity);
/// Accepts every word over the product alphabet.
Nba universal_nba(std::size_t arity);

/// Synchronous product. Uses plain pairwise acceptance when either side is
/// weak, the two-phase construction otherwise.
Nba intersect(const Nba& a, const Nba& b);
Nba intersect_all(std::span<const Nba> parts);
Nba unite(const Nba& a, const Nba& b);
Nba unite_all(std::span<const Nba> parts, std::size_t arity);

/// Places track i of `a` at position positions[i] of a word of `arity`
/// tracks; the remaining tracks are unconstrained letters.
Nba embed(const Nba& a, std::size_t arity, std::span<const std::size_t> positions);
/// Inserts `count` unconstrained tracks before position `at`.
Nba cylindrify(const Nba& a, std::size_t at, std::size_t count);
/// Existential projection onto the listed tracks (in that order).
Nba project(const Nba& a, std::span<const std::size_t> keep);
/// (a_1..a_n, rest) -> (a_1..a_n, a_1..a_n, rest).
Nba duplicate_tracks(const Nba& a, std::size_t n);
/// Relational composition over the k shared middle tracks.
Nba compose(const Nba& a1, std::size_t k, const Nba& a2);

}  // namespace nncs::omega
