#pragma once

#include "nncs/dnn.hpp"
#include "nncs/geometry.hpp"
#include "nncs/omega/nba.hpp"
#include "nncs/plant.hpp"

#include <cstddef>
#include <span>

namespace nncs::omega {

enum class RelOp { Le, Lt, Eq };

/// Well-formed words: aligned signs, at least one integer digit, one aligned
/// point, binary digits after it.
Nba wff(std::size_t arity);

/// Well-formed words whose decoded vector x satisfies <a, x> op b. Every
/// encoding of a vector is treated alike (leading zeros, tails of ones, -0).
Nba linear_relation(const Vector& a, RelOp op, const Rational& b);
Nba constraint_nba(const LinearConstraint& c);
Nba poly_to_nba(const Polyhedron& p);
Nba poly_to_nba(const PolyUnion& s, std::size_t arity);

/// Restricts the listed tracks to one encoding per value and length: no
/// "-0" and no tail of ones. Other tracks are unconstrained.
Nba canonical_monitor(std::size_t arity, std::span<const std::size_t> tracks);

/// (x, y) with y = max(x, 0).
Nba relu_relation();
/// (x, y) over 2d tracks with x = y.
Nba identity_relation(std::size_t d);
/// (x, y) with y = act(<w, x> + b).
Nba neuron_relation(const Vector& w, const Rational& b, Activation act);
/// compose() with the shared middle tracks limited to canonical encodings.
/// Same relation, far fewer runs per word.
Nba compose_canonical(const Nba& a1, std::size_t k, const Nba& a2);

/// (x, y) with y = layer(x).
Nba layer_relation(const Layer& l);
inline constexpr std::size_t kGraphTrimLimit = 50'000;

/// (x, y) with y = net(x), built one neuron at a time. Intermediate results
/// are trimmed while they stay under kGraphTrimLimit states.
Nba dnn_to_nba(const Dnn& net);
/// (x, u, x') with x' = P(x, u).
Nba plant_to_nba(const Plant& p);

}  // namespace nncs::omega
