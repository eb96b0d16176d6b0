#pragma once

#include "nncs/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace nncs {

enum class Rel { Le, Lt };

/// <a, x> rel b
struct LinearConstraint {
  Vector a;
  Rational b;
  Rel rel = Rel::Le;

  std::size_t dim() const { return a.size(); }
  bool operator==(const LinearConstraint&) const = default;
};

bool contains(const LinearConstraint& c, std::span<const Rational> x);
LinearConstraint negate(const LinearConstraint& c);

struct Polyhedron {
  std::size_t dim = 0;
  std::vector<LinearConstraint> constraints;

  static Polyhedron universe(std::size_t dim) { return Polyhedron{dim, {}}; }
  /// Throws DimensionError-like std::invalid_argument on mismatched constraints.
  void validate() const;
  Polyhedron& add(LinearConstraint c);
  /// Adds <a,x> = b as two non-strict constraints.
  Polyhedron& add_equality(const Vector& a, const Rational& b);

  bool operator==(const Polyhedron&) const = default;
};

struct PolyUnion {
  std::size_t dim = 0;
  std::vector<Polyhedron> disjuncts;

  static PolyUnion empty(std::size_t dim) { return PolyUnion{dim, {}}; }
  static PolyUnion of(Polyhedron p);
  void validate() const;

  bool operator==(const PolyUnion&) const = default;
};

bool contains(const Polyhedron& p, std::span<const Rational> x);
bool contains(const PolyUnion& s, std::span<const Rational> x);

/// Fourier-Motzkin with mixed strict/non-strict constraints. Returns a point of
/// p when it is nonempty.
std::optional<Vector> find_point(const Polyhedron& p);
std::optional<Vector> find_point(const PolyUnion& s);
inline bool is_empty(const Polyhedron& p) { return !find_point(p).has_value(); }
inline bool is_empty(const PolyUnion& s) { return !find_point(s).has_value(); }

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q);
PolyUnion complement(const Polyhedron& p);
/// Drops disjuncts found empty along the way.
PolyUnion complement(const PolyUnion& s);
PolyUnion intersect_union(const PolyUnion& p, const PolyUnion& q);
PolyUnion union_union(const PolyUnion& p, const PolyUnion& q);

/// A point outside every disjunct, found without materializing the full
/// complement.
std::optional<Vector> find_point_outside(const PolyUnion& s);

/// {x} as a polyhedron of equalities.
Polyhedron point_polyhedron(std::span<const Rational> x);

/// Re-expresses a constraint over `dim` variables where the original
/// variable i sits at position positions[i].
LinearConstraint embed(const LinearConstraint& c, std::size_t dim, std::span<const std::size_t> positions);
Polyhedron embed(const Polyhedron& p, std::size_t dim, std::span<const std::size_t> positions);
PolyUnion embed(const PolyUnion& s, std::size_t dim, std::span<const std::size_t> positions);

}  // namespace nncs
