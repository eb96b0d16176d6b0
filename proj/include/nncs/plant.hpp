#pragma once

#include "nncs/dnn.hpp"
#include "nncs/geometry.hpp"

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nncs {

class PlantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// P(x, u) = u.
struct TrivialPlant {
  std::size_t d = 1;
  bool operator==(const TrivialPlant&) const = default;
};

struct AffineFlow {
  Matrix A;  // d x d
  Matrix B;  // d x c
  Vector c;  // d
  bool operator==(const AffineFlow&) const = default;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Discrete-time switched affine map. The plant state is (mode, x_1..x_d);
/// guards range over (x'_1..x'_d, u_1..u_c), evaluated after the flow.
struct MultiModeLinearMap {
  std::vector<std::size_t> modes;
  std::vector<Edge> edges;
  std::size_t d = 1;
  std::size_t c = 1;
  std::map<std::size_t, AffineFlow> flow;
  std::map<Edge, PolyUnion> guard;

  bool has_mode(std::size_t m) const;
  std::vector<std::size_t> successors(std::size_t m) const;
  bool operator==(const MultiModeLinearMap&) const = default;
};

using Plant = std::variant<TrivialPlant, MultiModeLinearMap>;

/// Length of the state vector, including the mode slot for multi-mode maps.
std::size_t state_dim(const Plant& p);
std::size_t control_dim(const Plant& p);

Vector plant_apply(const Plant& p, std::span<const Rational> x, std::span<const Rational> u);

struct DisjointnessViolation {
  std::size_t mode;
  std::size_t first;
  std::size_t second;
  Vector witness;  // in both guards
};

struct CoverageViolation {
  std::size_t mode;
  Vector witness;  // in no outgoing guard
};

struct ValidationReport {
  std::vector<std::string> structural;
  std::vector<DisjointnessViolation> overlaps;
  std::vector<CoverageViolation> gaps;
  bool ok() const { return structural.empty() && overlaps.empty() && gaps.empty(); }
};

ValidationReport validate_multimode(const MultiModeLinearMap& h);

struct Nncs {
  Plant plant;
  Dnn controller;

  /// Throws DimensionError when controller and plant do not fit together.
  void validate() const;
};

Vector nncs_iterate(const Nncs& s, std::span<const Rational> x);
std::vector<Vector> nncs_trajectory(const Nncs& s, const Vector& x0, std::size_t k);

}  // namespace nncs
