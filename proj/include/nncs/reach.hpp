#pragma once

#include "nncs/dnn.hpp"
#include "nncs/geometry.hpp"
#include "nncs/omega/nba.hpp"
#include "nncs/plant.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace nncs {

/// A state set given either as polyhedra or directly as an automaton over
/// the state tracks.
using StateSet = std::variant<PolyUnion, omega::Nba>;

struct ReachInstance {
  Dnn controller;
  Plant plant;
  StateSet init;
  StateSet target;

  std::size_t dim() const { return state_dim(plant); }
  /// Throws DimensionError on inconsistent dimensions.
  void validate() const;
};

struct Reached {
  std::size_t k = 0;
  Vector x0;
  Vector xk;
  omega::LassoWord witness;
};

struct Unknown {
  std::size_t bound = 0;
};

struct ReachResult {
  std::variant<Reached, Unknown> outcome;
  /// Trimmed relation size for each k examined.
  std::vector<std::size_t> relation_states;

  bool reached() const { return std::holds_alternative<Reached>(outcome); }
};

/// A witness decoded from the automata did not survive exact replay.
class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Strategy {
  /// I_k = I_{k-1} o step with the full one-step relation.
  Literal,
  /// Image of the initial set, pushed through the controller one neuron at a
  /// time with canonical encodings on intermediate tracks.
  Incremental,
};

struct ReachOptions {
  Strategy strategy = Strategy::Incremental;
  std::size_t state_limit = omega::kDefaultStateLimit;
  /// Test hook: rewrites the relation checked at step k.
  std::function<std::optional<omega::Nba>(const omega::Nba&, std::size_t)> tamper;
};

omega::Nba build_identity_relation(std::size_t d);
omega::Nba build_step_relation(const ReachInstance& inst);
omega::Nba iterate_relation(const omega::Nba& step, std::size_t d, std::size_t k);
omega::Nba widen_init(const omega::Nba& a0, std::size_t d);
omega::Nba widen_target(const omega::Nba& target, std::size_t d);
omega::Nba state_set_nba(const StateSet& s, std::size_t d);
bool state_set_contains(const StateSet& s, std::span<const Rational> x);

/// Pairs (x0, x_k) with x0 in init and x_k = F^k(x0), restricted to canonical
/// encodings; built by the incremental strategy.
class ImageRelation {
 public:
  ImageRelation(const ReachInstance& inst, std::size_t state_limit = omega::kDefaultStateLimit);
  const omega::Nba& current() const { return rel_; }
  std::size_t k() const { return k_; }
  std::size_t states() const { return states_; }
  void advance();

 private:
  const ReachInstance* inst_;
  std::size_t limit_;
  omega::Nba rel_;
  std::size_t k_ = 0;
  std::size_t states_ = 0;
};

/// Runs k = 0..max_k. A Reached result has been replayed exactly; a witness
/// that fails replay raises ReplayError.
ReachResult semi_decide(const ReachInstance& inst, std::size_t max_k, const ReachOptions& opts = {});

/// Exact replay used by semi_decide; throws ReplayError on any mismatch.
void replay(const ReachInstance& inst, const Reached& r);

}  // namespace nncs
