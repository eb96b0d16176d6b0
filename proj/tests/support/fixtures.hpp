#pragma once

#include "nncs/counter_machine.hpp"
#include "nncs/geometry.hpp"
#include "nncs/plant.hpp"
#include "nncs/reach.hpp"

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using nncs::Rational;
using nncs::Vector;

struct NamedMachine {
  std::string name;
  nncs::CounterMachine machine;
};

/// Hand-written machines; every entry has at least two instructions.
std::vector<NamedMachine> corpus();
/// k instructions, k in [2, max_len], last one STOP.
nncs::CounterMachine random_machine(std::mt19937_64& rng, std::size_t max_len);
/// corpus() followed by `extra` random machines from a fixed seed.
std::vector<NamedMachine> corpus_with_random(std::size_t extra, std::uint64_t seed = 2024);

Rational random_rational(std::mt19937_64& rng, long max_num, long max_den);
Vector random_vector(std::mt19937_64& rng, std::size_t n, long max_num, long max_den);
long uniform(std::mt19937_64& rng, long lo, long hi);

/// x' = u with u = x + 1; init {x = 0}, target {x = 3}.
nncs::ReachInstance successor_instance();
/// Two modes, state (mode, x). Constant control u = 1. Mode 0 heats by 2u,
/// mode 1 cools by 1; switch to 1 at x' >= 5, back to 0 at x' <= 2.
/// init (0, 0), target {mode = 1, x <= 5}.
nncs::ReachInstance thermostat_instance();
/// Smallest k <= bound with F^k(x0) in target, or bound + 1.
std::size_t brute_force_k(const nncs::ReachInstance& inst, const Vector& x0, std::size_t bound);

/// Modes {0,1}, d = c = 1, A = B = 1, c = 0; (0,0): x' <= 0, (0,1): x' > 0,
/// and a universal self-edge on mode 1.
nncs::MultiModeLinearMap partition_plant();
/// (0,0): x' <= 0 and (0,1): x' <= 1.
nncs::MultiModeLinearMap overlapping_plant();
/// A single edge (0,0) with x' <= 0.
nncs::MultiModeLinearMap gap_plant();

nncs::LinearConstraint constraint(std::vector<long> a, nncs::Rel rel, long b);

}  // namespace fixtures
