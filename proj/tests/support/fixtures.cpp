#include "fixtures.hpp"

#include "nncs/dnn.hpp"

#include <sstream>

namespace fixtures {

using nncs::CounterMachine;
using nncs::parse_machine;

namespace {

// Lines of the form "JZ c <exit>; DEC c; INC d; INC d" repeated `times`,
// starting at line `start`; every guard jumps to `exit`.
std::string transfer(std::size_t times, unsigned from, unsigned to, std::size_t per_unit, std::size_t exit) {
  std::ostringstream out;
  for (std::size_t i = 0; i < times; ++i) {
    out << "JZ " << from << ' ' << exit << "\nDEC " << from << '\n';
    for (std::size_t j = 0; j < per_unit; ++j) out << "INC " << to << '\n';
  }
  return out.str();
}

std::string doubling() {
  // c0 <- 1, then ping-pong c0 -> c1 -> c0 doubling each pass, four units
  // per pass, until a pass leaves a remainder and the machine stops.
  std::ostringstream out;
  out << "INC 0\n";                       // 0
  out << transfer(4, 0, 1, 2, 17);        // 1..16
  out << transfer(4, 1, 0, 2, 33);        // 17..32
  out << "JZ 1 1\nSTOP\n";                // 33, 34
  return out.str();
}

std::string copy_loop() {
  // c0 <- 3; move c0 into c1 one unit at a time, drain c1, and start over
  // through the JZ 1 back-edge. Never halts.
  std::ostringstream out;
  out << "INC 0\nINC 0\nINC 0\n";         // 0..2
  out << transfer(4, 0, 1, 1, 15);        // 3..14
  out << "DEC 1\nDEC 1\nDEC 1\nJZ 1 0\nSTOP\n";  // 15..19
  return out.str();
}

}  // namespace

std::vector<NamedMachine> corpus() {
  std::vector<std::pair<std::string, std::string>> text = {
      {"inc0", "INC 0\nSTOP\n"},
      {"inc1", "INC 1\nSTOP\n"},
      {"dec0", "DEC 0\nSTOP\n"},
      {"dec1", "DEC 1\nSTOP\n"},
      {"jz0_next", "JZ 0 1\nSTOP\n"},
      {"jz0_self", "JZ 0 0\nSTOP\n"},
      {"jz1_next", "JZ 1 1\nSTOP\n"},
      {"jz1_self", "JZ 1 0\nSTOP\n"},
      {"skip_inc", "JZ 0 2\nINC 1\nSTOP\n"},
      {"countdown", "INC 0\nINC 0\nINC 0\nDEC 0\nJZ 0 6\nJZ 1 3\nSTOP\n"},
      {"countdown_c1", "INC 1\nINC 1\nINC 1\nINC 1\nDEC 1\nJZ 1 7\nJZ 0 4\nSTOP\n"},
      {"grow_forever", "INC 0\nJZ 1 0\nSTOP\n"},
      {"blink_forever", "INC 1\nDEC 1\nJZ 1 0\nSTOP\n"},
      {"clamp_at_zero", "DEC 0\nDEC 0\nINC 1\nDEC 1\nDEC 1\nSTOP\n"},
      {"forward_skip", "JZ 1 3\nINC 0\nINC 0\nINC 1\nSTOP\n"},
      {"straight_line", "INC 0\nINC 1\nINC 0\nDEC 1\nINC 1\nINC 1\nDEC 0\nSTOP\n"},
      {"nonzero_fallthrough", "INC 0\nJZ 0 4\nINC 1\nJZ 1 0\nSTOP\n"},
      {"copy_loop", copy_loop()},
      {"doubling", doubling()},
      {"collatz_like",
       // c0 = 3. Halve c0 into c1 two units at a time, branching on parity.
       "INC 0\nINC 0\nINC 0\n"                 // 0..2
       "JZ 0 14\nDEC 0\nJZ 0 18\nDEC 0\nINC 1\n"  // 3..7
       "JZ 0 14\nDEC 0\nJZ 0 18\nDEC 0\nINC 1\n"  // 8..12
       "JZ 0 14\n"                              // 13
       "JZ 1 22\nDEC 1\nINC 0\nJZ 1 3\n"          // 14..17
       "INC 1\nINC 1\nINC 1\nJZ 0 14\n"           // 18..21
       "STOP\n"},                               // 22
      {"two_counter_mix", "INC 0\nINC 1\nJZ 0 5\nDEC 0\nJZ 0 0\nDEC 1\nJZ 1 8\nINC 0\nSTOP\n"},
      {"long_jump", "JZ 0 6\nINC 0\nINC 0\nINC 0\nINC 0\nINC 0\nINC 1\nSTOP\n"},
  };
  std::vector<NamedMachine> out;
  for (auto& [name, src] : text) out.push_back({name, parse_machine(src)});
  return out;
}

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

CounterMachine random_machine(std::mt19937_64& rng, std::size_t max_len) {
  std::size_t k = static_cast<std::size_t>(uniform(rng, 2, static_cast<long>(max_len)));
  std::vector<nncs::Instruction> prog;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    unsigned c = static_cast<unsigned>(uniform(rng, 0, 1));
    switch (uniform(rng, 0, 2)) {
      case 0: prog.push_back(nncs::Instruction::inc(c)); break;
      case 1: prog.push_back(nncs::Instruction::dec(c)); break;
      default:
        prog.push_back(nncs::Instruction::jz(c, static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(k) - 1))));
    }
  }
  prog.push_back(nncs::Instruction::stop());
  return CounterMachine(std::move(prog));
}

std::vector<NamedMachine> corpus_with_random(std::size_t extra, std::uint64_t seed) {
  auto out = corpus();
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < extra; ++i) out.push_back({"random" + std::to_string(i), random_machine(rng, 8)});
  return out;
}

Rational random_rational(std::mt19937_64& rng, long max_num, long max_den) {
  Rational q(uniform(rng, -max_num, max_num), uniform(rng, 1, max_den));
  q.canonicalize();
  return q;
}

Vector random_vector(std::mt19937_64& rng, std::size_t n, long max_num, long max_den) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_rational(rng, max_num, max_den));
  return v;
}

nncs::LinearConstraint constraint(std::vector<long> a, nncs::Rel rel, long b) {
  nncs::LinearConstraint c;
  for (long v : a) c.a.push_back(Rational(v));
  c.b = b;
  c.rel = rel;
  return c;
}

nncs::ReachInstance successor_instance() {
  nncs::Polyhedron init(1), target(1);
  init.add_equality({Rational(1)}, 0);
  target.add_equality({Rational(1)}, 3);
  return nncs::ReachInstance{nncs::affine_net({{Rational(1)}}, {Rational(1)}), nncs::TrivialPlant{1},
                             nncs::PolyUnion::of(init), nncs::PolyUnion::of(target)};
}

namespace {

nncs::PolyUnion guard(std::vector<long> a, nncs::Rel rel, long b) {
  nncs::Polyhedron p(2);
  p.add(constraint(std::move(a), rel, b));
  return nncs::PolyUnion::of(p);
}

nncs::AffineFlow flow(long a, long b, long c) {
  return nncs::AffineFlow{{{Rational(a)}}, {{Rational(b)}}, {Rational(c)}};
}

}  // namespace

nncs::ReachInstance thermostat_instance() {
  nncs::MultiModeLinearMap h;
  h.modes = {0, 1};
  h.d = 1;
  h.c = 1;
  h.edges = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  h.flow[0] = flow(1, 2, 0);
  h.flow[1] = flow(1, 0, -1);
  h.guard[{0, 1}] = guard({-1, 0}, nncs::Rel::Le, -5);  // x' >= 5
  h.guard[{0, 0}] = guard({1, 0}, nncs::Rel::Lt, 5);    // x' < 5
  h.guard[{1, 0}] = guard({1, 0}, nncs::Rel::Le, 2);    // x' <= 2
  h.guard[{1, 1}] = guard({-1, 0}, nncs::Rel::Lt, -2);  // x' > 2

  nncs::Polyhedron init(2), target(2);
  init.add_equality({Rational(1), Rational(0)}, 0);
  init.add_equality({Rational(0), Rational(1)}, 0);
  target.add_equality({Rational(1), Rational(0)}, 1);
  target.add(constraint({0, 1}, nncs::Rel::Le, 5));
  nncs::Dnn controller = nncs::affine_net({{Rational(0), Rational(0)}}, {Rational(1)});
  return nncs::ReachInstance{controller, h, nncs::PolyUnion::of(init), nncs::PolyUnion::of(target)};
}

std::size_t brute_force_k(const nncs::ReachInstance& inst, const Vector& x0, std::size_t bound) {
  nncs::Nncs sys{inst.plant, inst.controller};
  auto traj = nncs::nncs_trajectory(sys, x0, bound);
  for (std::size_t k = 0; k < traj.size(); ++k)
    if (nncs::state_set_contains(inst.target, traj[k])) return k;
  return bound + 1;
}

nncs::MultiModeLinearMap partition_plant() {
  nncs::MultiModeLinearMap h;
  h.modes = {0, 1};
  h.d = 1;
  h.c = 1;
  h.edges = {{0, 0}, {0, 1}, {1, 1}};
  h.flow[0] = flow(1, 1, 0);
  h.flow[1] = flow(1, 1, 0);
  h.guard[{0, 0}] = guard({1, 0}, nncs::Rel::Le, 0);
  h.guard[{0, 1}] = guard({-1, 0}, nncs::Rel::Lt, 0);
  h.guard[{1, 1}] = nncs::PolyUnion::of(nncs::Polyhedron::universe(2));
  return h;
}

nncs::MultiModeLinearMap overlapping_plant() {
  auto h = partition_plant();
  h.guard[{0, 1}] = guard({1, 0}, nncs::Rel::Le, 1);
  return h;
}

nncs::MultiModeLinearMap gap_plant() {
  nncs::MultiModeLinearMap h;
  h.modes = {0};
  h.d = 1;
  h.c = 1;
  h.edges = {{0, 0}};
  h.flow[0] = flow(1, 1, 0);
  h.guard[{0, 0}] = guard({1, 0}, nncs::Rel::Le, 0);
  return h;
}

}  // namespace fixtures
