#pragma once

#include "nncs/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nncs {

enum class Opcode { Inc, Dec, Jz, Stop };

struct Instruction {
  Opcode op = Opcode::Stop;
  unsigned counter = 0;     // Inc/Dec/Jz
  std::size_t target = 0;   // Jz only

  static Instruction inc(unsigned i) { return {Opcode::Inc, i, 0}; }
  static Instruction dec(unsigned i) { return {Opcode::Dec, i, 0}; }
  static Instruction jz(unsigned i, std::size_t t) { return {Opcode::Jz, i, t}; }
  static Instruction stop() { return {Opcode::Stop, 0, 0}; }

  bool operator==(const Instruction&) const = default;
};

std::string format_instruction(const Instruction& ins);

class MachineError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parse failure with the 1-based source line it refers to.
class ParseError : public MachineError {
 public:
  ParseError(std::size_t line, const std::string& reason);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Two-counter machine. The last instruction is the unique STOP; every JZ
/// target is a valid line number. Enforced at construction.
class CounterMachine {
 public:
  explicit CounterMachine(std::vector<Instruction> program);

  std::size_t size() const { return program_.size(); }
  std::size_t stop_line() const { return program_.size() - 1; }
  const Instruction& operator[](std::size_t line) const { return program_.at(line); }
  const std::vector<Instruction>& instructions() const { return program_; }

  bool operator==(const CounterMachine&) const = default;

 private:
  std::vector<Instruction> program_;
};

struct Configuration {
  std::size_t pc = 0;
  BigInt c0 = 0;
  BigInt c1 = 0;

  const BigInt& counter(unsigned i) const { return i == 0 ? c0 : c1; }
  BigInt& counter(unsigned i) { return i == 0 ? c0 : c1; }

  bool operator==(const Configuration& o) const { return pc == o.pc && c0 == o.c0 && c1 == o.c1; }
};

std::string format_configuration(const Configuration& g);  // "pc c0 c1"

/// One line per instruction (INC i | DEC i | JZ i t | STOP); '#' starts a
/// comment; blank lines are skipped. Line numbers are implicit and 0-based
/// over the non-blank lines.
CounterMachine parse_machine(std::string_view text);
std::string format_machine(const CounterMachine& m);

/// Successor configuration, or nullopt exactly when the instruction at pc is STOP.
std::optional<Configuration> step(const CounterMachine& m, const Configuration& g);

struct Run {
  std::vector<Configuration> trace;
  bool halted = false;
};

/// Runs from (0,0,0) for at most max_steps transitions.
Run run(const CounterMachine& m, std::size_t max_steps);
/// Same as run() but from an arbitrary configuration.
Run run_from(const CounterMachine& m, Configuration start, std::size_t max_steps);

}  // namespace nncs
