#include "nncs/counter_machine.hpp"

#include <charconv>
#include <sstream>

namespace nncs {

std::string format_instruction(const Instruction& ins) {
  switch (ins.op) {
    case Opcode::Inc: return "INC " + std::to_string(ins.counter);
    case Opcode::Dec: return "DEC " + std::to_string(ins.counter);
    case Opcode::Jz: return "JZ " + std::to_string(ins.counter) + " " + std::to_string(ins.target);
    case Opcode::Stop: return "STOP";
  }
  return "?";
}

ParseError::ParseError(std::size_t line, const std::string& reason)
    : MachineError("line " + std::to_string(line) + ": " + reason), line_(line) {}

CounterMachine::CounterMachine(std::vector<Instruction> program) : program_(std::move(program)) {
  if (program_.empty()) throw MachineError("machine has no instructions");
  const std::size_t k = program_.size();
  for (std::size_t l = 0; l < k; ++l) {
    const auto& ins = program_[l];
    if (ins.op == Opcode::Stop) {
      if (l + 1 != k) throw MachineError("STOP at line " + std::to_string(l) + " is not the last instruction");
      continue;
    }
    if (ins.counter > 1) throw MachineError("counter index " + std::to_string(ins.counter) + " not in {0,1}");
    if (ins.op == Opcode::Jz && ins.target >= k) {
      throw MachineError("JZ target " + std::to_string(ins.target) + " out of range at line " + std::to_string(l));
    }
  }
  if (program_.back().op != Opcode::Stop) throw MachineError("last instruction must be STOP");
}

std::string format_configuration(const Configuration& g) {
  return std::to_string(g.pc) + " " + g.c0.get_str() + " " + g.c1.get_str();
}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

std::size_t parse_number(std::string_view w, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
  if (ec != std::errc() || ptr != w.data() + w.size()) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(w) + "'");
  }
  return value;
}

unsigned parse_counter(std::string_view w, std::size_t line) {
  std::size_t i = parse_number(w, line, "counter index");
  if (i > 1) throw ParseError(line, "counter index " + std::to_string(i) + " not in {0,1}");
  return static_cast<unsigned>(i);
}

}  // namespace

CounterMachine parse_machine(std::string_view text) {
  std::vector<Instruction> program;
  std::vector<std::size_t> source_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (words.empty()) continue;

    auto expect_arity = [&](std::size_t n) {
      if (words.size() != n) {
        throw ParseError(line_no, std::string(words[0]) + " expects " + std::to_string(n - 1) + " operand(s)");
      }
    };
    const std::string_view op = words[0];
    if (op == "INC") {
      expect_arity(2);
      program.push_back(Instruction::inc(parse_counter(words[1], line_no)));
    } else if (op == "DEC") {
      expect_arity(2);
      program.push_back(Instruction::dec(parse_counter(words[1], line_no)));
    } else if (op == "JZ") {
      expect_arity(3);
      unsigned i = parse_counter(words[1], line_no);
      program.push_back(Instruction::jz(i, parse_number(words[2], line_no, "jump target")));
    } else if (op == "STOP") {
      expect_arity(1);
      program.push_back(Instruction::stop());
    } else {
      throw ParseError(line_no, "unknown instruction '" + std::string(op) + "'");
    }
    source_line.push_back(line_no);
    if (pos > text.size()) break;
  }
  if (program.empty()) throw ParseError(line_no, "empty program");

  // Report structural errors against the offending source line.
  for (std::size_t l = 0; l < program.size(); ++l) {
    if (program[l].op == Opcode::Stop && l + 1 != program.size()) {
      throw ParseError(source_line[l], "STOP must be the last instruction");
    }
    if (program[l].op == Opcode::Jz && program[l].target >= program.size()) {
      throw ParseError(source_line[l], "JZ target " + std::to_string(program[l].target) + " out of range");
    }
  }
  if (program.back().op != Opcode::Stop) throw ParseError(source_line.back(), "missing STOP at end of program");
  return CounterMachine(std::move(program));
}

std::string format_machine(const CounterMachine& m) {
  std::ostringstream out;
  for (const auto& ins : m.instructions()) out << format_instruction(ins) << '\n';
  return out.str();
}

std::optional<Configuration> step(const CounterMachine& m, const Configuration& g) {
  const Instruction& ins = m[g.pc];
  Configuration next = g;
  switch (ins.op) {
    case Opcode::Inc:
      next.counter(ins.counter) += 1;
      next.pc = g.pc + 1;
      return next;
    case Opcode::Dec:
      if (next.counter(ins.counter) > 0) next.counter(ins.counter) -= 1;
      next.pc = g.pc + 1;
      return next;
    case Opcode::Jz:
      next.pc = g.counter(ins.counter) == 0 ? ins.target : g.pc + 1;
      return next;
    case Opcode::Stop:
      return std::nullopt;
  }
  return std::nullopt;
}

Run run_from(const CounterMachine& m, Configuration start, std::size_t max_steps) {
  if (start.pc >= m.size()) throw MachineError("start pc out of range");
  Run r;
  r.trace.push_back(std::move(start));
  for (std::size_t s = 0; s < max_steps; ++s) {
    auto next = step(m, r.trace.back());
    if (!next) break;
    r.trace.push_back(std::move(*next));
  }
  r.halted = m[r.trace.back().pc].op == Opcode::Stop;
  return r;
}

Run run(const CounterMachine& m, std::size_t max_steps) { return run_from(m, Configuration{}, max_steps); }

}  // namespace nncs
