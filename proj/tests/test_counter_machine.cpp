#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "nncs/counter_machine.hpp"

using namespace nncs;

namespace {

Configuration cfg(std::size_t pc, long c0, long c1) { return Configuration{pc, c0, c1}; }

}  // namespace

TEST_CASE("parse simple programs") {
  auto m = parse_machine("INC 0\nSTOP");
  REQUIRE(m.size() == 2);
  CHECK(m[0] == Instruction::inc(0));
  CHECK(m[1] == Instruction::stop());

  auto j = parse_machine("JZ 0 2\nINC 1\nSTOP");
  CHECK(j.instructions() == std::vector<Instruction>{Instruction::jz(0, 2), Instruction::inc(1), Instruction::stop()});
}

TEST_CASE("parse rejects bad programs") {
  CHECK_THROWS_AS(parse_machine("DEC 2\nSTOP"), ParseError);
  CHECK_THROWS_AS(parse_machine("INC 0"), MachineError);
  CHECK_THROWS_AS(parse_machine("STOP\nSTOP"), MachineError);
  CHECK_THROWS_AS(parse_machine("JZ 0 5\nSTOP"), MachineError);
  CHECK_THROWS_AS(parse_machine("MUL 0\nSTOP"), ParseError);
  CHECK_THROWS_AS(parse_machine("INC\nSTOP"), ParseError);
  CHECK_THROWS_AS(parse_machine(""), MachineError);
  try {
    parse_machine("# header\n\nINC 0\nFOO 1\nSTOP");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("comments and blank lines") {
  auto m = parse_machine("# count\n\n  INC 1   # bump\nSTOP\n");
  CHECK(m.size() == 2);
  CHECK(m[0] == Instruction::inc(1));
}

TEST_CASE("format round trip") {
  for (const auto& [name, m] : fixtures::corpus()) {
    CAPTURE(name);
    CHECK(parse_machine(format_machine(m)) == m);
  }
}

TEST_CASE("step semantics") {
  auto inc = parse_machine("INC 0\nSTOP");
  CHECK(*step(inc, cfg(0, 0, 0)) == cfg(1, 1, 0));

  auto dec = parse_machine("DEC 1\nSTOP");
  CHECK(*step(dec, cfg(0, 5, 0)) == cfg(1, 5, 0));
  CHECK(*step(dec, cfg(0, 5, 3)) == cfg(1, 5, 2));

  auto jz = parse_machine("JZ 0 1\nINC 0\nSTOP");
  CHECK(*step(jz, cfg(0, 3, 0)) == cfg(1, 3, 0));
  auto jz2 = parse_machine("JZ 0 2\nINC 0\nSTOP");
  CHECK(*step(jz2, cfg(0, 0, 4)) == cfg(2, 0, 4));
  CHECK(*step(jz2, cfg(0, 1, 4)) == cfg(1, 1, 4));

  CHECK_FALSE(step(inc, cfg(1, 7, 7)).has_value());
}

TEST_CASE("run") {
  auto r = run(parse_machine("INC 0\nSTOP"), 10);
  CHECK(r.halted);
  CHECK(r.trace == std::vector<Configuration>{cfg(0, 0, 0), cfg(1, 1, 0)});

  auto loop = run(parse_machine("JZ 0 0\nSTOP"), 5);
  CHECK_FALSE(loop.halted);
  REQUIRE(loop.trace.size() == 6);
  for (const auto& g : loop.trace) CHECK(g == cfg(0, 0, 0));

  auto zero = run(parse_machine("INC 0\nSTOP"), 0);
  CHECK(zero.trace.size() == 1);
  CHECK_FALSE(zero.halted);
}

TEST_CASE("run_from an arbitrary configuration") {
  auto m = parse_machine("DEC 0\nJZ 0 0\nSTOP");
  auto r = run_from(m, cfg(0, 3, 9), 10);
  CHECK(r.halted);
  CHECK(r.trace.back() == cfg(2, 2, 9));
}

TEST_CASE("counters grow past machine words") {
  auto r = run(parse_machine("INC 0\nJZ 1 0\nSTOP"), 200);
  CHECK(r.trace.back().c0 == 100);
}

TEST_CASE("trace invariants on the corpus") {
  for (const auto& [name, m] : fixtures::corpus_with_random(100)) {
    CAPTURE(name);
    auto a = run(m, 200);
    auto b = run(m, 200);
    CHECK(a.trace == b.trace);
    CHECK(a.halted == b.halted);
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      const auto& g = a.trace[i];
      CHECK(g.c0 >= 0);
      CHECK(g.c1 >= 0);
      CHECK(g.pc < m.size());
      if (g.pc == m.stop_line()) {
        CHECK_FALSE(step(m, g).has_value());
        CHECK(i + 1 == a.trace.size());
      }
    }
    if (a.halted) CHECK(a.trace.back().pc == m.stop_line());
  }
}

TEST_CASE("zero budget reports a STOP start") {
  CounterMachine only_stop({Instruction::stop()});
  auto r = run(only_stop, 0);
  CHECK(r.halted);
  CHECK(r.trace.size() == 1);
}
