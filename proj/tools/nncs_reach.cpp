// nncs-reach: interpret, compile, simulate and check counter-machine and
// neural-network control system instances.

#include "nncs/compiler.hpp"
#include "nncs/counter_machine.hpp"
#include "nncs/io.hpp"
#include "nncs/log.hpp"
#include "nncs/plant.hpp"
#include "nncs/reach.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace nncs;

namespace {

enum Exit : int {
  kOk = 0,
  kError = 1,
  kBudget = 2,
  kUnknown = 3,
  kReplay = 4,
  kDivergence = 5,
};

CounterMachine load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MachineError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

Variant parse_variant(const std::string& v) { return v == "shallow" ? Variant::Shallow : Variant::Deep; }

CompiledInstance compile(const CounterMachine& m, Variant v) {
  return v == Variant::Deep ? compile_deep(m) : compile_shallow(m);
}

int cmd_interpret(const std::string& file, std::size_t max_steps) {
  CounterMachine m = load_machine(file);
  Run r = run(m, max_steps);
  for (const auto& g : r.trace) std::cout << format_configuration(g) << '\n';
  return r.halted ? kOk : kBudget;
}

int cmd_compile(const std::string& file, const std::string& variant, const std::string& out) {
  CounterMachine m = load_machine(file);
  Json j = to_json(bundle_from_compiled(compile(m, parse_variant(variant))));
  if (out.empty() || out == "-") {
    std::cout << j.dump(1) << '\n';
    return kOk;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << j.dump(1) << '\n';
  return kOk;
}

int cmd_run(const std::string& file, std::size_t steps) {
  Bundle b = bundle_from_json(parse_json_file(file));
  Vector x0;
  if (b.x0) {
    x0 = *b.x0;
  } else if (const auto* init = std::get_if<PolyUnion>(&b.init)) {
    // Some point of the initial set.
    auto p = find_point(*init);
    if (!p) throw FormatError("initial set is empty");
    x0 = *p;
  } else {
    throw FormatError("bundle has no x0 and an automaton initial set");
  }
  auto traj = nncs_trajectory(Nncs{b.plant, b.controller}, x0, steps);
  bool entered = false;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const bool in = state_set_contains(b.target, traj[i]);
    std::cout << i << ' ' << format_vector(traj[i]);
    if (in) std::cout << " target";
    if (in && !entered) {
      std::cout << " (entered)";
      entered = true;
    }
    std::cout << '\n';
  }
  return kOk;
}

int cmd_check(const std::string& file, std::optional<std::size_t> max_k, std::size_t state_limit, bool inject_fault) {
  Bundle b = bundle_from_json(parse_json_file(file));
  if (!max_k) max_k = b.max_k;
  if (!max_k) throw FormatError("--max-k is required (or options.max_k in the bundle)");
  ReachOptions opts;
  opts.state_limit = state_limit;
  if (inject_fault) {
    // Every '0' on the first start-state track becomes '1', so any witness
    // left decodes to a different start state.
    opts.tamper = [](const omega::Nba& rel, std::size_t) -> std::optional<omega::Nba> {
      omega::ExplicitNba a = omega::trim_explicit(rel);
      bool changed = false;
      while (auto c = omega::corrupt_transition(a, 0, omega::kZero, omega::kOne, 0)) {
        a = std::move(*c);
        changed = true;
      }
      if (!changed) return std::nullopt;
      return omega::make_nba(std::move(a));
    };
  }
  ReachResult r = semi_decide(b.instance(), *max_k, opts);
  std::cout << to_json(r).dump() << '\n';
  return r.reached() ? kOk : kUnknown;
}

Dnn with_fault(const CompiledInstance& inst) {
  std::vector<Layer> layers = inst.net.layers();
  if (inst.layout) layers[0].biases[inst.layout->hidden_tracks.back().begin] += 1;
  else layers.back().biases[0] += 1;
  return Dnn(std::move(layers));
}

int cmd_verify(const std::string& file, std::size_t steps, const std::string& variant, bool inject_fault) {
  CounterMachine m = load_machine(file);
  CompiledInstance inst = compile(m, parse_variant(variant));
  Dnn net = inject_fault ? with_fault(inst) : inst.net;
  Nncs sys{TrivialPlant{net.output_dim()}, net};
  const std::size_t period = inst.layout ? kTracks : 1;
  Run r = run(m, steps / period);

  Vector x = inst.x0;
  for (std::size_t i = 0; i <= steps; ++i) {
    if (i > 0) x = nncs_iterate(sys, x);
    if (i % period != 0) continue;
    const std::size_t s = i / period;
    const Configuration& expected = r.trace[std::min(s, r.trace.size() - 1)];
    Vector want = encode_configuration(expected);
    Vector got = main_track(inst, x);
    if (got != want) {
      std::cout << "divergence at step " << i << ": interpreter " << format_vector(want) << " network "
                << format_vector(got) << '\n';
      return kDivergence;
    }
  }
  std::cout << "equivalent for " << steps << " steps\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging_from_env();
  CLI::App app{"Counter-machine compiler and reachability checker for neural-network control systems"};
  app.require_subcommand(1);

  std::string file, variant = "deep", out;
  std::size_t max_steps = 1000, steps = 10, run_steps = 10;
  std::optional<std::size_t> max_k;
  std::size_t state_limit = omega::kDefaultStateLimit;
  bool fault = false;

  auto* interpret = app.add_subcommand("interpret", "Run a counter machine and print its trace");
  interpret->add_option("machine", file, "Machine file")->required();
  interpret->add_option("--max-steps", max_steps, "Step budget");

  auto* comp = app.add_subcommand("compile", "Compile a counter machine into an instance bundle");
  comp->add_option("machine", file, "Machine file")->required();
  comp->add_option("--variant", variant, "deep or shallow")->check(CLI::IsMember({"deep", "shallow"}));
  comp->add_option("--out", out, "Output path (default: stdout)");

  auto* runc = app.add_subcommand("run", "Print the closed-loop trajectory of a bundle");
  runc->add_option("bundle", file, "Bundle file")->required();
  runc->add_option("--steps", run_steps, "Number of iterations");

  auto* check = app.add_subcommand("check", "Semi-decide reachability of the target set");
  check->add_option("bundle", file, "Bundle file")->required();
  check->add_option("--max-k", max_k, "Largest step count to examine");
  check->add_option("--state-limit", state_limit, "Largest automaton explored before giving up");
  check->add_flag("--inject-fault", fault, "Corrupt the relation automaton (self-test)")->group("");

  auto* verify = app.add_subcommand("verify-oracle", "Compare a compiled machine against the interpreter");
  verify->add_option("machine", file, "Machine file")->required();
  verify->add_option("--steps", steps, "Number of network iterations");
  verify->add_option("--variant", variant, "deep or shallow")->check(CLI::IsMember({"deep", "shallow"}));
  verify->add_flag("--inject-fault", fault, "Perturb one network weight (self-test)")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*interpret) return cmd_interpret(file, max_steps);
    if (*comp) return cmd_compile(file, variant, out);
    if (*runc) return cmd_run(file, run_steps);
    if (*check) return cmd_check(file, max_k, state_limit, fault);
    if (*verify) return cmd_verify(file, steps, variant, fault);
  } catch (const ReplayError& e) {
    std::cerr << "replay failure: " << e.what() << '\n';
    return kReplay;
  } catch (const omega::ExplorationLimit& e) {
    std::cerr << "state budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
