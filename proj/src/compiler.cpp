#include "nncs/compiler.hpp"

namespace nncs {

namespace {

using R = Rational;
constexpr Activation kRelu = Activation::Relu;
constexpr Activation kId = Activation::Identity;

Layer relu_layer(Matrix w, Vector b) {
  std::vector<Activation> act(w.size(), kRelu);
  return Layer{std::move(w), std::move(b), std::move(act)};
}

Vector row(std::initializer_list<long> v) {
  Vector r;
  for (long x : v) r.emplace_back(x);
  return r;
}

}  // namespace

GadgetNet build_aux_gadget(std::size_t line) {
  const R l(static_cast<long>(line));
  std::vector<Layer> layers;
  layers.push_back(relu_layer({row({1})}, {R(1) - l}));
  layers.push_back(relu_layer({row({1}), row({1})}, {R(0), R(-1)}));
  layers.push_back(relu_layer({row({1, -2})}, {R(0)}));
  return GadgetNet{Dnn(std::move(layers)), GadgetKind::Aux, line};
}

namespace {

// Shared by INC (sign +1) and DEC (sign -1).
GadgetNet counter_gadget(std::size_t line, unsigned counter, int sign, GadgetKind kind) {
  if (counter > 1) throw MachineError("counter index not in {0,1}");
  Matrix w{row({1, 0, 0, 0}), row({0, 1, 0, 0}), row({0, 0, 1, 1})};
  w[counter][3] = sign;
  return GadgetNet{Dnn({relu_layer(std::move(w), Vector(3, R(0)))}), kind, line, counter};
}

}  // namespace

GadgetNet build_inc_gadget(std::size_t line, unsigned counter) {
  return counter_gadget(line, counter, 1, GadgetKind::Inc);
}

GadgetNet build_dec_gadget(std::size_t line, unsigned counter) {
  return counter_gadget(line, counter, -1, GadgetKind::Dec);
}

GadgetNet build_jz_gadget(std::size_t line, unsigned counter, std::size_t target) {
  if (counter > 1) throw MachineError("counter index not in {0,1}");
  // (c0, c1, pc + a, a, 1 - c_i)
  Matrix w1{row({1, 0, 0, 0}), row({0, 1, 0, 0}), row({0, 0, 1, 1}), row({0, 0, 0, 1}), row({0, 0, 0, 0})};
  w1[4][counter] = -1;
  Vector b1{R(0), R(0), R(0), R(0), R(1)};
  // f = [a = 1 and c_i = 0]
  Matrix w2{row({1, 0, 0, 0, 0}), row({0, 1, 0, 0, 0}), row({0, 0, 1, 0, 0}), row({0, 0, 0, 1, 1})};
  Vector b2{R(0), R(0), R(0), R(-1)};
  // pc + 1 + (target - line - 1) = target on the jump branch
  Matrix w3{row({1, 0, 0, 0}), row({0, 1, 0, 0}), row({0, 0, 1, 0})};
  w3[2][3] = R(static_cast<long>(target)) - R(static_cast<long>(line)) - 1;
  std::vector<Layer> layers;
  layers.push_back(relu_layer(std::move(w1), std::move(b1)));
  layers.push_back(relu_layer(std::move(w2), std::move(b2)));
  layers.push_back(relu_layer(std::move(w3), Vector(3, R(0))));
  return GadgetNet{Dnn(std::move(layers)), GadgetKind::Jz, line, counter, target};
}

GadgetNet build_instruction_gadget(const CounterMachine& m, std::size_t line) {
  const Instruction& ins = m[line];
  switch (ins.op) {
    case Opcode::Inc: return build_inc_gadget(line, ins.counter);
    case Opcode::Dec: return build_dec_gadget(line, ins.counter);
    case Opcode::Jz: return build_jz_gadget(line, ins.counter, ins.target);
    case Opcode::Stop: break;
  }
  throw MachineError("STOP has no gadget");
}

namespace {

// Hidden layers 1-3: all aux gadgets side by side, sharing the counters and
// recovering pc from the first aux neuron (pc = p_0 - 1).
std::vector<Layer> selector_layers(std::size_t gadgets) {
  const std::size_t n = gadgets;
  std::vector<Layer> layers;

  // H1 = [c0, c1, p_l = ReLU(pc - l + 1)]
  Matrix w1(2 + n, Vector(3, R(0)));
  Vector b1(2 + n, R(0));
  w1[0][0] = 1;
  w1[1][1] = 1;
  for (std::size_t l = 0; l < n; ++l) {
    w1[2 + l][2] = 1;
    b1[2 + l] = R(1) - R(static_cast<long>(l));
  }
  layers.push_back(relu_layer(std::move(w1), std::move(b1)));

  // H2 = [c0, c1, pc, s_l = ReLU(p_l), t_l = ReLU(p_l - 1)]
  Matrix w2(3 + 2 * n, Vector(2 + n, R(0)));
  Vector b2(3 + 2 * n, R(0));
  w2[0][0] = 1;
  w2[1][1] = 1;
  w2[2][2] = 1;
  b2[2] = -1;
  for (std::size_t l = 0; l < n; ++l) {
    w2[3 + 2 * l][2 + l] = 1;
    w2[4 + 2 * l][2 + l] = 1;
    b2[4 + 2 * l] = -1;
  }
  layers.push_back(relu_layer(std::move(w2), std::move(b2)));

  // H3 = [c0, c1, pc, a_l = ReLU(s_l - 2 t_l)]
  Matrix w3(3 + n, Vector(3 + 2 * n, R(0)));
  w3[0][0] = 1;
  w3[1][1] = 1;
  w3[2][2] = 1;
  for (std::size_t l = 0; l < n; ++l) {
    w3[3 + l][3 + 2 * l] = 1;
    w3[3 + l][4 + 2 * l] = -2;
  }
  layers.push_back(relu_layer(std::move(w3), Vector(3 + n, R(0))));
  return layers;
}

}  // namespace

CompiledInstance compile_deep(const CounterMachine& m) {
  const std::size_t k = m.size();
  if (k < 2) throw MachineError("compilation needs at least two instructions");
  const std::size_t n = k - 1;

  Dnn selector(selector_layers(n));

  // Hidden layers 4-6: pass-through copy of (c0, c1, pc) next to every
  // instruction gadget, each fed its own (c0, c1, pc, a_l).
  std::vector<Dnn> blocks;
  blocks.push_back(relu_passthrough(3, 3));
  for (std::size_t l = 0; l < n; ++l) blocks.push_back(pad_with_passthrough(build_instruction_gadget(m, l).net, 3));
  Dnn stacked = stack_parallel(blocks);

  Matrix fan(3 + 4 * n, Vector(3 + n, R(0)));
  for (std::size_t i = 0; i < 3; ++i) fan[i][i] = 1;
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < 3; ++i) fan[3 + 4 * l + i][i] = 1;
    fan[3 + 4 * l + 3][3 + l] = 1;
  }
  Dnn gadgets = precompose_linear(stacked, fan);

  // Output: sum of gadget outputs minus (k-2) times the pass-through copy.
  Matrix wo(3, Vector(3 + 3 * n, R(0)));
  for (std::size_t i = 0; i < 3; ++i) {
    wo[i][i] = -R(static_cast<long>(k) - 2);
    for (std::size_t l = 0; l < n; ++l) wo[i][3 + 3 * l + i] = 1;
  }
  Dnn combiner({Layer{std::move(wo), Vector(3, R(0)), std::vector<Activation>(3, kId)}});

  Dnn net = compose_sequential(compose_sequential(selector, gadgets), combiner);

  PolyUnion target{3, {}};
  Polyhedron p{3, {}};
  const R last(static_cast<long>(k) - 1);
  p.add_equality(row({0, 0, 1}), last);
  p.add(LinearConstraint{row({-1, 0, 0}), R(0), Rel::Le});
  p.add(LinearConstraint{row({0, -1, 0}), R(0), Rel::Le});
  target.disjuncts.push_back(std::move(p));

  return CompiledInstance{std::move(net), Variant::Deep, {"c0", "c1", "pc"}, Vector(3, R(0)), std::move(target),
                          std::nullopt};
}

CompiledInstance compile_shallow(const CounterMachine& m) {
  const CompiledInstance deep = compile_deep(m);
  const auto& dl = deep.net.layers();  // 7 layers

  TrackLayout layout;
  std::size_t in_pos = 0, hid_pos = 0;
  for (std::size_t j = 0; j < kTracks; ++j) {
    layout.io_tracks.push_back({in_pos, in_pos + dl[j].in_dim()});
    in_pos += dl[j].in_dim();
    layout.hidden_tracks.push_back({hid_pos, hid_pos + dl[j].out_dim()});
    hid_pos += dl[j].out_dim();
  }
  for (std::size_t i = 0; i < kTracks; ++i) layout.modulo.push_back(in_pos + i);
  layout.hidden_modulo = {hid_pos, hid_pos + kTracks};
  layout.main_outputs = {0, 1, 2};
  const std::size_t io_dim = in_pos + kTracks;
  const std::size_t hid_dim = hid_pos + kTracks;

  Layer hidden{Matrix(hid_dim, Vector(io_dim, R(0))), Vector(hid_dim, R(0)), std::vector<Activation>(hid_dim, kRelu)};
  for (std::size_t j = 0; j < kTracks; ++j) {
    const Layer& src = dl[j];
    const auto& hr = layout.hidden_tracks[j];
    const auto& ir = layout.io_tracks[j];
    for (std::size_t r = 0; r < src.out_dim(); ++r) {
      for (std::size_t c = 0; c < src.in_dim(); ++c) hidden.weights[hr.begin + r][ir.begin + c] = src.weights[r][c];
      hidden.biases[hr.begin + r] = src.biases[r];
    }
  }
  for (std::size_t i = 0; i < kTracks; ++i) hidden.weights[layout.hidden_modulo.begin + i][layout.modulo[i]] = 1;

  // Block j feeds track j+1; block 7 feeds track 1. The counter shifts cyclically.
  Layer out{Matrix(io_dim, Vector(hid_dim, R(0))), Vector(io_dim, R(0)), std::vector<Activation>(io_dim, kId)};
  for (std::size_t j = 0; j < kTracks; ++j) {
    const auto& hr = layout.hidden_tracks[j];
    const auto& ir = layout.io_tracks[(j + 1) % kTracks];
    for (std::size_t r = 0; r < hr.size(); ++r) out.weights[ir.begin + r][hr.begin + r] = 1;
  }
  for (std::size_t i = 0; i < kTracks; ++i) {
    out.weights[layout.modulo[(i + 1) % kTracks]][layout.hidden_modulo.begin + i] = 1;
  }

  Dnn net({std::move(hidden), std::move(out)});

  std::vector<std::size_t> positions{0, 1, 2};
  PolyUnion target = embed(deep.target, io_dim, positions);
  Vector e1(io_dim, R(0));
  e1[layout.modulo[0]] = 1;
  Vector ne1(io_dim, R(0));
  ne1[layout.modulo[0]] = -1;
  for (auto& p : target.disjuncts) {
    p.add(LinearConstraint{e1, R(1), Rel::Le});
    p.add(LinearConstraint{ne1, R(-1), Rel::Le});
  }

  std::vector<std::string> order;
  for (std::size_t j = 0; j < kTracks; ++j) {
    for (std::size_t i = 0; i < layout.io_tracks[j].size(); ++i) {
      order.push_back(j == 0 ? deep.state_order[i] : "t" + std::to_string(j + 1) + "_" + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < kTracks; ++i) order.push_back("m" + std::to_string(i + 1));

  CompiledInstance inst{std::move(net), Variant::Shallow, std::move(order), Vector(io_dim, R(0)), std::move(target),
                        std::move(layout)};
  inst.x0[inst.layout->modulo[0]] = 1;
  return inst;
}

Vector encode_configuration(const Configuration& g) {
  return Vector{Rational(g.c0), Rational(g.c1), Rational(static_cast<unsigned long>(g.pc))};
}

Vector encode_shallow(const CompiledInstance& inst, const Configuration& g) {
  if (!inst.layout) return encode_configuration(g);
  Vector x = inst.x0;
  Vector c = encode_configuration(g);
  for (std::size_t i = 0; i < 3; ++i) x[inst.layout->main_outputs[i]] = c[i];
  return x;
}

Vector main_track(const CompiledInstance& inst, const Vector& x) {
  if (!inst.layout) return x;
  Vector r;
  for (auto p : inst.layout->main_outputs) r.push_back(x.at(p));
  return r;
}

}  // namespace nncs
