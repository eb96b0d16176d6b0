#pragma once

#include "nncs/counter_machine.hpp"
#include "nncs/dnn.hpp"
#include "nncs/geometry.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nncs {

enum class GadgetKind { Aux, Inc, Dec, Jz };

struct GadgetNet {
  Dnn net;
  GadgetKind kind;
  std::size_t line = 0;
  unsigned counter = 0;    // Inc/Dec/Jz
  std::size_t target = 0;  // Jz
};

/// a = ReLU(ReLU(pc-l+1) - 2 ReLU(pc-l)), which is 1 iff pc = l on naturals.
GadgetNet build_aux_gadget(std::size_t line);
/// The instruction gadgets read (c0, c1, pc, a) and write (c0', c1', pc').
GadgetNet build_inc_gadget(std::size_t line, unsigned counter);
GadgetNet build_dec_gadget(std::size_t line, unsigned counter);
GadgetNet build_jz_gadget(std::size_t line, unsigned counter, std::size_t target);
GadgetNet build_instruction_gadget(const CounterMachine& m, std::size_t line);

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const IndexRange&) const = default;
};

/// Shallow-variant wiring. Input and output vectors share one layout:
/// seven tracks followed by the seven modulo wires.
struct TrackLayout {
  std::vector<IndexRange> hidden_tracks;  // 7 blocks of the hidden layer
  IndexRange hidden_modulo;               // 7 neurons after the blocks
  std::vector<IndexRange> io_tracks;      // 7 blocks of the input/output vector
  std::vector<std::size_t> modulo;        // positions of m^1..m^7
  std::vector<std::size_t> main_outputs;  // positions of (c0, c1, pc)

  bool operator==(const TrackLayout&) const = default;
};

enum class Variant { Deep, Shallow };

struct CompiledInstance {
  Dnn net;
  Variant variant;
  std::vector<std::string> state_order;
  Vector x0;
  PolyUnion target;
  std::optional<TrackLayout> layout;
};

inline constexpr std::size_t kDeepHiddenLayers = 6;
inline constexpr std::size_t kTracks = 7;

/// Requires at least two instructions.
CompiledInstance compile_deep(const CounterMachine& m);
CompiledInstance compile_shallow(const CounterMachine& m);

/// Encodes (c0, c1, pc) as a deep-net input.
Vector encode_configuration(const Configuration& g);
/// Extended shallow state: g on track 1, zeros elsewhere, m = (1,0,...,0).
Vector encode_shallow(const CompiledInstance& inst, const Configuration& g);
/// Projects a shallow state to its main track.
Vector main_track(const CompiledInstance& inst, const Vector& x);

}  // namespace nncs
