#pragma once

#include "nncs/rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace nncs {

enum class Activation { Relu, Identity };

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense affine layer followed by a per-neuron activation.
struct Layer {
  Matrix weights;   // n rows of m entries
  Vector biases;    // n
  std::vector<Activation> activations;  // n

  std::size_t out_dim() const { return weights.size(); }
  std::size_t in_dim() const { return weights.empty() ? 0 : weights.front().size(); }

  /// Throws DimensionError unless the shape invariants hold.
  void validate() const;
  Vector apply(std::span<const Rational> x) const;

  bool operator==(const Layer&) const = default;
};

class Dnn {
 public:
  explicit Dnn(std::vector<Layer> layers);

  std::size_t input_dim() const { return layers_.front().in_dim(); }
  std::size_t output_dim() const { return layers_.back().out_dim(); }
  std::size_t depth() const { return layers_.size(); }
  std::size_t hidden_layers() const { return layers_.size() - 1; }
  const std::vector<Layer>& layers() const { return layers_; }
  const Layer& layer(std::size_t i) const { return layers_.at(i); }

  Vector evaluate(std::span<const Rational> x) const;

  bool operator==(const Dnn&) const = default;

 private:
  std::vector<Layer> layers_;
};

inline Vector evaluate(const Dnn& net, std::span<const Rational> x) { return net.evaluate(x); }

Rational relu(const Rational& v);

/// Single-layer identity-activation net computing x -> W x + b.
Dnn affine_net(Matrix weights, Vector biases);
/// Single-layer net computing the identity on dim inputs.
Dnn identity_net(std::size_t dim);
/// depth layers of ReLU pass-through neurons on dim inputs.
Dnn relu_passthrough(std::size_t dim, std::size_t depth);

/// Block-diagonal stacking. All nets must have the same depth.
Dnn stack_parallel(std::span<const Dnn> nets);
/// Appends ReLU pass-through layers until the net has `depth` layers.
Dnn pad_with_passthrough(const Dnn& net, std::size_t depth);
/// first then second; the last layer of first and the first layer of second
/// are kept as separate layers.
Dnn compose_sequential(const Dnn& first, const Dnn& second);
/// Folds x -> M x into the first layer, giving a net over M's input space.
Dnn precompose_linear(const Dnn& net, const Matrix& m);

bool all_integral(const Dnn& net);

}  // namespace nncs
