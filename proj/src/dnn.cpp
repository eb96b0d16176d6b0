#include "nncs/dnn.hpp"

#include <string>

namespace nncs {

Rational relu(const Rational& v) { return sgn(v) > 0 ? v : Rational(0); }

void Layer::validate() const {
  const std::size_t n = weights.size();
  if (n == 0) throw DimensionError("layer has no neurons");
  if (biases.size() != n || activations.size() != n) {
    throw DimensionError("layer has " + std::to_string(n) + " weight rows but " + std::to_string(biases.size()) +
                         " biases and " + std::to_string(activations.size()) + " activations");
  }
  const std::size_t m = weights.front().size();
  if (m == 0) throw DimensionError("layer has no inputs");
  for (const auto& row : weights) {
    if (row.size() != m) throw DimensionError("ragged weight matrix");
  }
}

Vector Layer::apply(std::span<const Rational> x) const {
  if (x.size() != in_dim()) {
    throw DimensionError("layer expects " + std::to_string(in_dim()) + " inputs, got " + std::to_string(x.size()));
  }
  Vector y(out_dim());
  Rational acc;
  for (std::size_t i = 0; i < y.size(); ++i) {
    acc = biases[i];
    const Vector& row = weights[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (sgn(row[j]) == 0 || sgn(x[j]) == 0) continue;
      acc += row[j] * x[j];
    }
    y[i] = activations[i] == Activation::Relu ? relu(acc) : acc;
  }
  return y;
}

Dnn::Dnn(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw DimensionError("network has no layers");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    layers_[i].validate();
    if (i > 0 && layers_[i].in_dim() != layers_[i - 1].out_dim()) {
      throw DimensionError("layer " + std::to_string(i) + " expects " + std::to_string(layers_[i].in_dim()) +
                           " inputs but layer " + std::to_string(i - 1) + " produces " +
                           std::to_string(layers_[i - 1].out_dim()));
    }
  }
}

Vector Dnn::evaluate(std::span<const Rational> x) const {
  if (x.size() != input_dim()) {
    throw DimensionError("network expects " + std::to_string(input_dim()) + " inputs, got " +
                         std::to_string(x.size()));
  }
  Vector cur(x.begin(), x.end());
  for (const auto& l : layers_) cur = l.apply(cur);
  return cur;
}

namespace {

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, Vector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Layer passthrough_layer(std::size_t dim) {
  return Layer{identity_matrix(dim), Vector(dim, Rational(0)), std::vector<Activation>(dim, Activation::Relu)};
}

}  // namespace

Dnn affine_net(Matrix weights, Vector biases) {
  std::vector<Activation> act(weights.size(), Activation::Identity);
  return Dnn({Layer{std::move(weights), std::move(biases), std::move(act)}});
}

Dnn identity_net(std::size_t dim) { return affine_net(identity_matrix(dim), Vector(dim, Rational(0))); }

Dnn relu_passthrough(std::size_t dim, std::size_t depth) {
  if (depth == 0) throw DimensionError("pass-through depth must be positive");
  return Dnn(std::vector<Layer>(depth, passthrough_layer(dim)));
}

Dnn stack_parallel(std::span<const Dnn> nets) {
  if (nets.empty()) throw DimensionError("nothing to stack");
  const std::size_t depth = nets.front().depth();
  for (const auto& n : nets) {
    if (n.depth() != depth) throw DimensionError("stack_parallel needs nets of equal depth");
  }
  std::vector<Layer> layers;
  for (std::size_t li = 0; li < depth; ++li) {
    std::size_t rows = 0, cols = 0;
    for (const auto& n : nets) {
      rows += n.layer(li).out_dim();
      cols += n.layer(li).in_dim();
    }
    Layer l{Matrix(rows, Vector(cols, Rational(0))), Vector(), {}};
    std::size_t r0 = 0, c0 = 0;
    for (const auto& n : nets) {
      const Layer& src = n.layer(li);
      for (std::size_t i = 0; i < src.out_dim(); ++i) {
        for (std::size_t j = 0; j < src.in_dim(); ++j) l.weights[r0 + i][c0 + j] = src.weights[i][j];
        l.biases.push_back(src.biases[i]);
        l.activations.push_back(src.activations[i]);
      }
      r0 += src.out_dim();
      c0 += src.in_dim();
    }
    layers.push_back(std::move(l));
  }
  return Dnn(std::move(layers));
}

Dnn pad_with_passthrough(const Dnn& net, std::size_t depth) {
  if (depth < net.depth()) {
    throw DimensionError("cannot pad a net of depth " + std::to_string(net.depth()) + " down to " +
                         std::to_string(depth));
  }
  std::vector<Layer> layers = net.layers();
  while (layers.size() < depth) layers.push_back(passthrough_layer(net.output_dim()));
  return Dnn(std::move(layers));
}

Dnn compose_sequential(const Dnn& first, const Dnn& second) {
  if (first.output_dim() != second.input_dim()) throw DimensionError("compose_sequential: dimension mismatch");
  std::vector<Layer> layers = first.layers();
  layers.insert(layers.end(), second.layers().begin(), second.layers().end());
  return Dnn(std::move(layers));
}

Dnn precompose_linear(const Dnn& net, const Matrix& m) {
  if (m.size() != net.input_dim()) throw DimensionError("precompose_linear: dimension mismatch");
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  std::vector<Layer> layers = net.layers();
  const Layer& l0 = net.layer(0);
  Matrix w(l0.out_dim(), Vector(cols, Rational(0)));
  for (std::size_t i = 0; i < l0.out_dim(); ++i) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (sgn(l0.weights[i][k]) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) w[i][j] += l0.weights[i][k] * m[k][j];
    }
  }
  layers[0].weights = std::move(w);
  return Dnn(std::move(layers));
}

bool all_integral(const Dnn& net) {
  for (const auto& l : net.layers()) {
    for (const auto& row : l.weights) {
      for (const auto& w : row) {
        if (!is_integer(w)) return false;
      }
    }
    for (const auto& b : l.biases) {
      if (!is_integer(b)) return false;
    }
  }
  return true;
}

}  // namespace nncs
