#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "nncs/compiler.hpp"
#include "nncs/dnn.hpp"

using namespace nncs;

namespace {

Dnn single(Vector w, Rational b, Activation act) {
  return Dnn({Layer{{std::move(w)}, {std::move(b)}, {act}}});
}

Dnn random_net(std::mt19937_64& rng, std::size_t in, std::size_t layers, bool with_bias) {
  std::vector<Layer> ls;
  std::size_t cur = in;
  for (std::size_t l = 0; l < layers; ++l) {
    std::size_t out = static_cast<std::size_t>(fixtures::uniform(rng, 1, 3));
    Layer layer;
    for (std::size_t i = 0; i < out; ++i) {
      Vector row;
      for (std::size_t j = 0; j < cur; ++j) row.push_back(fixtures::random_rational(rng, 4, 3));
      layer.weights.push_back(row);
      layer.biases.push_back(with_bias ? fixtures::random_rational(rng, 4, 3) : Rational(0));
      layer.activations.push_back(l + 1 == layers ? Activation::Identity : Activation::Relu);
    }
    ls.push_back(layer);
    cur = out;
  }
  return Dnn(ls);
}

}  // namespace

TEST_CASE("single neurons") {
  CHECK(single({1}, 0, Activation::Identity).evaluate(Vector{5}) == Vector{5});
  CHECK(single({1}, 0, Activation::Relu).evaluate(Vector{-3}) == Vector{0});
  CHECK(single({2, -1}, 1, Activation::Relu).evaluate(Vector{1, 4}) == Vector{0});
  CHECK(single({2, -1}, 1, Activation::Relu).evaluate(Vector{4, 1}) == Vector{8});
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(Dnn({}), DimensionError);
  CHECK_THROWS_AS(Dnn({Layer{{{1, 2}}, {0, 0}, {Activation::Relu}}}), DimensionError);
  Dnn a = affine_net({{1, 1}}, {0});
  Dnn b = affine_net({{1}, {1}}, {0, 0});
  CHECK_THROWS_AS(Dnn({a.layer(0), a.layer(0)}), DimensionError);
  CHECK_NOTHROW(Dnn({b.layer(0), a.layer(0)}));
  CHECK_THROWS_AS(a.evaluate(Vector{1}), DimensionError);
}

TEST_CASE("stacking") {
  Dnn id = identity_net(2);
  Dnn s1 = stack_parallel(std::vector<Dnn>{id});
  CHECK(s1 == id);

  Dnn s = stack_parallel(std::vector<Dnn>{identity_net(1), identity_net(2)});
  CHECK(s == identity_net(3));

  Dnn aux = build_aux_gadget(2).net;
  Dnn pass = relu_passthrough(2, aux.depth());
  Dnn both = stack_parallel(std::vector<Dnn>{aux, pass});
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Vector x = fixtures::random_vector(rng, 3, 20, 5);
    Vector lhs = both.evaluate(x);
    Vector rhs = aux.evaluate(Vector{x[0]});
    Vector tail = pass.evaluate(Vector{x[1], x[2]});
    rhs.insert(rhs.end(), tail.begin(), tail.end());
    CHECK(lhs == rhs);
  }
  CHECK_THROWS_AS(stack_parallel(std::vector<Dnn>{aux, identity_net(1)}), DimensionError);
}

TEST_CASE("padding") {
  Dnn padded = pad_with_passthrough(identity_net(1), 3);
  CHECK(padded.depth() == 3);
  CHECK(padded.evaluate(Vector{7}) == Vector{7});
  CHECK(padded.evaluate(Vector{-1}) == Vector{0});

  Dnn inc = build_inc_gadget(4, 0).net;
  Dnn inc3 = pad_with_passthrough(inc, 3);
  CHECK(inc3.depth() == 3);
  Vector x{2, 0, 5, 0};
  CHECK(inc3.evaluate(x) == inc.evaluate(x));

  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    Vector x4;
    for (int i = 0; i < 4; ++i) x4.push_back(Rational(fixtures::uniform(rng, 0, 9)));
    x4[3] = fixtures::uniform(rng, 0, 1);
    x4[2] = 4 + (x4[3] == 1 ? 0 : fixtures::uniform(rng, 1, 4));
    CHECK(pad_with_passthrough(inc, 5).evaluate(x4) == inc.evaluate(x4));
  }
}

TEST_CASE("composition helpers") {
  Dnn f = affine_net({{2}}, {1});
  Dnn g = affine_net({{1}, {-1}}, {0, 0});
  Dnn fg = compose_sequential(f, g);
  CHECK(fg.depth() == 2);
  CHECK(fg.evaluate(Vector{3}) == Vector{7, -7});

  Dnn pre = precompose_linear(g, {{1, 1}});
  CHECK(pre.evaluate(Vector{2, 5}) == Vector{7, -7});
}

TEST_CASE("integral nets map integers to integers") {
  std::mt19937_64 rng(3);
  for (const auto& [name, m] : fixtures::corpus()) {
    auto inst = compile_deep(m);
    REQUIRE(all_integral(inst.net));
    for (int t = 0; t < 20; ++t) {
      Vector x;
      for (int i = 0; i < 3; ++i) x.push_back(Rational(fixtures::uniform(rng, -50, 50)));
      for (const auto& v : inst.net.evaluate(x)) CHECK(is_integer(v));
    }
  }
}

TEST_CASE("bias-free ReLU nets are positively homogeneous") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 30; ++n) {
    Dnn net = random_net(rng, 2, 3, false);
    for (int t = 0; t < 10; ++t) {
      Vector x = fixtures::random_vector(rng, 2, 9, 4);
      Rational lambda(fixtures::uniform(rng, 0, 12), fixtures::uniform(rng, 1, 5));
      lambda.canonicalize();
      Vector scaled;
      for (const auto& v : x) scaled.push_back(lambda * v);
      Vector lhs = net.evaluate(scaled);
      Vector rhs = net.evaluate(x);
      for (auto& v : rhs) v *= lambda;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("outputs stay canonical") {
  Dnn net = affine_net({{Rational(1, 3), Rational(1, 6)}}, {Rational(1, 2)});
  Vector y = net.evaluate(Vector{1, 1});
  CHECK(y[0] == 1);
  CHECK(y[0].get_den() == 1);
}
