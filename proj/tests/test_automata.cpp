#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "nncs/omega/lasso.hpp"
#include "nncs/omega/ops.hpp"
#include "nncs/omega/relations.hpp"

using namespace nncs;
using namespace nncs::omega;

namespace {

bool accepts(const Nba& a, const Vector& x, const EncodeOptions& o = {}) { return member(a, encode_vector(x, o)); }

Nba le(std::vector<long> a, long b) {
  Vector v;
  for (long x : a) v.push_back(x);
  return linear_relation(v, RelOp::Le, b);
}

Nba eq(std::vector<long> a, long b) {
  Vector v;
  for (long x : a) v.push_back(x);
  return linear_relation(v, RelOp::Eq, b);
}

std::vector<LassoWord> sample_words(std::mt19937_64& rng, std::size_t arity, int n) {
  std::vector<LassoWord> out;
  for (int i = 0; i < n; ++i) {
    EncodeOptions o;
    o.extra_leading_zeros = static_cast<std::size_t>(fixtures::uniform(rng, 0, 2));
    for (std::size_t t = 0; t < arity; ++t) o.dual.push_back(fixtures::uniform(rng, 0, 1) == 1);
    out.push_back(encode_vector(fixtures::random_vector(rng, arity, 6, 4), o));
  }
  return out;
}

}  // namespace

TEST_CASE("well-formed words") {
  Nba w2 = wff(2);
  CHECK(accepts(w2, Vector{1, Rational(-1, 2)}));
  CHECK_FALSE(member(w2, zip({parse_lasso("+10.(0)"), parse_lasso("+1.0(0)")})));
  CHECK_FALSE(member(w2, zip({parse_lasso("+1.0.(0)"), parse_lasso("+100.(0)")})));
  CHECK_FALSE(member(wff(1), parse_lasso("1.(0)")));
  CHECK_FALSE(member(wff(1), parse_lasso("+1(0)")));
  CHECK(member(wff(1), parse_lasso("+0.(1)")));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) CHECK(member(wff(1), encode(fixtures::random_rational(rng, 1000, 1000))));
  auto w = find_accepted(wff(1));
  REQUIRE(w);
  CHECK(member(wff(1), *w));
}

TEST_CASE("linear constraints") {
  Nba x_le0 = le({1}, 0);
  CHECK(accepts(x_le0, Vector{-3}));
  CHECK_FALSE(accepts(x_le0, Vector{Rational(1, 2)}));
  Nba diag = eq({1, -1}, 0);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    Rational q = fixtures::random_rational(rng, 50, 9);
    CHECK(accepts(diag, Vector{q, q}));
    CHECK_FALSE(accepts(diag, Vector{q, q + Rational(1, 8)}));
  }
  Nba one = eq({1}, 1);
  CHECK(member(one, parse_lasso("+1.(0)")));
  CHECK(member(one, parse_lasso("+0.(1)")));
  CHECK(member(one, parse_lasso("+0001.(0)")));
  CHECK_FALSE(member(one, parse_lasso("+0.1(0)")));
  Nba neg = linear_relation({Rational(1)}, RelOp::Lt, 0);
  CHECK_FALSE(member(neg, encode(0)));
  CHECK_FALSE(member(neg, parse_lasso("-0.(0)")));
  CHECK(member(neg, parse_lasso("-0.0(1)")));
}

TEST_CASE("constraints with fractional coefficients") {
  Nba c = linear_relation({Rational(1, 3), Rational(-2, 5)}, RelOp::Le, Rational(1, 7));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 80; ++t) {
    Vector x = fixtures::random_vector(rng, 2, 12, 6);
    bool expect = x[0] / 3 - x[1] * 2 / 5 <= Rational(1, 7);
    CHECK(accepts(c, x) == expect);
  }
}

TEST_CASE("intersection and union") {
  Nba zero = intersect(intersect(wff(1), le({1}, 0)), le({-1}, 0));
  CHECK(accepts(zero, Vector{0}));
  CHECK_FALSE(accepts(zero, Vector{1}));
  CHECK_FALSE(accepts(zero, Vector{-1}));
  CHECK(is_empty(intersect(le({1}, 0), empty_nba(1))));
  CHECK(is_empty(intersect(le({1}, 0), le({-1}, -1))));

  Nba split = unite(le({1}, 0), linear_relation({Rational(-1)}, RelOp::Lt, 0));
  std::mt19937_64 rng(4);
  for (auto& w : sample_words(rng, 1, 40)) {
    CHECK(member(split, w));
    CHECK(member(unite(le({1}, 1), empty_nba(1)), w) == member(le({1}, 1), w));
    CHECK(member(intersect(le({1}, 1), le({1}, 1)), w) == member(le({1}, 1), w));
  }
}

TEST_CASE("embedding, cylindrification and projection") {
  Nba c = cylindrify(le({1}, 0), 1, 1);
  CHECK(c.arity() == 2);
  CHECK(accepts(c, Vector{-1, 17}));
  CHECK_FALSE(accepts(c, Vector{1, 17}));
  std::vector<std::size_t> keep0{0};
  std::mt19937_64 rng(5);
  Nba back = project(intersect(wff(2), c), keep0);
  for (auto& w : sample_words(rng, 1, 30)) CHECK(member(back, w) == member(le({1}, 0), w));

  Nba id_x = project(identity_relation(1), keep0);
  for (auto& w : sample_words(rng, 1, 30)) CHECK(member(id_x, w));

  Polyhedron p{2, {}};
  p.add_equality({1, 0}, 1).add_equality({0, 1}, 2);
  Nba one = project(poly_to_nba(p), keep0);
  CHECK(accepts(one, Vector{1}));
  CHECK_FALSE(accepts(one, Vector{2}));
  CHECK(is_empty(project(empty_nba(2), keep0)));

  std::vector<std::size_t> pos{2};
  Nba e = embed(le({1}, 0), 3, pos);
  CHECK(e.arity() == 3);
  CHECK(accepts(e, Vector{5, 5, -1}));
  CHECK_FALSE(accepts(e, Vector{-5, -5, 1}));
}

TEST_CASE("duplicating tracks") {
  Nba d = duplicate_tracks(wff(1), 1);
  CHECK(d.arity() == 2);
  CHECK(accepts(d, Vector{3, 3}));
  CHECK_FALSE(accepts(d, Vector{3, 2}));

  Dnn net = affine_net({{2}}, {1});
  Nba graph = duplicate_tracks(dnn_to_nba(net), 1);
  std::mt19937_64 rng(6);
  for (int t = 0; t < 15; ++t) {
    Rational x = fixtures::random_rational(rng, 20, 4);
    CHECK(accepts(graph, Vector{x, x, 2 * x + 1}));
    CHECK_FALSE(accepts(graph, Vector{x, x + 1, 2 * x + 1}));
  }
}

TEST_CASE("composition") {
  Nba f = dnn_to_nba(affine_net({{1}}, {1}));
  Nba g = dnn_to_nba(affine_net({{2}}, {0}));
  Nba fg = compose(f, 1, g);
  CHECK(accepts(fg, Vector{1, 4}));
  CHECK_FALSE(accepts(fg, Vector{1, 3}));
  std::mt19937_64 rng(7);
  Nba le1 = le({1, -1}, 0);
  Nba left = compose(identity_relation(1), 1, le1);
  Nba right = compose(le1, 1, identity_relation(1));
  for (auto& w : sample_words(rng, 2, 30)) {
    CHECK(member(left, w) == member(le1, w));
    CHECK(member(right, w) == member(le1, w));
  }
}

TEST_CASE("relu relation") {
  Nba r = relu_relation();
  CHECK(accepts(r, Vector{-3, 0}));
  CHECK(accepts(r, Vector{Rational(5, 2), Rational(5, 2)}));
  CHECK(accepts(r, Vector{0, 0}));
  CHECK_FALSE(accepts(r, Vector{0, 1}));
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    Rational x = fixtures::random_rational(rng, 30, 5);
    CHECK(accepts(r, Vector{x, relu(x)}));
    CHECK_FALSE(accepts(r, Vector{x, relu(x) + Rational(1, 2)}));
  }
}

TEST_CASE("network graphs") {
  Nba id = dnn_to_nba(identity_net(1));
  CHECK(accepts(id, Vector{Rational(3, 4), Rational(3, 4)}));
  CHECK_FALSE(accepts(id, Vector{Rational(3, 4), 1}));

  Nba shifted = dnn_to_nba(Dnn({Layer{{{1}}, {-1}, {Activation::Relu}}}));
  CHECK(accepts(shifted, Vector{0, 0}));
  CHECK(accepts(shifted, Vector{3, 2}));
  CHECK_FALSE(accepts(shifted, Vector{3, 3}));

  Dnn two({Layer{{{1}}, {0}, {Activation::Relu}}, Layer{{{2}}, {0}, {Activation::Identity}}});
  Nba t = dnn_to_nba(two);
  CHECK(accepts(t, Vector{-1, 0}));
  CHECK(accepts(t, Vector{3, 6}));
  CHECK_FALSE(accepts(t, Vector{3, 5}));
}

TEST_CASE("plant graphs") {
  Nba triv = plant_to_nba(TrivialPlant{1});
  CHECK(accepts(triv, Vector{9, 4, 4}));
  CHECK_FALSE(accepts(triv, Vector{9, 4, 5}));

  MultiModeLinearMap h;
  h.modes = {0};
  h.d = 1;
  h.c = 1;
  h.edges = {{0, 0}};
  h.flow[0] = AffineFlow{{{1}}, {{0}}, {0}};
  h.guard[{0, 0}] = PolyUnion::of(Polyhedron::universe(2));
  Nba ident = plant_to_nba(h);
  CHECK(accepts(ident, Vector{0, Rational(7, 3), 5, 0, Rational(7, 3)}));
  CHECK_FALSE(accepts(ident, Vector{0, Rational(7, 3), 5, 0, 2}));

  Plant part = fixtures::partition_plant();
  Nba p = plant_to_nba(part);
  CHECK(accepts(p, Vector{0, 0, 1, 1, 1}));
  CHECK_FALSE(accepts(p, Vector{0, 0, 1, 0, 1}));
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    Vector x{Rational(fixtures::uniform(rng, 0, 1)), fixtures::random_rational(rng, 6, 3)};
    Vector u{fixtures::random_rational(rng, 6, 3)};
    Vector y = plant_apply(part, x, u);
    Vector w = x;
    w.push_back(u[0]);
    w.insert(w.end(), y.begin(), y.end());
    CHECK(accepts(p, w));
  }
}

TEST_CASE("polyhedra as automata") {
  Polyhedron three{1, {}};
  three.add_equality({1}, 3);
  CHECK(member(poly_to_nba(three), parse_lasso("+11.(0)")));
  CHECK(is_empty(poly_to_nba(PolyUnion::empty(2), 2)));
  std::mt19937_64 rng(10);
  for (int n = 0; n < 4; ++n) {
    PolyUnion s{2, {}};
    for (int d = 0; d < 2; ++d) {
      Polyhedron q{2, {}};
      for (int k = 0; k < 2; ++k)
        q.add(fixtures::constraint({fixtures::uniform(rng, -3, 3), fixtures::uniform(rng, -3, 3)},
                                   fixtures::uniform(rng, 0, 1) ? Rel::Le : Rel::Lt, fixtures::uniform(rng, -3, 3)));
      s.disjuncts.push_back(q);
    }
    Nba a = poly_to_nba(s, 2);
    for (int t = 0; t < 200; ++t) {
      Vector x = fixtures::random_vector(rng, 2, 8, 4);
      CHECK(accepts(a, x) == contains(s, x));
    }
  }
}

TEST_CASE("emptiness and trimming") {
  ExplicitNba no_acc{1, 0, {false}, {{{Cube{kAny}, 0}}}, false};
  CHECK(is_empty(make_nba(no_acc)));
  Nba a = intersect(wff(1), le({1}, 2));
  ExplicitNba t1 = trim_explicit(a);
  ExplicitNba t2 = trim_explicit(make_nba(t1));
  CHECK(t1.size() == t2.size());
  CHECK(t1.transition_count() == t2.transition_count());
  CHECK(t1.accepting == t2.accepting);
  std::mt19937_64 rng(11);
  for (auto& w : sample_words(rng, 1, 50)) CHECK(member(make_nba(t1), w) == member(a, w));
  ExplicitNba e = trim_explicit(intersect(le({1}, 0), le({-1}, -1)));
  CHECK(e.size() == 1);
  CHECK(is_empty(make_nba(e)));
  for (auto& w : sample_words(rng, 1, 100)) CHECK_FALSE(member(make_nba(e), w));
  auto w = find_accepted(a);
  REQUIRE(w);
  CHECK(member(a, *w));
}

TEST_CASE("exploration limit") {
  Nba big = dnn_to_nba(affine_net({{1, 1, 1}}, {0}));
  CHECK_THROWS_AS(materialize(big, 3), ExplorationLimit);
}

TEST_CASE("transition corruption") {
  ExplicitNba t = trim_explicit(le({1}, 0));
  auto c = corrupt_transition(t, 0, kZero, kOne, 0);
  REQUIRE(c);
  CHECK(c->transition_count() == t.transition_count());
  CHECK_FALSE(corrupt_transition(t, 0, kPoint | kOne, kOne, 0).has_value());
}
