#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "nncs/io.hpp"
#include "nncs/omega/lasso.hpp"
#include "nncs/omega/relations.hpp"

using namespace nncs;

TEST_CASE("rationals") {
  CHECK(format_rational(Rational(-3) / 6) == "-1/2");
  CHECK(format_rational(Rational(4)) == "4");
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("0.5"));
  CHECK_THROWS(parse_rational(""));
  CHECK(format_vector(Vector{1, Rational(1, 3)}) == "(1, 1/3)");
}

TEST_CASE("networks") {
  auto net = compile_deep(parse_machine("JZ 0 2\nINC 1\nSTOP")).net;
  CHECK(dnn_from_json(to_json(net)) == net);
  Dnn frac = affine_net({{Rational(1, 3), -2}}, {Rational(-5, 7)});
  Json j = to_json(frac);
  CHECK(dnn_from_json(j) == frac);
  CHECK(j.dump().find("1/3") != std::string::npos);
  CHECK_THROWS_AS(dnn_from_json(Json::parse(R"({"layers": 3})")), FormatError);
}

TEST_CASE("plants and sets") {
  Plant p = fixtures::thermostat_instance().plant;
  CHECK(plant_from_json(to_json(p)) == p);
  Plant t = TrivialPlant{4};
  CHECK(plant_from_json(to_json(t)) == t);
  auto u = std::get<PolyUnion>(fixtures::thermostat_instance().target);
  CHECK(union_from_json(to_json(u), 2) == u);
}

TEST_CASE("automata") {
  auto a = omega::trim_explicit(omega::linear_relation({Rational(1), Rational(-1)}, omega::RelOp::Le, 0));
  auto b = explicit_nba_from_json(to_json(a));
  CHECK(b.size() == a.size());
  CHECK(b.accepting == a.accepting);
  CHECK(b.transitions == a.transitions);
  CHECK(to_dot(a).find("digraph") != std::string::npos);
  auto w = omega::encode_vector(Vector{1, Rational(-1, 3)});
  CHECK(lasso_from_json(to_json(w)) == w);
}

TEST_CASE("bundles round trip") {
  for (auto* text : {"INC 0\nSTOP", "JZ 0 0\nSTOP"}) {
    auto m = parse_machine(text);
    for (auto inst : {compile_deep(m), compile_shallow(m)}) {
      Bundle b = bundle_from_compiled(inst);
      Json j = to_json(b);
      Bundle c = bundle_from_json(Json::parse(j.dump()));
      CHECK(to_json(c).dump() == j.dump());
      CHECK(c.controller == inst.net);
      CHECK(c.layout == inst.layout);
    }
  }
  auto th = fixtures::thermostat_instance();
  Bundle custom{"custom", th.controller, th.plant, th.init, th.target, std::nullopt, {}, std::nullopt, 5};
  Bundle back = bundle_from_json(to_json(custom));
  CHECK(back.max_k == std::optional<std::size_t>(5));
  CHECK(to_json(back) == to_json(custom));
}

TEST_CASE("results") {
  auto r = semi_decide(fixtures::successor_instance(), 4);
  Json j = to_json(r);
  CHECK(j["outcome"] == "reached");
  CHECK(j["k"] == 3);
  CHECK(j["xk"] == Json::array({"3"}));
}
