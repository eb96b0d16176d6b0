#include "nncs/io.hpp"

#include <fstream>
#include <sstream>

namespace nncs {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  fail("expected a rational string, got " + j.dump());
}

std::size_t size_from_json(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0)) {
    fail(std::string("expected a natural number for ") + what);
  }
  return j.get<std::size_t>();
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) fail("expected a matrix");
  Matrix m;
  for (const auto& row : j) m.push_back(vector_from_json(row));
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json j = Json::array();
  for (const auto& row : m) j.push_back(vector_to_json(row));
  return j;
}

Json set_to_json(const StateSet& s) {
  if (const auto* p = std::get_if<PolyUnion>(&s)) return Json{{"polyhedra", to_json(*p)}};
  return Json{{"automaton", to_json(omega::materialize(std::get<omega::Nba>(s)))}};
}

StateSet set_from_json(const Json& j, std::size_t dim) {
  if (j.is_object() && j.contains("polyhedra")) return union_from_json(j.at("polyhedra"), dim);
  if (j.is_object() && j.contains("automaton")) {
    auto a = explicit_nba_from_json(j.at("automaton"));
    if (a.arity != dim) fail("automaton arity does not match the state dimension");
    return omega::make_nba(std::move(a));
  }
  if (j.is_array()) return union_from_json(j, dim);
  fail("a state set needs 'polyhedra' or 'automaton'");
}

}  // namespace

Json vector_to_json(const Vector& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(format_rational(q));
  return j;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) fail("expected an array of rationals");
  Vector v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Json to_json(const Dnn& net) {
  Json layers = Json::array();
  for (const auto& l : net.layers()) {
    Json acts = Json::array();
    for (auto a : l.activations) acts.push_back(a == Activation::Relu ? "relu" : "id");
    layers.push_back(Json{{"weights", matrix_to_json(l.weights)}, {"biases", vector_to_json(l.biases)},
                          {"activations", acts}});
  }
  return Json{{"layers", layers}};
}

Dnn dnn_from_json(const Json& j) {
  const Json& layers = field(j, "layers");
  if (!layers.is_array() || layers.empty()) fail("'layers' must be a nonempty array");
  std::vector<Layer> out;
  for (const auto& lj : layers) {
    Layer l;
    l.weights = matrix_from_json(field(lj, "weights"));
    l.biases = vector_from_json(field(lj, "biases"));
    const Json& acts = field(lj, "activations");
    if (!acts.is_array()) fail("'activations' must be an array");
    for (const auto& a : acts) {
      if (a == "relu") l.activations.push_back(Activation::Relu);
      else if (a == "id") l.activations.push_back(Activation::Identity);
      else fail("unknown activation " + a.dump());
    }
    out.push_back(std::move(l));
  }
  try {
    return Dnn(std::move(out));
  } catch (const DimensionError& e) {
    fail(e.what());
  }
}

Json to_json(const LinearConstraint& c) {
  return Json{{"a", vector_to_json(c.a)}, {"b", format_rational(c.b)}, {"rel", c.rel == Rel::Le ? "le" : "lt"}};
}

Json to_json(const Polyhedron& p) {
  Json j = Json::array();
  for (const auto& c : p.constraints) j.push_back(to_json(c));
  return j;
}

Json to_json(const PolyUnion& s) {
  Json j = Json::array();
  for (const auto& p : s.disjuncts) j.push_back(to_json(p));
  return j;
}

LinearConstraint constraint_from_json(const Json& j) {
  LinearConstraint c;
  c.a = vector_from_json(field(j, "a"));
  c.b = rational_from_json(field(j, "b"));
  const Json& rel = field(j, "rel");
  if (rel == "le") c.rel = Rel::Le;
  else if (rel == "lt") c.rel = Rel::Lt;
  else fail("unknown relation " + rel.dump());
  if (c.a.empty()) fail("constraint with no coefficients");
  return c;
}

Polyhedron polyhedron_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) fail("a polyhedron is an array of constraints");
  Polyhedron p{dim, {}};
  for (const auto& c : j) {
    auto lc = constraint_from_json(c);
    if (lc.a.size() != dim) fail("constraint dimension does not match");
    p.constraints.push_back(std::move(lc));
  }
  return p;
}

PolyUnion union_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) fail("a union is an array of polyhedra");
  PolyUnion s{dim, {}};
  for (const auto& p : j) s.disjuncts.push_back(polyhedron_from_json(p, dim));
  return s;
}

Json to_json(const Plant& p) {
  if (const auto* t = std::get_if<TrivialPlant>(&p)) return Json{{"kind", "trivial"}, {"d", t->d}};
  const auto& h = std::get<MultiModeLinearMap>(p);
  Json flows = Json::array();
  for (const auto& [m, f] : h.flow) {
    flows.push_back(Json{{"mode", m}, {"A", matrix_to_json(f.A)}, {"B", matrix_to_json(f.B)},
                         {"c", vector_to_json(f.c)}});
  }
  Json edges = Json::array();
  for (const auto& e : h.edges) {
    Json g = h.guard.count(e) ? to_json(h.guard.at(e)) : Json::array();
    edges.push_back(Json{{"from", e.first}, {"to", e.second}, {"guard", g}});
  }
  return Json{{"kind", "multimode"}, {"d", h.d}, {"c", h.c}, {"modes", h.modes}, {"flows", flows}, {"edges", edges}};
}

Plant plant_from_json(const Json& j) {
  const Json& kind = field(j, "kind");
  if (kind == "trivial") {
    std::size_t d = size_from_json(field(j, "d"), "d");
    if (d == 0) fail("plant dimension must be positive");
    return TrivialPlant{d};
  }
  if (kind != "multimode") fail("unknown plant kind " + kind.dump());
  MultiModeLinearMap h;
  h.d = size_from_json(field(j, "d"), "d");
  h.c = size_from_json(field(j, "c"), "c");
  if (h.d == 0 || h.c == 0) fail("plant dimensions must be positive");
  for (const auto& m : field(j, "modes")) h.modes.push_back(size_from_json(m, "mode"));
  for (const auto& f : field(j, "flows")) {
    AffineFlow fl{matrix_from_json(field(f, "A")), matrix_from_json(field(f, "B")), vector_from_json(field(f, "c"))};
    h.flow[size_from_json(field(f, "mode"), "mode")] = std::move(fl);
  }
  for (const auto& e : field(j, "edges")) {
    Edge edge{size_from_json(field(e, "from"), "from"), size_from_json(field(e, "to"), "to")};
    h.edges.push_back(edge);
    h.guard[edge] = union_from_json(field(e, "guard"), h.d + h.c);
  }
  ValidationReport r = validate_multimode(h);
  if (!r.structural.empty()) fail("multi-mode plant: " + r.structural.front());
  return h;
}

Json to_json(const omega::ExplicitNba& a) {
  Json acc = Json::array(), trans = Json::array();
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a.accepting[s]) acc.push_back(s);
    for (const auto& [label, t] : a.transitions[s]) {
      Json l = Json::array();
      for (auto m : label) l.push_back(omega::mask_chars(m));
      trans.push_back(Json{{"from", s}, {"to", t}, {"label", l}});
    }
  }
  return Json{{"arity", a.arity}, {"initial", a.initial}, {"states", a.size()},
              {"accepting", acc},  {"transitions", trans}, {"weak", a.weak}};
}

omega::ExplicitNba explicit_nba_from_json(const Json& j) {
  omega::ExplicitNba a;
  a.arity = size_from_json(field(j, "arity"), "arity");
  a.initial = static_cast<std::uint32_t>(size_from_json(field(j, "initial"), "initial"));
  const std::size_t n = size_from_json(field(j, "states"), "states");
  if (n == 0) fail("automaton needs at least one state");
  a.accepting.assign(n, false);
  a.transitions.resize(n);
  for (const auto& s : field(j, "accepting")) {
    std::size_t i = size_from_json(s, "accepting state");
    if (i >= n) fail("accepting state out of range");
    a.accepting[i] = true;
  }
  for (const auto& t : field(j, "transitions")) {
    std::size_t from = size_from_json(field(t, "from"), "from"), to = size_from_json(field(t, "to"), "to");
    if (from >= n || to >= n) fail("transition state out of range");
    omega::Cube label;
    for (const auto& l : field(t, "label")) {
      if (!l.is_string()) fail("labels are strings of letters");
      try {
        label.push_back(omega::parse_mask(l.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    a.transitions[from].emplace_back(std::move(label), static_cast<std::uint32_t>(to));
  }
  a.weak = j.contains("weak") && j.at("weak").is_boolean() && j.at("weak").get<bool>();
  try {
    a.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return a;
}

std::string to_dot(const omega::ExplicitNba& a) {
  std::ostringstream out;
  out << "digraph nba {\n  rankdir=LR;\n  init [shape=point];\n";
  for (std::size_t s = 0; s < a.size(); ++s) {
    out << "  q" << s << " [shape=" << (a.accepting[s] ? "doublecircle" : "circle") << "];\n";
  }
  out << "  init -> q" << a.initial << ";\n";
  for (std::size_t s = 0; s < a.size(); ++s) {
    for (const auto& [label, t] : a.transitions[s]) {
      out << "  q" << s << " -> q" << t << " [label=\"";
      for (std::size_t i = 0; i < label.size(); ++i) out << (i ? "," : "") << omega::mask_chars(label[i]);
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

Json to_json(const omega::LassoWord& w) { return Json{{"prefix", w.prefix}, {"cycle", w.cycle}}; }

omega::LassoWord lasso_from_json(const Json& j) {
  omega::LassoWord w;
  try {
    w.prefix = field(j, "prefix").get<std::vector<std::string>>();
    w.cycle = field(j, "cycle").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    fail(e.what());
  }
  w.arity = w.cycle.empty() ? 1 : w.cycle.front().size();
  try {
    w.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return w;
}

Json to_json(const TrackLayout& l) {
  auto ranges = [](const std::vector<IndexRange>& rs) {
    Json j = Json::array();
    for (const auto& r : rs) j.push_back(Json::array({r.begin, r.end}));
    return j;
  };
  return Json{{"hidden_tracks", ranges(l.hidden_tracks)},
              {"hidden_modulo", Json::array({l.hidden_modulo.begin, l.hidden_modulo.end})},
              {"io_tracks", ranges(l.io_tracks)},
              {"modulo", l.modulo},
              {"main_outputs", l.main_outputs}};
}

TrackLayout layout_from_json(const Json& j) {
  auto range = [](const Json& r) {
    if (!r.is_array() || r.size() != 2) fail("a range is [begin, end]");
    return IndexRange{size_from_json(r[0], "range"), size_from_json(r[1], "range")};
  };
  TrackLayout l;
  for (const auto& r : field(j, "hidden_tracks")) l.hidden_tracks.push_back(range(r));
  l.hidden_modulo = range(field(j, "hidden_modulo"));
  for (const auto& r : field(j, "io_tracks")) l.io_tracks.push_back(range(r));
  for (const auto& m : field(j, "modulo")) l.modulo.push_back(size_from_json(m, "modulo"));
  for (const auto& m : field(j, "main_outputs")) l.main_outputs.push_back(size_from_json(m, "main_outputs"));
  return l;
}

Bundle bundle_from_compiled(const CompiledInstance& inst) {
  Bundle b{inst.variant == Variant::Deep ? "deep" : "shallow",
           inst.net,
           TrivialPlant{inst.net.output_dim()},
           PolyUnion::of(point_polyhedron(inst.x0)),
           inst.target,
           inst.x0,
           inst.state_order,
           inst.layout,
           std::nullopt};
  return b;
}

Json to_json(const Bundle& b) {
  Json j{{"format", "nncs-bundle"},
         {"variant", b.variant},
         {"hidden_layers", b.controller.hidden_layers()},
         {"input_dim", b.controller.input_dim()},
         {"output_dim", b.controller.output_dim()},
         {"controller", to_json(b.controller)},
         {"plant", to_json(b.plant)},
         {"init", set_to_json(b.init)},
         {"target", set_to_json(b.target)}};
  if (b.x0) j["x0"] = vector_to_json(*b.x0);
  if (!b.state_order.empty()) j["state_order"] = b.state_order;
  if (b.layout) j["layout"] = to_json(*b.layout);
  if (b.max_k) j["options"] = Json{{"max_k", *b.max_k}};
  return j;
}

Bundle bundle_from_json(const Json& j) {
  if (!j.is_object()) fail("bundle must be a JSON object");
  Dnn controller = dnn_from_json(field(j, "controller"));
  Plant plant = plant_from_json(field(j, "plant"));
  const std::size_t d = state_dim(plant);
  Bundle b{"custom", controller, plant, set_from_json(field(j, "init"), d), set_from_json(field(j, "target"), d),
           std::nullopt, {}, std::nullopt, std::nullopt};
  if (j.contains("variant")) b.variant = j.at("variant").get<std::string>();
  if (j.contains("x0")) {
    b.x0 = vector_from_json(j.at("x0"));
    if (b.x0->size() != d) fail("x0 has the wrong dimension");
  }
  if (j.contains("state_order")) b.state_order = j.at("state_order").get<std::vector<std::string>>();
  if (j.contains("layout")) b.layout = layout_from_json(j.at("layout"));
  if (j.contains("options") && j.at("options").contains("max_k")) {
    b.max_k = size_from_json(j.at("options").at("max_k"), "max_k");
  }
  try {
    b.instance().validate();
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return b;
}

Json to_json(const ReachResult& r) {
  Json states = r.relation_states;
  if (const auto* re = std::get_if<Reached>(&r.outcome)) {
    return Json{{"outcome", "reached"},       {"k", re->k}, {"x0", vector_to_json(re->x0)},
                {"xk", vector_to_json(re->xk)}, {"witness", to_json(re->witness)}, {"relation_states", states}};
  }
  return Json{{"outcome", "unknown"}, {"bound", std::get<Unknown>(r.outcome).bound}, {"relation_states", states}};
}

Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(path + ": " + e.what());
  }
}

}  // namespace nncs
