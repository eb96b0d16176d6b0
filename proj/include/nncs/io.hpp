#pragma once

#include "nncs/compiler.hpp"
#include "nncs/dnn.hpp"
#include "nncs/geometry.hpp"
#include "nncs/omega/nba.hpp"
#include "nncs/plant.hpp"
#include "nncs/reach.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nncs {

using Json = nlohmann::json;

/// Malformed JSON document.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const Dnn& net);
Dnn dnn_from_json(const Json& j);

Json to_json(const LinearConstraint& c);
Json to_json(const Polyhedron& p);
Json to_json(const PolyUnion& s);
LinearConstraint constraint_from_json(const Json& j);
Polyhedron polyhedron_from_json(const Json& j, std::size_t dim);
PolyUnion union_from_json(const Json& j, std::size_t dim);

Json to_json(const Plant& p);
Plant plant_from_json(const Json& j);

Json to_json(const omega::ExplicitNba& a);
omega::ExplicitNba explicit_nba_from_json(const Json& j);
std::string to_dot(const omega::ExplicitNba& a);

Json to_json(const omega::LassoWord& w);
omega::LassoWord lasso_from_json(const Json& j);

Json to_json(const TrackLayout& l);
TrackLayout layout_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// Everything the CLI needs about one instance.
struct Bundle {
  std::string variant = "custom";  // deep | shallow | custom
  Dnn controller;
  Plant plant;
  StateSet init;
  StateSet target;
  std::optional<Vector> x0;
  std::vector<std::string> state_order;
  std::optional<TrackLayout> layout;
  std::optional<std::size_t> max_k;

  ReachInstance instance() const { return ReachInstance{controller, plant, init, target}; }
};

Bundle bundle_from_compiled(const CompiledInstance& inst);
Json to_json(const Bundle& b);
Bundle bundle_from_json(const Json& j);

Json to_json(const ReachResult& r);

Json parse_json_file(const std::string& path);

}  // namespace nncs
