#include "nncs/reach.hpp"

#include "nncs/omega/lasso.hpp"
#include "nncs/omega/ops.hpp"
#include "nncs/omega/relations.hpp"

#include "nncs/log.hpp"

#include <numeric>

namespace nncs {

using omega::Nba;

namespace {

std::vector<std::size_t> iota_vec(std::size_t from, std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), from);
  return v;
}

std::size_t set_dim(const StateSet& s) {
  if (const auto* p = std::get_if<PolyUnion>(&s)) return p->dim;
  return std::get<Nba>(s).arity();
}

}  // namespace

void ReachInstance::validate() const {
  Nncs{plant, controller}.validate();
  if (set_dim(init) != dim()) throw DimensionError("initial set dimension does not match the plant state");
  if (set_dim(target) != dim()) throw DimensionError("target set dimension does not match the plant state");
  if (const auto* h = std::get_if<MultiModeLinearMap>(&plant)) {
    ValidationReport r = validate_multimode(*h);
    if (!r.structural.empty()) throw PlantError("multi-mode map is malformed: " + r.structural.front());
  }
}

Nba build_identity_relation(std::size_t d) { return omega::identity_relation(d); }

Nba build_step_relation(const ReachInstance& inst) {
  const std::size_t d = inst.dim(), c = control_dim(inst.plant);
  Nba controller = omega::duplicate_tracks(omega::dnn_to_nba(inst.controller), d);
  return omega::compose_canonical(controller, d + c, omega::plant_to_nba(inst.plant));
}

Nba iterate_relation(const Nba& step, std::size_t d, std::size_t k) {
  Nba rel = omega::trim(build_identity_relation(d));
  for (std::size_t i = 0; i < k; ++i) rel = omega::trim(omega::compose_canonical(rel, d, step));
  return rel;
}

Nba widen_init(const Nba& a0, std::size_t d) {
  auto pos = iota_vec(0, d);
  return omega::intersect(omega::wff(2 * d), omega::embed(a0, 2 * d, pos));
}

Nba widen_target(const Nba& target, std::size_t d) {
  auto pos = iota_vec(d, d);
  return omega::intersect(omega::wff(2 * d), omega::embed(target, 2 * d, pos));
}

Nba state_set_nba(const StateSet& s, std::size_t d) {
  if (const auto* p = std::get_if<PolyUnion>(&s)) return omega::poly_to_nba(*p, d);
  const Nba& a = std::get<Nba>(s);
  if (a.arity() != d) throw DimensionError("state automaton arity does not match the state dimension");
  return a;
}

bool state_set_contains(const StateSet& s, std::span<const Rational> x) {
  if (const auto* p = std::get_if<PolyUnion>(&s)) return contains(*p, x);
  return omega::member(std::get<Nba>(s), omega::encode_vector(x));
}

ImageRelation::ImageRelation(const ReachInstance& inst, std::size_t state_limit)
    : inst_(&inst), limit_(state_limit), rel_(omega::empty_nba(1)) {
  const std::size_t d = inst.dim();
  auto all = iota_vec(0, 2 * d);
  std::vector<Nba> parts{widen_init(state_set_nba(inst.init, d), d), build_identity_relation(d),
                         omega::canonical_monitor(2 * d, all)};
  rel_ = omega::trim(omega::intersect_all(parts), limit_);
  states_ = omega::state_count(rel_, limit_);
}

void ImageRelation::advance() {
  const std::size_t d = inst_->dim();
  std::size_t n = 2 * d;
  std::vector<std::size_t> in_pos = iota_vec(d, d);

  // Adds one track holding f(tracks at `from`), where `rel` relates (from..., new).
  auto extend = [&](const Nba& rel, const std::vector<std::size_t>& from) {
    std::vector<std::size_t> pos = from;
    pos.push_back(n);
    std::vector<std::size_t> fresh{n};
    std::vector<Nba> parts{omega::embed(rel_, n + 1, iota_vec(0, n)), omega::embed(rel, n + 1, pos),
                           omega::canonical_monitor(n + 1, fresh)};
    rel_ = omega::trim(omega::intersect_all(parts), limit_);
    ++n;
  };

  const auto& layers = inst_->controller.layers();
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const Layer& l = layers[li];
    std::vector<std::size_t> out_pos;
    for (std::size_t i = 0; i < l.out_dim(); ++i) {
      Vector w;
      std::vector<std::size_t> from;
      for (std::size_t j = 0; j < l.in_dim(); ++j) {
        if (sgn(l.weights[i][j]) == 0) continue;
        w.push_back(l.weights[i][j]);
        from.push_back(in_pos[j]);
      }
      out_pos.push_back(n);
      if (w.empty()) {
        // Constant neuron.
        Vector one{Rational(1)};
        Rational v = l.activations[i] == Activation::Relu ? relu(l.biases[i]) : l.biases[i];
        extend(omega::linear_relation(one, omega::RelOp::Eq, v), {});
      } else {
        extend(omega::neuron_relation(w, l.biases[i], l.activations[i]), from);
      }
    }
    // Keep x0, the current state, and this layer's outputs.
    std::vector<std::size_t> keep = iota_vec(0, 2 * d);
    keep.insert(keep.end(), out_pos.begin(), out_pos.end());
    if (keep.size() < n) {
      rel_ = omega::trim(omega::project(rel_, keep), limit_);
      n = keep.size();
    }
    in_pos = iota_vec(2 * d, out_pos.size());
    if (logger().should_log(spdlog::level::debug)) {
      logger().debug("k={} layer {}: {} states", k_ + 1, li, omega::state_count(rel_, limit_));
    }
  }

  // Plant over (x, u, x').
  std::vector<std::size_t> pos = iota_vec(d, d);
  pos.insert(pos.end(), in_pos.begin(), in_pos.end());
  for (std::size_t i = 0; i < d; ++i) pos.push_back(n + i);
  auto fresh = iota_vec(n, d);
  std::vector<Nba> parts{omega::embed(rel_, n + d, iota_vec(0, n)),
                         omega::embed(omega::plant_to_nba(inst_->plant), n + d, pos),
                         omega::canonical_monitor(n + d, fresh)};
  rel_ = omega::trim(omega::intersect_all(parts), limit_);
  std::vector<std::size_t> keep = iota_vec(0, d);
  for (std::size_t i = 0; i < d; ++i) keep.push_back(n + i);
  rel_ = omega::trim(omega::project(rel_, keep), limit_);
  ++k_;
  states_ = omega::state_count(rel_, limit_);
}

void replay(const ReachInstance& inst, const Reached& r) {
  const std::size_t d = inst.dim();
  if (r.x0.size() != d || r.xk.size() != d) throw ReplayError("witness has the wrong dimension");
  if (!state_set_contains(inst.init, r.x0)) {
    throw ReplayError("witness start " + format_vector(r.x0) + " is not in the initial set");
  }
  std::vector<Vector> traj;
  try {
    traj = nncs_trajectory(Nncs{inst.plant, inst.controller}, r.x0, r.k);
  } catch (const std::exception& e) {
    throw ReplayError(std::string("replay of the witness failed: ") + e.what());
  }
  if (traj.back() != r.xk) {
    throw ReplayError("witness claims " + format_vector(r.xk) + " after " + std::to_string(r.k) +
                      " steps but simulation gives " + format_vector(traj.back()));
  }
  if (!state_set_contains(inst.target, r.xk)) {
    throw ReplayError("witness end " + format_vector(r.xk) + " is not in the target set");
  }
}

ReachResult semi_decide(const ReachInstance& inst, std::size_t max_k, const ReachOptions& opts) {
  inst.validate();
  const std::size_t d = inst.dim();
  const Nba target = widen_target(state_set_nba(inst.target, d), d);

  std::optional<ImageRelation> image;
  std::optional<Nba> step, iter, init;
  if (opts.strategy == Strategy::Incremental) {
    image.emplace(inst, opts.state_limit);
  } else {
    step = build_step_relation(inst);
    iter = omega::trim(build_identity_relation(d), opts.state_limit);
    init = widen_init(state_set_nba(inst.init, d), d);
  }

  ReachResult result{Unknown{max_k}, {}};
  for (std::size_t k = 0; k <= max_k; ++k) {
    Nba rel = omega::empty_nba(2 * d);
    if (image) {
      if (k > 0) image->advance();
      rel = image->current();
    } else {
      if (k > 0) *iter = omega::trim(omega::compose_canonical(*iter, d, *step), opts.state_limit);
      rel = omega::trim(omega::intersect(*init, *iter), opts.state_limit);
    }
    result.relation_states.push_back(omega::state_count(rel, opts.state_limit));
    logger().info("k={}: relation has {} states", k, result.relation_states.back());

    if (opts.tamper) {
      if (auto t = opts.tamper(rel, k)) rel = *t;
    }
    auto w = omega::find_accepted(omega::intersect(rel, target), opts.state_limit);
    if (!w) continue;

    Reached r;
    r.k = k;
    r.witness = *w;
    try {
      Vector v = omega::decode_vector(*w);
      r.x0.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d));
      r.xk.assign(v.begin() + static_cast<std::ptrdiff_t>(d), v.end());
    } catch (const std::invalid_argument& e) {
      throw ReplayError(std::string("witness does not decode: ") + e.what());
    }
    replay(inst, r);
    result.outcome = std::move(r);
    return result;
  }
  return result;
}

}  // namespace nncs
