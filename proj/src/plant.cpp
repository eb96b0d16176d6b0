#include "nncs/plant.hpp"

#include <algorithm>

namespace nncs {

bool MultiModeLinearMap::has_mode(std::size_t m) const {
  return std::find(modes.begin(), modes.end(), m) != modes.end();
}

std::vector<std::size_t> MultiModeLinearMap::successors(std::size_t m) const {
  std::vector<std::size_t> out;
  for (const auto& [from, to] : edges) {
    if (from == m) out.push_back(to);
  }
  return out;
}

std::size_t state_dim(const Plant& p) {
  if (const auto* t = std::get_if<TrivialPlant>(&p)) return t->d;
  return std::get<MultiModeLinearMap>(p).d + 1;
}

std::size_t control_dim(const Plant& p) {
  if (const auto* t = std::get_if<TrivialPlant>(&p)) return t->d;
  return std::get<MultiModeLinearMap>(p).c;
}

namespace {

Vector affine(const AffineFlow& f, std::span<const Rational> x, std::span<const Rational> u) {
  Vector y = f.c;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (sgn(f.A[i][j]) != 0) y[i] += f.A[i][j] * x[j];
    }
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (sgn(f.B[i][j]) != 0) y[i] += f.B[i][j] * u[j];
    }
  }
  return y;
}

std::size_t mode_of(const MultiModeLinearMap& h, const Rational& v) {
  if (!is_integer(v) || sgn(v) < 0) throw PlantError("mode component " + format_rational(v) + " is not a mode");
  auto m = static_cast<std::size_t>(to_int64(v.get_num()));
  if (!h.has_mode(m)) throw PlantError("mode component " + format_rational(v) + " is not a mode");
  return m;
}

}  // namespace

Vector plant_apply(const Plant& p, std::span<const Rational> x, std::span<const Rational> u) {
  if (x.size() != state_dim(p) || u.size() != control_dim(p)) throw DimensionError("plant_apply: dimension mismatch");
  if (std::holds_alternative<TrivialPlant>(p)) return Vector(u.begin(), u.end());

  const auto& h = std::get<MultiModeLinearMap>(p);
  const std::size_t m = mode_of(h, x[0]);
  auto fit = h.flow.find(m);
  if (fit == h.flow.end()) throw PlantError("no flow for mode " + std::to_string(m));
  Vector xp = affine(fit->second, x.subspan(1), u);

  Vector point = xp;
  point.insert(point.end(), u.begin(), u.end());
  std::vector<std::size_t> hits;
  for (std::size_t succ : h.successors(m)) {
    auto git = h.guard.find({m, succ});
    if (git != h.guard.end() && contains(git->second, point)) hits.push_back(succ);
  }
  if (hits.size() != 1) {
    throw PlantError(std::to_string(hits.size()) + " guards of mode " + std::to_string(m) + " match " +
                     format_vector(point));
  }
  Vector out{Rational(static_cast<unsigned long>(hits.front()))};
  out.insert(out.end(), xp.begin(), xp.end());
  return out;
}

ValidationReport validate_multimode(const MultiModeLinearMap& h) {
  ValidationReport r;
  const std::size_t gd = h.d + h.c;
  if (h.modes.empty()) r.structural.push_back("no modes");
  for (std::size_t m : h.modes) {
    auto f = h.flow.find(m);
    if (f == h.flow.end()) {
      r.structural.push_back("mode " + std::to_string(m) + " has no flow");
      continue;
    }
    const auto& fl = f->second;
    bool shape = fl.A.size() == h.d && fl.B.size() == h.d && fl.c.size() == h.d;
    for (std::size_t i = 0; shape && i < h.d; ++i) shape = fl.A[i].size() == h.d && fl.B[i].size() == h.c;
    if (!shape) r.structural.push_back("flow of mode " + std::to_string(m) + " has the wrong shape");
  }
  for (const auto& e : h.edges) {
    if (!h.has_mode(e.first) || !h.has_mode(e.second)) {
      r.structural.push_back("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                             ") mentions an unknown mode");
    }
    auto g = h.guard.find(e);
    if (g == h.guard.end()) {
      r.structural.push_back("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ") has no guard");
    } else if (g->second.dim != gd) {
      r.structural.push_back("guard of edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                             ") has the wrong dimension");
    }
  }
  for (const auto& [e, g] : h.guard) {
    if (std::find(h.edges.begin(), h.edges.end(), e) == h.edges.end()) {
      r.structural.push_back("guard for (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                             ") without an edge");
    }
  }
  if (!r.structural.empty()) return r;

  for (std::size_t m : h.modes) {
    auto succ = h.successors(m);
    for (std::size_t i = 0; i < succ.size(); ++i) {
      for (std::size_t j = i + 1; j < succ.size(); ++j) {
        PolyUnion both = intersect_union(h.guard.at({m, succ[i]}), h.guard.at({m, succ[j]}));
        if (auto w = find_point(both)) r.overlaps.push_back({m, succ[i], succ[j], *w});
      }
    }
    PolyUnion all = PolyUnion::empty(gd);
    for (std::size_t s : succ) all = union_union(all, h.guard.at({m, s}));
    if (auto w = find_point_outside(all)) r.gaps.push_back({m, *w});
  }
  return r;
}

void Nncs::validate() const {
  if (controller.input_dim() != state_dim(plant)) throw DimensionError("controller input does not match plant state");
  if (controller.output_dim() != control_dim(plant)) {
    throw DimensionError("controller output does not match plant control");
  }
}

Vector nncs_iterate(const Nncs& s, std::span<const Rational> x) {
  Vector u = s.controller.evaluate(x);
  return plant_apply(s.plant, x, u);
}

std::vector<Vector> nncs_trajectory(const Nncs& s, const Vector& x0, std::size_t k) {
  std::vector<Vector> traj{x0};
  traj.reserve(k + 1);
  for (std::size_t i = 0; i < k; ++i) traj.push_back(nncs_iterate(s, traj.back()));
  return traj;
}

}  // namespace nncs
