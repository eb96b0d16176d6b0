#include "nncs/geometry.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

namespace nncs {

namespace {

void check_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " + std::to_string(expected) + ", got " +
                                std::to_string(got));
  }
}

Rational dot(std::span<const Rational> a, std::span<const Rational> x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0) s += a[i] * x[i];
  }
  return s;
}

bool holds(const Rational& lhs, Rel rel, const Rational& b) { return rel == Rel::Le ? lhs <= b : lhs < b; }

// Scales so the first nonzero coefficient has absolute value 1.
LinearConstraint normalized(LinearConstraint c) {
  for (const auto& v : c.a) {
    if (sgn(v) == 0) continue;
    Rational s = abs(v);
    for (auto& w : c.a) w /= s;
    c.b /= s;
    break;
  }
  return c;
}

bool is_constant(const LinearConstraint& c) {
  for (const auto& v : c.a) {
    if (sgn(v) != 0) return false;
  }
  return true;
}

// Tightest constraint per normal direction; nullopt on a contradictory constant.
std::optional<std::vector<LinearConstraint>> simplify(const std::vector<LinearConstraint>& cs) {
  std::map<std::vector<Rational>, std::pair<Rational, Rel>> best;
  for (const auto& raw : cs) {
    if (is_constant(raw)) {
      if (!holds(Rational(0), raw.rel, raw.b)) return std::nullopt;
      continue;
    }
    LinearConstraint c = normalized(raw);
    auto it = best.find(c.a);
    if (it == best.end()) {
      best.emplace(std::move(c.a), std::make_pair(c.b, c.rel));
    } else if (c.b < it->second.first || (c.b == it->second.first && c.rel == Rel::Lt)) {
      it->second = {c.b, c.rel};
    }
  }
  std::vector<LinearConstraint> out;
  out.reserve(best.size());
  for (auto& [a, br] : best) out.push_back(LinearConstraint{a, br.first, br.second});
  return out;
}

struct Bound {
  Rational value;
  bool strict = false;
};

// Value for variable j given the others fixed; all constraints mention only
// variables <= j, with variables < j already assigned in x.
std::optional<Rational> pick_value(const std::vector<LinearConstraint>& cs, std::size_t j, const Vector& x) {
  std::optional<Bound> lo, hi;
  for (const auto& c : cs) {
    const Rational& cj = c.a[j];
    if (sgn(cj) == 0) continue;
    Rational rest = 0;
    for (std::size_t i = 0; i < j; ++i) {
      if (sgn(c.a[i]) != 0) rest += c.a[i] * x[i];
    }
    Rational v = (c.b - rest) / cj;
    const bool strict = c.rel == Rel::Lt;
    if (sgn(cj) > 0) {
      if (!hi || v < hi->value || (v == hi->value && strict)) hi = Bound{v, strict};
    } else {
      if (!lo || v > lo->value || (v == lo->value && strict)) lo = Bound{v, strict};
    }
  }
  if (lo && hi) {
    if (lo->value == hi->value) {
      if (lo->strict || hi->strict) return std::nullopt;
      return lo->value;
    }
    if (lo->value > hi->value) return std::nullopt;
    return (lo->value + hi->value) / 2;
  }
  if (hi) return hi->value - 1;
  if (lo) return lo->value + 1;
  return Rational(0);
}

}  // namespace

bool contains(const LinearConstraint& c, std::span<const Rational> x) {
  check_dim(c.a.size(), x.size(), "contains");
  return holds(dot(c.a, x), c.rel, c.b);
}

LinearConstraint negate(const LinearConstraint& c) {
  LinearConstraint n;
  n.a.reserve(c.a.size());
  for (const auto& v : c.a) n.a.push_back(-v);
  n.b = -c.b;
  n.rel = c.rel == Rel::Le ? Rel::Lt : Rel::Le;
  return n;
}

void Polyhedron::validate() const {
  for (const auto& c : constraints) check_dim(dim, c.a.size(), "polyhedron constraint");
}

Polyhedron& Polyhedron::add(LinearConstraint c) {
  check_dim(dim, c.a.size(), "polyhedron constraint");
  constraints.push_back(std::move(c));
  return *this;
}

Polyhedron& Polyhedron::add_equality(const Vector& a, const Rational& b) {
  add(LinearConstraint{a, b, Rel::Le});
  Vector na;
  for (const auto& v : a) na.push_back(-v);
  add(LinearConstraint{na, -b, Rel::Le});
  return *this;
}

PolyUnion PolyUnion::of(Polyhedron p) {
  PolyUnion u{p.dim, {}};
  u.disjuncts.push_back(std::move(p));
  return u;
}

void PolyUnion::validate() const {
  for (const auto& p : disjuncts) {
    check_dim(dim, p.dim, "union disjunct");
    p.validate();
  }
}

bool contains(const Polyhedron& p, std::span<const Rational> x) {
  check_dim(p.dim, x.size(), "contains");
  for (const auto& c : p.constraints) {
    if (!contains(c, x)) return false;
  }
  return true;
}

bool contains(const PolyUnion& s, std::span<const Rational> x) {
  check_dim(s.dim, x.size(), "contains");
  for (const auto& p : s.disjuncts) {
    if (contains(p, x)) return true;
  }
  return false;
}

std::optional<Vector> find_point(const Polyhedron& p) {
  p.validate();
  const std::size_t n = p.dim;
  // stages[j] holds the system over variables 0..j-1.
  std::vector<std::vector<LinearConstraint>> stages(n + 1);
  auto s = simplify(p.constraints);
  if (!s) return std::nullopt;
  stages[n] = std::move(*s);
  for (std::size_t j = n; j-- > 0;) {
    std::vector<LinearConstraint> pos, neg, next;
    for (const auto& c : stages[j + 1]) {
      int sg = sgn(c.a[j]);
      if (sg > 0) pos.push_back(c);
      else if (sg < 0) neg.push_back(c);
      else next.push_back(c);
    }
    for (const auto& cp : pos) {
      for (const auto& cn : neg) {
        // cp.a[j] > 0, cn.a[j] < 0: combine with positive multipliers.
        Rational mp = -cn.a[j];
        Rational mn = cp.a[j];
        LinearConstraint c;
        c.a.resize(cp.a.size());
        for (std::size_t i = 0; i < cp.a.size(); ++i) c.a[i] = mp * cp.a[i] + mn * cn.a[i];
        c.a[j] = 0;
        c.b = mp * cp.b + mn * cn.b;
        c.rel = (cp.rel == Rel::Lt || cn.rel == Rel::Lt) ? Rel::Lt : Rel::Le;
        next.push_back(std::move(c));
      }
    }
    auto simp = simplify(next);
    if (!simp) return std::nullopt;
    stages[j] = std::move(*simp);
  }
  Vector x(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    auto v = pick_value(stages[j + 1], j, x);
    if (!v) return std::nullopt;  // unreachable when elimination succeeded
    x[j] = *v;
  }
  return x;
}

std::optional<Vector> find_point(const PolyUnion& s) {
  s.validate();
  for (const auto& p : s.disjuncts) {
    if (auto x = find_point(p)) return x;
  }
  return std::nullopt;
}

Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  check_dim(p.dim, q.dim, "intersect");
  Polyhedron r = p;
  r.constraints.insert(r.constraints.end(), q.constraints.begin(), q.constraints.end());
  return r;
}

PolyUnion complement(const Polyhedron& p) {
  PolyUnion u{p.dim, {}};
  for (const auto& c : p.constraints) {
    Polyhedron d{p.dim, {}};
    d.add(negate(c));
    u.disjuncts.push_back(std::move(d));
  }
  return u;
}

PolyUnion complement(const PolyUnion& s) {
  s.validate();
  PolyUnion acc = PolyUnion::of(Polyhedron::universe(s.dim));
  for (const auto& p : s.disjuncts) {
    acc = intersect_union(acc, complement(p));
    std::vector<Polyhedron> kept;
    for (auto& d : acc.disjuncts) {
      if (!is_empty(d)) kept.push_back(std::move(d));
    }
    acc.disjuncts = std::move(kept);
  }
  return acc;
}

PolyUnion intersect_union(const PolyUnion& p, const PolyUnion& q) {
  check_dim(p.dim, q.dim, "intersect_union");
  PolyUnion r{p.dim, {}};
  for (const auto& a : p.disjuncts) {
    for (const auto& b : q.disjuncts) r.disjuncts.push_back(intersect(a, b));
  }
  return r;
}

PolyUnion union_union(const PolyUnion& p, const PolyUnion& q) {
  check_dim(p.dim, q.dim, "union_union");
  PolyUnion r = p;
  r.disjuncts.insert(r.disjuncts.end(), q.disjuncts.begin(), q.disjuncts.end());
  return r;
}

namespace {

std::optional<Vector> outside_from(const PolyUnion& s, std::size_t idx, const Polyhedron& acc) {
  if (idx == s.disjuncts.size()) return find_point(acc);
  for (const auto& c : s.disjuncts[idx].constraints) {
    Polyhedron next = acc;
    next.add(negate(c));
    if (is_empty(next)) continue;
    if (auto x = outside_from(s, idx + 1, next)) return x;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Vector> find_point_outside(const PolyUnion& s) {
  s.validate();
  return outside_from(s, 0, Polyhedron::universe(s.dim));
}

Polyhedron point_polyhedron(std::span<const Rational> x) {
  Polyhedron p{x.size(), {}};
  for (std::size_t i = 0; i < x.size(); ++i) {
    Vector e(x.size(), Rational(0));
    e[i] = 1;
    p.add_equality(e, x[i]);
  }
  return p;
}

LinearConstraint embed(const LinearConstraint& c, std::size_t dim, std::span<const std::size_t> positions) {
  check_dim(c.a.size(), positions.size(), "embed");
  LinearConstraint r{Vector(dim, Rational(0)), c.b, c.rel};
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] >= dim) throw std::invalid_argument("embed: position out of range");
    r.a[positions[i]] = c.a[i];
  }
  return r;
}

Polyhedron embed(const Polyhedron& p, std::size_t dim, std::span<const std::size_t> positions) {
  Polyhedron r{dim, {}};
  for (const auto& c : p.constraints) r.constraints.push_back(embed(c, dim, positions));
  return r;
}

PolyUnion embed(const PolyUnion& s, std::size_t dim, std::span<const std::size_t> positions) {
  PolyUnion r{dim, {}};
  for (const auto& p : s.disjuncts) r.disjuncts.push_back(embed(p, dim, positions));
  return r;
}

}  // namespace nncs
