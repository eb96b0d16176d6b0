#include "nncs/omega/relations.hpp"

#include "nncs/omega/ops.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace nncs::omega {

Nba wff(std::size_t arity) {
  if (arity == 0) throw std::invalid_argument("wff arity must be positive");
  // 0 start, 1 first integer digit, 2 integer part, 3 fraction
  ExplicitNba e;
  e.arity = arity;
  e.accepting = {false, false, false, true};
  e.transitions.resize(4);
  e.transitions[0].emplace_back(Cube(arity, kSign), 1);
  e.transitions[1].emplace_back(Cube(arity, kDigit), 2);
  e.transitions[2].emplace_back(Cube(arity, kDigit), 2);
  e.transitions[2].emplace_back(Cube(arity, kPoint), 3);
  e.transitions[3].emplace_back(Cube(arity, kDigit), 3);
  e.weak = true;
  return make_nba(std::move(e));
}

namespace {

constexpr std::int64_t kCoefficientLimit = std::int64_t{1} << 40;

std::uint32_t lo_word(std::int64_t v) { return static_cast<std::uint32_t>(static_cast<std::uint64_t>(v)); }
std::uint32_t hi_word(std::int64_t v) { return static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) >> 32); }
std::int64_t join_words(std::uint32_t lo, std::uint32_t hi) {
  return static_cast<std::int64_t>((static_cast<std::uint64_t>(hi) << 32) | lo);
}

// Most-significant-bit-first reader of <c, |x|> against b, where c_i = a_i
// times the sign read on track i. Integer part: residual r = <c, I> of the
// digits so far. Fraction: remaining budget t with <c, F> op t still to hold;
// <c, F> ranges over [L, U], so t outside that range decides the outcome.
class LinearImpl final : public AutomatonImpl {
 public:
  enum Phase : std::uint32_t { Start, Int0, Int, Frac, TrueInt, TrueFrac };

  LinearImpl(std::size_t arity, std::vector<std::size_t> tracks, std::vector<std::int64_t> coeffs, std::int64_t b,
             RelOp op)
      : arity_(arity), tracks_(std::move(tracks)), coeffs_(std::move(coeffs)), b_(b), op_(op) {
    is_relevant_.assign(arity_, false);
    for (auto t : tracks_) is_relevant_[t] = true;
  }

  std::size_t arity() const override { return arity_; }
  std::size_t key_size() const override { return 4; }
  bool weak() const override { return true; }
  Key initial() const override { return Key{Start, 0, 0, 0}; }

  bool accepting(KeyView s) const override {
    return s[0] == TrueFrac || (s[0] == Frac && op_ != RelOp::Lt);
  }

  void successors(KeyView s, const Cube& filter, std::vector<Edge>& out) const override {
    const auto phase = static_cast<Phase>(s[0]);
    const std::uint32_t signs = s[1];
    const std::int64_t v = join_words(s[2], s[3]);
    switch (phase) {
      case Start: {
        Cube label = shape(filter, kSign);
        if (label.empty()) return;
        enumerate_signs(label, 0, 0, out);
        return;
      }
      case Int0:
      case Int: {
        if (phase == Int) {
          Cube pt = shape(filter, kPoint);
          if (!pt.empty()) {
            if (auto k = frac_key(signs, b_ - v)) out.push_back(Edge{std::move(pt), *k});
          }
        }
        Cube label = shape(filter, kDigit);
        if (label.empty()) return;
        const auto [lo, hi] = bounds(signs);
        enumerate_digits(label, 0, signs, 0, [&](Cube&& l, std::int64_t sum) {
          const std::int64_t r = 2 * v + sum;
          if (r >= std::max(-lo, b_ - lo + 1)) return;
          if (r <= std::min(-hi, b_ - hi - 1)) {
            if (op_ != RelOp::Eq) out.push_back(Edge{std::move(l), Key{TrueInt, signs, 0, 0}});
            return;
          }
          out.push_back(Edge{std::move(l), Key{Int, signs, lo_word(r), hi_word(r)}});
        });
        return;
      }
      case Frac: {
        Cube label = shape(filter, kDigit);
        if (label.empty()) return;
        enumerate_digits(label, 0, signs, 0, [&](Cube&& l, std::int64_t sum) {
          if (auto k = frac_key(signs, 2 * v - sum)) out.push_back(Edge{std::move(l), *k});
        });
        return;
      }
      case TrueInt: {
        Cube pt = shape(filter, kPoint);
        if (!pt.empty()) out.push_back(Edge{std::move(pt), Key{TrueFrac, 0, 0, 0}});
        Cube dg = shape(filter, kDigit);
        if (!dg.empty()) out.push_back(Edge{std::move(dg), Key{TrueInt, 0, 0, 0}});
        return;
      }
      case TrueFrac: {
        Cube dg = shape(filter, kDigit);
        if (!dg.empty()) out.push_back(Edge{std::move(dg), Key{TrueFrac, 0, 0, 0}});
        return;
      }
    }
  }

 private:
  // filter restricted to `allowed` on every track; empty cube if impossible.
  Cube shape(const Cube& filter, Mask allowed) const {
    Cube c(arity_);
    for (std::size_t i = 0; i < arity_; ++i) {
      c[i] = filter[i] & allowed;
      if (c[i] == 0) return Cube();
    }
    return c;
  }

  std::int64_t coeff(std::size_t j, std::uint32_t signs) const {
    return (signs >> j) & 1U ? -coeffs_[j] : coeffs_[j];
  }

  std::pair<std::int64_t, std::int64_t> bounds(std::uint32_t signs) const {
    std::int64_t lo = 0, hi = 0;
    for (std::size_t j = 0; j < tracks_.size(); ++j) {
      const std::int64_t c = coeff(j, signs);
      (c < 0 ? lo : hi) += c;
    }
    return {lo, hi};
  }

  std::optional<Key> frac_key(std::uint32_t signs, std::int64_t t) const {
    const auto [lo, hi] = bounds(signs);
    switch (op_) {
      case RelOp::Le:
        if (t < lo) return std::nullopt;
        if (t >= hi) return Key{TrueFrac, 0, 0, 0};
        break;
      case RelOp::Lt:
        if (t <= lo) return std::nullopt;
        if (t > hi) return Key{TrueFrac, 0, 0, 0};
        break;
      case RelOp::Eq:
        if (t < lo || t > hi) return std::nullopt;
        break;
    }
    return Key{Frac, signs, lo_word(t), hi_word(t)};
  }

  void enumerate_signs(Cube& label, std::size_t j, std::uint32_t signs, std::vector<Edge>& out) const {
    if (j == tracks_.size()) {
      out.push_back(Edge{label, Key{Int0, signs, 0, 0}});
      return;
    }
    const std::size_t t = tracks_[j];
    const Mask m = label[t];
    if (m & kPlus) {
      label[t] = kPlus;
      enumerate_signs(label, j + 1, signs, out);
    }
    if (m & kMinus) {
      label[t] = kMinus;
      enumerate_signs(label, j + 1, signs | (1U << j), out);
    }
    label[t] = m;
  }

  template <typename F>
  void enumerate_digits(Cube& label, std::size_t j, std::uint32_t signs, std::int64_t sum, F&& emit) const {
    if (j == tracks_.size()) {
      emit(Cube(label), sum);
      return;
    }
    const std::size_t t = tracks_[j];
    const Mask m = label[t];
    if (m & kZero) {
      label[t] = kZero;
      enumerate_digits(label, j + 1, signs, sum, emit);
    }
    if (m & kOne) {
      label[t] = kOne;
      enumerate_digits(label, j + 1, signs, sum + coeff(j, signs), emit);
    }
    label[t] = m;
  }

  std::size_t arity_;
  std::vector<std::size_t> tracks_;
  std::vector<std::int64_t> coeffs_;
  std::int64_t b_;
  RelOp op_;
  std::vector<bool> is_relevant_;
};

// Deterministic monitor; key = [phase, pending "-" signs, waiting track, wrapped].
class CanonImpl final : public AutomatonImpl {
 public:
  CanonImpl(std::size_t arity, std::vector<std::size_t> tracks) : arity_(arity), tracks_(std::move(tracks)) {}

  std::size_t arity() const override { return arity_; }
  std::size_t key_size() const override { return 4; }
  Key initial() const override { return Key{0, 0, 0, 0}; }
  bool accepting(KeyView s) const override { return s[0] == 2 && s[1] == 0 && s[3] == 1; }

  void successors(KeyView s, const Cube& filter, std::vector<Edge>& out) const override {
    Cube label = filter;
    if (s[0] == 0) {
      enumerate(label, 0, kSign, [&](const Cube& l) {
        std::uint32_t pending = 0;
        for (std::size_t j = 0; j < tracks_.size(); ++j) {
          if (l[tracks_[j]] == kMinus) pending |= 1U << j;
        }
        out.push_back(Edge{l, Key{1, pending, 0, 0}});
      });
      return;
    }
    if (s[0] == 1) {
      Cube pt = filter;
      bool ok = true;
      for (auto t : tracks_) ok = ok && (pt[t] &= kPoint) != 0;
      if (ok) out.push_back(Edge{std::move(pt), Key{2, s[1], 0, 0}});
    }
    enumerate(label, 0, kDigit, [&](const Cube& l) {
      std::uint32_t pending = s[1];
      for (std::size_t j = 0; j < tracks_.size(); ++j) {
        if (l[tracks_[j]] == kOne) pending &= ~(1U << j);
      }
      if (s[0] == 1) {
        out.push_back(Edge{l, Key{1, pending, 0, 0}});
        return;
      }
      std::uint32_t wait = s[2], wrapped = 0;
      if (l[tracks_[wait]] == kZero) {
        if (++wait == tracks_.size()) {
          wait = 0;
          wrapped = 1;
        }
      }
      out.push_back(Edge{l, Key{2, pending, wait, wrapped}});
    });
  }

 private:
  template <typename F>
  void enumerate(Cube& label, std::size_t j, Mask allowed, F&& emit) const {
    if (j == tracks_.size()) {
      emit(label);
      return;
    }
    const std::size_t t = tracks_[j];
    const Mask m = label[t];
    for (Mask bit = 1; bit <= kPoint; bit <<= 1) {
      if (!(m & allowed & bit)) continue;
      label[t] = bit;
      enumerate(label, j + 1, allowed, emit);
    }
    label[t] = m;
  }

  std::size_t arity_;
  std::vector<std::size_t> tracks_;
};

std::int64_t small(const BigInt& z) {
  std::int64_t v = to_int64(z);
  if (v >= kCoefficientLimit || v <= -kCoefficientLimit) {
    throw std::overflow_error("linear constraint coefficient too large for the automaton construction");
  }
  return v;
}

}  // namespace

Nba linear_relation(const Vector& a, RelOp op, const Rational& b) {
  if (a.empty()) throw std::invalid_argument("linear_relation needs at least one track");
  std::vector<Rational> all = a;
  all.push_back(b);
  const BigInt scale = lcm_of_denominators(all);
  std::vector<BigInt> ints;
  BigInt g = 0;
  for (const auto& v : all) {
    Rational scaled = v * scale;
    BigInt z = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    ints.push_back(std::move(z));
  }
  if (g == 0) g = 1;
  std::vector<std::size_t> tracks;
  std::vector<std::int64_t> coeffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    BigInt c = ints[i] / g;
    if (c != 0) {
      tracks.push_back(i);
      coeffs.push_back(small(c));
    }
  }
  if (tracks.size() > 31) throw std::invalid_argument("linear_relation supports at most 31 nonzero coefficients");
  const std::int64_t bb = small(ints.back() / g);
  return Nba(std::make_shared<LinearImpl>(a.size(), std::move(tracks), std::move(coeffs), bb, op));
}

Nba constraint_nba(const LinearConstraint& c) {
  return linear_relation(c.a, c.rel == Rel::Le ? RelOp::Le : RelOp::Lt, c.b);
}

Nba poly_to_nba(const Polyhedron& p) {
  p.validate();
  if (p.dim == 0) throw std::invalid_argument("poly_to_nba of a zero-dimensional set");
  if (p.constraints.empty()) return wff(p.dim);
  std::vector<Nba> parts;
  for (const auto& c : p.constraints) parts.push_back(constraint_nba(c));
  return intersect_all(parts);
}

Nba poly_to_nba(const PolyUnion& s, std::size_t arity) {
  if (s.dim != arity) throw std::invalid_argument("poly_to_nba: dimension does not match arity");
  s.validate();
  std::vector<Nba> parts;
  for (const auto& p : s.disjuncts) parts.push_back(poly_to_nba(p));
  return unite_all(parts, arity);
}

Nba canonical_monitor(std::size_t arity, std::span<const std::size_t> tracks) {
  if (tracks.empty()) return universal_nba(arity);
  if (tracks.size() > 31) throw std::invalid_argument("canonical_monitor supports at most 31 tracks");
  for (auto t : tracks) {
    if (t >= arity) throw std::invalid_argument("canonical_monitor: track out of range");
  }
  return Nba(std::make_shared<CanonImpl>(arity, std::vector<std::size_t>(tracks.begin(), tracks.end())));
}

namespace {

Vector unit_combo(std::size_t n, std::initializer_list<std::pair<std::size_t, long>> entries) {
  Vector v(n, Rational(0));
  for (auto [i, c] : entries) v[i] = c;
  return v;
}

}  // namespace

Nba relu_relation() {
  Nba pos = intersect(linear_relation(unit_combo(2, {{0, -1}}), RelOp::Le, 0),
                      linear_relation(unit_combo(2, {{0, -1}, {1, 1}}), RelOp::Eq, 0));
  Nba neg = intersect(linear_relation(unit_combo(2, {{0, 1}}), RelOp::Le, 0),
                      linear_relation(unit_combo(2, {{1, 1}}), RelOp::Eq, 0));
  return unite(pos, neg);
}

Nba identity_relation(std::size_t d) {
  if (d == 0) throw std::invalid_argument("identity_relation needs d >= 1");
  std::vector<Nba> parts;
  for (std::size_t i = 0; i < d; ++i) {
    parts.push_back(linear_relation(unit_combo(2 * d, {{i, 1}, {d + i, -1}}), RelOp::Eq, 0));
  }
  return intersect_all(parts);
}

Nba neuron_relation(const Vector& w, const Rational& b, Activation act) {
  const std::size_t m = w.size();
  // y - <w, x> = b
  Vector eq(m + 1);
  for (std::size_t i = 0; i < m; ++i) eq[i] = -w[i];
  eq[m] = 1;
  Nba affine = linear_relation(eq, RelOp::Eq, b);
  if (act == Activation::Identity) return affine;
  // Active branch: <w,x> + b > 0 and y = <w,x> + b; inactive: <w,x> + b <= 0 and y = 0.
  // The branches are disjoint so that every word has at most one run shape.
  Vector neg_pre(m + 1, Rational(0)), pre(m + 1, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    neg_pre[i] = -w[i];
    pre[i] = w[i];
  }
  Vector y_only(m + 1, Rational(0));
  y_only[m] = 1;
  Nba active = intersect(linear_relation(neg_pre, RelOp::Lt, b), affine);
  Nba inactive = intersect(linear_relation(pre, RelOp::Le, -b), linear_relation(y_only, RelOp::Eq, 0));
  return unite(active, inactive);
}

Nba layer_relation(const Layer& l) {
  l.validate();
  const std::size_t m = l.in_dim(), n = l.out_dim();
  std::vector<Nba> parts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> pos(m);
    std::iota(pos.begin(), pos.end(), 0);
    pos.push_back(m + i);
    parts.push_back(embed(neuron_relation(l.weights[i], l.biases[i], l.activations[i]), m + n, pos));
  }
  return intersect_all(parts);
}

Nba compose_canonical(const Nba& a1, std::size_t k, const Nba& a2) {
  if (k > a1.arity() || k > a2.arity()) throw std::invalid_argument("compose: k exceeds an arity");
  const std::size_t k1 = a1.arity() - k, k2 = a2.arity() - k;
  if (k1 + k2 == 0) throw std::invalid_argument("compose: nothing left after projection");
  const std::size_t total = k1 + k + k2;
  std::vector<std::size_t> p1(k1 + k), p2(k + k2), mid(k);
  std::iota(p1.begin(), p1.end(), 0);
  std::iota(p2.begin(), p2.end(), k1);
  std::iota(mid.begin(), mid.end(), k1);
  std::vector<Nba> parts{wff(total), embed(a1, total, p1), embed(a2, total, p2), canonical_monitor(total, mid)};
  std::vector<std::size_t> keep(k1);
  std::iota(keep.begin(), keep.end(), 0);
  for (std::size_t i = 0; i < k2; ++i) keep.push_back(k1 + k + i);
  return project(intersect_all(parts), keep);
}

Nba dnn_to_nba(const Dnn& net) {
  // Tracks: inputs, then the neurons of the layer being built. One neuron is
  // added at a time against the relation built so far; hidden neurons only
  // get canonical encodings, and each finished hidden layer replaces the
  // previous one by projection.
  // Past kGraphTrimLimit states the rest is left lazy; membership queries
  // then only explore the part that matches the word.
  bool lazy = false;
  auto shrink = [&](const Nba& a) {
    if (lazy) return a;
    try {
      return trim(a, kGraphTrimLimit);
    } catch (const ExplorationLimit&) {
      lazy = true;
      return a;
    }
  };
  const std::size_t m = net.input_dim();
  std::size_t n = m;
  Nba acc = wff(m);
  std::vector<std::size_t> in_pos(m);
  std::iota(in_pos.begin(), in_pos.end(), 0);
  for (std::size_t li = 0; li < net.depth(); ++li) {
    const Layer& l = net.layer(li);
    const bool hidden = li + 1 < net.depth();
    std::vector<std::size_t> out_pos;
    for (std::size_t i = 0; i < l.out_dim(); ++i) {
      Vector w;
      std::vector<std::size_t> pos;
      for (std::size_t j = 0; j < l.in_dim(); ++j) {
        if (sgn(l.weights[i][j]) == 0) continue;
        w.push_back(l.weights[i][j]);
        pos.push_back(in_pos[j]);
      }
      Nba rel = w.empty() ? linear_relation({Rational(1)}, RelOp::Eq,
                                            l.activations[i] == Activation::Relu ? relu(l.biases[i]) : l.biases[i])
                          : neuron_relation(w, l.biases[i], l.activations[i]);
      pos.push_back(n);
      std::vector<std::size_t> prev(n);
      std::iota(prev.begin(), prev.end(), 0);
      std::vector<Nba> parts{embed(acc, n + 1, prev), embed(rel, n + 1, pos)};
      if (hidden) {
        std::vector<std::size_t> fresh{n};
        parts.push_back(canonical_monitor(n + 1, fresh));
      }
      acc = shrink(intersect_all(parts));
      out_pos.push_back(n++);
    }
    std::vector<std::size_t> keep(m);
    std::iota(keep.begin(), keep.end(), 0);
    keep.insert(keep.end(), out_pos.begin(), out_pos.end());
    if (keep.size() < n) {
      acc = shrink(project(acc, keep));
      n = keep.size();
    }
    in_pos.resize(out_pos.size());
    std::iota(in_pos.begin(), in_pos.end(), m);
  }
  return acc;
}

Nba plant_to_nba(const Plant& p) {
  if (const auto* t = std::get_if<TrivialPlant>(&p)) {
    const std::size_t d = t->d, n = 3 * d;
    std::vector<Nba> parts;
    for (std::size_t i = 0; i < d; ++i) {
      parts.push_back(linear_relation(unit_combo(n, {{d + i, 1}, {2 * d + i, -1}}), RelOp::Eq, 0));
    }
    return intersect_all(parts);
  }
  const auto& h = std::get<MultiModeLinearMap>(p);
  const std::size_t d = h.d, c = h.c, D = d + 1, n = 2 * D + c;
  const std::size_t u0 = D, y0 = D + c;  // control and successor offsets
  std::vector<std::size_t> guard_pos;
  for (std::size_t i = 0; i < d; ++i) guard_pos.push_back(y0 + 1 + i);
  for (std::size_t j = 0; j < c; ++j) guard_pos.push_back(u0 + j);

  std::vector<Nba> branches;
  for (const auto& [from, to] : h.edges) {
    const AffineFlow& f = h.flow.at(from);
    std::vector<Nba> parts;
    Vector mode(n, Rational(0));
    mode[0] = 1;
    parts.push_back(linear_relation(mode, RelOp::Eq, Rational(static_cast<unsigned long>(from))));
    for (std::size_t i = 0; i < d; ++i) {
      Vector row(n, Rational(0));
      row[y0 + 1 + i] = 1;
      for (std::size_t j = 0; j < d; ++j) row[1 + j] = -f.A[i][j];
      for (std::size_t j = 0; j < c; ++j) row[u0 + j] = -f.B[i][j];
      parts.push_back(linear_relation(row, RelOp::Eq, f.c[i]));
    }
    parts.push_back(poly_to_nba(embed(h.guard.at({from, to}), n, guard_pos), n));
    Vector next(n, Rational(0));
    next[y0] = 1;
    parts.push_back(linear_relation(next, RelOp::Eq, Rational(static_cast<unsigned long>(to))));
    branches.push_back(intersect_all(parts));
  }
  return unite_all(branches, n);
}

}  // namespace nncs::omega
