#include "nncs/omega/ops.hpp"

#include "nncs/omega/relations.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace nncs::omega {

namespace {

class ProductImpl final : public AutomatonImpl {
 public:
  ProductImpl(Nba a, Nba b)
      : a_(std::move(a)), b_(std::move(b)), ka_(a_.impl().key_size()), kb_(b_.impl().key_size()),
        simple_(a_.impl().weak() || b_.impl().weak()) {}

  std::size_t arity() const override { return a_.arity(); }
  std::size_t key_size() const override { return ka_ + kb_ + (simple_ ? 0 : 1); }
  bool weak() const override { return a_.impl().weak() && b_.impl().weak(); }

  Key initial() const override {
    Key k = a_.impl().initial();
    Key kb = b_.impl().initial();
    k.insert(k.end(), kb.begin(), kb.end());
    if (!simple_) k.push_back(0);
    return k;
  }

  bool accepting(KeyView s) const override {
    if (simple_) return a_.impl().accepting(s.subspan(0, ka_)) && b_.impl().accepting(s.subspan(ka_, kb_));
    return s[ka_ + kb_] == 1 && b_.impl().accepting(s.subspan(ka_, kb_));
  }

  void successors(KeyView s, const Cube& filter, std::vector<Edge>& out) const override {
    KeyView sa = s.subspan(0, ka_), sb = s.subspan(ka_, kb_);
    std::uint32_t phase = 0;
    if (!simple_) {
      phase = s[ka_ + kb_];
      if (phase == 0 && a_.impl().accepting(sa)) phase = 1;
      else if (phase == 1 && b_.impl().accepting(sb)) phase = 0;
    }
    std::vector<Edge> ea, eb;
    a_.impl().successors(sa, filter, ea);
    for (auto& x : ea) {
      eb.clear();
      b_.impl().successors(sb, x.label, eb);
      for (auto& y : eb) {
        Key t = x.target;
        t.insert(t.end(), y.target.begin(), y.target.end());
        if (!simple_) t.push_back(phase);
        out.push_back(Edge{std::move(y.label), std::move(t)});
      }
    }
  }

 private:
  Nba a_, b_;
  std::size_t ka_, kb_;
  bool simple_;
};

class UnionImpl final : public AutomatonImpl {
 public:
  UnionImpl(Nba a, Nba b)
      : a_(std::move(a)), b_(std::move(b)),
        width_(std::max(a_.impl().key_size(), b_.impl().key_size())) {}

  std::size_t arity() const override { return a_.arity(); }
  std::size_t key_size() const override { return 1 + width_; }
  bool weak() const override { return a_.impl().weak() && b_.impl().weak(); }
  Key initial() const override { return Key(1 + width_, 0); }

  bool accepting(KeyView s) const override {
    if (s[0] == 0) return false;
    return side(s[0]).impl().accepting(s.subspan(1, side(s[0]).impl().key_size()));
  }

  void successors(KeyView s, const Cube& filter, std::vector<Edge>& out) const override {
    if (s[0] == 0) {
      expand(1, a_.impl().initial(), filter, out);
      expand(2, b_.impl().initial(), filter, out);
      return;
    }
    const Nba& n = side(s[0]);
    Key inner(s.begin() + 1, s.begin() + 1 + static_cast<std::ptrdiff_t>(n.impl().key_size()));
    expand(s[0], inner, filter, out);
  }

 private:
  const Nba& side(std::uint32_t tag) const { return tag == 1 ? a_ : b_; }

  void expand(std::uint32_t tag, const Key& inner, const Cube& filter, std::vector<Edge>& out) const {
    std::vector<Edge> es;
    side(tag).impl().successors(view(inner), filter, es);
    for (auto& e : es) {
      Key t{tag};
      t.insert(t.end(), e.target.begin(), e.target.end());
      t.resize(1 + width_, 0);
      out.push_back(Edge{std::move(e.label), std::move(t)});
    }
  }

  Nba a_, b_;
  std::size_t width_;
};

class EmbedImpl final : public AutomatonImpl {
 public:
  EmbedImpl(Nba a, std::size_t arity, std::vector<std::size_t> positions)
      : a_(std::move(a)), arity_(arity), pos_(std::move(positions)) {}

  std::size_t arity() const override { return arity_; }
  std::size_t key_size() const override { return a_.impl().key_size(); }
  bool weak() const override { return a_.impl().weak(); }
  Key initial() const override { return a_.impl().initial(); }
  bool accepting(KeyView s) const override { return a_.impl().accepting(s); }

  void successors(KeyView s, const Cube& filter, std::vector<Edge>& out) const override {
    Cube sub(pos_.size());
    for (std::size_t i = 0; i < pos_.size(); ++i) sub[i] = filter[pos_[i]];
    std::vector<Edge> es;
    a_.impl().successors(s, sub, es);
    for (auto& e : es) {
      Cube l = filter;
      for (std::size_t i = 0; i < pos_.size(); ++i) l[pos_[i]] = e.label[i];
      out.push_back(Edge{std::move(l), std::move(e.target)});
    }
  }

 private:
  Nba a_;
  std::size_t arity_;
  std::vector<std::size_t> pos_;
};

// Existential projection. Dropped tracks may need more integer digits than
// the kept ones, so after the leading sign the kept tracks may skip any
// number of '0' letters the dropped tracks spend: the kept word then just
// lost some leading zeros. Key: [is_initial, inner...].
class ProjectImpl final : public AutomatonImpl {
 public:
  ProjectImpl(Nba a, std::vector<std::size_t> keep) : a_(std::move(a)), keep_(std::move(keep)) {}

  std::size_t arity() const override { return keep_.size(); }
  std::size_t key_size() const override { return a_.impl().key_size() + 1; }
  bool weak() const override { return a_.impl().weak(); }
  Key initial() const override { return wrap(1, a_.impl().initial()); }
  bool accepting(KeyView s) const override { return a_.impl().accepting(s.subspan(1)); }

  void successors(KeyView s, const Cube& filter, std::vector<Edge>& out) const override {
    const std::size_t start = out.size();
    std::vector<Edge> es;
    a_.impl().successors(s.subspan(1), widen(filter), es);
    for (auto& e : es) push(out, start, narrow(e.label), e.target);
    if (s[0] == 0) return;

    for (auto& e : es) {
      Cube sign = narrow(e.label);
      bool ok = true;
      for (auto& m : sign) ok = ok && (m &= kSign) != 0;
      if (!ok) continue;
      std::set<Key> seen{e.target};
      std::vector<Key> todo{e.target};
      const Cube zeros = widen(Cube(keep_.size(), kZero));
      while (!todo.empty()) {
        Key q = std::move(todo.back());
        todo.pop_back();
        std::vector<Edge> zs;
        a_.impl().successors(view(q), zeros, zs);
        for (auto& z : zs) {
          if (seen.insert(z.target).second) {
            push(out, start, sign, z.target);
            todo.push_back(std::move(z.target));
          }
        }
      }
    }
  }

 private:
  static Key wrap(std::uint32_t flag, const Key& k) {
    Key r;
    r.reserve(k.size() + 1);
    r.push_back(flag);
    r.insert(r.end(), k.begin(), k.end());
    return r;
  }

  Cube widen(const Cube& filter) const {
    Cube full(a_.arity(), kAny);
    for (std::size_t i = 0; i < keep_.size(); ++i) full[keep_[i]] = filter[i];
    return full;
  }

  Cube narrow(const Cube& label) const {
    Cube l(keep_.size());
    for (std::size_t i = 0; i < keep_.size(); ++i) l[i] = label[keep_[i]];
    return l;
  }

  static void push(std::vector<Edge>& out, std::size_t start, const Cube& l, const Key& target) {
    Key t = wrap(0, target);
    for (std::size_t j = start; j < out.size(); ++j) {
      if (out[j].target == t && is_subcube(l, out[j].label)) return;
    }
    out.push_back(Edge{l, std::move(t)});
  }

  Nba a_;
  std::vector<std::size_t> keep_;
};

class DuplicateImpl final : public AutomatonImpl {
 public:
  DuplicateImpl(Nba a, std::size_t n) : a_(std::move(a)), n_(n) {}

  std::size_t arity() const override { return a_.arity() + n_; }
  std::size_t key_size() const override { return a_.impl().key_size(); }
  bool weak() const override { return a_.impl().weak(); }
  Key initial() const override { return a_.impl().initial(); }
  bool accepting(KeyView s) const override { return a_.impl().accepting(s); }

  void successors(KeyView s, const Cube& filter, std::vector<Edge>& out) const override {
    Cube sub(a_.arity());
    for (std::size_t i = 0; i < n_; ++i) {
      sub[i] = filter[i] & filter[n_ + i];
      if (sub[i] == 0) return;
    }
    for (std::size_t i = n_; i < a_.arity(); ++i) sub[i] = filter[n_ + i];
    std::vector<Edge> es;
    a_.impl().successors(s, sub, es);
    for (auto& e : es) split(e, 0, out);
  }

 private:
  // Duplicated tracks must carry equal letters, so multi-letter masks split.
  void split(Edge& e, std::size_t i, std::vector<Edge>& out) const {
    if (i == n_) {
      Cube l(arity());
      for (std::size_t t = 0; t < n_; ++t) l[t] = l[n_ + t] = e.label[t];
      for (std::size_t t = n_; t < a_.arity(); ++t) l[n_ + t] = e.label[t];
      out.push_back(Edge{std::move(l), e.target});
      return;
    }
    const Mask m = e.label[i];
    for (Mask bit = 1; bit <= kPoint; bit <<= 1) {
      if (!(m & bit)) continue;
      e.label[i] = bit;
      split(e, i + 1, out);
    }
    e.label[i] = m;
  }

  Nba a_;
  std::size_t n_;
};

void require_same_arity(const Nba& a, const Nba& b, const char* op) {
  if (a.arity() != b.arity()) {
    throw std::invalid_argument(std::string(op) + ": arity " + std::to_string(a.arity()) + " vs " +
                                std::to_string(b.arity()));
  }
}

}  // namespace

Nba empty_nba(std::size_t arity) {
  ExplicitNba e;
  e.arity = arity;
  e.accepting = {false};
  e.transitions.resize(1);
  e.weak = true;
  return make_nba(std::move(e));
}

Nba universal_nba(std::size_t arity) {
  ExplicitNba e;
  e.arity = arity;
  e.accepting = {true};
  e.transitions.resize(1);
  e.transitions[0].emplace_back(Cube(arity, kAny), 0);
  e.weak = true;
  return make_nba(std::move(e));
}

Nba intersect(const Nba& a, const Nba& b) {
  require_same_arity(a, b, "intersect");
  return Nba(std::make_shared<ProductImpl>(a, b));
}

Nba intersect_all(std::span<const Nba> parts) {
  if (parts.empty()) throw std::invalid_argument("intersect_all of nothing");
  Nba acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = intersect(acc, parts[i]);
  return acc;
}

Nba unite(const Nba& a, const Nba& b) {
  require_same_arity(a, b, "unite");
  return Nba(std::make_shared<UnionImpl>(a, b));
}

Nba unite_all(std::span<const Nba> parts, std::size_t arity) {
  if (parts.empty()) return empty_nba(arity);
  Nba acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = unite(acc, parts[i]);
  return acc;
}

Nba embed(const Nba& a, std::size_t arity, std::span<const std::size_t> positions) {
  if (positions.size() != a.arity()) throw std::invalid_argument("embed: one position per track required");
  std::vector<bool> used(arity, false);
  for (auto p : positions) {
    if (p >= arity || used[p]) throw std::invalid_argument("embed: invalid position");
    used[p] = true;
  }
  return Nba(std::make_shared<EmbedImpl>(a, arity, std::vector<std::size_t>(positions.begin(), positions.end())));
}

Nba cylindrify(const Nba& a, std::size_t at, std::size_t count) {
  if (at > a.arity()) throw std::invalid_argument("cylindrify: insertion point out of range");
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < a.arity(); ++i) pos.push_back(i < at ? i : i + count);
  return embed(a, a.arity() + count, pos);
}

Nba project(const Nba& a, std::span<const std::size_t> keep) {
  if (keep.empty()) throw std::invalid_argument("project: keep set is empty");
  std::vector<bool> used(a.arity(), false);
  for (auto k : keep) {
    if (k >= a.arity() || used[k]) throw std::invalid_argument("project: invalid track");
    used[k] = true;
  }
  return Nba(std::make_shared<ProjectImpl>(a, std::vector<std::size_t>(keep.begin(), keep.end())));
}

Nba duplicate_tracks(const Nba& a, std::size_t n) {
  if (n > a.arity()) throw std::invalid_argument("duplicate_tracks: n exceeds arity");
  if (n == 0) return a;
  return Nba(std::make_shared<DuplicateImpl>(a, n));
}

Nba compose(const Nba& a1, std::size_t k, const Nba& a2) {
  if (k > a1.arity() || k > a2.arity()) throw std::invalid_argument("compose: k exceeds an arity");
  const std::size_t k1 = a1.arity() - k, k2 = a2.arity() - k;
  if (k1 + k2 == 0) throw std::invalid_argument("compose: nothing left after projection");
  const std::size_t total = k1 + k + k2;
  std::vector<std::size_t> p1(k1 + k), p2(k + k2);
  std::iota(p1.begin(), p1.end(), 0);
  std::iota(p2.begin(), p2.end(), k1);
  std::vector<Nba> parts{wff(total), embed(a1, total, p1), embed(a2, total, p2)};
  std::vector<std::size_t> keep(k1);
  std::iota(keep.begin(), keep.end(), 0);
  for (std::size_t i = 0; i < k2; ++i) keep.push_back(k1 + k + i);
  return project(intersect_all(parts), keep);
}

bool member(const Nba& a, const LassoWord& w) {
  if (w.arity != a.arity()) throw std::invalid_argument("member: arity mismatch");
  return !is_empty(intersect(lasso_nba(w), a));
}

}  // namespace nncs::omega
