#include "nncs/omega/nba.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

namespace nncs::omega {

namespace {

struct KeyHash {
  std::size_t operator()(const Key& k) const { return boost::hash_range(k.begin(), k.end()); }
};

class ExplicitImpl final : public AutomatonImpl {
 public:
  explicit ExplicitImpl(ExplicitNba a) : a_(std::move(a)) {}
  std::size_t arity() const override { return a_.arity; }
  std::size_t key_size() const override { return 1; }
  Key initial() const override { return Key{a_.initial}; }
  bool accepting(KeyView s) const override { return a_.accepting[s[0]]; }
  bool weak() const override { return a_.weak; }
  void successors(KeyView s, const Cube& filter, std::vector<Edge>& out) const override {
    for (const auto& [label, t] : a_.transitions[s[0]]) {
      Cube l = label;
      if (meet(l, filter)) out.push_back(Edge{std::move(l), Key{t}});
    }
  }

 private:
  ExplicitNba a_;
};

using Adjacency = std::vector<std::vector<std::pair<Cube, std::uint32_t>>>;

struct Graph {
  std::vector<bool> accepting;
  Adjacency edges;
};

Graph explore(const Nba& a, std::size_t limit) {
  const AutomatonImpl& impl = a.impl();
  std::unordered_map<Key, std::uint32_t, KeyHash> index;
  std::vector<Key> keys;
  Graph g;
  const Cube all(impl.arity(), kAny);
  auto intern = [&](Key k) -> std::uint32_t {
    auto [it, fresh] = index.emplace(k, static_cast<std::uint32_t>(keys.size()));
    if (fresh) {
      if (keys.size() >= limit) {
        throw ExplorationLimit("automaton exceeds " + std::to_string(limit) + " states");
      }
      g.accepting.push_back(impl.accepting(view(k)));
      keys.push_back(std::move(k));
    }
    return it->second;
  };
  intern(impl.initial());
  std::vector<Edge> buf;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    buf.clear();
    impl.successors(view(keys[i]), all, buf);
    std::vector<std::pair<Cube, std::uint32_t>> row;
    row.reserve(buf.size());
    for (auto& e : buf) {
      std::uint32_t t = intern(std::move(e.target));
      row.emplace_back(std::move(e.label), t);
    }
    g.edges.push_back(std::move(row));
  }
  return g;
}

// Iterative Tarjan; returns component ids and flags for nontrivial components.
struct Sccs {
  std::vector<std::uint32_t> comp;
  std::vector<bool> nontrivial;  // per component
  std::size_t count = 0;
};

Sccs tarjan(const Adjacency& adj) {
  const std::size_t n = adj.size();
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> idx(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  Sccs r;
  r.comp.assign(n, kUnset);
  std::uint32_t counter = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (idx[root] != kUnset) continue;
    call.emplace_back(root, 0);
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei < adj[v].size()) {
        std::uint32_t w = adj[v][ei].second;
        ++ei;
        if (idx[w] == kUnset) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
        continue;
      }
      if (low[v] == idx[v]) {
        const std::uint32_t c = static_cast<std::uint32_t>(r.count++);
        std::size_t members = 0;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          r.comp[w] = c;
          ++members;
        } while (w != v);
        bool self = false;
        for (const auto& e : adj[v]) self |= e.second == v;
        r.nontrivial.push_back(members > 1 || self);
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) {
        auto& parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }
  return r;
}

std::vector<bool> good_components(const Graph& g, const Sccs& s) {
  std::vector<bool> good(s.count, false);
  for (std::size_t v = 0; v < g.accepting.size(); ++v) {
    if (g.accepting[v] && s.nontrivial[s.comp[v]]) good[s.comp[v]] = true;
  }
  return good;
}

Symbol symbol_of(const Cube& c) {
  Symbol s;
  s.reserve(c.size());
  for (Mask m : c) s.push_back(first_char(m));
  return s;
}

// Mergeable if the cubes differ on at most one track.
bool merge_into(Cube& a, const Cube& b) {
  std::size_t diff = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      if (diff != a.size()) return false;
      diff = i;
    }
  }
  if (diff != a.size()) a[diff] |= b[diff];
  return true;
}

void merge_edges(std::vector<std::pair<Cube, std::uint32_t>>& row) {
  std::stable_sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
  std::vector<std::pair<Cube, std::uint32_t>> out;
  std::size_t i = 0;
  while (i < row.size()) {
    std::size_t j = i;
    std::vector<Cube> group;
    while (j < row.size() && row[j].second == row[i].second) group.push_back(std::move(row[j++].first));
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < group.size() && !changed; ++a) {
        for (std::size_t b = a + 1; b < group.size(); ++b) {
          if (is_subcube(group[b], group[a]) || merge_into(group[a], group[b])) {
            group.erase(group.begin() + static_cast<std::ptrdiff_t>(b));
            changed = true;
            break;
          }
          if (is_subcube(group[a], group[b])) {
            group.erase(group.begin() + static_cast<std::ptrdiff_t>(a));
            changed = true;
            break;
          }
        }
      }
    }
    for (auto& c : group) out.emplace_back(std::move(c), row[i].second);
    i = j;
  }
  row = std::move(out);
}

}  // namespace

Nba::Nba(std::shared_ptr<const AutomatonImpl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw std::invalid_argument("null automaton");
}

std::size_t ExplicitNba::transition_count() const {
  std::size_t n = 0;
  for (const auto& row : transitions) n += row.size();
  return n;
}

void ExplicitNba::validate() const {
  if (arity == 0) throw std::invalid_argument("automaton arity must be positive");
  if (accepting.empty() || transitions.size() != accepting.size()) {
    throw std::invalid_argument("automaton state tables disagree");
  }
  if (initial >= accepting.size()) throw std::invalid_argument("initial state out of range");
  for (const auto& row : transitions) {
    for (const auto& [label, t] : row) {
      if (t >= accepting.size()) throw std::invalid_argument("transition target out of range");
      if (label.size() != arity) throw std::invalid_argument("transition label does not match arity");
      for (Mask m : label) {
        if (m == 0 || (m & ~kAny) != 0) throw std::invalid_argument("bad transition label");
      }
    }
  }
}

Nba make_nba(ExplicitNba a) {
  a.validate();
  return Nba(std::make_shared<ExplicitImpl>(std::move(a)));
}

ExplicitNba materialize(const Nba& a, std::size_t limit) {
  Graph g = explore(a, limit);
  ExplicitNba e;
  e.arity = a.arity();
  e.initial = 0;
  e.accepting = std::move(g.accepting);
  e.transitions = std::move(g.edges);
  e.weak = a.impl().weak();
  return e;
}

ExplicitNba trim_explicit(const Nba& a, std::size_t limit) {
  Graph g = explore(a, limit);
  const std::size_t n = g.accepting.size();
  Sccs s = tarjan(g.edges);
  std::vector<bool> good = good_components(g, s);

  std::vector<std::vector<std::uint32_t>> rev(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (const auto& e : g.edges[v]) rev[e.second].push_back(v);
  }
  std::vector<bool> useful(n, false);
  std::deque<std::uint32_t> work;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (good[s.comp[v]]) {
      useful[v] = true;
      work.push_back(v);
    }
  }
  while (!work.empty()) {
    std::uint32_t v = work.front();
    work.pop_front();
    for (std::uint32_t u : rev[v]) {
      if (!useful[u]) {
        useful[u] = true;
        work.push_back(u);
      }
    }
  }

  ExplicitNba out;
  out.arity = a.arity();
  out.initial = 0;
  if (!useful[0]) {
    out.accepting = {false};
    out.transitions.resize(1);
    out.weak = true;
    return out;
  }
  std::vector<std::uint32_t> renum(n, UINT32_MAX);
  std::vector<std::uint32_t> order{0};
  renum[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& e : g.edges[order[i]]) {
      if (useful[e.second] && renum[e.second] == UINT32_MAX) {
        renum[e.second] = static_cast<std::uint32_t>(order.size());
        order.push_back(e.second);
      }
    }
  }
  out.accepting.resize(order.size());
  out.transitions.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::uint32_t v = order[i];
    out.accepting[i] = g.accepting[v] && s.nontrivial[s.comp[v]];
    for (const auto& e : g.edges[v]) {
      if (useful[e.second]) out.transitions[i].emplace_back(e.first, renum[e.second]);
    }
    merge_edges(out.transitions[i]);
  }
  // Weak iff no nontrivial component mixes accepting and rejecting states.
  std::vector<int> seen(s.count, -1);
  out.weak = true;
  for (std::size_t i = 0; i < order.size() && out.weak; ++i) {
    const std::uint32_t c = s.comp[order[i]];
    if (!s.nontrivial[c]) continue;
    const int acc = out.accepting[i] ? 1 : 0;
    if (seen[c] == -1) seen[c] = acc;
    else if (seen[c] != acc) out.weak = false;
  }
  return out;
}

Nba trim(const Nba& a, std::size_t limit) { return make_nba(trim_explicit(a, limit)); }

std::optional<LassoWord> find_accepted(const Nba& a, std::size_t limit) {
  Graph g = explore(a, limit);
  const std::size_t n = g.accepting.size();
  Sccs s = tarjan(g.edges);
  std::vector<bool> good = good_components(g, s);

  // Breadth-first from the initial state to the first accepting state on a cycle.
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> parent(n, kNone), via(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<std::uint32_t> q{0};
  seen[0] = true;
  std::uint32_t hit = kNone;
  while (!q.empty()) {
    std::uint32_t v = q.front();
    q.pop_front();
    if (g.accepting[v] && good[s.comp[v]]) {
      hit = v;
      break;
    }
    for (std::uint32_t ei = 0; ei < g.edges[v].size(); ++ei) {
      std::uint32_t w = g.edges[v][ei].second;
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        via[w] = ei;
        q.push_back(w);
      }
    }
  }
  if (hit == kNone) return std::nullopt;

  LassoWord w;
  w.arity = a.arity();
  for (std::uint32_t v = hit; v != 0; v = parent[v]) w.prefix.push_back(symbol_of(g.edges[parent[v]][via[v]].first));
  std::reverse(w.prefix.begin(), w.prefix.end());

  // Shortest cycle back to `hit` inside its component.
  const std::uint32_t c = s.comp[hit];
  std::vector<std::uint32_t> cpar(n, kNone), cvia(n, 0);
  std::vector<bool> cseen(n, false);
  std::deque<std::uint32_t> cq{hit};
  std::uint32_t last = kNone, last_edge = 0;
  while (!cq.empty() && last == kNone) {
    std::uint32_t v = cq.front();
    cq.pop_front();
    for (std::uint32_t ei = 0; ei < g.edges[v].size(); ++ei) {
      std::uint32_t t = g.edges[v][ei].second;
      if (s.comp[t] != c) continue;
      if (t == hit) {
        last = v;
        last_edge = ei;
        break;
      }
      if (!cseen[t]) {
        cseen[t] = true;
        cpar[t] = v;
        cvia[t] = ei;
        cq.push_back(t);
      }
    }
  }
  w.cycle.push_back(symbol_of(g.edges[last][last_edge].first));
  for (std::uint32_t v = last; v != hit; v = cpar[v]) w.cycle.push_back(symbol_of(g.edges[cpar[v]][cvia[v]].first));
  std::reverse(w.cycle.begin(), w.cycle.end());
  return w;
}

Nba lasso_nba(const LassoWord& w) {
  w.validate();
  ExplicitNba e;
  e.arity = w.arity;
  const std::size_t p = w.prefix.size(), total = p + w.cycle.size();
  e.accepting.assign(total, false);
  e.transitions.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    const Symbol& sym = i < p ? w.prefix[i] : w.cycle[i - p];
    Cube label;
    for (char ch : sym) label.push_back(mask_of(ch));
    const std::size_t next = i + 1 < total ? i + 1 : p;
    e.transitions[i].emplace_back(std::move(label), static_cast<std::uint32_t>(next));
    e.accepting[i] = i >= p;
  }
  e.weak = true;
  return make_nba(std::move(e));
}

std::size_t state_count(const Nba& a, std::size_t limit) { return explore(a, limit).accepting.size(); }

std::optional<ExplicitNba> corrupt_transition(const ExplicitNba& a, std::size_t track, Mask from, Mask to,
                                              std::size_t n) {
  if (track >= a.arity) throw std::invalid_argument("corrupt_transition: track out of range");
  ExplicitNba out = a;
  std::size_t seen = 0;
  for (auto& row : out.transitions) {
    for (auto& [label, t] : row) {
      if (label[track] != from) continue;
      if (seen++ == n) {
        label[track] = to;
        return out;
      }
    }
  }
  return std::nullopt;
}

}  // namespace nncs::omega
