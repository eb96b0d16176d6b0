#include "nncs/omega/alphabet.hpp"

#include <stdexcept>

namespace nncs::omega {

Mask mask_of(char c) {
  switch (c) {
    case '+': return kPlus;
    case '-': return kMinus;
    case '0': return kZero;
    case '1': return kOne;
    case '.': return kPoint;
    default: break;
  }
  throw std::invalid_argument(std::string("not a letter: '") + c + "'");
}

char first_char(Mask m) {
  if (m & kPlus) return '+';
  if (m & kMinus) return '-';
  if (m & kZero) return '0';
  if (m & kOne) return '1';
  if (m & kPoint) return '.';
  throw std::invalid_argument("empty mask");
}

std::string mask_chars(Mask m) {
  std::string s;
  for (char c : std::string_view("+-01.")) {
    if (m & mask_of(c)) s.push_back(c);
  }
  return s;
}

Mask parse_mask(std::string_view chars) {
  Mask m = 0;
  for (char c : chars) m |= mask_of(c);
  return m;
}

bool meet(Cube& into, const Cube& other) {
  bool ok = true;
  for (std::size_t i = 0; i < into.size(); ++i) {
    into[i] &= other[i];
    if (into[i] == 0) ok = false;
  }
  return ok;
}

bool is_subcube(const Cube& a, const Cube& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

void LassoWord::validate() const {
  if (arity == 0) throw std::invalid_argument("lasso arity must be positive");
  if (cycle.empty()) throw std::invalid_argument("lasso cycle must be nonempty");
  auto check = [&](const Symbol& s) {
    if (s.size() != arity) throw std::invalid_argument("symbol '" + s + "' does not match arity");
    for (char c : s) mask_of(c);
  };
  for (const auto& s : prefix) check(s);
  for (const auto& s : cycle) check(s);
}

std::string LassoWord::str() const {
  std::string out;
  for (std::size_t t = 0; t < arity; ++t) {
    if (t) out.push_back('|');
    for (const auto& s : prefix) out.push_back(s[t]);
    out.push_back('(');
    for (const auto& s : cycle) out.push_back(s[t]);
    out.push_back(')');
  }
  return out;
}

LassoWord track(const LassoWord& w, std::size_t i) {
  if (i >= w.arity) throw std::invalid_argument("track index out of range");
  LassoWord r;
  r.prefix.reserve(w.prefix.size());
  r.cycle.reserve(w.cycle.size());
  for (const auto& s : w.prefix) r.prefix.emplace_back(1, s[i]);
  for (const auto& s : w.cycle) r.cycle.emplace_back(1, s[i]);
  return r;
}

LassoWord zip(const std::vector<LassoWord>& tracks) {
  if (tracks.empty()) throw std::invalid_argument("zip of no tracks");
  LassoWord r;
  r.arity = 0;
  for (const auto& t : tracks) r.arity += t.arity;
  const std::size_t np = tracks.front().prefix.size(), nc = tracks.front().cycle.size();
  r.prefix.assign(np, Symbol());
  r.cycle.assign(nc, Symbol());
  for (const auto& t : tracks) {
    if (t.prefix.size() != np || t.cycle.size() != nc) throw std::invalid_argument("zip of misaligned tracks");
    for (std::size_t j = 0; j < np; ++j) r.prefix[j] += t.prefix[j];
    for (std::size_t j = 0; j < nc; ++j) r.cycle[j] += t.cycle[j];
  }
  return r;
}

LassoWord parse_lasso(std::string_view text) {
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw std::invalid_argument("lasso must end with a parenthesized cycle");
  }
  LassoWord w;
  for (char c : text.substr(0, open)) w.prefix.emplace_back(1, c);
  for (char c : text.substr(open + 1, text.size() - open - 2)) w.cycle.emplace_back(1, c);
  w.validate();
  return w;
}

}  // namespace nncs::omega
