#include "nncs/omega/lasso.hpp"

#include <numeric>
#include <stdexcept>

namespace nncs::omega {

namespace {

Rational ratio(const BigInt& n, const BigInt& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

BigInt pow2(std::size_t e) {
  BigInt r;
  mpz_setbit(r.get_mpz_t(), e);
  return r;
}

// Fraction bits of rem/den (0 <= rem < den): pre-period then period.
void fraction_bits(const BigInt& rem, const BigInt& den, std::string& pre, std::string& cyc) {
  const std::size_t v = mpz_scan1(den.get_mpz_t(), 0);
  BigInt odd = den >> v;
  pre.clear();
  cyc.clear();
  if (den.fits_ulong_p() && den < pow2(62)) {
    unsigned long d = den.get_ui(), r = rem.get_ui();
    for (std::size_t i = 0; i < v; ++i) {
      r <<= 1;
      if (r >= d) { pre.push_back('1'); r -= d; } else { pre.push_back('0'); }
    }
    if (odd == 1) { cyc = "0"; return; }
    const unsigned long start = r;
    do {
      r <<= 1;
      if (r >= d) { cyc.push_back('1'); r -= d; } else { cyc.push_back('0'); }
    } while (r != start);
    return;
  }
  BigInt r = rem;
  for (std::size_t i = 0; i < v; ++i) {
    r <<= 1;
    if (r >= den) { pre.push_back('1'); r -= den; } else { pre.push_back('0'); }
  }
  if (odd == 1) { cyc = "0"; return; }
  const BigInt start = r;
  do {
    r <<= 1;
    if (r >= den) { cyc.push_back('1'); r -= den; } else { cyc.push_back('0'); }
  } while (r != start);
}

}  // namespace

Expansion expand(const Rational& q) {
  Expansion e;
  e.negative = sgn(q) < 0;
  const BigInt num = abs(q.get_num());
  const BigInt& den = q.get_den();
  BigInt ip = num / den;
  BigInt rem = num % den;
  e.int_digits = ip.get_str(2);
  fraction_bits(rem, den, e.frac_prefix, e.frac_cycle);
  return e;
}

std::optional<Expansion> dual_expansion(const Rational& q) {
  if (sgn(q) == 0) return std::nullopt;
  const BigInt& den = q.get_den();
  const std::size_t v = mpz_scan1(den.get_mpz_t(), 0);
  if ((den >> v) != 1) return std::nullopt;
  // |q| = (|q| - 2^-v) + 0.00..0(1)^omega with the ones starting at bit v.
  Rational lower = abs(q) - ratio(1, pow2(v));
  Expansion e = expand(lower);
  e.negative = sgn(q) < 0;
  e.frac_prefix.resize(v, '0');  // lower has at most v fraction bits
  e.frac_cycle = "1";
  return e;
}

LassoWord to_lasso(const Expansion& e) {
  LassoWord w;
  w.prefix.emplace_back(1, e.negative ? '-' : '+');
  for (char c : e.int_digits) w.prefix.emplace_back(1, c);
  w.prefix.emplace_back(1, '.');
  for (char c : e.frac_prefix) w.prefix.emplace_back(1, c);
  for (char c : e.frac_cycle) w.cycle.emplace_back(1, c);
  return w;
}

LassoWord encode(const Rational& q) { return to_lasso(expand(q)); }

Rational decode(const LassoWord& w) {
  w.validate();
  if (w.arity != 1) throw std::invalid_argument("decode expects a single track");
  const auto& p = w.prefix;
  if (p.empty() || (p[0][0] != '+' && p[0][0] != '-')) throw std::invalid_argument("word does not start with a sign");
  std::size_t i = 1;
  std::string ip, fp, cy;
  while (i < p.size() && p[i][0] != '.') {
    if (p[i][0] != '0' && p[i][0] != '1') throw std::invalid_argument("non-binary integer digit");
    ip.push_back(p[i][0]);
    ++i;
  }
  if (i == p.size()) throw std::invalid_argument("point missing from the prefix");
  if (ip.empty()) throw std::invalid_argument("no integer digits");
  for (++i; i < p.size(); ++i) {
    if (p[i][0] != '0' && p[i][0] != '1') throw std::invalid_argument("non-binary fraction digit");
    fp.push_back(p[i][0]);
  }
  for (const auto& s : w.cycle) {
    if (s[0] != '0' && s[0] != '1') throw std::invalid_argument("non-binary digit in cycle");
    cy.push_back(s[0]);
  }
  Rational value(BigInt(ip, 2));
  if (!fp.empty()) value += ratio(BigInt(fp, 2), pow2(fp.size()));
  BigInt c(cy, 2);
  if (c != 0) value += ratio(c, (pow2(cy.size()) - 1) * pow2(fp.size()));
  return p[0][0] == '-' ? Rational(-value) : value;
}

LassoWord encode_vector(std::span<const Rational> x, const EncodeOptions& opts) {
  if (x.empty()) throw std::invalid_argument("encode_vector of an empty vector");
  std::vector<Expansion> es;
  for (std::size_t t = 0; t < x.size(); ++t) {
    Expansion e = expand(x[t]);
    if (t < opts.dual.size() && opts.dual[t]) {
      if (auto d = dual_expansion(x[t])) e = *d;
    }
    if (t < opts.negative_zero.size() && opts.negative_zero[t] && sgn(x[t]) == 0) e.negative = true;
    es.push_back(std::move(e));
  }
  std::size_t width = 0, pre = 0, period = 1;
  for (const auto& e : es) {
    width = std::max(width, e.int_digits.size());
    pre = std::max(pre, e.frac_prefix.size());
    period = std::lcm(period, e.frac_cycle.size());
  }
  width += opts.extra_leading_zeros;
  auto frac_bit = [](const Expansion& e, std::size_t j) {
    if (j < e.frac_prefix.size()) return e.frac_prefix[j];
    return e.frac_cycle[(j - e.frac_prefix.size()) % e.frac_cycle.size()];
  };
  LassoWord w;
  w.arity = x.size();
  w.prefix.assign(width + 2 + pre, Symbol());
  w.cycle.assign(period, Symbol());
  for (const auto& e : es) {
    w.prefix[0].push_back(e.negative ? '-' : '+');
    const std::size_t pad = width - e.int_digits.size();
    for (std::size_t j = 0; j < width; ++j) w.prefix[1 + j].push_back(j < pad ? '0' : e.int_digits[j - pad]);
    w.prefix[1 + width].push_back('.');
    for (std::size_t j = 0; j < pre; ++j) w.prefix[2 + width + j].push_back(frac_bit(e, j));
    for (std::size_t j = 0; j < period; ++j) w.cycle[j].push_back(frac_bit(e, pre + j));
  }
  return w;
}

Vector decode_vector(const LassoWord& w) {
  w.validate();
  Vector v;
  for (std::size_t t = 0; t < w.arity; ++t) v.push_back(decode(track(w, t)));
  return v;
}

}  // namespace nncs::omega
