#include "newmod/cusps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "newmod/numtheory.hpp"

namespace newmod::cusps {

namespace {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : nt::factorize(n)) {
    const std::size_t size = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < size; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t out = n;
  for (const auto& [p, e] : nt::factorize(n)) out = out / p * (p - 1);
  return out;
}

void check_level(const qs::EtaQuotient& eq, std::uint64_t level) {
  if (level == 0) throw std::invalid_argument("cusps: level must be positive");
  for (const auto& t : eq.terms()) {
    if (level % t.delta != 0) {
      throw std::invalid_argument("cusps: delta = " + std::to_string(t.delta) +
                                  " does not divide the level");
    }
  }
}

// e(num/den) with the argument reduced exactly first.
std::complex<double> unit_root(std::int64_t num, std::int64_t den) {
  const std::int64_t r = ((num % den) + den) % den;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

Rational eta_leading_exponent(const qs::EtaQuotient& eq, std::uint64_t c) {
  if (c == 0) throw std::invalid_argument("cusps: cusp denominator must be positive");
  Rational total{0};
  for (const auto& t : eq.terms()) {
    const auto g = static_cast<std::int64_t>(std::gcd(c, t.delta));
    total += Rational(g * g * t.power, 24 * static_cast<std::int64_t>(t.delta));
  }
  return total;
}

CuspExpansionMeta eta_cusp_order(const qs::EtaQuotient& eq, std::uint64_t level, std::uint64_t c) {
  check_level(eq, level);
  if (c == 0 || level % c != 0) throw std::invalid_argument("cusps: c must divide the level");
  CuspExpansionMeta meta;
  meta.c = c;
  meta.width = level / std::gcd(c * c, level);
  meta.leading_exponent = eta_leading_exponent(eq, c);
  meta.order = meta.leading_exponent * static_cast<std::int64_t>(meta.width);
  meta.multiplicity = euler_phi(std::gcd(c, level / c));
  return meta;
}

std::vector<CuspExpansionMeta> eta_cusp_table(const qs::EtaQuotient& eq, std::uint64_t level) {
  check_level(eq, level);
  std::vector<CuspExpansionMeta> out;
  for (std::uint64_t c : divisors(level)) out.push_back(eta_cusp_order(eq, level, c));
  return out;
}

ValenceCheck valence_check(const qs::EtaQuotient& eq, std::uint64_t level) {
  ValenceCheck out;
  for (const auto& meta : eta_cusp_table(eq, level)) {
    out.total += meta.order * static_cast<std::int64_t>(meta.multiplicity);
  }
  Rational index{static_cast<std::int64_t>(level)};
  for (const auto& [p, e] : nt::factorize(level)) {
    index *= Rational(static_cast<std::int64_t>(p + 1), static_cast<std::int64_t>(p));
  }
  out.expected = Rational(eq.weight_num(), 2) * index / 12;
  out.holds = out.total == out.expected;
  return out;
}

std::int64_t square_class(const Rational& r) {
  if (r == Rational{0}) throw std::invalid_argument("square_class: zero has no class");
  return nt::squarefree_part(r.numerator() * r.denominator());
}

OmegaSummary omega_set(const qs::EtaQuotient& eq, std::uint64_t level) {
  OmegaSummary out;
  out.source = eq;
  out.level = level;
  std::set<std::int64_t> classes;
  for (const auto& meta : eta_cusp_table(eq, level)) {
    const Rational e = meta.leading_exponent;
    if (e < Rational{0}) {
      const std::int64_t cls = square_class(e);
      out.negatives.push_back({meta.c, e, cls});
      classes.insert(cls);
    }
    // Later exponents sit at E + sums of gcd(c, delta)^2 / delta.
    std::optional<Rational> gap;
    for (const auto& t : eq.terms()) {
      const auto g = static_cast<std::int64_t>(std::gcd(meta.c, t.delta));
      const Rational inc(g * g, static_cast<std::int64_t>(t.delta));
      if (!gap || inc < *gap) gap = inc;
    }
    if (gap && e + *gap < Rational{0}) out.complete = false;
  }
  out.representatives.assign(classes.begin(), classes.end());
  out.s = out.representatives.size();
  return out;
}

FrobeniusOmegaBound frobenius_omega_bound(unsigned h) {
  if (h < 2) throw std::invalid_argument("frobenius_omega_bound: h must be >= 2");
  FrobeniusOmegaBound out;
  out.h = h;
  out.bound = 576ull * h * h;
  std::vector<std::int64_t> denominators;
  if (h == 2) denominators = {288};
  if (h == 3) denominators = {192, 1728};
  std::set<std::int64_t> classes;
  for (std::int64_t den : denominators) {
    // (c,24)^2 is a square, so the class of -(c,24)^2/den is that of -den.
    const std::int64_t cls = nt::squarefree_part(-den);
    out.families.push_back({den, cls});
    classes.insert(cls);
  }
  out.refined_classes.assign(classes.begin(), classes.end());
  return out;
}

GaussValue gauss_phi_h2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                        std::int64_t w) {
  if (c <= 0) throw std::invalid_argument("gauss_phi_h2: needs c >= 1 (c = 0 is the cusp at infinity)");
  if (a * d - b * c != 1) throw std::invalid_argument("gauss_phi_h2: ad - bc must equal 1");
  GaussValue out;
  const std::int64_t g = std::gcd(c, std::int64_t{24});
  out.g = static_cast<std::uint64_t>(g);
  for (std::int64_t v = 0; v < c / g; ++v) {
    out.v_sum += unit_root((24 * a % c) * v % c * v + w % c * v, c);
  }
  for (std::int64_t u = 0; u < g; ++u) out.u_sum += unit_root(w * u, g);
  out.u_vanishes = w % g != 0;
  const std::complex<double> pre = unit_root(d % (96 * c) * ((w * w) % (96 * c)), 96 * c);
  out.value = pre * out.v_sum * out.u_sum;
  return out;
}

std::complex<double> gauss_phi_h2_direct(std::int64_t a, std::int64_t c, std::int64_t d,
                                         std::int64_t w) {
  if (c <= 0) throw std::invalid_argument("gauss_phi_h2_direct: needs c >= 1");
  std::complex<double> sum{0.0, 0.0};
  // Common denominator 96c: e((96(24ax^2 + wx) + dw^2) / (96c)).
  const std::int64_t den = 96 * c;
  for (std::int64_t x = 0; x < c; ++x) {
    const std::int64_t num = 96 * ((24 * a * x % c) * x % c + w * x % c) + (d % den) * (w * w % den);
    sum += unit_root(num, den);
  }
  return sum;
}

GaussSweep gauss_sweep(std::int64_t c_max, std::int64_t w_max, unsigned per_c, double tolerance) {
  if (c_max < 1 || w_max < 0 || per_c == 0) throw std::invalid_argument("gauss_sweep: bad ranges");
  GaussSweep out;
  out.tolerance = tolerance;
  for (std::int64_t c = 1; c <= c_max; ++c) {
    std::vector<std::int64_t> as;
    for (std::int64_t a = 1; as.size() < per_c; ++a) {
      if (std::gcd(a, c) == 1) as.push_back(a);
    }
    for (std::int64_t a : as) {
      const std::int64_t d =
          c == 1 ? 1
                 : static_cast<std::int64_t>(nt::invmod(static_cast<std::uint64_t>(a),
                                                        static_cast<std::uint64_t>(c)));
      const std::int64_t b = (a * d - 1) / c;
      for (std::int64_t w = -w_max; w <= w_max; ++w) {
        const GaussValue gv = gauss_phi_h2(a, b, c, d, w);
        const std::complex<double> direct = gauss_phi_h2_direct(a, c, d, w);
        ++out.cases;
        const bool nonzero = std::abs(direct) >= tolerance;
        if (nonzero) ++out.nonvanishing;
        if (nonzero && w % static_cast<std::int64_t>(gv.g) != 0) ++out.counterexamples;
        const bool numeric_u_zero = std::abs(gv.u_sum) < tolerance;
        if (gv.u_vanishes != numeric_u_zero || (gv.u_vanishes && std::abs(gv.value) >= tolerance)) {
          ++out.disagreements;
        }
        if (std::abs(gv.value - direct) > tolerance) ++out.factorization_mismatches;
      }
    }
  }
  return out;
}

}  // namespace newmod::cusps
