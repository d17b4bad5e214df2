#include "newmod/hecke.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "newmod/numtheory.hpp"

namespace newmod::hecke {

namespace {

// a(0..reach) of a series supported on n >= 0.
std::vector<Residue> nonnegative_coeffs(const QSeries& f, const char* who) {
  if (!f.integral_exponents()) {
    throw std::invalid_argument(std::string(who) + ": series has fractional exponents");
  }
  if (!f.is_zero() && f.offset_num() < 0) {
    throw std::invalid_argument(std::string(who) + ": series has terms at negative exponents");
  }
  return f.dense(0, f.integer_reach());
}

Residue signed_residue(std::int64_t v, std::uint32_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<Residue>(((v % mm) + mm) % mm);
}

std::int64_t resolve_n_out(std::optional<std::int64_t> requested, std::int64_t available,
                           const char* who) {
  if (!requested) return available;
  if (*requested < 0) throw std::invalid_argument(std::string(who) + ": n_out must be >= 0");
  if (*requested > available) {
    throw qs::InsufficientReach(std::string(who) + ": " + std::to_string(*requested) +
                                " output coefficients requested, only " +
                                std::to_string(available) + " available");
  }
  return *requested;
}

void require_prime_off_level(std::uint64_t p, const HeckeContext& ctx, const char* who) {
  if (!nt::is_prime(p)) throw std::invalid_argument(std::string(who) + ": p must be prime");
  if (ctx.level % p == 0) {
    throw std::invalid_argument(std::string(who) + ": p divides the level");
  }
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (out > qs::kModulusLimit / base) throw std::invalid_argument("ell^e exceeds 2^31");
    out *= base;
  }
  return out;
}

void check_twist_prime(std::uint64_t ell, unsigned e, std::uint64_t level, const char* who) {
  if (ell < 3 || !nt::is_prime(ell)) {
    throw std::invalid_argument(std::string(who) + ": ell must be an odd prime");
  }
  if (e < 1) throw std::invalid_argument(std::string(who) + ": e must be >= 1");
  if (level != 0 && level % ell == 0) {
    throw std::invalid_argument(std::string(who) + ": ell divides the level");
  }
}

// F_ell^(ell^beta) mod ell^e on the range needed to multiply f without losing reach.
QSeries f_ell_power(const QSeries& f, std::uint64_t ell, unsigned beta, std::uint32_t mod) {
  const std::int64_t span = f.end_num() - f.offset_num();
  const std::int64_t n_trunc = std::max<std::int64_t>((span + qs::kUnitsPerQ - 1) / qs::kUnitsPerQ, 0);
  const QSeries base = qs::eta_expand(f_ell_quotient(ell), n_trunc, mod);
  std::uint64_t exponent = 1;
  for (unsigned i = 0; i < beta; ++i) exponent *= ell;
  const QSeries g = qs::pow(base, exponent);
  if (g.offset_num() != 0 || g.coeffs().empty() || g.coeffs()[0] != 1 % mod ||
      std::any_of(g.coeffs().begin() + 1, g.coeffs().end(), [](Residue c) { return c != 0; })) {
    throw std::runtime_error("F_ell^(ell^beta) is not 1 mod ell^e on the working range");
  }
  return g;
}

}  // namespace

std::int64_t HeckeContext::k() const {
  return half_integral() ? (weight_num - 1) / 2 : weight_num / 2;
}

int HeckeContext::chi(std::uint64_t n) const {
  if (std::gcd(n, level) != 1) return 0;
  return nt::kronecker(disc, static_cast<std::int64_t>(n));
}

void HeckeContext::validate() const {
  if (level == 0) throw std::invalid_argument("level must be positive");
  if (half_integral() && level % 4 != 0) {
    throw std::invalid_argument("half-integral weight needs 4 | level");
  }
}

HeckeContext shimura_context(const HeckeContext& half) {
  if (!half.half_integral()) throw std::invalid_argument("shimura_context: weight is integral");
  return HeckeContext{4 * half.k(), half.level / 2, half.disc * half.disc};
}

QSeries hecke_integral(const QSeries& f, const HeckeContext& ctx, std::uint64_t p,
                       std::optional<std::int64_t> n_out) {
  ctx.validate();
  if (ctx.half_integral()) throw std::invalid_argument("hecke_integral: weight is half-integral");
  if (ctx.k() < 1) throw std::invalid_argument("hecke_integral: weight must be >= 1");
  require_prime_off_level(p, ctx, "hecke_integral");
  const std::uint32_t m = f.modulus();
  const auto a = nonnegative_coeffs(f, "hecke_integral");
  const auto pp = static_cast<std::int64_t>(p);
  const std::int64_t n = resolve_n_out(n_out, static_cast<std::int64_t>(a.size()) / pp,
                                       "hecke_integral");
  const std::uint64_t c1 = nt::mulmod(signed_residue(ctx.chi(p), m),
                                      nt::powmod(p, static_cast<std::uint64_t>(ctx.k() - 1), m), m);
  std::vector<Residue> b(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint64_t v = a[static_cast<std::size_t>(i * pp)];
    if (i % pp == 0) v += nt::mulmod(c1, a[static_cast<std::size_t>(i / pp)], m);
    b[static_cast<std::size_t>(i)] = static_cast<Residue>(v % m);
  }
  return QSeries::from_residues(m, std::move(b));
}

QSeries hecke_half(const QSeries& f, const HeckeContext& ctx, std::uint64_t p,
                   std::optional<std::int64_t> n_out) {
  ctx.validate();
  if (!ctx.half_integral()) throw std::invalid_argument("hecke_half: weight is integral");
  if (ctx.k() < 1) throw std::invalid_argument("hecke_half: weight 1/2 is not supported (k >= 1)");
  if (p % 2 == 0) throw std::invalid_argument("hecke_half: p must be odd");
  require_prime_off_level(p, ctx, "hecke_half");
  const std::uint32_t m = f.modulus();
  const auto a = nonnegative_coeffs(f, "hecke_half");
  const auto p2 = static_cast<std::int64_t>(p * p);
  const std::int64_t n = resolve_n_out(n_out, static_cast<std::int64_t>(a.size()) / p2,
                                       "hecke_half");
  const std::int64_t k = ctx.k();
  const int chi_p = ctx.chi(p);
  const std::uint64_t mid = nt::mulmod(signed_residue(chi_p, m),
                                       nt::powmod(p, static_cast<std::uint64_t>(k - 1), m), m);
  const std::uint64_t last = nt::mulmod(signed_residue(chi_p * chi_p, m),
                                        nt::powmod(p, static_cast<std::uint64_t>(2 * k - 1), m), m);
  const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
  std::vector<Residue> b(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    std::uint64_t v = a[static_cast<std::size_t>(i * p2)];
    const int sym = nt::kronecker(sign * i, static_cast<std::int64_t>(p));
    if (sym != 0) {
      const std::uint64_t term = nt::mulmod(mid, a[static_cast<std::size_t>(i)], m);
      v += sym > 0 ? term : (m - term) % m;
    }
    if (i % p2 == 0) v += nt::mulmod(last, a[static_cast<std::size_t>(i / p2)], m);
    b[static_cast<std::size_t>(i)] = static_cast<Residue>(v % m);
  }
  return QSeries::from_residues(m, std::move(b));
}

QSeries shimura_lift(const QSeries& f, const HeckeContext& ctx, std::uint64_t t,
                     std::optional<std::int64_t> n_out) {
  ctx.validate();
  if (!ctx.half_integral()) throw std::invalid_argument("shimura_lift: weight is integral");
  if (ctx.k() < 1) throw std::invalid_argument("shimura_lift: weight must be >= 3/2");
  if (t == 0 || !nt::is_squarefree(t)) {
    throw std::invalid_argument("shimura_lift: t must be a squarefree positive integer");
  }
  const std::uint32_t m = f.modulus();
  const auto a = nonnegative_coeffs(f, "shimura_lift");
  const auto tt = static_cast<std::int64_t>(t);
  const auto reach = static_cast<std::int64_t>(a.size());
  // Largest count with t (count - 1)^2 < reach.
  std::int64_t available = 0;
  while (tt * available * available < reach) ++available;
  const std::int64_t n = resolve_n_out(n_out, available, "shimura_lift");
  const std::int64_t k = ctx.k();
  const std::int64_t twist_disc = (k % 2 == 0 ? 1 : -1) * tt;
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)), 0);
  for (std::int64_t d = 1; d < n; ++d) {
    const int sym = ctx.chi(static_cast<std::uint64_t>(d)) * nt::kronecker(twist_disc, d);
    if (sym == 0) continue;
    const std::uint64_t weight =
        nt::powmod(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k - 1), m);
    const std::uint64_t c = sym > 0 ? weight : (m - weight) % m;
    for (std::int64_t q = 1; q * d < n; ++q) {
      auto& slot = acc[static_cast<std::size_t>(q * d)];
      slot = (slot + nt::mulmod(c, a[static_cast<std::size_t>(tt * q * q)], m)) % m;
    }
  }
  std::vector<Residue> out(acc.begin(), acc.end());
  return QSeries::from_residues(m, std::move(out));
}

HeckeReport eigencongruence_check(const QSeries& f, const HeckeContext& ctx, std::uint64_t p,
                                  Residue lambda, std::uint32_t modulus,
                                  std::optional<std::int64_t> n_check) {
  qs::check_modulus(modulus);
  const QSeries g = f.reduced(modulus);
  const QSeries image = ctx.half_integral() ? hecke_half(g, ctx, p, n_check)
                                            : hecke_integral(g, ctx, p, n_check);
  HeckeReport report;
  report.p = p;
  report.lambda = lambda % modulus;
  report.modulus = modulus;
  report.checked_to = image.integer_reach();
  const auto lhs = image.dense(0, report.checked_to);
  const auto rhs = g.dense(0, report.checked_to);
  for (std::int64_t n = 0; n < report.checked_to; ++n) {
    const auto expected = nt::mulmod(report.lambda, rhs[static_cast<std::size_t>(n)], modulus);
    if (lhs[static_cast<std::size_t>(n)] != expected) {
      report.consistent = false;
      report.violation_index = n;
      break;
    }
  }
  return report;
}

qs::EtaQuotient f_ell_quotient(std::uint64_t ell) {
  if (ell < 3 || !nt::is_prime(ell)) throw std::invalid_argument("F_ell: ell must be an odd prime");
  if (ell == 3) return qs::EtaQuotient({{1, 27}, {9, -3}});
  const auto sq = static_cast<std::int64_t>(ell * ell);
  return qs::EtaQuotient({{1, sq}, {ell * ell, -1}});
}

QSeries build_f_ell_holomorphic(const QSeries& f, std::uint64_t ell, unsigned e,
                                std::uint64_t level) {
  check_twist_prime(ell, e, level, "build_f_ell_holomorphic");
  const auto mod = static_cast<std::uint32_t>(ipow(ell, e));
  const QSeries twisted = qs::twist(f.reduced(mod), qs::TwistKind::kTrivial, ell);
  if (twisted.is_zero()) return twisted;
  return qs::mul(twisted, f_ell_power(twisted, ell, e - 1, mod));
}

QSeries build_f_ell_treneer(const QSeries& f, std::uint64_t ell, unsigned e, std::int64_t r1,
                            std::optional<unsigned> beta, std::uint64_t level) {
  check_twist_prime(ell, e, level, "build_f_ell_treneer");
  const auto ll = static_cast<std::int64_t>(ell);
  if (r1 == 0 || r1 % ll == 0) throw std::invalid_argument("build_f_ell_treneer: ell divides r1");
  if (!nt::is_squarefree(static_cast<std::uint64_t>(r1 < 0 ? -r1 : r1))) {
    throw std::invalid_argument("build_f_ell_treneer: r1 must be squarefree");
  }
  const unsigned b = beta.value_or(e - 1);
  if (b + 1 < e) throw std::invalid_argument("build_f_ell_treneer: beta must be >= e - 1");
  const auto mod = static_cast<std::uint32_t>(ipow(ell, e));
  const QSeries g = f.reduced(mod);
  const QSeries triv = qs::twist(g, qs::TwistKind::kTrivial, ell);
  const QSeries quad = qs::twist(g, qs::TwistKind::kKronecker, ell);
  const QSeries diff = nt::kronecker(r1, ll) > 0 ? qs::sub(triv, quad) : qs::add(triv, quad);
  const QSeries half = qs::scale(diff, nt::invmod(2, mod));
  if (half.is_zero()) return half;
  return qs::mul(half, f_ell_power(half, ell, b, mod));
}

}  // namespace newmod::hecke
