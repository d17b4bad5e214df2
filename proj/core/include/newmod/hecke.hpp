#pragma once

#include <cstdint>
#include <optional>

#include "newmod/qseries.hpp"

namespace newmod::hecke {

using qs::QSeries;
using qs::Residue;

/// Weight weight_num/2 on Gamma0(level) with nebentypus n -> (disc/n).
struct HeckeContext {
  std::int64_t weight_num = 2;
  std::uint64_t level = 1;
  std::int64_t disc = 1;

  bool half_integral() const { return weight_num % 2 != 0; }

  /// k with weight k (integral) or k + 1/2 (half-integral).
  std::int64_t k() const;

  /// Kronecker character, forced to 0 when gcd(n, level) > 1.
  int chi(std::uint64_t n) const;

  /// Throws std::invalid_argument on level 0, or half-integral weight with 4 not dividing level.
  void validate() const;

  friend bool operator==(const HeckeContext&, const HeckeContext&) = default;
};

/// Context of the weight 2k lift: level N/2, character chi^2.
HeckeContext shimura_context(const HeckeContext& half);

/// b(n) = a(pn) + chi(p) p^(k-1) a(n/p) for 0 <= n < n_out.
/// n_out defaults to floor(reach/p). Throws on p | level or half-integral weight.
QSeries hecke_integral(const QSeries& f, const HeckeContext& ctx, std::uint64_t p,
                       std::optional<std::int64_t> n_out = std::nullopt);

/// b(n) = a(p^2 n) + chi(p) ((-1)^k n / p) p^(k-1) a(n) + chi(p)^2 p^(2k-1) a(n/p^2).
/// n_out defaults to floor(reach/p^2). Rejects even p, k < 1 and p | level.
QSeries hecke_half(const QSeries& f, const HeckeContext& ctx, std::uint64_t p,
                   std::optional<std::int64_t> n_out = std::nullopt);

/// A_t(n) = sum_{d | n} chi(d) ((-1)^k t / d) d^(k-1) a(t (n/d)^2) with A_t(0) = 0.
/// n_out defaults to the largest value with t (n_out - 1)^2 inside the reach.
QSeries shimura_lift(const QSeries& f, const HeckeContext& ctx, std::uint64_t t,
                     std::optional<std::int64_t> n_out = std::nullopt);

struct HeckeReport {
  std::uint64_t p = 0;
  Residue lambda = 0;
  std::uint32_t modulus = 1;
  /// Indices 0 <= n < checked_to were compared.
  std::int64_t checked_to = 0;
  bool consistent = true;
  std::optional<std::int64_t> violation_index;

  friend bool operator==(const HeckeReport&, const HeckeReport&) = default;
};

/// Compares f|T with lambda f modulo `modulus` (T_{p^2} for half-integral weight, T_p
/// otherwise). A consistent verdict is a finite-truncation necessary condition only.
HeckeReport eigencongruence_check(const QSeries& f, const HeckeContext& ctx, std::uint64_t p,
                                  Residue lambda, std::uint32_t modulus,
                                  std::optional<std::int64_t> n_check = std::nullopt);

/// F_ell = eta(z)^(ell^2) / eta(ell^2 z) for ell >= 5, eta(z)^27 / eta(9z)^3 for ell = 3.
qs::EtaQuotient f_ell_quotient(std::uint64_t ell);

/// (f twisted by the trivial character mod ell) * F_ell^(ell^(e-1)), reduced mod ell^e.
/// `level` 0 skips the ell-versus-level check.
QSeries build_f_ell_holomorphic(const QSeries& f, std::uint64_t ell, unsigned e,
                                std::uint64_t level = 0);

/// (1/2)(f x triv - (r1/ell) f x (./ell)) * F_ell^(ell^beta) mod ell^e, beta >= e - 1
/// (default e - 1). F_ell^(ell^beta) = 1 mod ell^e is checked on the working range.
QSeries build_f_ell_treneer(const QSeries& f, std::uint64_t ell, unsigned e, std::int64_t r1,
                            std::optional<unsigned> beta = std::nullopt, std::uint64_t level = 0);

}  // namespace newmod::hecke
