#pragma once

// Cusp bookkeeping for eta quotients on Gamma0(N) and the h = 2 Gauss sum.
//
// A cusp a/c with c | N is represented by its denominator c; c = N is the cusp at
// infinity and c = 1 the cusp 0. The expansion of prod eta(delta z)^r at such a cusp
// begins at q^E(c) with E(c) = sum gcd(c, delta)^2 r / (24 delta). In the local
// uniformizer q^(1/width), width = N / gcd(c^2, N), the order is E(c) * width.

#include <complex>
#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "newmod/qseries.hpp"

namespace newmod::cusps {

using Rational = boost::rational<std::int64_t>;

struct CuspExpansionMeta {
  std::uint64_t c = 1;
  std::uint64_t width = 1;
  Rational leading_exponent{0};
  Rational order{0};
  /// Number of inequivalent cusps with this denominator: phi(gcd(c, N/c)).
  std::uint64_t multiplicity = 1;

  friend bool operator==(const CuspExpansionMeta&, const CuspExpansionMeta&) = default;
};

/// E(c); no level needed. Throws on c = 0.
Rational eta_leading_exponent(const qs::EtaQuotient& eq, std::uint64_t c);

/// Full record for the cusp class of denominator c on Gamma0(N). Requires c | N and
/// delta | N for every term.
CuspExpansionMeta eta_cusp_order(const qs::EtaQuotient& eq, std::uint64_t level, std::uint64_t c);

/// One record per divisor c of N, ascending.
std::vector<CuspExpansionMeta> eta_cusp_table(const qs::EtaQuotient& eq, std::uint64_t level);

struct ValenceCheck {
  Rational total{0};
  Rational expected{0};
  bool holds = false;
};

/// sum over cusps of order versus weight * [SL2(Z) : Gamma0(N)] / 12.
ValenceCheck valence_check(const qs::EtaQuotient& eq, std::uint64_t level);

struct NegativeExponent {
  std::uint64_t c = 1;
  Rational exponent{0};
  std::int64_t square_class = 0;

  friend bool operator==(const NegativeExponent&, const NegativeExponent&) = default;
};

struct OmegaSummary {
  qs::EtaQuotient source;
  std::uint64_t level = 1;
  std::vector<NegativeExponent> negatives;
  /// Distinct signed squarefree classes, ascending.
  std::vector<std::int64_t> representatives;
  std::size_t s = 0;
  /// True when every cusp expansion has at most one negative exponent, namely the
  /// leading one, so leading exponents cover all of Omega.
  bool complete = true;

  friend bool operator==(const OmegaSummary&, const OmegaSummary&) = default;
};

/// Signed squarefree part of num * den, the class of num/den in Q^x / Q^x2.
std::int64_t square_class(const Rational& r);

OmegaSummary omega_set(const qs::EtaQuotient& eq, std::uint64_t level);

struct OmegaFamily {
  /// Elements -(c,24)^2 / denominator over all c.
  std::int64_t denominator = 1;
  std::int64_t square_class = 0;
};

struct FrobeniusOmegaBound {
  unsigned h = 2;
  /// Omega lies in {-j / (576h) : 1 <= j <= 576 h^2}.
  std::uint64_t bound = 0;
  /// Refined families, only for h = 2 and h = 3.
  std::vector<OmegaFamily> families;
  std::vector<std::int64_t> refined_classes;
};

FrobeniusOmegaBound frobenius_omega_bound(unsigned h);

struct GaussValue {
  std::complex<double> value;
  std::complex<double> v_sum;
  std::complex<double> u_sum;
  std::uint64_t g = 1;
  /// Exact: the u-sum vanishes iff gcd(c, 24) does not divide w.
  bool u_vanishes = false;
};

/// Factored h = 2 sum e(dw^2/(96c)) * sum_v e((24av^2 + wv)/c) * sum_u e(wu/g),
/// g = gcd(c, 24). Requires ad - bc = 1 and c >= 1.
GaussValue gauss_phi_h2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                        std::int64_t w);

/// The unfactored sum over x in Z/cZ of e((24ax^2 + wx)/c + dw^2/(96c)).
std::complex<double> gauss_phi_h2_direct(std::int64_t a, std::int64_t c, std::int64_t d,
                                         std::int64_t w);

struct GaussSweep {
  std::uint64_t cases = 0;
  std::uint64_t nonvanishing = 0;
  /// Nonzero value with gcd(c, 24) not dividing w.
  std::uint64_t counterexamples = 0;
  /// Exact u-flag disagreeing with |u-sum| < tol, or exact vanishing with |value| >= tol.
  std::uint64_t disagreements = 0;
  /// Factored and direct sums differing by more than tol.
  std::uint64_t factorization_mismatches = 0;
  double tolerance = 1e-6;
};

/// c in [1, c_max], |w| <= w_max, the first `per_c` values a >= 1 coprime to c.
GaussSweep gauss_sweep(std::int64_t c_max, std::int64_t w_max, unsigned per_c = 5,
                       double tolerance = 1e-6);

}  // namespace newmod::cusps
