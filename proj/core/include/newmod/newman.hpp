#pragma once

// Experiment drivers: residue censuses, congruence sweeps, the prime search with
// its synthetic eigenform, M-certificates, and prime-density tables.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "newmod/hecke.hpp"
#include "newmod/numtheory.hpp"
#include "newmod/partitions.hpp"

namespace newmod::newman {

using qs::Residue;

struct Checkpoint {
  std::uint64_t x = 0;
  std::vector<std::uint64_t> counts;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct CensusReport {
  part::SequenceSpec spec;
  std::uint64_t x = 0;
  std::vector<std::uint64_t> counts;
  std::vector<std::optional<std::uint64_t>> first_witness;
  /// Counts over n <= X/2^j, ascending in x; the last entry is X itself.
  std::vector<Checkpoint> checkpoints;
  bool all_residues_attained = false;

  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

/// Residue census of a(0..X).
CensusReport census(const part::SequenceSpec& spec, std::uint64_t x);

/// Same census over a precomputed stream a(0..values.size()-1).
CensusReport census_from_values(const part::SequenceSpec& spec, std::span<const Residue> values);

/// Census of cphi_h; h >= 2.
CensusReport frobenius_census(unsigned h, std::uint32_t modulus, std::uint64_t x);

struct ResidueFit {
  std::uint32_t residue = 0;
  bool degenerate = false;
  double exponent = 0.0;
  double residual = 0.0;
  double residual_linear = 0.0;
  double residual_sqrt_log = 0.0;
  /// "linear" or "sqrt_over_log": the reference curve with the smaller log residual.
  std::string closer;
};

struct GrowthDiagnostic {
  std::string label = "DIAGNOSTIC";
  std::vector<ResidueFit> fits;
};

/// Log-log least squares per residue over the checkpoint curve. Needs >= 4 checkpoints.
GrowthDiagnostic growth_diagnostic(const CensusReport& report);

struct CongruenceViolation {
  std::uint32_t modulus = 0;
  std::uint64_t n = 0;
  std::uint64_t index = 0;
  Residue residue = 0;

  friend bool operator==(const CongruenceViolation&, const CongruenceViolation&) = default;
};

/// Checks p(5n+4), p(7n+5), p(11n+6) for 0 <= n <= X. Expected empty.
std::vector<CongruenceViolation> ramanujan_check(std::uint64_t x);

/// Same check against a supplied table of p(i) mod 385 (fault injection).
std::vector<CongruenceViolation> ramanujan_check_values(std::span<const Residue> p_mod_385,
                                                        std::uint64_t x);

/// Raised when the coefficient reach cannot support p_max^2 * N_check.
class TruncationBudget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchTarget {
  std::uint64_t ell = 0;
  unsigned e = 1;
  qs::QSeries form;
  hecke::HeckeContext ctx;
  Residue lambda = 2;
};

struct SearchCondition {
  std::uint64_t ell = 0;
  unsigned e = 1;
  /// Progression modulus Q actually searched (p = 1 mod Q).
  std::uint64_t congruence_modulus = 0;
  /// 2 N ell^(e+2) and whether p = 1 modulo it as well.
  std::uint64_t strict_modulus = 0;
  bool meets_strict = false;

  friend bool operator==(const SearchCondition&, const SearchCondition&) = default;
};

struct PrimeSearchResult {
  bool found = false;
  std::uint64_t p = 0;
  std::vector<SearchCondition> satisfied;
  int kronecker_check = 0;
  std::vector<hecke::HeckeReport> hecke_reports;
  std::int64_t truncation = 0;
  std::int64_t n_check = 0;
  std::uint64_t progression_modulus = 0;
  /// Largest candidate examined; a resumed search starts after it.
  std::uint64_t last_candidate = 0;
  std::uint64_t candidates_examined = 0;
  /// Wall time; reported outside serialized payloads.
  double elapsed_seconds = 0.0;

  friend bool operator==(const PrimeSearchResult& a, const PrimeSearchResult& b) {
    return a.found == b.found && a.p == b.p && a.satisfied == b.satisfied &&
           a.kronecker_check == b.kronecker_check && a.hecke_reports == b.hecke_reports &&
           a.truncation == b.truncation && a.n_check == b.n_check &&
           a.progression_modulus == b.progression_modulus &&
           a.last_candidate == b.last_candidate && a.candidates_examined == b.candidates_examined;
  }
};

struct PrimeSearchParams {
  std::uint64_t n0 = 1;
  std::uint64_t progression_modulus = 1;
  std::uint64_t p_max = 0;
  std::int64_t n_check = 1;
  /// Candidates <= resume_after are skipped.
  std::uint64_t resume_after = 0;
  /// Invoked after each examined candidate; used for checkpointing.
  std::function<void(std::uint64_t)> on_candidate;
};

/// Smallest prime p = 1 mod Q, p <= p_max, with (n0/p) = -1 and every target
/// consistent with f|T = lambda f mod ell^e on N_check coefficients; found = false
/// when the progression is exhausted. Throws TruncationBudget.
PrimeSearchResult prime_search(const std::vector<SearchTarget>& targets,
                               const PrimeSearchParams& params);

struct SyntheticEigenform {
  std::uint64_t ell = 0;
  std::uint64_t p = 0;
  std::uint64_t n0 = 0;
  hecke::HeckeContext ctx;
  qs::QSeries form;
};

/// Level-4, weight k + 1/2, trivial-character series mod ell with f|T_{p^2} = 2f
/// on its whole reach: a(n) is pseudo-random for p^2 not dividing n and a(p^2 m) is
/// forced by the eigen relation. a(n0) = 1 where n0 is the least squarefree n0 >= 3,
/// n0 not dividing 4, with (n0/p) = -1, unless n0 is supplied.
SyntheticEigenform synthetic_eigenform(std::uint64_t ell, std::uint64_t p, std::int64_t reach,
                                       std::uint64_t seed, std::int64_t k = 1,
                                       std::optional<std::uint64_t> n0 = std::nullopt);

enum class RecurrenceMode { kHalf, kIntegral };

struct RecurrenceVerdict {
  unsigned e = 0;
  std::uint64_t index = 0;
  Residue lhs = 0;
  Residue rhs = 0;
  bool consistent = true;

  friend bool operator==(const RecurrenceVerdict&, const RecurrenceVerdict&) = default;
};

/// a(n0 p^(2e)) = (2e+1) a(n0) (half) or a(n0 p^e) = (e+1) a(n0) (integral) mod M,
/// for e = 0..e_max. Throws InsufficientReach when the stream is too short.
std::vector<RecurrenceVerdict> recurrence_check(std::span<const Residue> a, std::uint64_t n0,
                                                std::uint64_t p, std::uint32_t modulus,
                                                RecurrenceMode mode, unsigned e_max);

struct CertificatePrime {
  std::uint64_t ell = 0;
  int kronecker = 0;
  Residue residue = 0;

  friend bool operator==(const CertificatePrime&, const CertificatePrime&) = default;
};

struct MCertificate {
  std::uint32_t modulus = 1;
  bool found = false;
  std::uint64_t x_search = 0;
  /// Exponent n = 24j - 1 of 1/eta(24z) and the partition index j.
  std::uint64_t n = 0;
  std::uint64_t j = 0;
  std::uint64_t n0 = 0;
  std::uint64_t m = 0;
  std::int64_t r1 = -1;
  std::uint64_t level = 576;
  std::vector<CertificatePrime> primes;
  std::string note;

  friend bool operator==(const MCertificate&, const MCertificate&) = default;
};

/// Least j <= X_search with n = 24j - 1 satisfying n0 not dividing 576 and, for every
/// prime ell | M, (-n/ell) = -1 and p(j) != 0 mod ell. M must be coprime to 6.
MCertificate certify_M_partition(std::uint32_t modulus, std::uint64_t x_search);

struct TCoreViolation {
  std::uint64_t t = 0;
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;

  friend bool operator==(const TCoreViolation&, const TCoreViolation&) = default;
};

/// Even t in (2, t_max] with sqfree(t^2 - 1) and sqfree(t^2 + 23) both dividing 576t.
std::vector<TCoreViolation> tcore_divisibility_check(std::uint64_t t_max);

struct DensityRow {
  std::uint64_t x = 0;
  std::uint64_t count_a = 0;
  std::uint64_t count_all = 0;
  double ratio = 0.0;

  friend bool operator==(const DensityRow&, const DensityRow&) = default;
};

struct DensityTable {
  unsigned m = 1;
  std::string predicate;
  double density = 1.0;
  double target = 1.0;
  std::vector<DensityRow> rows;

  friend bool operator==(const DensityTable&, const DensityTable&) = default;
};

DensityTable density_experiment(const nt::PrimePredicate& in_set, const std::string& label,
                                double density, unsigned m, const std::vector<std::uint64_t>& xs);

struct BdCounts {
  std::uint64_t all = 0;
  std::uint64_t squarefree = 0;

  friend bool operator==(const BdCounts&, const BdCounts&) = default;
};

/// #{M <= X : omega(M) = d} and its squarefree subset, by a smallest-prime-factor sweep.
BdCounts bd_census(unsigned d, std::uint64_t x);

}  // namespace newmod::newman
