#pragma once

// Truncated q-series over Z/MZ.
//
// Exponents are carried in units of 1/24 so that eta quotients, whose leading
// exponents are multiples of 1/24, need no special casing. A series stores
// coefficients c[0..size) where c[i] multiplies q^((offset_num + i*step)/24).
// Every exponent below offset_num is an exact zero; every exponent at or above
// end_num() is unknown (truncated away). After each operation the leading
// stored coefficient is nonzero, or the series is empty and represents a zero
// known up to end_num().

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace newmod::qs {

using Residue = std::uint32_t;

/// Exclusive upper bound on moduli; products of two residues fit in 64 bits.
inline constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 31;

/// Exponent units per unit power of q.
inline constexpr std::int64_t kUnitsPerQ = 24;

class ModulusMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inversion of a series whose leading coefficient shares a factor with M.
class NonUnitLeading : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an operation needs coefficients beyond the known range.
class InsufficientReach : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

void check_modulus(std::uint64_t modulus);

class QSeries {
 public:
  /// Coefficients are reduced mod `modulus`; leading zeros are stripped.
  QSeries(std::uint32_t modulus, std::int64_t offset_num, std::int64_t step,
          std::vector<Residue> coeffs);

  /// Series sum_{i} values[i] q^(first_exponent + i), known for i < values.size().
  static QSeries from_integers(std::uint32_t modulus, std::span<const std::int64_t> values,
                               std::int64_t first_exponent = 0);
  static QSeries from_residues(std::uint32_t modulus, std::vector<Residue> values,
                               std::int64_t first_exponent = 0);

  /// `value` + O(q^count) with integer exponents.
  static QSeries constant(std::uint32_t modulus, std::uint64_t value, std::int64_t count);

  /// The zero series known for exponents below end_num.
  static QSeries zero(std::uint32_t modulus, std::int64_t end_num);

  std::uint32_t modulus() const { return modulus_; }
  std::int64_t offset_num() const { return offset_num_; }
  std::int64_t step() const { return step_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const Residue> coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Exclusive bound (in 1/24 units) of the known exponent range.
  std::int64_t end_num() const { return end_num_; }

  /// Coefficients at integral exponents only.
  bool integral_exponents() const;

  /// Coefficient at exponent exponent_num/24. Throws InsufficientReach past end_num().
  Residue at_num(std::int64_t exponent_num) const;

  /// Coefficient of q^n for an integer n.
  Residue coeff(std::int64_t n) const { return at_num(n * kUnitsPerQ); }

  /// Number of known integer exponents n >= 0, i.e. the n with 24n < end_num().
  std::int64_t integer_reach() const;

  /// Coefficients of q^first, ..., q^(first+count-1).
  std::vector<Residue> dense(std::int64_t first, std::int64_t count) const;

  /// Drops everything at exponents >= end (1/24 units); end may not exceed end_num().
  QSeries truncated(std::int64_t end) const;

  /// Reduction to a modulus dividing the current one.
  QSeries reduced(std::uint32_t modulus) const;

  /// Same series on a finer exponent lattice; `step` must divide step().
  QSeries refined(std::int64_t step) const;

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  void normalize();

  std::uint32_t modulus_;
  std::int64_t offset_num_;
  std::int64_t step_;
  std::int64_t end_num_;
  std::vector<Residue> coeffs_;
};

QSeries add(const QSeries& f, const QSeries& g);
QSeries sub(const QSeries& f, const QSeries& g);
QSeries negate(const QSeries& f);
QSeries scale(const QSeries& f, std::uint64_t factor);

/// Shift every exponent by delta_num/24.
QSeries shift(const QSeries& f, std::int64_t delta_num);

enum class MulAlgorithm { kAuto, kSchoolbook, kKaratsuba };

/// Product; the result is known exactly as far as both factors allow.
QSeries mul(const QSeries& f, const QSeries& g, MulAlgorithm algo = MulAlgorithm::kAuto);

/// Multiplicative inverse; the valuation negates. Throws NonUnitLeading.
QSeries invert(const QSeries& f);

/// f / g by the triangular recurrence; cost is linear in the nonzero terms of g.
QSeries div(const QSeries& f, const QSeries& g);

QSeries pow(const QSeries& f, std::uint64_t e);

/// prod_{n>=1} (1 - q^(delta*n)) known through q^n_trunc, via the pentagonal number theorem.
QSeries euler_product(std::int64_t n_trunc, std::uint32_t modulus, std::uint64_t delta = 1);

struct EtaTerm {
  std::uint64_t delta = 1;
  std::int64_t power = 0;

  friend bool operator==(const EtaTerm&, const EtaTerm&) = default;
};

/// prod_delta eta(delta z)^r_delta, terms sorted by delta without duplicates.
class EtaQuotient {
 public:
  EtaQuotient() = default;
  /// Merges repeated deltas and drops zero powers; level 0 means "unset".
  explicit EtaQuotient(std::vector<EtaTerm> terms, std::uint64_t level = 0);

  /// Parses "delta:power,delta:power,..." e.g. "96:4,24:-1".
  static EtaQuotient parse(const std::string& text, std::uint64_t level = 0);

  const std::vector<EtaTerm>& terms() const { return terms_; }
  std::uint64_t level() const { return level_; }

  /// Leading exponent in 1/24 units: sum delta * r_delta.
  std::int64_t offset_num() const;

  /// Twice the weight: sum r_delta.
  std::int64_t weight_num() const;

  std::string to_string() const;

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

 private:
  std::vector<EtaTerm> terms_;
  std::uint64_t level_ = 0;
};

/// Expansion whose product part is known through q^n_trunc past the leading exponent.
QSeries eta_expand(const EtaQuotient& eq, std::int64_t n_trunc, std::uint32_t modulus);

enum class TwistKind { kTrivial, kKronecker };

/// Coefficient of q^n multiplied by chi(n) for the trivial character mod ell
/// (0 when ell | n) or the Kronecker character (n/ell).
QSeries twist(const QSeries& f, TwistKind kind, std::uint64_t ell);

/// Symmetric positive definite integer matrix A; the lattice vector m contributes
/// q^((m^T A m)/24).
struct GramForm {
  std::size_t dim = 0;
  std::vector<std::int64_t> entries;  // row-major dim x dim

  std::int64_t at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  std::int64_t value(std::span<const std::int64_t> m) const;

  /// 12 (I + J) of size h - 1: exponent Q(m) = sum m_i^2 + sum_{i<j} m_i m_j.
  static GramForm frobenius(unsigned h);
};

/// sum_{m in Z^dim} q^((m^T A m)/24), known through q^n_trunc.
QSeries lattice_theta(const GramForm& form, std::int64_t n_trunc, std::uint32_t modulus);

}  // namespace newmod::qs
