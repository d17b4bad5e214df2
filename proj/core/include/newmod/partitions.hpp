#pragma once

// Coefficient streams p(n), c_t(n) and cphi_h(n) modulo M, each with an
// independent brute-force oracle. Streams are indexed by the combinatorial n;
// modular-form exponent shifts (24n - 1 and friends) never appear here.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "newmod/qseries.hpp"

namespace newmod::part {

using qs::Residue;

struct PartitionSeq {
  friend bool operator==(const PartitionSeq&, const PartitionSeq&) = default;
};
struct TCoreSeq {
  unsigned t = 2;
  friend bool operator==(const TCoreSeq&, const TCoreSeq&) = default;
};
struct FrobeniusSeq {
  unsigned h = 1;
  friend bool operator==(const FrobeniusSeq&, const FrobeniusSeq&) = default;
};
/// Coefficient of q^n (n >= 0) of an eta quotient with integral exponents.
struct EtaQuotientSeq {
  qs::EtaQuotient quotient;
  friend bool operator==(const EtaQuotientSeq&, const EtaQuotientSeq&) = default;
};

using SequenceVariant = std::variant<PartitionSeq, TCoreSeq, FrobeniusSeq, EtaQuotientSeq>;

struct SequenceSpec {
  SequenceVariant variant;
  std::uint32_t modulus = 1;

  /// Throws std::invalid_argument on t < 2, h < 1, or a bad modulus.
  void validate() const;

  /// Short stable label, e.g. "partition", "tcore(4)", "frob(2)", "eta(24:-1)".
  std::string label() const;

  friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;
};

/// p(0..x) mod M by Euler's pentagonal recurrence; O(x^1.5) additions.
std::vector<Residue> partition_mod(std::uint64_t x, std::uint32_t modulus);

/// p(0..x) mod M by the coin-counting dynamic program over part sizes; O(x^2).
std::vector<Residue> partition_oracle_table(std::uint64_t x, std::uint32_t modulus);

/// p(n) mod M from the coin-counting oracle.
Residue partition_oracle(std::uint64_t n, std::uint32_t modulus);

/// c_t(0..x) mod M from prod (1 - q^{tn})^t / (1 - q^n).
std::vector<Residue> tcore_mod(unsigned t, std::uint64_t x, std::uint32_t modulus);

/// Exact number of t-cores of n by enumerating partitions and their hook lengths.
/// Intended for n <= 12 or so.
std::uint64_t tcore_oracle(unsigned t, unsigned n);

/// cphi_h(0..x) mod M: (q;q)_inf^{-h} times the lattice theta of Q.
std::vector<Residue> frobenius_mod(unsigned h, std::uint64_t x, std::uint32_t modulus);

/// a(0..x) mod M for any supported spec.
std::vector<Residue> stream(const SequenceSpec& spec, std::uint64_t x);

}  // namespace newmod::part
