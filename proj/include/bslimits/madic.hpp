#pragma once

// Finite-precision arithmetic in the ring Z_m of m-adic integers.
//
// An element is stored as a residue c with 0 <= c < |m|^K; K is the number
// of m-adic digits that are known. Negative moduli use |m| for all
// magnitudes. Z_{+-1} is the zero ring and every residue over it is 0.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bslimits {

struct PrimePower {
  std::int64_t prime;
  unsigned exponent;

  bool operator==(const PrimePower&) const = default;
};

/// Trial-division factorization of |value| (value != 0), sorted by prime.
std::vector<PrimePower> factorize(std::int64_t value);

class Modulus {
 public:
  /// Throws ZeroModulus for m == 0.
  explicit Modulus(std::int64_t m);

  std::int64_t value() const noexcept { return m_; }
  std::int64_t magnitude() const noexcept { return m_ < 0 ? -m_ : m_; }
  const std::vector<PrimePower>& factorization() const noexcept {
    return factors_;
  }
  bool is_zero_ring() const noexcept { return magnitude() == 1; }

  /// |m|^k
  mpz_class power(unsigned k) const;

  /// Largest exponent in the prime factorization (0 for |m| = 1).
  unsigned max_exponent() const noexcept;

  bool operator==(const Modulus& other) const noexcept {
    return m_ == other.m_;
  }

 private:
  std::int64_t m_;
  std::vector<PrimePower> factors_;
};

class MAdicResidue {
 public:
  /// Reduces `value` into [0, |m|^precision). Precision must be >= 1.
  MAdicResidue(Modulus modulus, unsigned precision, const mpz_class& value);
  MAdicResidue(std::int64_t m, unsigned precision, const mpz_class& value)
      : MAdicResidue(Modulus(m), precision, value) {}

  const Modulus& modulus() const noexcept { return modulus_; }
  unsigned precision() const noexcept { return precision_; }
  const mpz_class& residue() const noexcept { return residue_; }

  /// Same element known to fewer digits.
  MAdicResidue truncate(unsigned precision) const;

  bool operator==(const MAdicResidue& other) const {
    return modulus_ == other.modulus_ && precision_ == other.precision_ &&
           residue_ == other.residue_;
  }

 private:
  Modulus modulus_;
  unsigned precision_;
  mpz_class residue_;
};

std::string to_string(const MAdicResidue& x);

/// Smallest h >= 0 with divisor | m^h. Throws NotADivisor when a prime of
/// `divisor` does not divide m.
unsigned digits_to_cover(std::int64_t divisor, const Modulus& m);

/// max{k <= cap : m^k | x} for |m| >= 2; returns cap when x == 0.
unsigned valuation(const mpz_class& x, const Modulus& m, unsigned cap);

/// Image under the ring morphism Z_m -> Z_{m'}, for m' | m.
MAdicResidue project(const MAdicResidue& x, std::int64_t divisor);

/// gcd of the ideal (xi, m') of Z_m, as a positive integer whose primes
/// divide m'. By convention 1 over the zero ring.
mpz_class gcd_with(const MAdicResidue& x, std::int64_t m_prime);

/// Ultrametric distance |m|^{-v}. When the residues agree at the available
/// precision the value is only an upper bound and `exact` is false.
struct MAdicDistance {
  mpq_class value;
  bool exact;
};

MAdicDistance distance(const MAdicResidue& x, const MAdicResidue& y);

/// x/d as an element of Z_{m/d}, same precision exponent K.
MAdicResidue divide_exact(const MAdicResidue& x, std::int64_t d);

/// One component of Z_m = Z_{p_1} + ... + Z_{p_l}: the residue of c modulo
/// p^{k K}.
struct PrimeComponent {
  std::int64_t prime;
  unsigned exponent;  // k * K
  mpz_class residue;

  bool operator==(const PrimeComponent&) const = default;
};

std::vector<PrimeComponent> crt_split(const MAdicResidue& x);

/// Left inverse of crt_split.
MAdicResidue crt_combine(const Modulus& m, unsigned precision,
                         std::span<const PrimeComponent> parts);

bool is_unit(const MAdicResidue& x);

}  // namespace bslimits
