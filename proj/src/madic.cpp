#include "bslimits/madic.hpp"

#include <algorithm>

#include "bslimits/errors.hpp"

namespace bslimits {

namespace {

mpz_class non_negative_mod(const mpz_class& x, const mpz_class& modulus) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

mpz_class prime_power(std::int64_t p, unsigned k) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p), k);
  return out;
}

}  // namespace

std::vector<PrimePower> factorize(std::int64_t value) {
  if (value == 0) throw ZeroModulus();
  std::uint64_t n = value < 0 ? static_cast<std::uint64_t>(-(value + 1)) + 1
                              : static_cast<std::uint64_t>(value);
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.push_back({static_cast<std::int64_t>(p), k});
  }
  if (n > 1) out.push_back({static_cast<std::int64_t>(n), 1});
  return out;
}

Modulus::Modulus(std::int64_t m) : m_(m) {
  if (m == 0) throw ZeroModulus();
  factors_ = factorize(m);
}

mpz_class Modulus::power(unsigned k) const {
  return prime_power(magnitude(), k);
}

unsigned Modulus::max_exponent() const noexcept {
  unsigned best = 0;
  for (const auto& f : factors_) best = std::max(best, f.exponent);
  return best;
}

MAdicResidue::MAdicResidue(Modulus modulus, unsigned precision,
                           const mpz_class& value)
    : modulus_(std::move(modulus)), precision_(precision) {
  if (precision_ == 0) {
    throw PreconditionViolated("m-adic precision must be at least 1");
  }
  residue_ = non_negative_mod(value, modulus_.power(precision_));
}

MAdicResidue MAdicResidue::truncate(unsigned precision) const {
  if (precision > precision_) {
    throw InsufficientPrecision(precision, precision_);
  }
  return MAdicResidue(modulus_, precision, residue_);
}

std::string to_string(const MAdicResidue& x) {
  return x.residue().get_str() + " mod " +
         std::to_string(x.modulus().magnitude()) + "^" +
         std::to_string(x.precision());
}

unsigned digits_to_cover(std::int64_t divisor, const Modulus& m) {
  unsigned h = 0;
  for (const auto& f : factorize(divisor)) {
    auto it = std::find_if(
        m.factorization().begin(), m.factorization().end(),
        [&](const PrimePower& g) { return g.prime == f.prime; });
    if (it == m.factorization().end()) {
      throw NotADivisor("prime " + std::to_string(f.prime) +
                        " does not divide " + std::to_string(m.value()));
    }
    h = std::max(h, (f.exponent + it->exponent - 1) / it->exponent);
  }
  return h;
}

unsigned valuation(const mpz_class& x, const Modulus& m, unsigned cap) {
  if (m.is_zero_ring()) return cap;
  mpz_class rest = x;
  const mpz_class base = m.magnitude();
  unsigned k = 0;
  while (k < cap) {
    if (rest == 0) return cap;
    if (!mpz_divisible_p(rest.get_mpz_t(), base.get_mpz_t())) break;
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
    ++k;
  }
  return k;
}

MAdicResidue project(const MAdicResidue& x, std::int64_t divisor) {
  if (divisor == 0 || x.modulus().value() % divisor != 0) {
    throw NotADivisor(std::to_string(divisor) + " does not divide " +
                      std::to_string(x.modulus().value()));
  }
  return MAdicResidue(Modulus(divisor), x.precision(), x.residue());
}

mpz_class gcd_with(const MAdicResidue& x, std::int64_t m_prime) {
  if (m_prime == 0) throw ZeroModulus();
  if (x.modulus().is_zero_ring()) return 1;
  const unsigned needed = std::max(1u, digits_to_cover(m_prime, x.modulus()));
  if (x.precision() < needed) {
    throw InsufficientPrecision(needed, x.precision());
  }
  mpz_class out;
  const mpz_class mp = m_prime < 0 ? -m_prime : m_prime;
  mpz_gcd(out.get_mpz_t(), x.residue().get_mpz_t(), mp.get_mpz_t());
  return out;
}

MAdicDistance distance(const MAdicResidue& x, const MAdicResidue& y) {
  if (!(x.modulus() == y.modulus()) || x.precision() != y.precision()) {
    throw ModulusMismatch("distance needs a common modulus and precision");
  }
  const unsigned K = x.precision();
  const mpz_class diff = x.residue() - y.residue();
  if (diff == 0) {
    return {mpq_class(1, x.modulus().power(K)), false};
  }
  const unsigned v = valuation(diff, x.modulus(), K);
  mpq_class value(1, x.modulus().power(v));
  value.canonicalize();
  return {value, true};
}

MAdicResidue divide_exact(const MAdicResidue& x, std::int64_t d) {
  if (d <= 0 || x.modulus().value() % d != 0) {
    throw NotADivisor(std::to_string(d) + " is not a positive divisor of " +
                      std::to_string(x.modulus().value()));
  }
  const mpz_class dz = d;
  if (!mpz_divisible_p(x.residue().get_mpz_t(), dz.get_mpz_t())) {
    throw NotDivisible(x.residue().get_str() + " is not divisible by " +
                       std::to_string(d));
  }
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), x.residue().get_mpz_t(), dz.get_mpz_t());
  return MAdicResidue(Modulus(x.modulus().value() / d), x.precision(), q);
}

std::vector<PrimeComponent> crt_split(const MAdicResidue& x) {
  if (x.modulus().is_zero_ring()) throw ZeroRing();
  std::vector<PrimeComponent> out;
  for (const auto& f : x.modulus().factorization()) {
    const unsigned e = f.exponent * x.precision();
    out.push_back({f.prime, e, non_negative_mod(x.residue(),
                                                prime_power(f.prime, e))});
  }
  return out;
}

MAdicResidue crt_combine(const Modulus& m, unsigned precision,
                         std::span<const PrimeComponent> parts) {
  mpz_class value = 0;
  mpz_class modulus = 1;
  for (const auto& part : parts) {
    const mpz_class q = prime_power(part.prime, part.exponent);
    // value + modulus * s == part.residue (mod q)
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), q.get_mpz_t()) == 0) {
      throw PreconditionViolated("CRT components are not coprime");
    }
    const mpz_class s = non_negative_mod((part.residue - value) * inv, q);
    value += modulus * s;
    modulus *= q;
  }
  if (modulus != m.power(precision)) {
    throw ModulusMismatch("CRT components do not cover |m|^K");
  }
  return MAdicResidue(m, precision, value);
}

bool is_unit(const MAdicResidue& x) {
  for (const auto& f : x.modulus().factorization()) {
    const mpz_class p = f.prime;
    if (mpz_divisible_p(x.residue().get_mpz_t(), p.get_mpz_t())) return false;
  }
  return true;
}

}  // namespace bslimits
