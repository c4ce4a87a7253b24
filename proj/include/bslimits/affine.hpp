#pragma once

// Affine maps x -> scale * x + shift over a commutative coefficient ring, and
// the two rings used by the quotients: exact rationals and integer Laurent
// polynomials Z[t, t^-1].

#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

#include "bslimits/errors.hpp"
#include "bslimits/word.hpp"

namespace bslimits {

using Rational = mpq_class;

/// Sparse integer Laurent polynomial sum c_k t^k.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(long constant)  // NOLINT(google-explicit-constructor)
      : LaurentPolynomial(mpz_class(constant)) {}
  LaurentPolynomial(const mpz_class& constant) {  // NOLINT
    if (constant != 0) terms_[0] = constant;
  }

  static LaurentPolynomial monomial(std::int64_t degree, const mpz_class& c);
  static LaurentPolynomial t() { return monomial(1, 1); }

  const std::map<std::int64_t, mpz_class>& terms() const noexcept {
    return terms_;
  }
  mpz_class coefficient(std::int64_t degree) const;
  bool is_zero() const noexcept { return terms_.empty(); }

  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);
  friend LaurentPolynomial operator+(LaurentPolynomial x,
                                     const LaurentPolynomial& y) {
    return x += y;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial x,
                                     const LaurentPolynomial& y) {
    return x -= y;
  }
  friend LaurentPolynomial operator-(const LaurentPolynomial& x) {
    return LaurentPolynomial() - x;
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& x,
                                     const LaurentPolynomial& y);

  /// Value at a non-zero rational.
  Rational evaluate(const Rational& at) const;

  bool operator==(const LaurentPolynomial&) const = default;

 private:
  void add_term(std::int64_t degree, const mpz_class& c);

  std::map<std::int64_t, mpz_class> terms_;
};

std::string to_string(const LaurentPolynomial& p);

// Unit handling, one overload per coefficient ring.
bool is_unit(const Rational& x);
Rational unit_inverse(const Rational& x);
bool is_unit(const LaurentPolynomial& x);
LaurentPolynomial unit_inverse(const LaurentPolynomial& x);

template <class Ring>
struct AffineMap {
  Ring scale;
  Ring shift;

  static AffineMap identity() { return {Ring(1), Ring(0)}; }

  Ring apply(const Ring& x) const { return Ring(scale * x) + shift; }

  /// (f.then_after(g))(x) = f(g(x)); matches left multiplication of group
  /// elements acting on the left.
  AffineMap compose(const AffineMap& inner) const {
    return {Ring(scale * inner.scale), Ring(scale * inner.shift) + shift};
  }

  AffineMap inverse() const {
    Ring s = unit_inverse(scale);
    return {s, Ring(-(s * shift))};
  }

  bool is_identity() const { return scale == Ring(1) && shift == Ring(0); }

  bool operator==(const AffineMap&) const = default;
};

/// Image of w under the action a.x = alpha x, b.x = x + 1.
/// Throws NonUnit if alpha is not invertible in the ring.
template <class Ring>
AffineMap<Ring> affine_image(const Word& w, const Ring& alpha) {
  if (!is_unit(alpha)) throw NonUnit("affine scale must be a unit");
  const AffineMap<Ring> a{alpha, Ring(0)};
  const AffineMap<Ring> a_inv = a.inverse();
  auto b_power = [](const mpz_class& e) {
    return AffineMap<Ring>{Ring(1), Ring(e)};
  };
  AffineMap<Ring> out = b_power(w.head());
  for (const auto& s : w.syllables()) {
    out = out.compose(s.sign > 0 ? a : a_inv).compose(b_power(s.exponent));
  }
  return out;
}

std::string to_string(const AffineMap<Rational>& f);
std::string to_string(const AffineMap<LaurentPolynomial>& f);

}  // namespace bslimits
