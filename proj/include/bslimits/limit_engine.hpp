#pragma once

// Word problem in the limit groups BS(M, xi) = lim BS(M, xi_j), xi in Z_M.
//
// With d = gcd(xi, M) and m1 = M / d, the approximating groups are
// BS(m1 d, n d) for n running through one congruence class C of xi / d
// modulo m1^t. Britton reduction is carried out once, symbolically, for the
// whole class: every b-exponent is kept in the form
//
//   alpha(n) = k_0 + k_1 n d + k_2 s_1(n) n d + ... + k_t s_{t-1}(n) n d
//
// where s_i are the quotients of the Euclidean recurrence
//   s_0 = 1,   s_{i-1}(n) n = s_i(n) m1 + r_i,   0 <= r_i < |m1|.
// The remainders r_i only depend on C, and both pinch rules map this form to
// itself with constant coefficients. The reduced symbolic word agrees with
// the concrete Britton reduction for every n in C with |n| above a tracked
// bound, so a word is trivial in the limit iff it reduces to b^alpha with
// alpha the zero function.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bslimits/affine.hpp"
#include "bslimits/madic.hpp"
#include "bslimits/word.hpp"

namespace bslimits {

/// The recurrence evaluated at a single integer n, for i = 0..level, together
/// with the polynomials P_i satisfying s_i(n) = P_i(n / m1) on the class of n
/// modulo m1^level.
struct RsTable {
  mpz_class m1;
  mpz_class n;
  unsigned level = 0;
  std::vector<mpz_class> r;  // r[0] = 0, r[1..level]
  std::vector<mpz_class> s;  // s[0..level]
  std::vector<std::vector<Rational>> polynomials;  // P_i, ascending degree

  static RsTable compute(const mpz_class& m1, const mpz_class& n,
                         unsigned level);
};

/// Limit parameters (M, xi), xi a residue over M.
struct LimitParams {
  std::int64_t M;
  MAdicResidue xi;

  LimitParams(std::int64_t M, MAdicResidue xi);
};

class EngineContext {
 public:
  /// Normalizes (M, xi) at the given level. Throws InsufficientPrecision when
  /// xi / d is not known modulo m1^level.
  static EngineContext build(std::int64_t M, const MAdicResidue& xi,
                             unsigned level);
  /// Direct construction from m1, d and a class c modulo |m1|^level.
  static EngineContext from_class(std::int64_t m1, std::int64_t d,
                                  const mpz_class& c, unsigned level);

  std::int64_t M() const noexcept { return m1_ * d_; }
  std::int64_t d() const noexcept { return d_; }
  std::int64_t m1() const noexcept { return m1_; }
  unsigned level() const noexcept { return level_; }
  const mpz_class& class_modulus() const noexcept { return class_modulus_; }
  const mpz_class& class_residue() const noexcept { return class_residue_; }
  /// Non-zero member of C used to evaluate the recurrence.
  const mpz_class& representative() const noexcept { return rs_.n; }
  const RsTable& rs() const noexcept { return rs_; }

  bool in_class(const mpz_class& n) const;
  /// n = c + j |m1|^level.
  mpz_class class_member(const mpz_class& j) const;

 private:
  EngineContext(std::int64_t m1, std::int64_t d, const mpz_class& c,
                unsigned level);

  std::int64_t m1_;
  std::int64_t d_;
  unsigned level_;
  mpz_class class_modulus_;
  mpz_class class_residue_;
  RsTable rs_;
};

/// Coefficients (k_0, ..., k_t) in the basis 1, n d, s_1(n) n d, ...
class PolyExponent {
 public:
  PolyExponent() = default;
  /// The constant e with level + 1 slots.
  PolyExponent(unsigned level, const mpz_class& constant);
  explicit PolyExponent(std::vector<mpz_class> coefficients);

  const std::vector<mpz_class>& coefficients() const noexcept { return k_; }
  const mpz_class& operator[](std::size_t i) const { return k_.at(i); }
  unsigned level() const noexcept {
    return k_.empty() ? 0 : static_cast<unsigned>(k_.size() - 1);
  }
  bool is_zero() const;
  bool is_constant() const;

  PolyExponent& operator+=(const PolyExponent& other);

  bool operator==(const PolyExponent&) const = default;

 private:
  std::vector<mpz_class> k_;
};

std::string to_string(const PolyExponent& alpha);

/// alpha(n) for n in the context's class; throws NotInClass otherwise.
mpz_class evaluate(const PolyExponent& alpha, const EngineContext& ctx,
                   const mpz_class& n);

/// alpha as a polynomial in n with rational coefficients (ascending degree),
/// valid on the context's class.
std::vector<Rational> as_polynomial(const PolyExponent& alpha,
                                    const EngineContext& ctx);

/// Integer B such that alpha has no integer root with |n| > B; 0 for
/// constants.
mpz_class root_bound(const PolyExponent& alpha, const EngineContext& ctx);

/// a b^alpha a^-1 = b^beta when alpha = 0 mod M on the class.
std::optional<PolyExponent> pinch_type1(const PolyExponent& alpha,
                                        const EngineContext& ctx);

/// a^-1 b^alpha a = b^beta when k_0 = 0 (valid for |n| > |k_0|).
/// `validity_bound` is raised to |k_0| whether or not the pinch applies.
std::optional<PolyExponent> pinch_type2(const PolyExponent& alpha,
                                        const EngineContext& ctx,
                                        mpz_class& validity_bound);

struct SymbolicWord {
  struct Syllable {
    int sign;
    PolyExponent exponent;

    bool operator==(const Syllable&) const = default;
  };

  PolyExponent head;
  std::vector<Syllable> syllables;
  /// Evaluation agrees with the concrete reduction for |n| > validity_bound.
  mpz_class validity_bound = 0;

  std::size_t a_length() const noexcept { return syllables.size(); }
};

/// Leftmost-pinch-first symbolic Britton reduction over the context's class.
/// Throws InsufficientLevel when a_length(w) > 2 * level.
SymbolicWord symbolic_reduce(const Word& w, const EngineContext& ctx);

/// Concrete word obtained by evaluating every exponent at n.
Word evaluate(const SymbolicWord& w, const EngineContext& ctx,
              const mpz_class& n);

std::string to_string(const SymbolicWord& w);

/// Full record of a limit word-problem decision.
struct LimitDecision {
  bool trivial = false;
  /// Level t = ceil(h / 2); also the number of digits of xi / d consumed.
  unsigned level = 0;
  /// Absent when the sigma_a fast path decided.
  std::optional<SymbolicWord> reduced;
  /// The verdict holds in BS(M, n d) for all n in C with |n| above this.
  mpz_class validity_bound = 0;
};

LimitDecision decide_limit(const Word& w, const LimitParams& params);

bool is_trivial_limit(const Word& w, std::int64_t M, const MAdicResidue& xi);

/// Exponent alpha with w = b^{alpha(n)} for large n in C, when w stabilizes
/// the base vertex of the limit tree.
std::optional<PolyExponent> stabilizer_exponent(const Word& w, std::int64_t M,
                                                const MAdicResidue& xi);

/// As stabilizer_exponent, also returning the context the exponent lives in.
struct StabilizerResult {
  PolyExponent exponent;
  EngineContext context;
};
std::optional<StabilizerResult> stabilizer(const Word& w,
                                           const LimitParams& params);

}  // namespace bslimits
