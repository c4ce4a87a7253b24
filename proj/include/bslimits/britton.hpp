#pragma once

// Word problem in a fixed Baumslag-Solitar group
//
//   BS(m, n) = < a, b | a b^m a^-1 = b^n >
//
// via Britton's lemma: a word is trivial iff repeated pinching
//   a b^e a^-1 -> b^{e n / m}   (m | e)
//   a^-1 b^e a -> b^{e m / n}   (n | e)
// ends at the empty word.

#include <gmpxx.h>

#include "bslimits/affine.hpp"
#include "bslimits/word.hpp"

namespace bslimits {

struct BsParams {
  mpz_class m;
  mpz_class n;

  /// Throws PreconditionViolated when m or n is zero.
  BsParams(mpz_class m, mpz_class n);
};

/// Leftmost-pinch-first reduction. The result is Britton-reduced and equal
/// to w in BS(m, n).
Word britton_reduce(const Word& w, const BsParams& p);

bool is_trivial_bs(const Word& w, const BsParams& p);

/// Image in Gamma(m, n), acting on Q by a.x = (n/m) x and b.x = x + 1.
AffineMap<Rational> gamma_image(const Word& w, const BsParams& p);

}  // namespace bslimits
