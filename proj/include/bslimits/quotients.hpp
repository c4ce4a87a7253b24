#pragma once

// Metabelian quotients shared by every BS(m,n) and every limit: the
// lamplighter group Z wr Z and its affine images.

#include <cstdint>
#include <string>

#include "bslimits/affine.hpp"
#include "bslimits/word.hpp"

namespace bslimits {

/// (sigma, P) in Z wr Z = Z |x Z[t, t^-1], with
/// (s, P)(s', P') = (s + s', P + t^s P').
struct LamplighterElement {
  std::int64_t sigma = 0;
  LaurentPolynomial lamps;

  bool is_identity() const { return sigma == 0 && lamps.is_zero(); }

  friend LamplighterElement operator*(const LamplighterElement& x,
                                      const LamplighterElement& y) {
    return {x.sigma + y.sigma,
            x.lamps + LaurentPolynomial::monomial(x.sigma, 1) * y.lamps};
  }

  bool operator==(const LamplighterElement&) const = default;
};

std::string to_string(const LamplighterElement& x);

/// Image under a -> (1, 0), b -> (0, t^0); computed through the faithful
/// affine action on Z[t, t^-1] with scale t.
LamplighterElement lamplighter_image(const Word& w);

/// Membership in N = ker(F_2 -> Z wr Z).
bool in_kernel_N(const Word& w);

}  // namespace bslimits
