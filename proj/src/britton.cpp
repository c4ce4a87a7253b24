#include "bslimits/britton.hpp"

#include "bslimits/errors.hpp"

namespace bslimits {

BsParams::BsParams(mpz_class m_, mpz_class n_)
    : m(std::move(m_)), n(std::move(n_)) {
  if (m == 0 || n == 0) {
    throw PreconditionViolated("BS(m, n) needs non-zero m and n");
  }
}

Word britton_reduce(const Word& w, const BsParams& p) {
  // The output is kept Britton-reduced; a new a-letter can only pinch
  // against the top syllable, which yields the leftmost pinch each time.
  Word out(w.head());
  for (const auto& s : w.syllables()) {
    const auto& top = out.syllables();
    bool pinched = false;
    if (!top.empty() && top.back().sign == -s.sign) {
      const mpz_class& e = top.back().exponent;
      const mpz_class& divisor = s.sign < 0 ? p.m : p.n;
      if (mpz_divisible_p(e.get_mpz_t(), divisor.get_mpz_t())) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), e.get_mpz_t(), divisor.get_mpz_t());
        const mpz_class replacement = q * (s.sign < 0 ? p.n : p.m);
        out.pop_syllable();
        out.push_b(replacement);
        pinched = true;
      }
    }
    if (!pinched) out.push_a(s.sign);
    out.push_b(s.exponent);
  }
  return out;
}

bool is_trivial_bs(const Word& w, const BsParams& p) {
  return britton_reduce(w, p).empty();
}

AffineMap<Rational> gamma_image(const Word& w, const BsParams& p) {
  Rational ratio(p.n, p.m);
  ratio.canonicalize();
  return affine_image(w, ratio);
}

}  // namespace bslimits
