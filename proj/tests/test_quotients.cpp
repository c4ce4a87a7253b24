#include "bslimits/quotients.hpp"

#include <random>

#include <gtest/gtest.h>

#include "bslimits/britton.hpp"
#include "oracles.hpp"

using namespace bslimits;

namespace {

bool same(const LamplighterElement& x, const oracle::Lamp& y) {
  if (x.sigma != y.sigma) return false;
  std::size_t count = 0;
  for (const auto& [k, c] : x.lamps.terms()) {
    auto it = y.lamps.find(k);
    if (it == y.lamps.end() || c != it->second) return false;
    ++count;
  }
  return count == y.lamps.size();
}

}  // namespace

TEST(Lamplighter, Examples) {
  EXPECT_TRUE(lamplighter_image(Word()).is_identity());
  const auto x = lamplighter_image(parse_word("b a b A"));
  EXPECT_EQ(x.sigma, 0);
  EXPECT_EQ(x.lamps, LaurentPolynomial(1) + LaurentPolynomial::t());
  EXPECT_EQ(lamplighter_image(parse_word("a b A")).lamps, LaurentPolynomial::t());
  EXPECT_EQ(to_string(x), "(0, 1 + t)");
}

TEST(Lamplighter, KernelExamples) {
  EXPECT_TRUE(in_kernel_N(parse_word("a b A b a B A B")));
  EXPECT_FALSE(in_kernel_N(parse_word("a")));
  EXPECT_FALSE(in_kernel_N(parse_word("b")));
}

TEST(Lamplighter, MatchesSemidirectOracle) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const std::string s = oracle::random_word(rng, 7, 3);
    EXPECT_TRUE(same(lamplighter_image(parse_word(s)), oracle::lamplighter(s)))
        << s;
  }
}

TEST(Lamplighter, FirstCoordinateIsSigma) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 200; ++i) {
    const Word w = parse_word(oracle::random_word(rng, 7, 3));
    EXPECT_EQ(lamplighter_image(w).sigma, sigma_a(w));
  }
}

TEST(Lamplighter, Homomorphism) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const Word u = parse_word(oracle::random_word(rng, 4, 3));
    const Word v = parse_word(oracle::random_word(rng, 4, 3));
    EXPECT_EQ(lamplighter_image(u * v),
              lamplighter_image(u) * lamplighter_image(v));
  }
}

TEST(Affine, Examples) {
  const auto f = affine_image(parse_word("a"), Rational(3, 2));
  EXPECT_EQ(f.scale, Rational(3, 2));
  EXPECT_EQ(f.shift, 0);
  const auto g = affine_image(parse_word("b^7"), Rational(5));
  EXPECT_EQ(g.scale, 1);
  EXPECT_EQ(g.shift, 7);
  const auto h = affine_image(parse_word("a b A"), LaurentPolynomial::t());
  EXPECT_EQ(h.scale, LaurentPolynomial(1));
  EXPECT_EQ(h.shift, LaurentPolynomial::t());
  EXPECT_THROW(affine_image(parse_word("a"), Rational(0)), NonUnit);
  EXPECT_THROW(affine_image(parse_word("a"), LaurentPolynomial(2)), NonUnit);
}

TEST(Affine, GammaMatchesMatrixOracle) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 300; ++i) {
    const std::string s = oracle::random_word(rng, 6, 3);
    const long m = static_cast<long>(rng() % 7) - 3;
    const long n = static_cast<long>(rng() % 9) - 4;
    if (m == 0 || n == 0) continue;
    const auto f = gamma_image(parse_word(s), BsParams(m, n));
    const auto g = oracle::gamma(s, m, n);
    EXPECT_EQ(f.scale, g.s) << s;
    EXPECT_EQ(f.shift, g.t) << s;
  }
}

TEST(Affine, CompositionAssociativeWithIdentity) {
  using Map = AffineMap<Rational>;
  const Map f{Rational(3, 2), Rational(1)};
  const Map g{Rational(-1, 5), Rational(2, 7)};
  const Map h{Rational(4), Rational(-3)};
  EXPECT_EQ(f.compose(g).compose(h), f.compose(g.compose(h)));
  EXPECT_EQ(f.compose(Map::identity()), f);
  EXPECT_TRUE(f.compose(f.inverse()).is_identity());
}
