#include "bslimits/limit_engine.hpp"

#include <random>

#include <gtest/gtest.h>

#include "bslimits/britton.hpp"
#include "bslimits/errors.hpp"
#include "bslimits/quotients.hpp"
#include "oracles.hpp"

using namespace bslimits;

namespace {

PolyExponent poly(std::vector<long> k) {
  std::vector<mpz_class> out(k.begin(), k.end());
  return PolyExponent(std::move(out));
}

/// Random word with sigma_a = 0, a-length <= 2 * half before reduction.
Word balanced_word(std::mt19937_64& rng, int half, int max_exp) {
  std::vector<int> signs;
  for (int i = 0; i < half; ++i) {
    signs.push_back(1);
    signs.push_back(-1);
  }
  std::shuffle(signs.begin(), signs.end(), rng);
  std::uniform_int_distribution<int> e(-max_exp, max_exp);
  Word w(e(rng));
  for (int s : signs) {
    w.push_a(s);
    w.push_b(e(rng));
  }
  return w;
}

/// Products of conjugates a^k b^{j M^k} a^-k: these reduce to b-powers in
/// every BS(M, n), so they are stabilizer elements.
Word stabilizer_word(std::mt19937_64& rng, long M, int factors) {
  Word w;
  for (int i = 0; i < factors; ++i) {
    const int k = static_cast<int>(rng() % 3);
    const long j = static_cast<long>(rng() % 5) - 2;
    Word f;
    for (int q = 0; q < k; ++q) f.push_a(1);
    f.push_b(mpz_class(j * oracle::mpow(M, k)));
    for (int q = 0; q < k; ++q) f.push_a(-1);
    w = w * f;
  }
  return w;
}

}  // namespace

TEST(BuildContext, Examples) {
  const auto c1 = EngineContext::build(2, MAdicResidue(2, 5, 3), 2);
  EXPECT_EQ(c1.d(), 1);
  EXPECT_EQ(c1.m1(), 2);
  EXPECT_EQ(c1.class_residue(), 3);
  EXPECT_EQ(c1.rs().r, (std::vector<mpz_class>{0, 1, 1}));
  EXPECT_EQ(c1.rs().s, (std::vector<mpz_class>{1, 1, 1}));

  const auto c2 = EngineContext::build(4, MAdicResidue(4, 3, 6), 1);
  EXPECT_EQ(c2.d(), 2);
  EXPECT_EQ(c2.m1(), 2);
  EXPECT_EQ(c2.class_residue(), 1);

  const auto c3 = EngineContext::build(2, MAdicResidue(2, 3, 0), 1);
  EXPECT_EQ(c3.d(), 2);
  EXPECT_EQ(c3.m1(), 1);
  EXPECT_EQ(c3.rs().r, (std::vector<mpz_class>{0, 0}));
}

TEST(BuildContext, RepresentativeAvoidsZero) {
  const auto ctx = EngineContext::from_class(3, 1, 9, 2);
  EXPECT_EQ(ctx.class_residue(), 0);
  EXPECT_EQ(ctx.representative(), 9);
}

TEST(BuildContext, Errors) {
  try {
    EngineContext::build(2, MAdicResidue(2, 2, 3), 3);
    FAIL();
  } catch (const InsufficientPrecision& e) {
    EXPECT_EQ(e.needed(), 3u);
    EXPECT_EQ(e.available(), 2u);
  }
  EXPECT_THROW(EngineContext::build(0, MAdicResidue(2, 2, 3), 1), ZeroModulus);
  EXPECT_THROW(EngineContext::build(3, MAdicResidue(2, 2, 3), 1),
               ModulusMismatch);
}

TEST(RsTable, MatchesRecurrenceOracle) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    long m1 = static_cast<long>(rng() % 23) - 11;
    if (m1 == 0) m1 = 5;
    const mpz_class n = static_cast<long>(rng() % 20001) - 10000;
    const unsigned t = static_cast<unsigned>(rng() % 6);
    const auto table = RsTable::compute(m1, n, t);
    const auto ref = oracle::recurrence(m1, n, t);
    EXPECT_EQ(table.s, ref.s);
    for (unsigned k = 1; k <= t; ++k) EXPECT_EQ(table.r[k], ref.r[k]);
  }
}

TEST(RsTable, RemainderInvarianceOnClass) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    long m1 = static_cast<long>(rng() % 21) - 10;
    if (m1 == 0 || m1 == 1 || m1 == -1) m1 = -7;
    const unsigned t = 1 + static_cast<unsigned>(rng() % 5);
    const mpz_class mt = oracle::mpow(std::labs(m1), t);
    const mpz_class n = static_cast<long>(rng() % 100000) - 50000;
    const mpz_class n2 = n + mt * (static_cast<long>(rng() % 200) - 100);
    const auto a = oracle::recurrence(m1, n, t);
    const auto b = oracle::recurrence(m1, n2, t);
    for (unsigned k = 1; k <= t; ++k) {
      EXPECT_EQ(a.r[k], b.r[k]);
      EXPECT_EQ(oracle::mod(a.s[k] - b.s[k], oracle::mpow(std::labs(m1), t - k)), 0);
    }
  }
}

TEST(RsTable, PolynomialIdentity) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    long m1 = static_cast<long>(rng() % 21) - 10;
    if (m1 == 0) m1 = 3;
    const unsigned t = static_cast<unsigned>(rng() % 6);
    const mpz_class mt = oracle::mpow(std::labs(m1), t);
    const mpz_class c = static_cast<long>(rng() % 1000);
    const auto table = RsTable::compute(m1, c, t);
    for (unsigned k = 0; k <= t; ++k) {
      const auto& P = table.polynomials[k];
      ASSERT_EQ(P.size(), k + 1);
      // m1 P_k(X) = m1 X^k - r_1 X^{k-1} - ... - r_k
      EXPECT_EQ(P[k] * m1, m1);
      for (unsigned j = 1; j <= k; ++j) {
        EXPECT_EQ(P[k - j] * m1, Rational(-table.r[j]));
      }
      for (long step : {-3L, 0L, 2L, 17L}) {
        const mpz_class n = c + step * mt;
        Rational x(n, m1);
        x.canonicalize();
        Rational value = 0, power = 1;
        for (const auto& q : P) {
          value += q * power;
          power *= x;
        }
        EXPECT_EQ(value, Rational(oracle::recurrence(m1, n, k).s[k]));
      }
    }
  }
}

TEST(Pinch, Type1Examples) {
  const auto ctx = EngineContext::from_class(2, 1, 1, 1);
  EXPECT_EQ(pinch_type1(poly({2, 0}), ctx), poly({0, 1}));
  EXPECT_FALSE(pinch_type1(poly({1, 0}), ctx));
  EXPECT_EQ(pinch_type1(poly({0, 0}), ctx), poly({0, 0}));
}

TEST(Pinch, Type1HeadroomIsEnforced) {
  const auto ctx = EngineContext::from_class(2, 1, 1, 1);
  EXPECT_THROW(pinch_type1(poly({0, 2}), ctx), InternalInvariantViolation);
}

TEST(Pinch, Type2Examples) {
  mpz_class bound = 0;
  const auto ctx = EngineContext::from_class(2, 1, 1, 1);
  EXPECT_EQ(pinch_type2(poly({0, 1}), ctx, bound), poly({2, 0}));
  EXPECT_FALSE(pinch_type2(poly({5, 1}), ctx, bound));
  EXPECT_EQ(bound, 5);

  const auto ctx2 = EngineContext::from_class(2, 1, 3, 2);
  const auto beta = pinch_type2(poly({0, 0, 1}), ctx2, bound);
  ASSERT_TRUE(beta);
  EXPECT_EQ(*beta, poly({-1, 1, 0}));
  for (long n : {3L, 7L, 11L}) {
    // A b^{alpha(n)} a = b^{beta(n)} in BS(2, n)
    const mpz_class a = evaluate(poly({0, 0, 1}), ctx2, n);
    const mpz_class b = evaluate(*beta, ctx2, n);
    EXPECT_EQ(b, n - 1);
    Word w;
    w.push_a(-1);
    w.push_b(a);
    w.push_a(1);
    w.push_b(-b);
    EXPECT_TRUE(is_trivial_bs(w, BsParams(2, n))) << n;
  }
}

TEST(Pinch, AgreesWithConcreteConjugation) {
  // Random exponents of level < t, random contexts: whenever a pinch
  // applies symbolically it applies concretely with the same result.
  std::mt19937_64 rng(44);
  int applied = 0;
  for (int i = 0; i < 2000; ++i) {
    long m1 = static_cast<long>(rng() % 9) - 4;
    if (m1 == 0) m1 = 3;
    const long d = 1 + static_cast<long>(rng() % 3);
    const unsigned t = 1 + static_cast<unsigned>(rng() % 3);
    const auto ctx = EngineContext::from_class(m1, d, long(rng() % 100), t);
    std::vector<long> k(t + 1, 0);
    for (unsigned j = 0; j < t; ++j) k[j] = static_cast<long>(rng() % 9) - 4;
    if (rng() % 2) k[0] = 0;
    if (rng() % 2) k[0] *= d * m1;
    const PolyExponent alpha = poly(k);
    mpz_class bound = 0;
    const auto b1 = pinch_type1(alpha, ctx);
    const auto b2 = pinch_type2(alpha, ctx, bound);
    for (long j : {40L, 41L, -57L}) {
      const mpz_class n = ctx.class_member(j);
      if (abs(n) <= bound || n == 0) continue;
      const BsParams p(m1 * d, n * d);
      const mpz_class a = evaluate(alpha, ctx, n);
      Word w1;
      w1.push_a(1);
      w1.push_b(a);
      w1.push_a(-1);
      const Word r1 = britton_reduce(w1, p);
      EXPECT_EQ(r1.syllables().empty(), b1.has_value());
      if (b1) EXPECT_EQ(r1.head(), evaluate(*b1, ctx, n));
      Word w2;
      w2.push_a(-1);
      w2.push_b(a);
      w2.push_a(1);
      const Word r2 = britton_reduce(w2, p);
      EXPECT_EQ(r2.syllables().empty(), b2.has_value());
      if (b2) EXPECT_EQ(r2.head(), evaluate(*b2, ctx, n));
      applied += b1.has_value() + b2.has_value();
    }
  }
  EXPECT_GT(applied, 500);
}

TEST(Evaluate, Examples) {
  const auto ctx = EngineContext::from_class(2, 1, 1, 1);
  EXPECT_EQ(evaluate(poly({0, 1}), ctx, 7), 7);
  EXPECT_EQ(evaluate(poly({3, 0}), ctx, 7), 3);
  const auto ctx2 = EngineContext::from_class(2, 1, 3, 2);
  EXPECT_EQ(evaluate(poly({0, 0, 1}), ctx2, 7), 21);
  EXPECT_THROW(evaluate(poly({0, 0, 1}), ctx2, 5), NotInClass);
}

TEST(Evaluate, ZeroFunctionIffZeroCoefficients) {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 300; ++i) {
    const unsigned t = 1 + static_cast<unsigned>(rng() % 4);
    long m1 = static_cast<long>(rng() % 9) - 4;
    if (m1 == 0) m1 = 2;
    const auto ctx = EngineContext::from_class(m1, 1 + long(rng() % 3),
                                               long(rng() % 50), t);
    std::vector<long> k(t + 1, 0);
    if (rng() % 4) {
      for (auto& x : k) x = static_cast<long>(rng() % 3) - 1;
    }
    const PolyExponent alpha = poly(k);
    bool all_zero = true;
    for (unsigned j = 0; j <= t; ++j) {
      all_zero &= evaluate(alpha, ctx, ctx.class_member(long(j) + 5)) == 0;
    }
    EXPECT_EQ(all_zero, alpha.is_zero()) << to_string(alpha);
  }
}

TEST(RootBound, NoZerosBeyondBound) {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 200; ++i) {
    const unsigned t = 1 + static_cast<unsigned>(rng() % 3);
    long m1 = static_cast<long>(rng() % 7) - 3;
    if (m1 == 0) m1 = 2;
    const auto ctx = EngineContext::from_class(m1, 1, long(rng() % 30), t);
    std::vector<long> k(t + 1, 0);
    for (auto& x : k) x = static_cast<long>(rng() % 41) - 20;
    const PolyExponent alpha = poly(k);
    if (alpha.is_zero()) continue;
    const mpz_class B = root_bound(alpha, ctx);
    for (long j = -300; j <= 300; ++j) {
      const mpz_class n = ctx.class_member(j);
      if (abs(n) > B) {
        EXPECT_NE(evaluate(alpha, ctx, n), 0) << to_string(alpha) << " " << n;
      }
    }
  }
  // alpha(n) = n - 6 vanishes at 6
  const auto ctx = EngineContext::from_class(1, 1, 0, 1);
  EXPECT_GE(root_bound(poly({-6, 1}), ctx), 6);
}

TEST(SymbolicReduce, Examples) {
  const auto ctx = EngineContext::build(2, MAdicResidue(2, 2, 1), 2);
  const auto r1 = symbolic_reduce(parse_word("a b^2 A b a b^-2 A B"), ctx);
  EXPECT_EQ(r1.a_length(), 0u);
  EXPECT_TRUE(r1.head.is_zero());

  const auto ctx1 = EngineContext::build(2, MAdicResidue(2, 1, 1), 1);
  const auto r2 = symbolic_reduce(parse_word("a b A B"), ctx1);
  EXPECT_EQ(r2.a_length(), 2u);
  for (long j : {1L, 2L, 5L}) {
    EXPECT_FALSE(oracle::bs_trivial("abAB", 2, 1 + 2 * j));
  }

  const auto ctx0 = EngineContext::build(2, MAdicResidue(2, 1, 1), 0);
  const auto r3 = symbolic_reduce(parse_word("b^5"), ctx0);
  EXPECT_EQ(r3.head, PolyExponent(0, 5));
  EXPECT_EQ(r3.a_length(), 0u);
  EXPECT_THROW(symbolic_reduce(parse_word("a b A"), ctx0), InsufficientLevel);
}

TEST(SymbolicReduce, EvaluationMatchesConcreteReduction) {
  std::mt19937_64 rng(47);
  const long moduli[] = {2, -2, 3, 4, 6, -6, 12, 1, -1, 5};
  for (int i = 0; i < 1500; ++i) {
    const long M = moduli[rng() % 10];
    const int half = static_cast<int>(rng() % 5);
    Word w = balanced_word(rng, half, 10);
    if (rng() % 2) {
      w = w * stabilizer_word(rng, M, 2) * invert(w);
    }
    const Word r = free_reduce(w);
    const auto t = static_cast<unsigned>((r.syllable_count() + 1) / 2);
    const MAdicResidue xi(M, std::max(6u, t), long(rng() % 1000000));
    const auto ctx = EngineContext::build(M, xi, t);
    const SymbolicWord sw = symbolic_reduce(w, ctx);
    for (long j : {1000L, 1001L, 1002L}) {
      const mpz_class n = ctx.class_member(j);
      if (abs(n) <= sw.validity_bound) continue;
      const BsParams p(M, n * ctx.d());
      EXPECT_EQ(evaluate(sw, ctx, n), britton_reduce(r, p))
          << to_string(w) << " M=" << M << " n=" << n;
    }
  }
}

TEST(IsTrivialLimit, Examples) {
  EXPECT_FALSE(is_trivial_limit(parse_word("a b^2 A B^3"), 2,
                                MAdicResidue(2, 6, 3)));
  for (long xi : {0L, 1L, 2L, 3L, 5L}) {
    EXPECT_TRUE(is_trivial_limit(parse_word("a b^2 A b a b^-2 A B"), 2,
                                 MAdicResidue(2, 4, xi)));
  }
  EXPECT_FALSE(is_trivial_limit(parse_word("a b A B"), 2, MAdicResidue(2, 1, 1)));
  for (long n : {9L, 11L, 13L}) EXPECT_FALSE(oracle::bs_trivial("abAB", 2, n));
}

TEST(IsTrivialLimit, SigmaFastPathNeedsNoPrecision) {
  const auto dec = decide_limit(parse_word("a^5 b A"), LimitParams(2, MAdicResidue(2, 1, 1)));
  EXPECT_FALSE(dec.trivial);
  EXPECT_FALSE(dec.reduced);
}

TEST(IsTrivialLimit, InsufficientPrecisionNamesLevel) {
  try {
    is_trivial_limit(parse_word("a^3 b A^3 B"), 2, MAdicResidue(2, 2, 1));
    FAIL();
  } catch (const InsufficientPrecision& e) {
    EXPECT_EQ(e.needed(), 3u);
  }
}

TEST(IsTrivialLimit, MatchesLetterOracleAtSmallN) {
  // Independent check with the letter-rewriting oracle, at the smallest
  // class members above the validity bound.
  std::mt19937_64 rng(48);
  int trivial = 0, checks = 0;
  for (int i = 0; i < 400; ++i) {
    const long M = (rng() % 2) ? 2 : 3;
    Word w = balanced_word(rng, 1 + static_cast<int>(rng() % 2), 3);
    if (rng() % 2) {
      const Word s1 = stabilizer_word(rng, M, 1);
      const Word s2 = stabilizer_word(rng, M, 1);
      w = w * s1 * s2 * invert(s1) * invert(s2) * invert(w);
    } else if (rng() % 2) {
      w = w * stabilizer_word(rng, M, 2) * invert(w);
    }
    const MAdicResidue xi(M, 12, long(rng() % 81));
    const auto dec = decide_limit(w, LimitParams(M, xi));
    trivial += dec.trivial;
    const auto ctx = EngineContext::build(M, xi, dec.level);
    std::string letters;
    for (Letter x : free_reduce(w).letters()) letters.push_back(to_char(x));
    int checked = 0;
    for (long j = 0; checked < 2 && j < 50; ++j) {
      const mpz_class n = ctx.class_member(j);
      if (abs(n) <= dec.validity_bound || n == 0 || abs(n) > 40) continue;
      ++checked;
      ++checks;
      const long nd = n.get_si() * ctx.d();
      EXPECT_EQ(oracle::bs_trivial(letters, M, nd), dec.trivial)
          << letters << " M=" << M << " n=" << nd;
    }
  }
  EXPECT_GT(trivial, 50);
  EXPECT_GT(checks, 300);
}

TEST(IsTrivialLimit, BarSymmetric) {
  std::mt19937_64 rng(49);
  for (int i = 0; i < 500; ++i) {
    const long M = (rng() % 2) ? 4 : -6;
    Word w = balanced_word(rng, static_cast<int>(rng() % 4), 6);
    if (rng() % 2) w = w * stabilizer_word(rng, M, 2) * invert(w);
    const MAdicResidue xi(M, 8, long(rng() % 100000));
    EXPECT_EQ(is_trivial_limit(w, M, xi), is_trivial_limit(bar(w), M, xi));
  }
}

TEST(IsTrivialLimit, RefiningPrecisionKeepsVerdict) {
  std::mt19937_64 rng(50);
  for (int i = 0; i < 300; ++i) {
    const long M = (rng() % 2) ? 2 : 6;
    Word w = balanced_word(rng, static_cast<int>(rng() % 4), 6);
    if (rng() % 2) w = w * stabilizer_word(rng, M, 2) * invert(w);
    const unsigned t = static_cast<unsigned>((a_length(w) + 1) / 2);
    const mpz_class c = long(rng() % 1000000);
    const bool base = is_trivial_limit(w, M, MAdicResidue(M, std::max(1u, t), c));
    for (unsigned extra : {1u, 3u}) {
      EXPECT_EQ(is_trivial_limit(w, M, MAdicResidue(M, std::max(1u, t) + extra, c)),
                base);
    }
  }
}

TEST(IsTrivialLimit, UnitModulusIsLamplighter) {
  std::mt19937_64 rng(51);
  int trivial = 0;
  for (int i = 0; i < 500; ++i) {
    Word w = parse_word(oracle::random_word(rng, static_cast<int>(rng() % 7), 3));
    if (rng() % 2) {
      const Word u = parse_word(oracle::random_word(rng, 2, 2));
      const Word v = parse_word(oracle::random_word(rng, 2, 2));
      w = u * Word(1) * invert(u) * v * Word(1) * invert(v) * invert(u) *
          Word(-1) * u * invert(v) * Word(-1) * v;
    }
    for (long M : {1L, -1L}) {
      const bool lamp = lamplighter_image(w).is_identity();
      trivial += lamp;
      EXPECT_EQ(is_trivial_limit(w, M, MAdicResidue(M, 1, 0)), lamp)
          << to_string(w);
    }
  }
  EXPECT_GT(trivial, 50);
}

TEST(IsTrivialLimit, FactorsThroughLamplighter) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 500; ++i) {
    const long M = (rng() % 2) ? 3 : -4;
    Word w = balanced_word(rng, static_cast<int>(rng() % 3), 5);
    if (rng() % 2) w = w * stabilizer_word(rng, M, 2) * invert(w);
    const MAdicResidue xi(M, 8, long(rng() % 100000));
    if (is_trivial_limit(w, M, xi)) {
      EXPECT_TRUE(lamplighter_image(w).is_identity()) << to_string(w);
    }
  }
}

TEST(StabilizerExponent, Examples) {
  const MAdicResidue xi(2, 1, 1);
  const auto s = stabilizer_exponent(parse_word("a b^2 A"), 2, xi);
  ASSERT_TRUE(s);
  EXPECT_EQ(*s, poly({0, 1}));
  const auto ctx = EngineContext::build(2, xi, 1);
  for (long n : {3L, 5L, 7L}) {
    EXPECT_EQ(evaluate(*s, ctx, n), n);
    EXPECT_TRUE(oracle::bs_trivial("abbA" + oracle::b_power(-n), 2, n));
  }
  const auto b7 = stabilizer_exponent(parse_word("b^7"), 2, xi);
  ASSERT_TRUE(b7);
  EXPECT_EQ((*b7)[0], 7);
  EXPECT_TRUE(b7->is_constant());
  EXPECT_FALSE(stabilizer_exponent(parse_word("a b A"), 2, xi));
}

TEST(StabilizerExponent, StabilizerTimesKernelIsTrivial) {
  // Elements of the vertex stabilizer that die in Z wr Z die in the limit.
  std::mt19937_64 rng(53);
  int tested = 0;
  for (int i = 0; i < 2000 && tested < 200; ++i) {
    const long M = (rng() % 2) ? 2 : 3;
    Word w = stabilizer_word(rng, M, 3);
    const Word u = stabilizer_word(rng, M, 2);
    w = w * u * invert(w) * invert(u);
    if (!lamplighter_image(w).is_identity()) continue;
    const MAdicResidue xi(M, 8, long(rng() % 100000));
    ASSERT_TRUE(stabilizer_exponent(w, M, xi)) << to_string(w);
    EXPECT_TRUE(is_trivial_limit(w, M, xi)) << to_string(w);
    ++tested;
  }
  EXPECT_EQ(tested, 200);
}
