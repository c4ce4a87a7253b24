#include "bslimits/marked_space.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "bslimits/britton.hpp"
#include "bslimits/errors.hpp"
#include "bslimits/limit_engine.hpp"
#include "bslimits/quotients.hpp"

namespace bslimits {

GroupOracle GroupOracle::baumslag_solitar(const mpz_class& m,
                                          const mpz_class& n) {
  const BsParams p(m, n);
  return {GroupKind::BaumslagSolitar,
          "BS(" + m.get_str() + ", " + n.get_str() + ")",
          [p](const Word& w) { return is_trivial_bs(w, p); }};
}

GroupOracle GroupOracle::limit(std::int64_t M, const MAdicResidue& xi) {
  const LimitParams params(M, xi);
  return {GroupKind::Limit,
          "BSbar(" + std::to_string(M) + ", " + to_string(xi) + ")",
          [params](const Word& w) { return decide_limit(w, params).trivial; }};
}

GroupOracle GroupOracle::lamplighter() {
  return {GroupKind::Lamplighter, "Z wr Z",
          [](const Word& w) { return in_kernel_N(w); }};
}

GroupOracle GroupOracle::affine(const mpz_class& m, const mpz_class& n) {
  const BsParams p(m, n);
  return {GroupKind::Affine, "Gamma(" + m.get_str() + ", " + n.get_str() + ")",
          [p](const Word& w) { return gamma_image(w, p).is_identity(); }};
}

namespace {

/// Smallest index at which the oracles disagree.
std::optional<std::size_t> first_disagreement(std::span<const Word> words,
                                              const GroupOracle& g1,
                                              const GroupOracle& g2,
                                              unsigned workers) {
  auto disagree = [&](std::size_t i) {
    return g1.is_trivial(words[i]) != g2.is_trivial(words[i]);
  };
  workers = std::max(1u, workers);
  if (workers == 1 || words.size() < 2 * workers) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (disagree(i)) return i;
    }
    return std::nullopt;
  }
  // Workers take contiguous chunks; the minimum over chunks is the answer
  // regardless of scheduling.
  const std::size_t chunk = (words.size() + workers - 1) / workers;
  std::vector<std::optional<std::size_t>> found(workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (unsigned k = 0; k < workers; ++k) {
    threads.emplace_back([&, k] {
      try {
        const std::size_t end = std::min(words.size(), (k + 1) * chunk);
        for (std::size_t i = k * chunk; i < end; ++i) {
          if (disagree(i)) {
            found[k] = i;
            return;
          }
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
  for (const auto& f : found) {
    if (f) return f;
  }
  return std::nullopt;
}

Discrimination make_result(const Word& w, const GroupOracle& g1) {
  return {w, length(w), g1.is_trivial(w)};
}

}  // namespace

std::optional<Discrimination> discriminating_word(const GroupOracle& g1,
                                                  const GroupOracle& g2,
                                                  const SearchOptions& opts) {
  if (opts.exponent_bound) {
    const auto words =
        bounded_syllable_words(opts.max_length, *opts.exponent_bound);
    const auto i = first_disagreement(words, g1, g2, opts.workers);
    if (!i) return std::nullopt;
    return make_result(words[*i], g1);
  }
  ReducedWordEnumerator it(opts.max_length);
  std::vector<Word> batch;
  mpz_class batch_length = 0;
  auto flush = [&]() -> std::optional<Discrimination> {
    const auto i = first_disagreement(batch, g1, g2, opts.workers);
    if (i) return make_result(batch[*i], g1);
    batch.clear();
    return std::nullopt;
  };
  while (auto w = it.next()) {
    const mpz_class len = length(*w);
    if (len != batch_length) {
      if (auto hit = flush()) return hit;
      batch_length = len;
    }
    batch.push_back(std::move(*w));
  }
  return flush();
}

std::string to_string(Classification c) {
  return c == Classification::Distinct ? "Distinct" : "EqualAtPrecision";
}

namespace {

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }

void require_modulus(std::int64_t M, const MAdicResidue& x) {
  if (x.modulus().value() != M) {
    throw ModulusMismatch("residue over " +
                          std::to_string(x.modulus().value()) +
                          " where M = " + std::to_string(M) + " was expected");
  }
}

/// Residue of x / d over m1 = M / d, modulo |m1|^K.
mpz_class projected(const MAdicResidue& x, std::int64_t d, unsigned K) {
  return divide_exact(x, d).truncate(K).residue();
}

}  // namespace

Classification classify_equal(std::int64_t M, const MAdicResidue& xi,
                              const MAdicResidue& eta) {
  require_modulus(M, xi);
  require_modulus(M, eta);
  const mpz_class d = gcd_with(xi, M);
  if (d != gcd_with(eta, M)) return Classification::Distinct;
  if (Modulus(M).is_zero_ring()) return Classification::EqualAtPrecision;
  const unsigned K = std::min(xi.precision(), eta.precision());
  const std::int64_t d64 = d.get_si();
  return projected(xi, d64, K) == projected(eta, d64, K)
             ? Classification::EqualAtPrecision
             : Classification::Distinct;
}

std::optional<CongruenceWitness> separating_witness(std::int64_t M,
                                                    const MAdicResidue& xi,
                                                    const MAdicResidue& eta) {
  if (classify_equal(M, xi, eta) != Classification::Distinct) {
    return std::nullopt;
  }
  const mpz_class d = gcd_with(xi, M);
  const std::int64_t m1 = M / d.get_si();
  const unsigned K = std::min(xi.precision(), eta.precision());
  const mpz_class common = Modulus(M).power(K);
  const mpz_class x = xi.residue();
  const mpz_class y = eta.residue();
  mpz_class modulus = abs64(m1) * d;
  for (unsigned t = 1; mpz_divisible_p(common.get_mpz_t(),
                                       modulus.get_mpz_t()) != 0;
       ++t, modulus *= abs64(m1)) {
    mpz_class diff = x - y;
    if (mpz_divisible_p(diff.get_mpz_t(), modulus.get_mpz_t()) == 0) {
      return CongruenceWitness{make_congruence_witness(M, x, t), x, t};
    }
    if (abs64(m1) == 1) break;
  }
  throw InternalInvariantViolation(
      "distinct residues agree modulo every known power");
}

namespace {

ConvergenceVerdict convergence_of(std::int64_t M,
                                  std::span<const MAdicResidue> seq,
                                  std::size_t tail_start) {
  if (seq.size() < 2) {
    throw PreconditionViolated("a sequence needs at least two terms");
  }
  if (tail_start + 1 >= seq.size()) {
    throw PreconditionViolated("tail_start leaves fewer than two terms");
  }
  for (const auto& x : seq) require_modulus(M, x);
  const std::size_t last = seq.size() - 1;

  std::vector<mpz_class> gcds;
  for (const auto& x : seq) gcds.push_back(gcd_with(x, M));
  for (std::size_t i = last; i > tail_start; --i) {
    if (gcds[i] != gcds[i - 1]) {
      return {false, std::make_pair(i - 1, i),
              "gcd with M changes from " + gcds[i - 1].get_str() + " to " +
                  gcds[i].get_str()};
    }
  }
  const std::int64_t d = gcds[last].get_si();
  const std::int64_t m1 = M / d;
  if (abs64(m1) == 1) return {true, std::nullopt, "gcd stable; Z_m1 is zero"};

  unsigned K = seq[tail_start].precision();
  for (std::size_t i = tail_start; i <= last; ++i) {
    K = std::min(K, seq[i].precision());
  }
  const Modulus mod1(m1);
  const mpz_class limit = projected(seq[last], d, K);
  std::vector<unsigned> v;
  for (std::size_t i = tail_start; i < last; ++i) {
    v.push_back(valuation(projected(seq[i], d, K) - limit, mod1, K));
  }
  for (std::size_t j = 1; j < v.size(); ++j) {
    if (v[j] < v[j - 1]) {
      const std::size_t i = tail_start + j;
      return {false, std::make_pair(i - 1, i),
              "agreement with the last term drops from " +
                  std::to_string(v[j - 1]) + " to " + std::to_string(v[j]) +
                  " digits"};
    }
  }
  return {true, std::nullopt, "gcd stable; residues Cauchy at precision " +
                                  std::to_string(K)};
}

}  // namespace

ConvergenceVerdict check_convergence(std::int64_t M,
                                     std::span<const MAdicResidue> sequence,
                                     std::size_t tail_start) {
  return convergence_of(M, sequence, tail_start);
}

ConvergenceVerdict check_convergence(std::int64_t M,
                                     std::span<const mpz_class> sequence,
                                     unsigned precision,
                                     std::size_t tail_start) {
  std::vector<MAdicResidue> residues;
  for (const auto& x : sequence) residues.emplace_back(M, precision, x);
  return convergence_of(M, residues, tail_start);
}

Word witness_lemneqd(std::int64_t m1, std::int64_t d1, std::int64_t k1,
                     std::int64_t m2, std::int64_t d2, std::int64_t k2) {
  if (m1 == 0 || d1 == 0 || k1 == 0 || m2 == 0 || d2 == 0 || k2 == 0) {
    throw PreconditionViolated("all parameters must be non-zero");
  }
  if (m1 * d1 != m2 * d2) {
    throw PreconditionViolated("m1 d1 = m2 d2 fails");
  }
  if (abs64(k2 * d2) == 1) throw PreconditionViolated("|k2 d2| != 1 fails");
  if (std::gcd(m2, k2) != 1) throw PreconditionViolated("gcd(m2, k2) = 1 fails");
  if (d2 % d1 == 0) throw PreconditionViolated("d1 does not divide d2 fails");
  Word r;
  r.push_a(1);
  r.push_a(1);
  r.push_b(mpz_class(d1) * m1 * m1);
  r.push_a(-1);
  r.push_a(-1);
  r.push_b(1);
  return r * bar(r);
}

Word make_congruence_witness(std::int64_t M, const mpz_class& c, unsigned t) {
  if (t < 1) throw PreconditionViolated("level must be at least 1");
  Word x;
  for (unsigned i = 0; i <= t; ++i) x.push_a(1);
  x.push_b(M);
  x.push_a(-1);
  x.push_b(-c);
  for (unsigned i = 0; i < t; ++i) x.push_a(-1);
  return x * Word(1) * bar(x) * Word(-1);
}

std::vector<mpz_class> build_separating_sequence(std::int64_t M,
                                                 const MAdicResidue& xi,
                                                 unsigned count) {
  require_modulus(M, xi);
  const Modulus mod(M);
  if (mod.is_zero_ring()) throw PreconditionViolated("xi lies in M Z_M");
  const mpz_class d = gcd_with(xi, M);
  if (d == mod.magnitude()) throw PreconditionViolated("xi lies in M Z_M");
  const mpz_class m1 = abs64(M) / d;
  const unsigned ell = mod.max_exponent();

  std::vector<mpz_class> out;
  for (unsigned n = 1; n <= count; ++n) {
    mpz_class Q;
    mpz_pow_ui(Q.get_mpz_t(), m1.get_mpz_t(), ell * n + 1);
    Q *= d;
    unsigned needed = n;
    for (const auto& f : mod.factorization()) {
      const mpz_class p = f.prime;
      const unsigned v = mpz_remove(mpz_class().get_mpz_t(), Q.get_mpz_t(),
                                    p.get_mpz_t());
      needed = std::max(needed, (v + f.exponent - 1) / f.exponent);
    }
    if (xi.precision() < needed) {
      throw InsufficientPrecision(needed, xi.precision());
    }
    const mpz_class Mn = mod.power(n);
    const mpz_class target = xi.residue() % Q;
    mpz_class alpha = xi.residue() % Mn;
    while (alpha % Q == target) alpha += Mn;
    // Shifts by lcm-multiples keep both congruences.
    mpz_class step;
    mpz_lcm(step.get_mpz_t(), Mn.get_mpz_t(), Q.get_mpz_t());
    while (alpha == 0 || (!out.empty() && alpha <= abs(out.back()))) {
      alpha += step;
    }
    out.push_back(alpha);
  }
  return out;
}

}  // namespace bslimits
