#pragma once

// Groups marked by (a, b) compared through the words they kill: searches for
// discriminating words, the classification of the limits BS(M, xi), the
// convergence criterion for sequences BS(M, xi_n), and explicit witnesses.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bslimits/madic.hpp"
#include "bslimits/word.hpp"

namespace bslimits {

enum class GroupKind { BaumslagSolitar, Limit, Lamplighter, Affine };

/// A marked group given by its triviality predicate.
class GroupOracle {
 public:
  GroupOracle(GroupKind kind, std::string name,
              std::function<bool(const Word&)> is_trivial)
      : kind_(kind), name_(std::move(name)), pred_(std::move(is_trivial)) {}

  static GroupOracle baumslag_solitar(const mpz_class& m, const mpz_class& n);
  /// Throws InsufficientPrecision from is_trivial() when a word needs more
  /// digits of xi than are known.
  static GroupOracle limit(std::int64_t M, const MAdicResidue& xi);
  static GroupOracle lamplighter();
  static GroupOracle affine(const mpz_class& m, const mpz_class& n);

  GroupKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  bool is_trivial(const Word& w) const { return pred_(w); }

 private:
  GroupKind kind_;
  std::string name_;
  std::function<bool(const Word&)> pred_;
};

struct SearchOptions {
  /// Maximal word length (letter count).
  std::size_t max_length = 10;
  /// When set, search words with a-length <= max_length and every b-run in
  /// [-E, E] instead. Incomplete: a hit only bounds the distance from above.
  std::optional<unsigned> exponent_bound;
  unsigned workers = 1;
};

struct Discrimination {
  Word word;
  mpz_class length;
  bool trivial_in_first;
};

/// First word, in shortlex order, trivial in exactly one of the groups.
std::optional<Discrimination> discriminating_word(const GroupOracle& g1,
                                                  const GroupOracle& g2,
                                                  const SearchOptions& opts);

enum class Classification { EqualAtPrecision, Distinct };

std::string to_string(Classification c);

/// Whether BS(M, xi) and BS(M, eta) are distinct limits. Equality can only
/// be reported up to the common precision.
Classification classify_equal(std::int64_t M, const MAdicResidue& xi,
                              const MAdicResidue& eta);

struct CongruenceWitness {
  Word word;
  mpz_class c;
  unsigned level;
};

/// A word trivial in the limit over xi and not over eta, when classify_equal
/// reports Distinct.
std::optional<CongruenceWitness> separating_witness(std::int64_t M,
                                                    const MAdicResidue& xi,
                                                    const MAdicResidue& eta);

struct ConvergenceVerdict {
  bool consistent;
  /// Indices (i, j) violating the criterion when !consistent.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::string reason;
};

/// Tests the observed terms from `tail_start` on: gcd(xi_n, M) constant, and
/// the m1-adic valuations of xi_n / d - xi_N / d non-decreasing in n.
ConvergenceVerdict check_convergence(std::int64_t M,
                                     std::span<const MAdicResidue> sequence,
                                     std::size_t tail_start = 0);
ConvergenceVerdict check_convergence(std::int64_t M,
                                     std::span<const mpz_class> sequence,
                                     unsigned precision,
                                     std::size_t tail_start = 0);

/// r bar(r) with r = a^2 b^{d1 m1^2} a^-2 b: trivial in BS(m1 d1, k1 d1) and
/// not in BS(m2 d2, k2 d2). Throws PreconditionViolated naming the failed
/// hypothesis.
Word witness_lemneqd(std::int64_t m1, std::int64_t d1, std::int64_t k1,
                     std::int64_t m2, std::int64_t d2, std::int64_t k2);

/// x b bar(x) b^-1 with x = a^{t+1} b^M a^-1 b^-c a^-t.
Word make_congruence_witness(std::int64_t M, const mpz_class& c, unsigned t);

/// xi_1, ..., xi_count with |xi_n| increasing, xi_n = xi mod M^n and
/// xi_n != xi mod m1^{l n + 1} d, l the largest exponent in M.
std::vector<mpz_class> build_separating_sequence(std::int64_t M,
                                                 const MAdicResidue& xi,
                                                 unsigned count);

}  // namespace bslimits
