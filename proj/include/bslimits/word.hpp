#pragma once

// Words of the free group F(a, b), stored as b-run-length syllables
//
//   b^{e_0} a^{s_1} b^{e_1} ... a^{s_h} b^{e_h},   s_i = +-1,
//
// with arbitrary-precision b-exponents. A word is not required to be freely
// reduced; free_reduce() produces the canonical form, in which no syllable
// pair a^{s} b^0 a^{-s} occurs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace bslimits {

/// Enumeration order is a < A < b < B.
enum class Letter : std::uint8_t { a = 0, A = 1, b = 2, B = 3 };

Letter inverse(Letter x) noexcept;
char to_char(Letter x) noexcept;

class Word {
 public:
  struct Syllable {
    int sign;            // +1 for a, -1 for A
    mpz_class exponent;  // of the b-run that follows

    bool operator==(const Syllable&) const = default;
  };

  Word() = default;
  explicit Word(mpz_class b_exponent) : head_(std::move(b_exponent)) {}

  static Word from_letters(std::span<const Letter> letters);

  const mpz_class& head() const noexcept { return head_; }
  const std::vector<Syllable>& syllables() const noexcept { return tail_; }

  /// Appends a^{sign}; no cancellation is performed.
  void push_a(int sign);
  /// Multiplies by b^e on the right (merges into the last b-run).
  void push_b(const mpz_class& e);
  /// Removes and returns the last syllable (its a-letter and trailing b-run).
  Syllable pop_syllable();

  std::size_t syllable_count() const noexcept { return tail_.size(); }
  bool empty() const noexcept { return head_ == 0 && tail_.empty(); }
  bool is_freely_reduced() const;

  /// Letter expansion; b-exponents must fit in memory.
  std::vector<Letter> letters() const;

  bool operator==(const Word&) const = default;

 private:
  mpz_class head_ = 0;
  std::vector<Syllable> tail_;
};

/// Grammar: word := item* ; item := letter exponent? ;
/// letter := a | A | b | B ; exponent := "^" "-"? digits.
/// Whitespace is ignored. Throws SyntaxError with the offending position.
Word parse_word(std::string_view text);

/// Canonical text form; parse_word(to_string(w)) == w for reduced w.
std::string to_string(const Word& w);

Word free_reduce(const Word& w);
/// Cyclically reduced conjugate beginning with an a-letter (unless w is
/// conjugate to a power of b); the b-runs at both ends are merged.
Word cyclically_reduce(const Word& w);
Word invert(const Word& w);
/// Free reduction of the concatenation uv.
Word concat(const Word& u, const Word& v);
inline Word operator*(const Word& u, const Word& v) { return concat(u, v); }

/// Letterwise image under a -> a, b -> b^{-1}.
Word bar(const Word& w);

std::int64_t sigma_a(const Word& w);
std::size_t a_length(const Word& w);
mpz_class length(const Word& w);

/// Lexicographic order on letters (a < A < b < B) after length.
bool shortlex_less(const Word& u, const Word& v);

/// Streams every freely reduced word of length <= max_length exactly once,
/// by length and then lexicographically.
class ReducedWordEnumerator {
 public:
  explicit ReducedWordEnumerator(std::size_t max_length);

  std::optional<Word> next();
  /// Letters of the word returned by the last successful next().
  const std::vector<Letter>& current_letters() const noexcept {
    return letters_;
  }

 private:
  bool advance();

  std::size_t max_length_;
  std::vector<Letter> letters_;
  bool started_ = false;
};

/// Freely reduced words with a-length <= max_a_length and every b-run
/// exponent in [-exponent_bound, exponent_bound], sorted shortlex. Unlike
/// ReducedWordEnumerator this reaches long words with few a-letters.
std::vector<Word> bounded_syllable_words(std::size_t max_a_length,
                                         unsigned exponent_bound);

/// Number of freely reduced words of length exactly `len` (4 * 3^{len-1}).
mpz_class reduced_word_count(std::size_t len);

}  // namespace bslimits
