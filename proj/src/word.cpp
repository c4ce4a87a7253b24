#include "bslimits/word.hpp"

#include <algorithm>
#include <cctype>

#include "bslimits/errors.hpp"

namespace bslimits {

Letter inverse(Letter x) noexcept {
  switch (x) {
    case Letter::a: return Letter::A;
    case Letter::A: return Letter::a;
    case Letter::b: return Letter::B;
    case Letter::B: return Letter::b;
  }
  return x;
}

char to_char(Letter x) noexcept {
  static constexpr char kChars[] = {'a', 'A', 'b', 'B'};
  return kChars[static_cast<int>(x)];
}

Word Word::from_letters(std::span<const Letter> letters) {
  Word w;
  for (Letter x : letters) {
    switch (x) {
      case Letter::a: w.push_a(1); break;
      case Letter::A: w.push_a(-1); break;
      case Letter::b: w.push_b(1); break;
      case Letter::B: w.push_b(-1); break;
    }
  }
  return w;
}

void Word::push_a(int sign) { tail_.push_back({sign > 0 ? 1 : -1, 0}); }

void Word::push_b(const mpz_class& e) {
  if (tail_.empty()) {
    head_ += e;
  } else {
    tail_.back().exponent += e;
  }
}

Word::Syllable Word::pop_syllable() {
  Syllable last = std::move(tail_.back());
  tail_.pop_back();
  return last;
}

bool Word::is_freely_reduced() const {
  for (std::size_t i = 0; i + 1 < tail_.size(); ++i) {
    if (tail_[i].exponent == 0 && tail_[i].sign == -tail_[i + 1].sign) {
      return false;
    }
  }
  return true;
}

namespace {

void append_b_letters(std::vector<Letter>& out, const mpz_class& e) {
  const Letter x = e > 0 ? Letter::b : Letter::B;
  const mpz_class magnitude = abs(e);
  for (unsigned long i = 0; i < magnitude.get_ui(); ++i) out.push_back(x);
}

}  // namespace

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  append_b_letters(out, head_);
  for (const auto& s : tail_) {
    out.push_back(s.sign > 0 ? Letter::a : Letter::A);
    append_b_letters(out, s.exponent);
  }
  return out;
}

Word parse_word(std::string_view text) {
  constexpr long kMaxAExponent = 1'000'000;
  Word w;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_space();
  while (i < text.size()) {
    const char c = text[i];
    if (c != 'a' && c != 'A' && c != 'b' && c != 'B') {
      throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
    ++i;
    skip_space();
    mpz_class exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip_space();
      bool negative = false;
      if (i < text.size() && text[i] == '-') {
        negative = true;
        ++i;
        skip_space();
      }
      const std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
      if (start == i) throw SyntaxError("expected digits after '^'", start);
      exponent = mpz_class(std::string(text.substr(start, i - start)));
      if (negative) exponent = -exponent;
      skip_space();
    }
    const bool inverted = (c == 'A' || c == 'B');
    if (inverted) exponent = -exponent;
    if (c == 'b' || c == 'B') {
      w.push_b(exponent);
    } else {
      if (abs(exponent) > kMaxAExponent) {
        throw SyntaxError("a-exponent too large", i);
      }
      const long count = exponent.get_si();
      for (long k = 0; k < (count < 0 ? -count : count); ++k) {
        w.push_a(count < 0 ? -1 : 1);
      }
    }
  }
  return w;
}

std::string to_string(const Word& w) {
  std::string out;
  auto emit = [&](const std::string& token) {
    if (!out.empty()) out += ' ';
    out += token;
  };
  auto emit_b = [&](const mpz_class& e) {
    if (e == 0) return;
    if (e == 1) {
      emit("b");
    } else if (e == -1) {
      emit("B");
    } else {
      emit("b^" + e.get_str());
    }
  };
  emit_b(w.head());
  const auto& syl = w.syllables();
  for (std::size_t i = 0; i < syl.size();) {
    // a-run: consecutive equal signs separated by empty b-runs
    std::size_t j = i;
    while (j + 1 < syl.size() && syl[j].exponent == 0 &&
           syl[j + 1].sign == syl[i].sign) {
      ++j;
    }
    const std::size_t run = j - i + 1;
    const char letter = syl[i].sign > 0 ? 'a' : 'A';
    emit(run == 1 ? std::string(1, letter)
                  : std::string(1, letter) + "^" + std::to_string(run));
    emit_b(syl[j].exponent);
    i = j + 1;
  }
  return out;
}

Word free_reduce(const Word& w) {
  Word out(w.head());
  for (const auto& s : w.syllables()) {
    const auto& top = out.syllables();
    if (!top.empty() && top.back().sign == -s.sign && top.back().exponent == 0) {
      // a^{s} b^0 a^{-s} cancels
      out.pop_syllable();
      out.push_b(s.exponent);
    } else {
      out.push_a(s.sign);
      out.push_b(s.exponent);
    }
  }
  return out;
}

Word cyclically_reduce(const Word& w) {
  const Word reduced = free_reduce(w);
  if (reduced.syllables().empty()) return reduced;
  std::vector<Word::Syllable> syl = reduced.syllables();
  syl.back().exponent += reduced.head();
  std::size_t first = 0;
  std::size_t last = syl.size();  // exclusive
  while (last - first >= 2 && syl[last - 1].exponent == 0 &&
         syl[last - 1].sign == -syl[first].sign) {
    // a^{s} b^{e} X a^{-s}  ~  X b^{e}
    if (last - first == 2) return Word(syl[first].exponent);
    syl[last - 2].exponent += syl[first].exponent;
    ++first;
    --last;
  }
  Word out;
  for (std::size_t i = first; i < last; ++i) {
    out.push_a(syl[i].sign);
    out.push_b(syl[i].exponent);
  }
  return out;
}

Word invert(const Word& w) {
  const auto& syl = w.syllables();
  Word out(syl.empty() ? mpz_class(-w.head()) : mpz_class(-syl.back().exponent));
  for (std::size_t i = syl.size(); i-- > 0;) {
    out.push_a(-syl[i].sign);
    out.push_b(i == 0 ? mpz_class(-w.head()) : mpz_class(-syl[i - 1].exponent));
  }
  return free_reduce(out);
}

Word concat(const Word& u, const Word& v) {
  Word out = u;
  out.push_b(v.head());
  for (const auto& s : v.syllables()) {
    out.push_a(s.sign);
    out.push_b(s.exponent);
  }
  return free_reduce(out);
}

Word bar(const Word& w) {
  Word out(-w.head());
  for (const auto& s : w.syllables()) {
    out.push_a(s.sign);
    out.push_b(-s.exponent);
  }
  return out;
}

std::int64_t sigma_a(const Word& w) {
  std::int64_t total = 0;
  for (const auto& s : w.syllables()) total += s.sign;
  return total;
}

std::size_t a_length(const Word& w) {
  return free_reduce(w).syllable_count();
}

mpz_class length(const Word& w) {
  const Word r = free_reduce(w);
  mpz_class total = abs(r.head());
  for (const auto& s : r.syllables()) total += 1 + abs(s.exponent);
  return total;
}

namespace {

struct Run {
  Letter letter;
  mpz_class count;
};

std::vector<Run> runs_of(const Word& w) {
  std::vector<Run> runs;
  auto b_run = [&](const mpz_class& e) {
    if (e != 0) runs.push_back({e > 0 ? Letter::b : Letter::B, abs(e)});
  };
  b_run(w.head());
  for (const auto& s : w.syllables()) {
    runs.push_back({s.sign > 0 ? Letter::a : Letter::A, 1});
    b_run(s.exponent);
  }
  return runs;
}

}  // namespace

bool shortlex_less(const Word& u, const Word& v) {
  const Word ru = free_reduce(u);
  const Word rv = free_reduce(v);
  const mpz_class lu = length(ru);
  const mpz_class lv = length(rv);
  if (lu != lv) return lu < lv;
  std::vector<Run> x = runs_of(ru);
  std::vector<Run> y = runs_of(rv);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].letter != y[j].letter) return x[i].letter < y[j].letter;
    const mpz_class step = std::min(x[i].count, y[j].count);
    x[i].count -= step;
    y[j].count -= step;
    if (x[i].count == 0) ++i;
    if (y[j].count == 0) ++j;
  }
  return false;
}

ReducedWordEnumerator::ReducedWordEnumerator(std::size_t max_length)
    : max_length_(max_length) {}

namespace {

Letter smallest_after(std::optional<Letter> previous) {
  return previous == Letter::A ? Letter::A : Letter::a;
}

}  // namespace

bool ReducedWordEnumerator::advance() {
  // Lexicographic successor among reduced words of the same length.
  for (std::size_t i = letters_.size(); i-- > 0;) {
    const std::optional<Letter> prev =
        i == 0 ? std::nullopt : std::optional<Letter>(letters_[i - 1]);
    int candidate = static_cast<int>(letters_[i]) + 1;
    if (prev && candidate <= 3 &&
        static_cast<Letter>(candidate) == inverse(*prev)) {
      ++candidate;
    }
    if (candidate > 3) continue;
    letters_[i] = static_cast<Letter>(candidate);
    for (std::size_t j = i + 1; j < letters_.size(); ++j) {
      letters_[j] = smallest_after(letters_[j - 1]);
    }
    return true;
  }
  // Move to the next length.
  if (letters_.size() >= max_length_) return false;
  letters_.assign(letters_.size() + 1, Letter::a);
  return true;
}

std::optional<Word> ReducedWordEnumerator::next() {
  if (!started_) {
    started_ = true;
    return Word{};
  }
  if (!advance()) return std::nullopt;
  return Word::from_letters(letters_);
}

std::vector<Word> bounded_syllable_words(std::size_t max_a_length,
                                         unsigned exponent_bound) {
  const long E = static_cast<long>(exponent_bound);
  std::vector<Word> out;
  Word current;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    out.push_back(current);
    if (depth == max_a_length) return;
    for (int sign : {1, -1}) {
      const auto& syl = current.syllables();
      const bool cancels = !syl.empty() && syl.back().sign == -sign &&
                           syl.back().exponent == 0;
      if (cancels) continue;
      for (long e = -E; e <= E; ++e) {
        const Word saved = current;
        current.push_a(sign);
        current.push_b(e);
        self(self, depth + 1);
        current = saved;
      }
    }
  };
  for (long e0 = -E; e0 <= E; ++e0) {
    current = Word(e0);
    rec(rec, 0);
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  return out;
}

mpz_class reduced_word_count(std::size_t len) {
  if (len == 0) return 1;
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 3, len - 1);
  return 4 * out;
}

}  // namespace bslimits
