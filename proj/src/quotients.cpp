#include "bslimits/quotients.hpp"

#include <sstream>

namespace bslimits {

LaurentPolynomial LaurentPolynomial::monomial(std::int64_t degree,
                                              const mpz_class& c) {
  LaurentPolynomial p;
  p.add_term(degree, c);
  return p;
}

mpz_class LaurentPolynomial::coefficient(std::int64_t degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void LaurentPolynomial::add_term(std::int64_t degree, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(degree, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& x,
                            const LaurentPolynomial& y) {
  LaurentPolynomial out;
  for (const auto& [i, c] : x.terms_) {
    for (const auto& [j, d] : y.terms_) out.add_term(i + j, c * d);
  }
  return out;
}

Rational LaurentPolynomial::evaluate(const Rational& at) const {
  Rational total = 0;
  for (const auto& [k, c] : terms_) {
    Rational power = 1;
    const Rational base = k >= 0 ? at : Rational(1 / at);
    for (std::int64_t i = 0; i < (k >= 0 ? k : -k); ++i) power *= base;
    total += power * c;
  }
  return total;
}

std::string to_string(const LaurentPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : p.terms()) {
    std::string coeff = mpz_class(abs(c)).get_str();
    std::string term;
    if (k == 0) {
      term = coeff;
    } else {
      term = (abs(c) == 1 ? "" : coeff + "*") + "t" +
             (k == 1 ? "" : "^" + std::to_string(k));
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + term;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

bool is_unit(const Rational& x) { return x != 0; }

Rational unit_inverse(const Rational& x) {
  if (x == 0) throw NonUnit("0 is not invertible");
  return Rational(1 / x);
}

bool is_unit(const LaurentPolynomial& x) {
  return x.terms().size() == 1 && abs(x.terms().begin()->second) == 1;
}

LaurentPolynomial unit_inverse(const LaurentPolynomial& x) {
  if (!is_unit(x)) throw NonUnit(to_string(x) + " is not a unit");
  const auto& [k, c] = *x.terms().begin();
  return LaurentPolynomial::monomial(-k, c);
}

std::string to_string(const AffineMap<Rational>& f) {
  return "x -> " + f.scale.get_str() + "*x + " + f.shift.get_str();
}

std::string to_string(const AffineMap<LaurentPolynomial>& f) {
  return "x -> (" + to_string(f.scale) + ")*x + " + to_string(f.shift);
}

std::string to_string(const LamplighterElement& x) {
  return "(" + std::to_string(x.sigma) + ", " + to_string(x.lamps) + ")";
}

LamplighterElement lamplighter_image(const Word& w) {
  const auto f = affine_image(w, LaurentPolynomial::t());
  // scale is t^sigma_a(w)
  return {f.scale.terms().begin()->first, f.shift};
}

bool in_kernel_N(const Word& w) { return lamplighter_image(w).is_identity(); }

}  // namespace bslimits
