#include "bslimits/limit_engine.hpp"

#include <algorithm>

#include "bslimits/errors.hpp"

namespace bslimits {

namespace {

mpz_class abs64(std::int64_t x) { return x < 0 ? mpz_class(-x) : mpz_class(x); }

mpz_class pow_mpz(const mpz_class& base, unsigned k) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), k);
  return out;
}

mpz_class floor_mod(const mpz_class& x, const mpz_class& modulus) {
  mpz_class out;
  mpz_fdiv_r(out.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

mpz_class exact_div(const mpz_class& x, const mpz_class& y) {
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return out;
}

bool divides(const mpz_class& d, const mpz_class& x) {
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// s_0..s_count at n, with remainders.
void run_recurrence(const mpz_class& m1, const mpz_class& n, unsigned count,
                    std::vector<mpz_class>& r, std::vector<mpz_class>& s) {
  const mpz_class magnitude = abs(m1);
  r.assign(count + 1, 0);
  s.assign(count + 1, 0);
  s[0] = 1;
  for (unsigned i = 1; i <= count; ++i) {
    const mpz_class product = s[i - 1] * n;
    r[i] = floor_mod(product, magnitude);
    s[i] = exact_div(product - r[i], m1);
  }
}

}  // namespace

RsTable RsTable::compute(const mpz_class& m1, const mpz_class& n,
                         unsigned level) {
  if (m1 == 0) throw ZeroModulus();
  RsTable table;
  table.m1 = m1;
  table.n = n;
  table.level = level;
  run_recurrence(m1, n, level, table.r, table.s);
  table.polynomials.push_back({Rational(1)});
  for (unsigned i = 1; i <= level; ++i) {
    // P_i(X) = X P_{i-1}(X) - r_i / m1
    std::vector<Rational> next(i + 1);
    const auto& prev = table.polynomials.back();
    for (std::size_t j = 0; j < prev.size(); ++j) next[j + 1] = prev[j];
    Rational shift(table.r[i], m1);
    shift.canonicalize();
    next[0] -= shift;
    table.polynomials.push_back(std::move(next));
  }
  return table;
}

LimitParams::LimitParams(std::int64_t M_, MAdicResidue xi_)
    : M(M_), xi(std::move(xi_)) {
  if (M == 0) throw ZeroModulus();
  if (xi.modulus().value() != M) {
    throw ModulusMismatch("xi must be a residue over M = " + std::to_string(M));
  }
}

EngineContext::EngineContext(std::int64_t m1, std::int64_t d,
                             const mpz_class& c, unsigned level)
    : m1_(m1), d_(d), level_(level) {
  if (m1 == 0 || d == 0) throw ZeroModulus();
  if (d < 0) throw PreconditionViolated("d must be positive");
  class_modulus_ = pow_mpz(abs64(m1), level);
  class_residue_ = floor_mod(c, class_modulus_);
  const mpz_class representative =
      class_residue_ == 0 ? class_modulus_ : class_residue_;
  rs_ = RsTable::compute(m1, representative, level);
}

EngineContext EngineContext::build(std::int64_t M, const MAdicResidue& xi,
                                   unsigned level) {
  const LimitParams params(M, xi);
  const mpz_class d = gcd_with(xi, M);
  const std::int64_t d64 = d.get_si();
  const std::int64_t m1 = M / d64;
  if (m1 == 1 || m1 == -1) return EngineContext(m1, d64, 0, level);
  if (xi.precision() < level) {
    throw InsufficientPrecision(level, xi.precision());
  }
  const MAdicResidue eta = divide_exact(xi, d64);
  return EngineContext(m1, d64, eta.residue(), level);
}

EngineContext EngineContext::from_class(std::int64_t m1, std::int64_t d,
                                        const mpz_class& c, unsigned level) {
  return EngineContext(m1, d, c, level);
}

bool EngineContext::in_class(const mpz_class& n) const {
  return floor_mod(n, class_modulus_) == class_residue_;
}

mpz_class EngineContext::class_member(const mpz_class& j) const {
  return class_residue_ + j * class_modulus_;
}

PolyExponent::PolyExponent(unsigned level, const mpz_class& constant)
    : k_(level + 1, 0) {
  k_[0] = constant;
}

PolyExponent::PolyExponent(std::vector<mpz_class> coefficients)
    : k_(std::move(coefficients)) {
  if (k_.empty()) k_.push_back(0);
}

bool PolyExponent::is_zero() const {
  return std::all_of(k_.begin(), k_.end(),
                     [](const mpz_class& x) { return x == 0; });
}

bool PolyExponent::is_constant() const {
  return std::all_of(k_.begin() + 1, k_.end(),
                     [](const mpz_class& x) { return x == 0; });
}

PolyExponent& PolyExponent::operator+=(const PolyExponent& other) {
  if (other.k_.size() > k_.size()) k_.resize(other.k_.size(), 0);
  for (std::size_t i = 0; i < other.k_.size(); ++i) k_[i] += other.k_[i];
  return *this;
}

std::string to_string(const PolyExponent& alpha) {
  std::string out = "[";
  for (std::size_t i = 0; i < alpha.coefficients().size(); ++i) {
    if (i) out += ", ";
    out += alpha[i].get_str();
  }
  return out + "]";
}

namespace {

void check_fits(const PolyExponent& alpha, const EngineContext& ctx) {
  if (alpha.level() > ctx.level()) {
    throw PreconditionViolated("exponent level " +
                               std::to_string(alpha.level()) +
                               " exceeds context level " +
                               std::to_string(ctx.level()));
  }
}

mpz_class evaluate_unchecked(const PolyExponent& alpha,
                             const EngineContext& ctx, const mpz_class& n) {
  const auto& k = alpha.coefficients();
  std::vector<mpz_class> r, s;
  run_recurrence(ctx.m1(), n, k.size() > 1 ? unsigned(k.size() - 2) : 0, r, s);
  mpz_class inner = 0;
  for (std::size_t j = 1; j < k.size(); ++j) inner += k[j] * s[j - 1];
  return k[0] + inner * n * ctx.d();
}

}  // namespace

mpz_class evaluate(const PolyExponent& alpha, const EngineContext& ctx,
                   const mpz_class& n) {
  check_fits(alpha, ctx);
  if (!ctx.in_class(n)) {
    throw NotInClass(n.get_str() + " is not congruent to " +
                     ctx.class_residue().get_str() + " mod " +
                     ctx.class_modulus().get_str());
  }
  return evaluate_unchecked(alpha, ctx, n);
}

std::vector<Rational> as_polynomial(const PolyExponent& alpha,
                                    const EngineContext& ctx) {
  check_fits(alpha, ctx);
  const auto& k = alpha.coefficients();
  const auto& P = ctx.rs().polynomials;
  std::vector<Rational> out(k.size(), Rational(0));
  out[0] = k[0];
  const Rational m1(ctx.m1());
  for (std::size_t j = 1; j < k.size(); ++j) {
    if (k[j] == 0) continue;
    // d n k_j P_{j-1}(n / m1)
    Rational scale = 1;
    for (std::size_t i = 0; i < P[j - 1].size(); ++i) {
      out[i + 1] += Rational(k[j] * ctx.d()) * P[j - 1][i] * scale;
      scale /= m1;
    }
  }
  for (auto& q : out) q.canonicalize();
  return out;
}

mpz_class root_bound(const PolyExponent& alpha, const EngineContext& ctx) {
  const auto q = as_polynomial(alpha, ctx);
  std::size_t degree = q.size();
  while (degree > 0 && q[degree - 1] == 0) --degree;
  if (degree <= 1) return 0;
  const Rational& lead = q[degree - 1];
  Rational largest = 0;
  for (std::size_t i = 0; i + 1 < degree; ++i) {
    largest = std::max(largest, Rational(abs(q[i] / lead)));
  }
  // Cauchy: every root satisfies |x| < 1 + max |q_i / q_D|.
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), largest.get_num_mpz_t(),
             largest.get_den_mpz_t());
  return out + 1;
}

std::optional<PolyExponent> pinch_type1(const PolyExponent& alpha,
                                        const EngineContext& ctx) {
  check_fits(alpha, ctx);
  const mpz_class M = abs64(ctx.M());
  if (!divides(M, evaluate_unchecked(alpha, ctx, ctx.representative()))) {
    return std::nullopt;
  }
  const unsigned t = ctx.level();
  std::vector<mpz_class> k = alpha.coefficients();
  k.resize(t + 1, 0);
  const mpz_class d = ctx.d();
  if (!divides(d, k[0])) {
    throw InternalInvariantViolation("type-1 pinch with d not dividing k_0");
  }
  if (t == 0 || k[t] != 0) {
    throw InternalInvariantViolation("type-1 pinch exceeds the level bound");
  }
  const auto& r = ctx.rs().r;
  mpz_class numerator = exact_div(k[0], d);
  for (unsigned i = 1; i <= t; ++i) numerator += k[i] * r[i];
  const mpz_class m1 = ctx.m1();
  if (!divides(m1, numerator)) {
    throw InternalInvariantViolation("type-1 pinch with non-integral l_1");
  }
  std::vector<mpz_class> l(t + 1, 0);
  l[1] = exact_div(numerator, m1);
  for (unsigned i = 1; i < t; ++i) l[i + 1] = k[i];
  return PolyExponent(std::move(l));
}

std::optional<PolyExponent> pinch_type2(const PolyExponent& alpha,
                                        const EngineContext& ctx,
                                        mpz_class& validity_bound) {
  check_fits(alpha, ctx);
  const unsigned t = ctx.level();
  std::vector<mpz_class> k = alpha.coefficients();
  k.resize(t + 1, 0);
  validity_bound = std::max(validity_bound, mpz_class(abs(k[0])));
  if (k[0] != 0) return std::nullopt;
  const auto& r = ctx.rs().r;
  mpz_class l0 = t >= 1 ? mpz_class(k[1] * ctx.m1()) : mpz_class(0);
  for (unsigned i = 2; i <= t; ++i) l0 -= k[i] * r[i - 1];
  std::vector<mpz_class> l(t + 1, 0);
  l[0] = l0 * ctx.d();
  for (unsigned i = 1; i < t; ++i) l[i] = k[i + 1];
  return PolyExponent(std::move(l));
}

SymbolicWord symbolic_reduce(const Word& w, const EngineContext& ctx) {
  const Word reduced = free_reduce(w);
  const unsigned t = ctx.level();
  if (reduced.syllable_count() > 2 * static_cast<std::size_t>(t)) {
    throw InsufficientLevel(reduced.syllable_count(), t);
  }
  SymbolicWord out;
  out.head = PolyExponent(t, reduced.head());
  auto& stack = out.syllables;
  for (const auto& s : reduced.syllables()) {
    const PolyExponent e(t, s.exponent);
    if (!stack.empty() && stack.back().sign == -s.sign) {
      const PolyExponent& top = stack.back().exponent;
      std::optional<PolyExponent> beta =
          s.sign < 0 ? pinch_type1(top, ctx)
                     : pinch_type2(top, ctx, out.validity_bound);
      if (beta) {
        stack.pop_back();
        PolyExponent& target = stack.empty() ? out.head : stack.back().exponent;
        target += *beta;
        target += e;
        continue;
      }
    }
    stack.push_back({s.sign, e});
  }
  return out;
}

Word evaluate(const SymbolicWord& w, const EngineContext& ctx,
              const mpz_class& n) {
  Word out(evaluate(w.head, ctx, n));
  for (const auto& s : w.syllables) {
    out.push_a(s.sign);
    out.push_b(evaluate(s.exponent, ctx, n));
  }
  return out;
}

std::string to_string(const SymbolicWord& w) {
  std::string out = "b" + to_string(w.head);
  for (const auto& s : w.syllables) {
    out += s.sign > 0 ? " a b" : " A b";
    out += to_string(s.exponent);
  }
  return out;
}

LimitDecision decide_limit(const Word& w, const LimitParams& params) {
  const Word reduced = free_reduce(w);
  LimitDecision out;
  if (sigma_a(reduced) != 0) return out;
  out.level = static_cast<unsigned>((reduced.syllable_count() + 1) / 2);
  const EngineContext ctx = EngineContext::build(params.M, params.xi, out.level);
  SymbolicWord sw = symbolic_reduce(reduced, ctx);
  out.validity_bound = sw.validity_bound;
  if (sw.syllables.empty()) {
    out.trivial = sw.head.is_zero();
    // a non-zero head only vanishes at finitely many n
    out.validity_bound = std::max(out.validity_bound, root_bound(sw.head, ctx));
  }
  out.reduced = std::move(sw);
  return out;
}

bool is_trivial_limit(const Word& w, std::int64_t M, const MAdicResidue& xi) {
  return decide_limit(w, LimitParams(M, xi)).trivial;
}

std::optional<StabilizerResult> stabilizer(const Word& w,
                                           const LimitParams& params) {
  const Word reduced = free_reduce(w);
  if (sigma_a(reduced) != 0) return std::nullopt;
  const auto level = static_cast<unsigned>((reduced.syllable_count() + 1) / 2);
  EngineContext ctx = EngineContext::build(params.M, params.xi, level);
  SymbolicWord sw = symbolic_reduce(reduced, ctx);
  if (!sw.syllables.empty()) return std::nullopt;
  return StabilizerResult{std::move(sw.head), std::move(ctx)};
}

std::optional<PolyExponent> stabilizer_exponent(const Word& w, std::int64_t M,
                                                const MAdicResidue& xi) {
  auto result = stabilizer(w, LimitParams(M, xi));
  if (!result) return std::nullopt;
  return std::move(result->exponent);
}

}  // namespace bslimits
