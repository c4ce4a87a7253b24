#include "bslimits/limit_tree.hpp"

#include "bslimits/errors.hpp"

namespace bslimits {

std::vector<VertexHandle> LimitTree::path_of(const Word& w) const {
  std::vector<VertexHandle> out{base()};
  Word prefix(w.head());
  for (const auto& s : w.syllables()) {
    prefix.push_a(s.sign);
    out.push_back({free_reduce(prefix)});
    prefix.push_b(s.exponent);
  }
  return out;
}

bool LimitTree::vertices_equal(const VertexHandle& u,
                               const VertexHandle& v) const {
  return stabilizer(invert(u.rep) * v.rep, params_).has_value();
}

bool LimitTree::edges_equal(const EdgeHandle& u, const EdgeHandle& v) const {
  const auto stab = stabilizer(invert(u.rep) * v.rep, params_);
  if (!stab) return false;
  const EngineContext& ctx = stab->context;
  const mpz_class value =
      evaluate(stab->exponent, ctx, ctx.representative());
  const mpz_class M = ctx.M() < 0 ? -ctx.M() : ctx.M();
  return mpz_divisible_p(value.get_mpz_t(), M.get_mpz_t()) != 0;
}

VertexHandle LimitTree::terminal(const EdgeHandle& e) {
  Word w = e.rep;
  w.push_a(-1);
  return {free_reduce(w)};
}

std::vector<EdgeHandle> LimitTree::neighbors_out(const VertexHandle& v) const {
  const std::int64_t M = params_.M < 0 ? -params_.M : params_.M;
  std::vector<EdgeHandle> out;
  for (std::int64_t lambda = 0; lambda < M; ++lambda) {
    Word w = v.rep;
    w.push_b(lambda);
    out.push_back({free_reduce(w)});
  }
  return out;
}

std::vector<EdgeHandle> LimitTree::neighbors_in(const VertexHandle& v,
                                                std::uint64_t bound) const {
  std::vector<EdgeHandle> out;
  const mpz_class B = bound;
  for (mpz_class mu = -B; mu <= B; ++mu) {
    Word w = v.rep;
    w.push_b(mu);
    w.push_a(1);
    out.push_back({free_reduce(w)});
  }
  return out;
}

namespace {

bool has_relator_shape(const Word& w) {
  const auto& syl = w.syllables();
  if (w.head() != 0 || syl.empty() || syl.size() % 2 != 0) return false;
  const std::size_t k = syl.size() / 2;
  for (std::size_t i = 0; i < syl.size(); ++i) {
    if (syl[i].sign != (i < k ? 1 : -1)) return false;
  }
  return true;
}

}  // namespace

bool LimitTree::is_relator(const Word& w) const {
  return has_relator_shape(w) && stabilizer(w, params_).has_value();
}

std::vector<Word> LimitTree::enumerate_relators(unsigned k_max,
                                                unsigned exp_max) const {
  if (k_max < 1) throw PreconditionViolated("k_max must be at least 1");
  const long E = static_cast<long>(exp_max);
  std::vector<Word> out;
  for (unsigned k = 1; k <= k_max; ++k) {
    std::vector<long> e(2 * k, -E);
    while (true) {
      Word w;
      for (std::size_t i = 0; i < e.size(); ++i) {
        w.push_a(i < k ? 1 : -1);
        w.push_b(e[i]);
      }
      if (w.is_freely_reduced() && is_relator(w)) out.push_back(w);
      std::size_t i = e.size();
      while (i > 0 && e[i - 1] == E) e[--i] = -E;
      if (i == 0) break;
      ++e[i - 1];
    }
  }
  return out;
}

Word make_relator(const Word& w) { return w * bar(w); }

}  // namespace bslimits
