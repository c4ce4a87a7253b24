#pragma once

// Local exploration of the limit tree X of BS(M, xi). A vertex is denoted by
// a word u (the vertex u.v0) and an edge by a word u (origin u.v0, terminal
// u a^-1 .v0). Equality is decided through stabilizers of v0:
//
//   u.v0 = u'.v0    iff  u^-1 u' reduces to a power b^alpha,
//   edge u = edge u' iff moreover alpha = 0 mod M on the class.

#include <cstdint>
#include <vector>

#include "bslimits/limit_engine.hpp"
#include "bslimits/word.hpp"

namespace bslimits {

struct VertexHandle {
  Word rep;
};

struct EdgeHandle {
  Word rep;
};

class LimitTree {
 public:
  explicit LimitTree(LimitParams params) : params_(std::move(params)) {}

  const LimitParams& params() const noexcept { return params_; }

  VertexHandle base() const { return {}; }

  /// Vertices visited by w from v0; b-letters do not move. Each vertex is
  /// represented by the prefix ending at its a-letter.
  std::vector<VertexHandle> path_of(const Word& w) const;

  bool vertices_equal(const VertexHandle& u, const VertexHandle& v) const;
  bool edges_equal(const EdgeHandle& u, const EdgeHandle& v) const;

  static std::int64_t height(const VertexHandle& v) { return sigma_a(v.rep); }

  static VertexHandle origin(const EdgeHandle& e) { return {e.rep}; }
  static VertexHandle terminal(const EdgeHandle& e);

  /// The |M| edges u b^lambda, 0 <= lambda < |M|.
  std::vector<EdgeHandle> neighbors_out(const VertexHandle& v) const;
  /// The edges u b^mu a, |mu| <= bound, all ending at v.
  std::vector<EdgeHandle> neighbors_in(const VertexHandle& v,
                                       std::uint64_t bound) const;

  /// w = a b^{e_1} ... a b^{e_k} A b^{e_{k+1}} ... A b^{e_{2k}}, k >= 1,
  /// as written (no free reduction), and w stabilizes v0.
  bool is_relator(const Word& w) const;

  /// Every freely reduced relator word of the shape with k <= k_max and
  /// |e_i| <= exp_max, in grid order. The relations are make_relator(w).
  std::vector<Word> enumerate_relators(unsigned k_max, unsigned exp_max) const;

 private:
  LimitParams params_;
};

/// w bar(w), freely reduced.
Word make_relator(const Word& w);

}  // namespace bslimits
