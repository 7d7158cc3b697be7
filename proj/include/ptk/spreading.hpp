#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ptk/norms.hpp"
#include "ptk/spaces.hpp"

namespace ptk {

/// An F-sequence: one vector of a fixed space per member of the index
/// family.
struct SeqDesc {
  enum class Kind { Basis, CumulativeChain, ExplicitTable };
  Kind kind = Kind::Basis;
  SpaceDesc space;
  FamilyPtr family;                  // index family
  std::map<FinSet, SpaceVec> table;  // ExplicitTable

  static SeqDesc basis(SpaceDesc space, FamilyPtr family);
  /// x_s = sum of e_t over the nonempty initial segments t of s, inside the
  /// Schreier-closure incomparability space; indexed by the Schreier family.
  static SeqDesc cumulative_chain();
  static SeqDesc explicit_table(SpaceDesc space, FamilyPtr family,
                                std::map<FinSet, SpaceVec> table);

  SpaceVec at(const FinSet& s) const;
};

struct SMStep {
  int n = 0;
  std::vector<FinSet> tuple;
  NormResult value;
};

struct SMProfile {
  std::vector<Rational> coeffs;
  std::vector<SMStep> steps;
  std::vector<double> delta_trace;  // successive value differences
  std::uint64_t seed = 0;
};

/// Finite shadow of the spreading-model limit: for each n the value of
/// |sum a_j x_{s_j}| on the lexicographically least plegma tuple in F|M with
/// s_1(1) >= M(n).
SMProfile sm_profile(const SeqDesc& seq, const std::vector<Rational>& coeffs, const Window& M,
                     int steps);

struct LpConstants {
  double c_lower = 0, C_upper = 0;
  std::vector<FinSet> worst_tuple;
  std::vector<Rational> worst_coeffs;
  long tuples_sampled = 0;
  std::uint64_t seed = 0;
};

/// Sampled two-sided l^p ratio bounds over plegma n-tuples with
/// s_1(1) >= M(n) and the sign/unit/uniform coefficient grid.
LpConstants lp_constants(const SeqDesc& seq, const Rational& p, int n, const Window& M,
                         long budget, std::uint64_t seed);

struct CesaroResult {
  SpaceVec y;
  NormResult value;
  Rational bound;  // n^(k+1) / C((k+2)n, k+1)
};

/// Binomially averaged basis vector of the allowable-set space over the
/// first (k+2)n window values, with the product-block lower bound merged
/// into the certificate.
CesaroResult cesaro_norm(int k, const Window& M, int n);

std::pair<SpaceVec, NormResult> k_cesaro_sum(const SeqDesc& seq, const Window& M, int n);

std::pair<SpaceVec, NormResult> f_cesaro_sum(const Family& F, const SeqDesc& seq, const Window& M,
                                             int n);

/// Almost-isometric boosting: builds y_s = (sum_i b_i x_{t_i^s})/(c + 2e')
/// over interleaved block windows, returning the new sequence on the thinned
/// window L = {max I_n}.
SeqDesc boost_l1(const SeqDesc& seq, const Family& F, const Window& M, const Rational& c,
                 const Rational& eps, long budget);

/// Lexicographically least plegma l-tuple with members in F|M and
/// s_1(1) >= min_first; empty when none exists within the horizon.
std::vector<FinSet> least_plegma_tuple(const Family& F, const Window& M, int l, int min_first);

long long binomial(int n, int k);

}  // namespace ptk
