#pragma once

#include <nlohmann/json.hpp>

#include "ptk/spaces.hpp"

namespace ptk {

enum class NormMethod { Exact, BranchBound, Brute };

/// Certified evaluation of the space's norming-set norm. Exact for every
/// kind except QP, whose irrational exponents are evaluated in floating
/// point with a directed widening into the certified interval.
NormResult norm(const SpaceVec& x, NormMethod method = NormMethod::Exact, double tol = 1e-9);

/// Independent oracle: exhaustive enumeration of norming functionals
/// supported in supp(x). Requires support <= 8.
NormResult brute_force_norm(const SpaceVec& x);

/// Evaluates a witness description (as produced by norm) against x; the
/// result must reproduce the certified lower bound.
double evaluate_witness(const SpaceVec& x, const nlohmann::json& witness);

/// Standard Tsirelson norm on finitely supported vectors over N, exposed for
/// the QP base norm and tests: max of the sup norm and half the best
/// admissible successive-block split.
ExactVal tsirelson_norm(const std::map<int, Rational>& coeffs);

/// Exhaustive-functional Tsirelson oracle (no contiguity shortcut).
ExactVal tsirelson_norm_brute(const std::map<int, Rational>& coeffs);

/// Rank of s inside C_l = {t in [N]^k : min t = l} under the declared
/// (max, then lexicographic) enumeration; 1-based.
long long qp_basis_rank(const FinSet& s, int k);

/// True when E (a set of (k+1)-subsets) is allowable: contained in a product
/// F_1 x ... x F_{k+1} of successive equal-size blocks with |F_1| <= min F_1.
bool frak_x_allowable(const std::vector<FinSet>& E, int k);
/// Brute-force allowability via explicit filler search; test oracle.
bool frak_x_allowable_brute(const std::vector<FinSet>& E, int k);

struct PropertyPWitness {
  bool found = false;
  std::vector<FinSet> blocks;  // basis coordinates used, in enumeration order
  ExactVal sum_norm;
  long checked = 0;
};

/// Searches for k successive basis vectors with norm >= delta whose sum has
/// norm <= 1 (a failure witness for the block lower bound). Basis order is
/// the declared (max, lexicographic) enumeration.
PropertyPWitness property_p_witness(const SpaceDesc& space, const Rational& delta, int k,
                                    long budget);

/// Basis coordinates of the space in the declared enumeration order, capped
/// to the first `count` entries with elements below `universe`.
std::vector<FinSet> basis_enumeration(const SpaceDesc& space, int count, int universe);

}  // namespace ptk
