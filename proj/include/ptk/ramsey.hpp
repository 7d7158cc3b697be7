#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ptk/families.hpp"
#include "ptk/plegma.hpp"

namespace ptk {

/// A finite partition of plegma tuples: deterministic color below `palette`.
struct Coloring {
  int arity = 1;
  int palette = 2;
  std::function<int(const std::vector<FinSet>&)> eval;

  /// Built-in colorings: const, parity-min, parity-max, parity-size,
  /// hash-mod:<p> (all computed on the union of the tuple).
  static Coloring by_name(const std::string& name, int arity);
};

struct SearchOutcome {
  bool found = false;
  std::optional<Window> witness;
  long checked = 0;  // partial assignments examined
  int color = -1;    // homogeneous color / piece, when found
};

/// Searches subsets L of the M-prefix of size `target` such that every
/// plegma `l`-tuple with members of F inside L gets one color. Depth-first
/// in lexicographic order, pruning on partial inhomogeneity; stops at
/// `budget` partial assignments. Exhaustion is a result, not an error.
SearchOutcome find_monochromatic(const Family& F, int l, const Coloring& c, const Window& M,
                                 int target, long budget);

/// Same search over members instead of tuples: all members of F|L in one
/// piece of the partition.
SearchOutcome find_homogeneous_partition(const Family& F,
                                         const std::function<int(const FinSet&)>& piece,
                                         const Window& M, int target, long budget);

/// Exact backtracking search for a plegma l-tuple inside A (all members of
/// the same size k). none means none exists, since A is finite.
std::optional<std::vector<FinSet>> find_plegma_in_dense(const std::vector<FinSet>& A, int l);

/// Greedy/backtracking construction of an increasing prefix L inside M such
/// that every member of F(L) within [1..N] lies in the closure of G.
SearchOutcome find_shift_embedding(const Family& F, const Family& G, const Window& M, int N,
                                   long budget);

/// Recomputes the coloring over all tuples in F restricted to the witness;
/// true when one color indeed covers everything.
bool revalidate_monochromatic(const Family& F, int l, const Coloring& c, const Window& L,
                              int color);
bool revalidate_partition(const Family& F, const std::function<int(const FinSet&)>& piece,
                          const Window& L, int piece_index);
bool revalidate_shift_embedding(const Family& F, const Family& G, const Window& L, int N);

}  // namespace ptk
