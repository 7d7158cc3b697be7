#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ptk/families.hpp"
#include "ptk/setcore.hpp"

namespace ptk {

/// Both clauses of the plegma definition: for i < j and k within both
/// lengths, s_i(k) < s_j(k); and for every ordered pair (i, j) and k with
/// k <= min(|s_i|, |s_j| - 1), s_i(k) < s_j(k+1). Members must be nonempty.
bool is_plegma(const std::vector<FinSet>& sets);

/// Every plegma l-tuple with all members in F and contained in [1..N], in
/// lexicographic order of the concatenated members.
std::vector<std::vector<FinSet>> enumerate_plm(const Family& F, int l, int N);

/// Visitor form of the enumeration; return false from the callback to stop.
void for_each_plm(const Family& F, int l, int N,
                  const std::function<bool(const std::vector<FinSet>&)>& fn);

/// Members of F|L within [1..N] whose consecutive elements are separated by
/// an element of L (the skipped restriction F||L).
std::vector<FinSet> skipped_restriction(const Family& F, const Window& L, int N);

bool in_skipped_restriction(const Family& F, const Window& L, const FinSet& s);

/// Minimal plegma path from s0 to s inside the skipped restriction, built by
/// the inductive back-shift along L. Length is exactly |s0|.
std::vector<FinSet> plegma_path(const Family& F, const Window& L, const FinSet& s0,
                                const FinSet& s);

/// Path of length 2|s0| in which every three consecutive sets are plegma,
/// built by interleaving the back-shifted copies of a plegma path taken in
/// the even-position subwindow of L.
std::vector<FinSet> three_plegma_path(const Family& F, const Window& L, const FinSet& s0,
                                      const FinSet& s);

/// Shortest plegma-path length in the digraph on members(F, N) whose edges
/// are the plegma pairs, or nullopt when unreachable.
std::optional<int> bfs_distance(const Family& F, int N, const FinSet& s0, const FinSet& s);

enum class MapVerdict { Canonical, Monotone, Preserving, None };

inline const char* map_verdict_name(MapVerdict v) {
  switch (v) {
    case MapVerdict::Canonical: return "canonical";
    case MapVerdict::Monotone: return "monotone";
    case MapVerdict::Preserving: return "preserving";
    case MapVerdict::None: return "none";
  }
  return "?";
}

struct MapReport {
  MapVerdict verdict = MapVerdict::Canonical;
  // Witness against the next stronger property; for verdict none this is a
  // plegma pair whose images fail in both orders.
  std::optional<std::pair<FinSet, FinSet>> witness_pair;
  std::optional<FinSet> witness_set;  // member with |phi(s)| > |s|, when relevant
};

MapReport check_plegma_map(const Family& F, int N,
                           const std::function<FinSet(const FinSet&)>& phi);

/// Inverse of the union map on plegma tuples over a thin family: round-robin
/// assignment of the sorted union, closing a component as soon as its prefix
/// lands in F.
std::vector<FinSet> tuple_from_union(const Family& F, const FinSet& u, int l);

}  // namespace ptk
