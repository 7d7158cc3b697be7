#include "ptk/plegma.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace ptk {

bool is_plegma(const std::vector<FinSet>& sets) {
  if (sets.empty()) fail(Err::EmptyMember, "plegma tuple must be nonempty");
  for (const auto& s : sets)
    if (s.empty()) fail(Err::EmptyMember, "plegma members must be nonempty");
  int l = static_cast<int>(sets.size());
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      const FinSet& si = sets[static_cast<std::size_t>(i)];
      const FinSet& sj = sets[static_cast<std::size_t>(j)];
      if (i < j) {
        int m = std::min(si.size(), sj.size());
        for (int k = 1; k <= m; ++k)
          if (si.at(k) >= sj.at(k)) return false;
      }
      int m2 = std::min(si.size(), sj.size() - 1);
      for (int k = 1; k <= m2; ++k)
        if (si.at(k) >= sj.at(k + 1)) return false;
    }
  }
  return true;
}

void for_each_plm(const Family& F, int l, int N,
                  const std::function<bool(const std::vector<FinSet>&)>& fn) {
  if (l < 1) fail(Err::BadInput, "plegma arity must be >= 1");
  auto mem = F.members(N);
  mem.erase(std::remove_if(mem.begin(), mem.end(), [](const FinSet& s) { return s.empty(); }),
            mem.end());
  std::vector<FinSet> tuple;
  bool stop = false;
  std::function<void()> rec = [&]() {
    if (stop) return;
    if (static_cast<int>(tuple.size()) == l) {
      if (!fn(tuple)) stop = true;
      return;
    }
    for (const auto& cand : mem) {
      if (!tuple.empty() && cand.min() <= tuple.back().min()) continue;
      tuple.push_back(cand);
      if (is_plegma(tuple))
        rec();
      tuple.pop_back();
      if (stop) return;
    }
  };
  rec();
}

std::vector<std::vector<FinSet>> enumerate_plm(const Family& F, int l, int N) {
  std::vector<std::vector<FinSet>> out;
  for_each_plm(F, l, N, [&](const std::vector<FinSet>& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

bool in_skipped_restriction(const Family& F, const Window& L, const FinSet& s) {
  if (!s.empty() && s.max() > L.last())
    fail(Err::HorizonRequired, "skipped restriction needs the window past " + std::to_string(s.max()));
  for (int v : s.elems())
    if (!L.contains_value(v)) return false;
  if (!F.contains(s)) return false;
  for (int j = 1; j < s.size(); ++j) {
    bool gap = false;
    for (int v : L.elems())
      if (v > s.at(j) && v < s.at(j + 1)) { gap = true; break; }
    if (!gap) return false;
  }
  return true;
}

std::vector<FinSet> skipped_restriction(const Family& F, const Window& L, int N) {
  std::vector<FinSet> out;
  for (const auto& s : Family::restrict(F.shared_from_this(), L)->members(N))
    if (in_skipped_restriction(F, L, s)) out.push_back(s);
  return out;
}

namespace {

/// Walks down the closure: extends `base` by the candidate elements in order
/// until the accumulated set is a member of F.
std::optional<FinSet> extend_into(const Family& F, const FinSet& base,
                                  const std::vector<int>& candidates) {
  FinSet cur = base;
  if (F.contains(cur)) return cur;
  for (int c : candidates) {
    if (!cur.empty() && c <= cur.max()) continue;  // shifted element already present
    cur = cur.append(c);
    if (F.contains(cur)) return cur;
  }
  return std::nullopt;
}

std::vector<FinSet> plegma_path_positions(const Family& F, const Window& L,
                                          const FinSet& t_pos, const FinSet& s) {
  if (t_pos.size() == 1) return {L.apply(t_pos), s};
  // back-shift: drop the first position and move the rest one step down L
  std::vector<int> shifted;
  for (int j = 2; j <= t_pos.size(); ++j) shifted.push_back(t_pos.at(j) - 1);
  FinSet t0_pos{std::move(shifted)};
  auto rest = plegma_path_positions(F, L, t0_pos, s);
  const FinSet& s1 = rest[1];
  auto m_pos = L.positions_of(s1);
  if (!m_pos) fail(Err::HorizonRequired, "path element leaves the window");
  // the unique member of F extending t0 inside t0 u {L(m_j - 1) : j > |t0|}
  std::vector<int> cands;
  for (int j = t0_pos.size() + 1; j <= m_pos->size(); ++j)
    cands.push_back(L.at(m_pos->at(j) - 1));
  auto s0 = extend_into(F, L.apply(t0_pos), cands);
  if (!s0)
    fail(Err::HorizonRequired, "could not close the back-shifted set inside the family");
  std::vector<FinSet> out;
  out.push_back(L.apply(t_pos));
  out.push_back(*s0);
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

}  // namespace

std::vector<FinSet> plegma_path(const Family& F, const Window& L, const FinSet& s0,
                                const FinSet& s) {
  if (!in_skipped_restriction(F, L, s0) || !in_skipped_restriction(F, L, s))
    fail(Err::NotInSkippedRestriction, "endpoints must lie in the skipped restriction");
  if (!s0.entirely_below(s) || s0.empty())
    fail(Err::BadInput, "need s0 < s with s0 nonempty");
  auto pos = L.positions_of(s0);
  if (!pos) fail(Err::NotInSkippedRestriction, "s0 is not inside the window");
  auto path = plegma_path_positions(F, L, *pos, s);
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!is_plegma({path[i], path[i + 1]}))
      fail(Err::HorizonRequired, "constructed path failed the plegma check");
  return path;
}

std::vector<FinSet> three_plegma_path(const Family& F, const Window& L, const FinSet& s0,
                                      const FinSet& s) {
  Window L2 = L.even_positions();
  auto base_path = plegma_path(F, L2, s0, s);
  // interleave each later element with its back-shifted copy along L
  std::vector<FinSet> out;
  out.push_back(base_path[0]);
  for (std::size_t j = 1; j < base_path.size(); ++j) {
    auto pos = L.positions_of(base_path[j]);
    if (!pos) fail(Err::HorizonRequired, "path element leaves the window");
    std::vector<int> cands;
    for (int i = 1; i <= pos->size(); ++i) cands.push_back(L.at(pos->at(i) - 1));
    auto tilde = extend_into(F, FinSet(), cands);
    if (!tilde) fail(Err::HorizonRequired, "no back-shifted member under the path element");
    out.push_back(*tilde);
    out.push_back(base_path[j]);
  }
  for (std::size_t i = 0; i + 2 < out.size(); ++i)
    if (!is_plegma({out[i], out[i + 1], out[i + 2]}))
      fail(Err::HorizonRequired, "constructed 3-plegma path failed the check");
  return out;
}

std::optional<int> bfs_distance(const Family& F, int N, const FinSet& s0, const FinSet& s) {
  auto mem = F.members(N);
  auto find = [&](const FinSet& x) {
    return std::find(mem.begin(), mem.end(), x) != mem.end();
  };
  if (!find(s0) || !find(s)) fail(Err::NotMember, "endpoints must be members within [1..N]");
  if (s0 == s) return 0;
  std::map<FinSet, int> dist;
  std::deque<FinSet> queue{s0};
  dist[s0] = 0;
  while (!queue.empty()) {
    FinSet u = queue.front();
    queue.pop_front();
    for (const auto& v : mem) {
      if (dist.count(v) || v == u) continue;
      if (u.empty() || v.empty()) continue;
      if (!is_plegma({u, v})) continue;
      dist[v] = dist[u] + 1;
      if (v == s) return dist[v];
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

MapReport check_plegma_map(const Family& F, int N,
                           const std::function<FinSet(const FinSet&)>& phi) {
  auto mem = F.members(N);
  MapReport rep;
  bool preserving = true, monotone = true, canonical = true;
  std::optional<std::pair<FinSet, FinSet>> first_nonpreserving, first_nonmonotone,
      first_noncanonical_pair;
  std::optional<FinSet> first_noncanonical_set;
  for (const auto& s1 : mem) {
    for (const auto& s2 : mem) {
      if (s1 == s2 || s1.empty() || s2.empty()) continue;
      if (!is_plegma({s1, s2})) continue;
      FinSet p1 = phi(s1), p2 = phi(s2);
      bool fwd = !p1.empty() && !p2.empty() && is_plegma({p1, p2});
      bool bwd = !p1.empty() && !p2.empty() && is_plegma({p2, p1});
      if (!fwd && !bwd && !first_nonpreserving) first_nonpreserving = {s1, s2};
      if (!fwd && !first_nonmonotone) first_nonmonotone = {s1, s2};
      if (p1.size() > p2.size() && !first_noncanonical_pair) first_noncanonical_pair = {s1, s2};
      preserving = preserving && (fwd || bwd);
      monotone = monotone && fwd;
    }
    if (phi(s1).size() > s1.size() && !first_noncanonical_set) first_noncanonical_set = s1;
  }
  canonical = monotone && !first_noncanonical_pair && !first_noncanonical_set;
  if (canonical) {
    rep.verdict = MapVerdict::Canonical;
  } else if (monotone) {
    rep.verdict = MapVerdict::Monotone;
    rep.witness_pair = first_noncanonical_pair;
    rep.witness_set = first_noncanonical_set;
  } else if (preserving) {
    rep.verdict = MapVerdict::Preserving;
    rep.witness_pair = first_nonmonotone;
  } else {
    rep.verdict = MapVerdict::None;
    rep.witness_pair = first_nonpreserving;
  }
  return rep;
}

std::vector<FinSet> tuple_from_union(const Family& F, const FinSet& u, int l) {
  if (l < 1) fail(Err::BadInput, "arity must be >= 1");
  std::vector<std::vector<int>> comps(static_cast<std::size_t>(l));
  std::vector<bool> done(static_cast<std::size_t>(l), false);
  int next = 0;  // next surviving component in the round-robin order
  for (int v : u.elems()) {
    int tries = 0;
    while (done[static_cast<std::size_t>(next)] && tries <= l) {
      next = (next + 1) % l;
      ++tries;
    }
    if (tries > l) fail(Err::NotAPlegmaUnion, "all components closed before the union ran out");
    auto& c = comps[static_cast<std::size_t>(next)];
    c.push_back(v);
    if (F.contains(FinSet(std::vector<int>(c)))) done[static_cast<std::size_t>(next)] = true;
    next = (next + 1) % l;
  }
  std::vector<FinSet> tuple;
  for (auto& c : comps) tuple.push_back(FinSet(std::move(c)));
  for (std::size_t i = 0; i < tuple.size(); ++i)
    if (!done[i]) fail(Err::NotAPlegmaUnion, "component did not reach a member of the family");
  if (!is_plegma(tuple)) fail(Err::NotAPlegmaUnion, "reconstruction is not plegma");
  FinSet check;
  for (const auto& t : tuple) check = check.unite(t);
  if (check != u) fail(Err::NotAPlegmaUnion, "reconstruction does not cover the union");
  return tuple;
}

}  // namespace ptk
