#include "ptk/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

#include "ptk/plegma.hpp"

namespace ptk {

namespace {

Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

struct Item {
  FinSet set;
  Rational coeff;  // absolute value
  int sign;        // sign of the original coefficient
};

/// Support sorted by (first element, then lex); norming tuples list members
/// in increasing first-element order.
std::vector<Item> sorted_support(const SpaceVec& x) {
  std::vector<Item> items;
  for (const auto& [s, c] : x.entries)
    items.push_back({s, rabs(c), c < 0 ? -1 : 1});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.set.empty() != b.set.empty()) return a.set.empty();
    if (!a.set.empty() && a.set.min() != b.set.min()) return a.set.min() < b.set.min();
    return a.set.elems() < b.set.elems();
  });
  return items;
}

nlohmann::json sets_json(const std::vector<FinSet>& sets) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& s : sets) a.push_back(s.elems());
  return a;
}

std::vector<FinSet> pick(const std::vector<Item>& items, const std::vector<int>& idx) {
  std::vector<FinSet> out;
  for (int i : idx) out.push_back(items[static_cast<std::size_t>(i)].set);
  return out;
}

// ---------------------------------------------------------------------------
// Ch. 2 example norm: sup of the l1 mass over plegma tuples with l <= s_1(1).

struct XiL1Result {
  Rational best = 0;
  std::vector<int> tuple;
};

XiL1Result xi_l1_max(const std::vector<Item>& items) {
  int n = static_cast<int>(items.size());
  std::vector<Rational> suffix(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int i = n - 1; i >= 0; --i)
    suffix[static_cast<std::size_t>(i)] =
        suffix[static_cast<std::size_t>(i + 1)] + items[static_cast<std::size_t>(i)].coeff;
  XiL1Result res;
  std::vector<int> cur;
  std::vector<FinSet> cur_sets;
  std::function<void(int, const Rational&, int)> rec = [&](int from, const Rational& sum, int cap) {
    if (!cur.empty() && sum > res.best) {
      res.best = sum;
      res.tuple = cur;
    }
    if (!cur.empty() && static_cast<int>(cur.size()) >= cap) return;
    for (int i = from; i < n; ++i) {
      if (sum + suffix[static_cast<std::size_t>(i)] <= res.best) break;
      const auto& it = items[static_cast<std::size_t>(i)];
      if (it.set.empty()) continue;
      if (!cur_sets.empty() && it.set.min() <= cur_sets.back().min()) continue;
      cur_sets.push_back(it.set);
      if (is_plegma(cur_sets)) {
        cur.push_back(i);
        rec(i + 1, sum + it.coeff, cur.size() == 1 ? it.set.min() : cap);
        cur.pop_back();
      }
      cur_sets.pop_back();
    }
  };
  rec(0, Rational(0), 0);
  return res;
}

// ---------------------------------------------------------------------------
// Exact weighted set packing maximizing the sum of squared block l1 masses.
// Blocks come from a prefix-closed validity predicate; a chosen block knocks
// out its conflict mask.

struct Block {
  std::uint32_t mask;
  std::uint32_t conflict;  // superset of mask
  Rational weight;
  std::vector<int> idx;
};

struct PackingOutcome {
  Rational best_sq = 0;
  std::vector<std::vector<int>> groups;
};

constexpr int kPackingExactLimit = 20;

PackingOutcome packing_max(
    const std::vector<Item>& items,
    const std::function<bool(const std::vector<int>&)>& valid_prefix,
    const std::function<std::uint32_t(const Block&)>& conflict_of) {
  int n = static_cast<int>(items.size());
  std::vector<Block> blocks;
  std::vector<int> cur;
  std::function<void(int)> gen = [&](int from) {
    if (!cur.empty()) {
      Block b;
      b.mask = 0;
      b.weight = 0;
      for (int i : cur) {
        b.mask |= 1u << i;
        b.weight += items[static_cast<std::size_t>(i)].coeff;
      }
      b.idx = cur;
      b.conflict = conflict_of(b) | b.mask;
      blocks.push_back(std::move(b));
    }
    for (int i = from; i < n; ++i) {
      cur.push_back(i);
      if (valid_prefix(cur)) gen(i + 1);
      cur.pop_back();
    }
  };
  gen(0);

  std::unordered_map<std::uint32_t, std::pair<Rational, int>> memo;  // value, chosen block (-1 skip)
  std::function<Rational(std::uint32_t)> solve = [&](std::uint32_t mask) -> Rational {
    if (mask == 0) return Rational(0);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second.first;
    int low = __builtin_ctz(mask);
    Rational best = solve(mask & (mask - 1));  // skip the lowest item
    int choice = -1;
    for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
      const Block& b = blocks[static_cast<std::size_t>(bi)];
      if (!(b.mask & (1u << low))) continue;
      if ((b.mask & mask) != b.mask) continue;
      Rational v = b.weight * b.weight + solve(mask & ~b.conflict);
      if (v > best) {
        best = v;
        choice = bi;
      }
    }
    memo[mask] = {best, choice};
    return best;
  };
  std::uint32_t full = n == 32 ? 0xffffffffu : ((1u << n) - 1);
  PackingOutcome out;
  out.best_sq = solve(full);
  std::uint32_t mask = full;
  while (mask) {
    auto [val, choice] = memo[mask];
    (void)val;
    if (choice < 0) {
      mask &= mask - 1;
    } else {
      out.groups.push_back(blocks[static_cast<std::size_t>(choice)].idx);
      mask &= ~blocks[static_cast<std::size_t>(choice)].conflict;
    }
  }
  return out;
}

// prefix validators ---------------------------------------------------------

bool plegma_prefix(const std::vector<Item>& items, const std::vector<int>& idx) {
  std::vector<FinSet> sets = pick(items, idx);
  for (const auto& s : sets)
    if (s.empty()) return false;
  return is_plegma(sets);
}

bool hash_tuple_prefix(const std::vector<Item>& items, const std::vector<int>& idx) {
  std::vector<FinSet> sets = pick(items, idx);
  if (sets.size() == 1 && sets[0].empty()) return true;  // the (empty-set) tuple
  for (const auto& s : sets)
    if (s.empty()) return false;
  int sz = sets[0].size();
  for (const auto& s : sets)
    if (s.size() != sz) return false;
  if (static_cast<int>(sets.size()) - 1 > sz) return false;  // k-1 <= |t_1|
  return is_plegma(sets);
}

bool comparable(const FinSet& a, const FinSet& b) {
  return a.is_initial_segment_of(b) || b.is_initial_segment_of(a);
}

}  // namespace

bool frak_x_allowable(const std::vector<FinSet>& E, int k) {
  if (E.empty()) return true;
  int blocks = k + 1;
  std::vector<std::vector<int>> P(static_cast<std::size_t>(blocks));
  for (const auto& s : E) {
    if (s.size() != blocks) return false;
    for (int i = 1; i <= blocks; ++i) P[static_cast<std::size_t>(i - 1)].push_back(s.at(i));
  }
  int m = 0;
  for (auto& p : P) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    m = std::max(m, static_cast<int>(p.size()));
  }
  if (P[0].front() < m) return false;  // m <= min F_1 <= min P_1
  // leftmost feasible boundaries: block 1 needs m values >= m up to g, the
  // others need m values inside their window
  long long g = std::max<long long>(P[0].back(), 2LL * m - 1);
  for (int i = 1; i < blocks; ++i) {
    const auto& p = P[static_cast<std::size_t>(i)];
    if (g >= p.front()) return false;
    g = std::max<long long>(p.back(), g + m);
  }
  return true;
}

bool frak_x_allowable_brute(const std::vector<FinSet>& E, int k) {
  // Construct candidate blocks F_i with minimal fillers and verify the
  // definition on the constructed sets directly.
  if (E.empty()) return true;
  int blocks = k + 1;
  std::vector<std::vector<int>> P(static_cast<std::size_t>(blocks));
  for (const auto& s : E) {
    if (s.size() != blocks) return false;
    for (int i = 1; i <= blocks; ++i) P[static_cast<std::size_t>(i - 1)].push_back(s.at(i));
  }
  int m = 0;
  for (auto& p : P) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    m = std::max(m, static_cast<int>(p.size()));
  }
  std::vector<std::vector<int>> F(static_cast<std::size_t>(blocks));
  int prev_max = 0;
  for (int i = 0; i < blocks; ++i) {
    const auto& p = P[static_cast<std::size_t>(i)];
    if (p.front() <= prev_max) return false;
    std::vector<int>& f = F[static_cast<std::size_t>(i)];
    f = p;
    int candidate = i == 0 ? m : prev_max + 1;  // block 1 fillers must stay >= m
    while (static_cast<int>(f.size()) < m) {
      if (candidate > prev_max &&
          !std::binary_search(p.begin(), p.end(), candidate)) {
        f.push_back(candidate);
      } else if (candidate > prev_max) {
        // value taken by P itself; already in f
      }
      ++candidate;
      if (candidate > 1000000) return false;
    }
    std::sort(f.begin(), f.end());
    prev_max = f.back();
  }
  // verify the definition on the constructed sets
  for (int i = 0; i < blocks; ++i) {
    if (static_cast<int>(F[static_cast<std::size_t>(i)].size()) != m) return false;
    if (i > 0 && F[static_cast<std::size_t>(i - 1)].back() >= F[static_cast<std::size_t>(i)].front())
      return false;
  }
  if (m > F[0].front()) return false;
  for (const auto& s : E)
    for (int i = 1; i <= blocks; ++i)
      if (!std::binary_search(F[static_cast<std::size_t>(i - 1)].begin(),
                              F[static_cast<std::size_t>(i - 1)].end(), s.at(i)))
        return false;
  return true;
}

namespace {

// fillers for block 1 may need to go below min P_1; the construction above
// keeps them >= m, which is complete because lower fillers only lower min F_1

// ---------------------------------------------------------------------------
// Tsirelson norm: range DP with admissible successive splits. Groups may be
// taken contiguous: the norm is monotone in the point set, so gaps can be
// absorbed into a neighbouring block.

struct TsiCtx {
  std::vector<int> pts;
  std::vector<Rational> w;

  struct Entry {
    Rational val = 0;
    bool leaf = true;
    int coord = -1;
    std::vector<std::pair<int, int>> split;  // ranges of the half-sum children
  };
  std::map<std::pair<int, int>, Entry> memo;
  std::map<std::tuple<int, int, int>, std::pair<Rational, std::vector<std::pair<int, int>>>>
      split_memo;

  const Entry& T(int i, int j) {
    auto key = std::make_pair(i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Entry e;
    for (int t = i; t <= j; ++t)
      if (w[static_cast<std::size_t>(t)] > e.val) {
        e.val = w[static_cast<std::size_t>(t)];
        e.coord = t;
      }
    // a family starts at some r >= i (dropping the prefix raises the
    // admissible block count d <= pts[r]); the single block covering the
    // whole range is skipped, halving cannot improve on T itself
    for (int r = i; r <= j; ++r) {
      long long d_cap = std::min<long long>(pts[static_cast<std::size_t>(r)], j - r + 1);
      for (int e_cnt = (r == i ? 2 : 1); e_cnt <= d_cap; ++e_cnt) {
        auto [val, split] = exact_split(r, j, e_cnt);
        Rational half = val / 2;
        if (half > e.val) {
          e.val = half;
          e.leaf = false;
          e.split = split;
          e.coord = -1;
        }
      }
    }
    return memo.emplace(key, std::move(e)).first->second;
  }

  // best split of [a..j] into exactly e contiguous nonempty groups
  std::pair<Rational, std::vector<std::pair<int, int>>> exact_split(int a, int j, int e) {
    auto key = std::make_tuple(a, j, e);
    auto it = split_memo.find(key);
    if (it != split_memo.end()) return it->second;
    std::pair<Rational, std::vector<std::pair<int, int>>> res{Rational(-1), {}};
    if (e == 1) {
      res = {T(a, j).val, {{a, j}}};
    } else {
      for (int mid = a; mid <= j - e + 1; ++mid) {
        auto [rv, rsplit] = exact_split(mid + 1, j, e - 1);
        if (rv < 0) continue;
        Rational v = T(a, mid).val + rv;
        if (v > res.first) {
          res.first = v;
          res.second = {{a, mid}};
          res.second.insert(res.second.end(), rsplit.begin(), rsplit.end());
        }
      }
    }
    split_memo[key] = res;
    return res;
  }

  nlohmann::json tree(int i, int j) {
    const Entry& e = T(i, j);
    if (e.leaf) {
      if (e.coord < 0) return {{"f", "zero"}};
      return {{"f", "coord"}, {"n", pts[static_cast<std::size_t>(e.coord)]}};
    }
    nlohmann::json children = nlohmann::json::array();
    for (auto [a, b] : e.split) children.push_back(tree(a, b));
    return {{"f", "half"}, {"children", children}};
  }
};

}  // namespace

ExactVal tsirelson_norm(const std::map<int, Rational>& coeffs) {
  TsiCtx ctx;
  for (const auto& [n, c] : coeffs) {
    if (c == 0) continue;
    ctx.pts.push_back(n);
    ctx.w.push_back(rabs(c));
  }
  if (ctx.pts.empty()) return ExactVal::zero();
  return ExactVal::of_rational(ctx.T(0, static_cast<int>(ctx.pts.size()) - 1).val);
}

namespace {

/// Integer-scaled exhaustive Tsirelson oracle. Functional values are dyadic,
/// so scaling the weights by lcm(denominators) * 2^n makes every family value
/// an integer. Groups are arbitrary successive subsets here (no contiguity
/// shortcut); the single group covering the whole mask is skipped since
/// halving cannot improve.
struct TsiBrute {
  std::vector<int> pts;
  std::vector<long long> w;  // weights * den * 2^n: divisible by 2^n
  int n = 0;
  std::vector<long long> val;                 // per mask; -1 = unset; value * den * 2^n
  std::vector<std::vector<long long>> restm;  // [left][avail]

  std::uint32_t above_mask(std::uint32_t g, std::uint32_t avail) const {
    int hi = 31 - __builtin_clz(g);
    return avail & ~((1u << (hi + 1)) - 1);
  }

  long long rest(std::uint32_t avail, int left) {
    if (left <= 0 || avail == 0) return 0;
    int lcap = std::min(left, n);
    long long& slot = restm[static_cast<std::size_t>(lcap)][avail];
    if (slot >= 0) return slot;
    std::uint32_t low = avail & (~avail + 1);
    long long best = rest(avail & ~low, lcap);  // skip the lowest item
    // groups containing the lowest item
    std::function<void(std::uint32_t, std::uint32_t)> grow = [&](std::uint32_t g,
                                                                 std::uint32_t p) {
      best = std::max(best, V(g) + rest(above_mask(g, avail), lcap - 1));
      while (p) {
        std::uint32_t b = p & (~p + 1);
        p &= p - 1;
        grow(g | b, p);
      }
    };
    grow(low, avail & ~low);
    slot = best;
    return best;
  }

  long long V(std::uint32_t mask) {
    if (mask == 0) return 0;
    long long& slot = val[mask];
    if (slot >= 0) return slot;
    long long best = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) best = std::max(best, w[static_cast<std::size_t>(i)]);
    std::uint32_t m2 = mask;
    while (m2) {
      std::uint32_t start = m2 & (~m2 + 1);
      int si = __builtin_ctz(start);
      m2 &= m2 - 1;
      std::uint32_t avail = mask & ~(start - 1);
      int d_allowed = pts[static_cast<std::size_t>(si)];
      // first group contains item si; proper subgroups of mask have optimal
      // depth < n, so their values are even and halving stays integral
      std::function<void(std::uint32_t, std::uint32_t)> grow = [&](std::uint32_t g,
                                                                   std::uint32_t p) {
        if (g != mask)
          best = std::max(best, (V(g) + rest(above_mask(g, avail), d_allowed - 1)) / 2);
        while (p) {
          std::uint32_t b = p & (~p + 1);
          p &= p - 1;
          grow(g | b, p);
        }
      };
      grow(start, avail & ~start);
    }
    slot = best;
    return best;
  }
};

}  // namespace

ExactVal tsirelson_norm_brute(const std::map<int, Rational>& coeffs) {
  std::vector<int> pts;
  std::vector<Rational> wr;
  for (const auto& [n, c] : coeffs) {
    if (c == 0) continue;
    pts.push_back(n);
    wr.push_back(rabs(c));
  }
  int n = static_cast<int>(pts.size());
  if (n == 0) return ExactVal::zero();
  if (n > 12) fail(Err::SupportTooLarge, "tsirelson brute oracle capped at 12 points");
  BigInt den = 1;
  for (const auto& r : wr) den = lcm(den, denominator(r));
  BigInt scale = den << n;
  std::vector<long long> w;
  for (const auto& r : wr) {
    BigInt scaled = numerator(r) * (scale / denominator(r));
    if (scaled > BigInt(1) << 50) fail(Err::BadInput, "tsirelson brute oracle coefficient overflow");
    w.push_back(static_cast<long long>(scaled));
  }
  TsiBrute ctx;
  ctx.pts = pts;
  ctx.w = w;
  ctx.n = n;
  ctx.val.assign(1u << n, -1);
  ctx.restm.assign(static_cast<std::size_t>(n) + 1, std::vector<long long>(1u << n, -1));
  long long v = ctx.V((1u << n) - 1);
  return ExactVal::of_rational(Rational(BigInt(v), scale));
}

long long qp_basis_rank(const FinSet& s, int k) {
  if (s.size() != k) fail(Err::WrongArity, "rank needs a k-subset");
  if (k == 1) return 1;
  int l = s.min(), M = s.max();
  auto binom = [](long long a, long long b) -> long long {
    if (b < 0 || b > a) return 0;
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  long long rank = 0;
  // members with a smaller max: middles chosen from (l, M')
  for (int Mp = l + k - 1; Mp < M; ++Mp) rank += binom(Mp - l - 1, k - 2);
  // lex rank of the middle among (k-2)-subsets of {l+1..M-1}
  std::vector<int> mid(s.elems().begin() + 1, s.elems().end() - 1);
  int lo = l + 1, hi = M - 1, need = k - 2, pos = 0;
  for (int v = lo; v <= hi && pos < need; ++v) {
    if (mid[static_cast<std::size_t>(pos)] == v) {
      ++pos;
    } else {
      rank += binom(hi - v, need - pos - 1);
    }
  }
  return rank + 1;
}

namespace {

// ---------------------------------------------------------------------------
// QP norm: max of the length-projection p-sum and the plegma (q,p) packing.

double qp_base_value(const SpaceDesc& space, int l, const std::vector<Item>& group) {
  if (space.base == QPBase::L1) {
    Rational s = 0;
    for (const auto& it : group) s += it.coeff;
    return rational_to_double(s);
  }
  std::map<int, Rational> reindexed;
  for (const auto& it : group)
    reindexed[static_cast<int>(qp_basis_rank(it.set, space.k))] = it.coeff;
  (void)l;
  return tsirelson_norm(reindexed).to_double();
}

struct QPParts {
  double part1 = 0, part2 = 0;
  nlohmann::json part1_witness, part2_witness;
};

QPParts qp_parts(const SpaceVec& x, const std::vector<Item>& items) {
  QPParts out;
  double p = rational_to_double(x.space.p);
  double q = rational_to_double(x.space.q);
  std::map<int, std::vector<Item>> by_min;
  for (const auto& it : items) by_min[it.set.min()].push_back(it);
  double acc = 0;
  nlohmann::json groups1 = nlohmann::json::array();
  for (const auto& [l, group] : by_min) {
    double v = qp_base_value(x.space, l, group);
    acc += std::pow(v, p);
    groups1.push_back({{"min", l}, {"base_value", v}});
  }
  out.part1 = std::pow(acc, 1.0 / p);
  out.part1_witness = {{"kind", "qp_length_part"}, {"groups", groups1}};

  int n = static_cast<int>(items.size());
  if (n > kPackingExactLimit) fail(Err::SupportTooLarge, "qp packing capped at 20 support points");
  // conflict: items sharing a first coordinate can never coexist
  std::vector<std::uint32_t> same_first(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (items[static_cast<std::size_t>(i)].set.min() == items[static_cast<std::size_t>(j)].set.min())
        same_first[static_cast<std::size_t>(i)] |= 1u << j;

  std::vector<std::pair<std::uint32_t, double>> blocks;  // mask, (sum |x|^q)^(p/q)
  std::vector<std::vector<int>> block_idx;
  std::vector<int> cur;
  std::function<void(int)> gen = [&](int from) {
    if (!cur.empty()) {
      double s = 0;
      std::uint32_t mask = 0;
      for (int i : cur) {
        s += std::pow(rational_to_double(items[static_cast<std::size_t>(i)].coeff), q);
        mask |= 1u << i;
      }
      blocks.push_back({mask, std::pow(s, p / q)});
      block_idx.push_back(cur);
    }
    for (int i = from; i < n; ++i) {
      cur.push_back(i);
      if (plegma_prefix(items, cur)) gen(i + 1);
      cur.pop_back();
    }
  };
  gen(0);
  std::unordered_map<std::uint32_t, std::pair<double, int>> memo;
  std::function<double(std::uint32_t)> solve = [&](std::uint32_t mask) -> double {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second.first;
    double best = solve(mask & (mask - 1));
    int low = __builtin_ctz(mask), choice = -1;
    for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
      auto [bm, bv] = blocks[static_cast<std::size_t>(bi)];
      if (!(bm & (1u << low)) || (bm & mask) != bm) continue;
      std::uint32_t knocked = 0;
      for (int i : block_idx[static_cast<std::size_t>(bi)]) knocked |= same_first[static_cast<std::size_t>(i)];
      double v = bv + solve(mask & ~knocked);
      if (v > best) {
        best = v;
        choice = bi;
      }
    }
    memo[mask] = {best, choice};
    return best;
  };
  std::uint32_t full = (n == 32 ? 0xffffffffu : (1u << n)) - (n == 32 ? 0 : 1);
  double best_sum = n == 0 ? 0.0 : solve(full);
  out.part2 = std::pow(best_sum, 1.0 / p);
  // reconstruct groups
  nlohmann::json groups2 = nlohmann::json::array();
  std::uint32_t mask = n == 0 ? 0 : full;
  while (mask) {
    auto [v, choice] = memo[mask];
    (void)v;
    if (choice < 0) {
      mask &= mask - 1;
      continue;
    }
    groups2.push_back(sets_json(pick(items, block_idx[static_cast<std::size_t>(choice)])));
    std::uint32_t knocked = 0;
    for (int i : block_idx[static_cast<std::size_t>(choice)]) knocked |= same_first[static_cast<std::size_t>(i)];
    mask &= ~knocked;
  }
  out.part2_witness = {{"kind", "qp_plegma_packing"}, {"groups", groups2}};
  return out;
}

// ---------------------------------------------------------------------------
// MixedW: with n_1 >= |supp| every level collapses to l1/m_j and the norm is
// max(sup, sqrt(l1^2 * sum 1/m_j^2)), exactly.

NormResult mixedw_norm(const SpaceVec& x) {
  const auto& mw = x.space.mw;
  int n = x.support_size();
  if (n == 0) return NormResult::from_exact(ExactVal::zero(), {{"kind", "zero"}});
  if (mw.n.at(1) < n)
    fail(Err::SupportTooLarge,
         "mixed_w exact evaluation needs n_1 >= support size; larger supports are out of scope");
  Rational linf = x.max_abs();
  Rational l1 = x.l1();
  Rational type2_sq = l1 * l1 * mw.tail_inv_m_sq(1);
  ExactVal sup_val = ExactVal::of_rational(linf);
  ExactVal t2 = ExactVal::sqrt_of(type2_sq);
  if (sup_val.sq >= t2.sq) {
    FinSet arg;
    for (const auto& [s, c] : x.entries)
      if (rabs(c) == linf) { arg = s; break; }
    return NormResult::from_exact(sup_val, {{"kind", "sup_coordinate"}, {"set", arg.elems()}});
  }
  return NormResult::from_exact(
      t2, {{"kind", "mixed_w_type2"},
           {"note", "all levels are singleton families; value is l1 * sqrt(sum 1/m_j^2)"}});
}

/// Oracle for MixedW: certifies that the all-singletons family is optimal at
/// every level by checking norm(G) <= l1(G) on every subset of the support,
/// then evaluates the resulting type II combination.
NormResult mixedw_brute(const SpaceVec& x) {
  const auto& mw = x.space.mw;
  auto items = sorted_support(x);
  int n = static_cast<int>(items.size());
  if (n == 0) return NormResult::from_exact(ExactVal::zero(), {{"kind", "zero"}});
  if (mw.n.at(1) < n) fail(Err::SupportTooLarge, "mixed_w oracle needs n_1 >= support size");
  std::vector<ExactVal> val(1u << n, ExactVal::zero());
  std::vector<Rational> l1m(1u << n, Rational(0));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    Rational linf = 0, l1 = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        linf = std::max(linf, items[static_cast<std::size_t>(i)].coeff);
        l1 += items[static_cast<std::size_t>(i)].coeff;
      }
    l1m[mask] = l1;
    ExactVal t2 = ExactVal::sqrt_of(l1 * l1 * mw.tail_inv_m_sq(1));
    val[mask] = max(ExactVal::of_rational(linf), t2);
    // domination premise: the norm never exceeds the l1 mass
    if (!(val[mask].sq <= l1 * l1))
      fail(Err::BadInput, "mixed_w oracle domination check failed");
  }
  std::uint32_t full = (1u << n) - 1;
  return NormResult::from_exact(
      max(ExactVal::of_rational(x.max_abs()), ExactVal::sqrt_of(l1m[full] * l1m[full] * mw.tail_inv_m_sq(1))),
      {{"kind", "mixed_w_type2"}, {"note", "oracle: singleton families certified optimal"}});
}

// ---------------------------------------------------------------------------

NormResult packing_result(const SpaceVec& x, const std::vector<Item>& items,
                          const PackingOutcome& res, const char* kind) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : res.groups) groups.push_back(sets_json(pick(items, g)));
  return NormResult::from_exact(ExactVal::sqrt_of(res.best_sq),
                                {{"kind", kind}, {"groups", groups}});
}

NormResult exact_norm(const SpaceVec& x) {
  auto items = sorted_support(x);
  int n = static_cast<int>(items.size());
  if (n == 0) return NormResult::from_exact(ExactVal::zero(), {{"kind", "zero"}});
  switch (x.space.kind) {
    case SpaceKind::XiPlegmaL1: {
      auto r = xi_l1_max(items);
      nlohmann::json signs = nlohmann::json::array();
      for (int i : r.tuple) signs.push_back(items[static_cast<std::size_t>(i)].sign);
      return NormResult::from_exact(
          ExactVal::of_rational(r.best),
          {{"kind", "plegma_tuple"}, {"sets", sets_json(pick(items, r.tuple))}, {"signs", signs}});
    }
    case SpaceKind::XiPlegmaL2L1: {
      if (n > kPackingExactLimit) fail(Err::SupportTooLarge, "packing capped at 20 support points");
      auto res = packing_max(
          items, [&](const std::vector<int>& idx) { return plegma_prefix(items, idx); },
          [&](const Block& b) { return b.mask; });
      return packing_result(x, items, res, "l2_packing");
    }
    case SpaceKind::FrakX: {
      if (n > kPackingExactLimit) fail(Err::SupportTooLarge, "packing capped at 20 support points");
      auto res = packing_max(
          items,
          [&](const std::vector<int>& idx) { return frak_x_allowable(pick(items, idx), x.space.k); },
          [&](const Block& b) { return b.mask; });
      return packing_result(x, items, res, "l2_packing");
    }
    case SpaceKind::SchreierHash: {
      if (n > kPackingExactLimit) fail(Err::SupportTooLarge, "packing capped at 20 support points");
      std::vector<std::uint32_t> comp(static_cast<std::size_t>(n), 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (comparable(items[static_cast<std::size_t>(i)].set, items[static_cast<std::size_t>(j)].set))
            comp[static_cast<std::size_t>(i)] |= 1u << j;
      auto res = packing_max(
          items, [&](const std::vector<int>& idx) { return hash_tuple_prefix(items, idx); },
          [&](const Block& b) {
            std::uint32_t knocked = b.mask;
            for (int i : b.idx) knocked |= comp[static_cast<std::size_t>(i)];
            return knocked;
          });
      return packing_result(x, items, res, "l2_packing");
    }
    case SpaceKind::QP: {
      auto parts = qp_parts(x, items);
      double v = std::max(parts.part1, parts.part2);
      double slack = std::max(v * 5e-13, 1e-300);
      return NormResult::from_interval(v - slack, v + slack, true,
                                       parts.part1 >= parts.part2 ? parts.part1_witness
                                                                  : parts.part2_witness);
    }
    case SpaceKind::MixedW:
      return mixedw_norm(x);
    case SpaceKind::Tsirelson: {
      std::map<int, Rational> coeffs;
      for (const auto& [s, c] : x.entries) coeffs[s.min()] = c;
      TsiCtx ctx;
      for (const auto& [m, c] : coeffs) {
        if (c == 0) continue;
        ctx.pts.push_back(m);
        ctx.w.push_back(rabs(c));
      }
      if (ctx.pts.empty()) return NormResult::from_exact(ExactVal::zero(), {{"kind", "zero"}});
      int last = static_cast<int>(ctx.pts.size()) - 1;
      ExactVal v = ExactVal::of_rational(ctx.T(0, last).val);
      nlohmann::json w = {{"kind", "tsirelson_tree"}, {"tree", ctx.tree(0, last)}};
      return NormResult::from_exact(v, std::move(w));
    }
  }
  fail(Err::BadInput, "unknown space kind");
}

/// Greedy certified interval for packing norms on supports too large for the
/// exact solver: lower from the all-singletons packing (valid for the
/// disjointness-only packings), upper from the l1 mass.
NormResult interval_norm(const SpaceVec& x, double tol) {
  Rational sq = 0;
  for (const auto& [s, c] : x.entries) sq += c * c;
  Rational lo_sq = x.space.kind == SpaceKind::SchreierHash ? x.max_abs() * x.max_abs() : sq;
  double lo = std::sqrt(rational_to_double(lo_sq));
  double hi = rational_to_double(x.l1());
  return NormResult::from_interval(lo, hi, hi - lo <= tol,
                                   {{"kind", "l2_packing"},
                                    {"groups", "singletons"},
                                    {"note", "budgeted interval; upper bound is the l1 mass"}});
}

}  // namespace

NormResult norm(const SpaceVec& x, NormMethod method, double tol) {
  if (method == NormMethod::Brute) return brute_force_norm(x);
  if (x.support_size() > kPackingExactLimit &&
      (x.space.kind == SpaceKind::XiPlegmaL2L1 || x.space.kind == SpaceKind::FrakX ||
       x.space.kind == SpaceKind::SchreierHash)) {
    if (method == NormMethod::BranchBound) return interval_norm(x, tol);
    fail(Err::SupportTooLarge, "exact packing capped at 20 support points; use branch_bound");
  }
  return exact_norm(x);
}

namespace {

// brute-force partition enumeration shared by the packing spaces
template <typename Validate>
Rational best_partition_sq(const std::vector<Item>& items, Validate&& validate) {
  int n = static_cast<int>(items.size());
  Rational best = 0;
  std::vector<std::vector<int>> groups;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      Rational total = 0;
      if (!validate(groups, total)) return;
      if (total > best) best = total;
      return;
    }
    rec(i + 1);  // skip item i
    for (auto& g : groups) {
      g.push_back(i);
      rec(i + 1);
      g.pop_back();
    }
    groups.push_back({i});
    rec(i + 1);
    groups.pop_back();
  };
  rec(0);
  return best;
}

}  // namespace

NormResult brute_force_norm(const SpaceVec& x) {
  if (x.support_size() > 8) fail(Err::SupportTooLarge, "brute force needs support <= 8");
  auto items = sorted_support(x);
  int n = static_cast<int>(items.size());
  if (n == 0) return NormResult::from_exact(ExactVal::zero(), {{"kind", "zero"}});
  auto group_l1 = [&](const std::vector<int>& g) {
    Rational s = 0;
    for (int i : g) s += items[static_cast<std::size_t>(i)].coeff;
    return s;
  };
  switch (x.space.kind) {
    case SpaceKind::XiPlegmaL1: {
      Rational best = 0;
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<FinSet> sets;
        Rational sum = 0;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) {
            sets.push_back(items[static_cast<std::size_t>(i)].set);
            sum += items[static_cast<std::size_t>(i)].coeff;
          }
        bool nonempty_ok = true;
        for (const auto& s : sets)
          if (s.empty()) nonempty_ok = false;
        if (!nonempty_ok) continue;
        if (static_cast<int>(sets.size()) > sets.front().min()) continue;  // l <= s_1(1)
        if (sets.size() > 1 && !is_plegma(sets)) continue;
        if (sum > best) best = sum;
      }
      return NormResult::from_exact(ExactVal::of_rational(best), {{"kind", "plegma_tuple"}});
    }
    case SpaceKind::XiPlegmaL2L1: {
      Rational best = best_partition_sq(items, [&](const std::vector<std::vector<int>>& gs,
                                                   Rational& total) {
        for (const auto& g : gs) {
          auto sets = pick(items, g);
          for (const auto& s : sets)
            if (s.empty()) return false;
          if (!is_plegma(sets)) return false;
          Rational w = group_l1(g);
          total += w * w;
        }
        return true;
      });
      return NormResult::from_exact(ExactVal::sqrt_of(best), {{"kind", "l2_packing"}});
    }
    case SpaceKind::FrakX: {
      Rational best = best_partition_sq(items, [&](const std::vector<std::vector<int>>& gs,
                                                   Rational& total) {
        for (const auto& g : gs) {
          if (!frak_x_allowable_brute(pick(items, g), x.space.k)) return false;
          Rational w = group_l1(g);
          total += w * w;
        }
        return true;
      });
      return NormResult::from_exact(ExactVal::sqrt_of(best), {{"kind", "l2_packing"}});
    }
    case SpaceKind::SchreierHash: {
      Rational best = best_partition_sq(items, [&](const std::vector<std::vector<int>>& gs,
                                                   Rational& total) {
        std::vector<FinSet> used;
        for (const auto& g : gs) {
          auto sets = pick(items, g);
          if (!(sets.size() == 1 && sets[0].empty())) {
            for (const auto& s : sets)
              if (s.empty()) return false;
            int sz = sets[0].size();
            for (const auto& s : sets)
              if (s.size() != sz) return false;
            if (static_cast<int>(sets.size()) - 1 > sz) return false;
            if (!is_plegma(sets)) return false;
          }
          for (const auto& s : sets) used.push_back(s);
          Rational w = group_l1(g);
          total += w * w;
        }
        for (std::size_t i = 0; i < used.size(); ++i)
          for (std::size_t j = i + 1; j < used.size(); ++j)
            if (comparable(used[i], used[j])) return false;
        return true;
      });
      return NormResult::from_exact(ExactVal::sqrt_of(best), {{"kind", "l2_packing"}});
    }
    case SpaceKind::QP: {
      double p = rational_to_double(x.space.p), q = rational_to_double(x.space.q);
      // part 2 by partition enumeration
      double best2 = 0;
      std::vector<std::vector<int>> groups;
      std::function<void(int)> rec = [&](int i) {
        if (i == n) {
          std::vector<FinSet> used_first;
          double total = 0;
          for (const auto& g : groups) {
            auto sets = pick(items, g);
            for (const auto& s : sets)
              if (s.empty()) return;
            if (!is_plegma(sets)) return;
          }
          // pairwise disjoint first-coordinate sets
          for (std::size_t a = 0; a < groups.size(); ++a)
            for (std::size_t b = a + 1; b < groups.size(); ++b)
              for (int i1 : groups[a])
                for (int i2 : groups[b])
                  if (items[static_cast<std::size_t>(i1)].set.min() ==
                      items[static_cast<std::size_t>(i2)].set.min())
                    return;
          for (const auto& g : groups) {
            double s = 0;
            for (int i : g)
              s += std::pow(rational_to_double(items[static_cast<std::size_t>(i)].coeff), q);
            total += std::pow(s, p / q);
          }
          best2 = std::max(best2, std::pow(total, 1.0 / p));
          return;
        }
        rec(i + 1);
        for (auto& g : groups) {
          g.push_back(i);
          rec(i + 1);
          g.pop_back();
        }
        groups.push_back({i});
        rec(i + 1);
        groups.pop_back();
      };
      rec(0);
      // part 1 independently: group by first coordinate, base norms
      std::map<int, std::vector<Item>> by_min;
      for (const auto& it : items) by_min[it.set.min()].push_back(it);
      double acc = 0;
      for (const auto& [l, group] : by_min) {
        double v;
        if (x.space.base == QPBase::L1) {
          Rational s = 0;
          for (const auto& it : group) s += it.coeff;
          v = rational_to_double(s);
        } else {
          std::map<int, Rational> reindexed;
          for (const auto& it : group)
            reindexed[static_cast<int>(qp_basis_rank(it.set, x.space.k))] = it.coeff;
          v = tsirelson_norm_brute(reindexed).to_double();
        }
        acc += std::pow(v, p);
      }
      double part1 = std::pow(acc, 1.0 / p);
      double v = std::max(part1, best2);
      double slack = std::max(v * 5e-13, 1e-300);
      return NormResult::from_interval(v - slack, v + slack, true, {{"kind", "qp_brute"}});
    }
    case SpaceKind::MixedW:
      return mixedw_brute(x);
    case SpaceKind::Tsirelson: {
      std::map<int, Rational> coeffs;
      for (const auto& [s, c] : x.entries) coeffs[s.min()] = c;
      return NormResult::from_exact(tsirelson_norm_brute(coeffs), {{"kind", "tsirelson_brute"}});
    }
  }
  fail(Err::BadInput, "unknown space kind");
}

double evaluate_witness(const SpaceVec& x, const nlohmann::json& witness) {
  const std::string kind = witness.value("kind", "");
  auto coeff_at = [&](const FinSet& s) -> Rational {
    auto it = x.entries.find(s);
    return it == x.entries.end() ? Rational(0) : it->second;
  };
  if (kind == "zero") return 0.0;
  if (kind == "sup_coordinate" || kind == "singleton") {
    FinSet s(witness.at("set").get<std::vector<int>>());
    return std::abs(rational_to_double(coeff_at(s)));
  }
  if (kind == "plegma_tuple") {
    Rational sum = 0;
    if (witness.contains("sets"))
      for (const auto& sj : witness.at("sets")) {
        FinSet s(sj.get<std::vector<int>>());
        Rational c = coeff_at(s);
        sum += c < 0 ? Rational(-c) : c;
      }
    return rational_to_double(sum);
  }
  if (kind == "l2_packing") {
    if (!witness.contains("groups") || !witness.at("groups").is_array()) return 0.0;
    Rational total = 0;
    for (const auto& gj : witness.at("groups")) {
      Rational w = 0;
      for (const auto& sj : gj) {
        FinSet s(sj.get<std::vector<int>>());
        Rational c = coeff_at(s);
        w += c < 0 ? Rational(-c) : c;
      }
      total += w * w;
    }
    return std::sqrt(rational_to_double(total));
  }
  if (kind == "qp_plegma_packing") {
    double p = rational_to_double(x.space.p), q = rational_to_double(x.space.q);
    double total = 0;
    for (const auto& gj : witness.at("groups")) {
      double s = 0;
      for (const auto& sj : gj) {
        FinSet st(sj.get<std::vector<int>>());
        s += std::pow(std::abs(rational_to_double(coeff_at(st))), q);
      }
      total += std::pow(s, p / q);
    }
    return std::pow(total, 1.0 / p);
  }
  if (kind == "qp_length_part") {
    auto items = sorted_support(x);
    return qp_parts(x, items).part1;
  }
  if (kind == "tsirelson_tree") {
    std::function<double(const nlohmann::json&)> eval = [&](const nlohmann::json& node) -> double {
      std::string f = node.at("f").get<std::string>();
      if (f == "zero") return 0.0;
      if (f == "coord") {
        FinSet s(std::vector<int>{node.at("n").get<int>()});
        return std::abs(rational_to_double(coeff_at(s)));
      }
      double sum = 0;
      for (const auto& ch : node.at("children")) sum += eval(ch);
      return sum / 2.0;
    };
    return eval(witness.at("tree"));
  }
  if (kind == "mixed_w_type2") {
    Rational l1 = x.l1();
    return std::sqrt(rational_to_double(l1 * l1 * x.space.mw.tail_inv_m_sq(1)));
  }
  if (kind == "qp_brute" || witness.value("groups", nlohmann::json()) == "singletons") return 0.0;
  fail(Err::BadInput, "unknown witness kind: " + kind);
}

std::vector<FinSet> basis_enumeration(const SpaceDesc& space, int count, int universe) {
  std::vector<FinSet> coords;
  auto add_all = [&](const std::vector<FinSet>& v) {
    for (const auto& s : v) coords.push_back(s);
  };
  switch (space.kind) {
    case SpaceKind::XiPlegmaL1:
    case SpaceKind::XiPlegmaL2L1:
      add_all(space.family->members(universe));
      break;
    case SpaceKind::FrakX:
      add_all(Family::k_subsets(space.k + 1)->members(universe));
      break;
    case SpaceKind::QP:
      add_all(Family::k_subsets(space.k)->members(universe));
      break;
    case SpaceKind::SchreierHash: {
      // closure of the Schreier family, empty set first
      for (std::uint32_t mask = 0; mask < (1u << std::min(universe, 20)); ++mask) {
        std::vector<int> v;
        for (int i = 0; i < std::min(universe, 20); ++i)
          if (mask & (1u << i)) v.push_back(i + 1);
        FinSet s(std::move(v));
        if (schreier_family_contains(s, OrdinalCNF(1))) coords.push_back(s);
      }
      break;
    }
    case SpaceKind::MixedW:
    case SpaceKind::Tsirelson:
      for (int i = 1; i <= universe; ++i) coords.push_back(FinSet(std::vector<int>{i}));
      break;
  }
  std::sort(coords.begin(), coords.end(), [](const FinSet& a, const FinSet& b) {
    int ma = a.empty() ? 0 : a.max(), mb = b.empty() ? 0 : b.max();
    if (ma != mb) return ma < mb;
    return a.elems() < b.elems();
  });
  if (static_cast<int>(coords.size()) > count) coords.resize(static_cast<std::size_t>(count));
  return coords;
}

PropertyPWitness property_p_witness(const SpaceDesc& space, const Rational& delta, int k,
                                    long budget) {
  PropertyPWitness out;
  if (delta > 1) return out;  // basis vectors have norm exactly 1
  auto coords = basis_enumeration(space, 256, 24);
  int n = static_cast<int>(coords.size());
  std::vector<int> picked;
  std::function<bool(int)> rec = [&](int from) {
    if (out.checked >= budget) return false;
    if (static_cast<int>(picked.size()) == k) {
      SpaceVec v(space);
      for (int i : picked) v.set(coords[static_cast<std::size_t>(i)], Rational(1));
      auto r = norm(v);
      ++out.checked;
      bool ok = r.exact ? r.value.sq <= Rational(1) : r.upper <= 1.0 + 1e-12;
      if (ok) {
        out.found = true;
        out.blocks.clear();
        for (int i : picked) out.blocks.push_back(coords[static_cast<std::size_t>(i)]);
        out.sum_norm = r.exact ? r.value : ExactVal::of_rational(Rational(1));
      }
      return ok;
    }
    for (int i = from; i < n; ++i) {
      if (out.checked >= budget) return false;
      picked.push_back(i);
      // partial-sum pruning: 1-unconditionality makes the sum norm monotone
      SpaceVec v(space);
      for (int j : picked) v.set(coords[static_cast<std::size_t>(j)], Rational(1));
      auto r = norm(v);
      ++out.checked;
      bool viable = r.exact ? r.value.sq <= Rational(1) : r.upper <= 1.0 + 1e-12;
      if (viable && rec(i + 1)) return true;
      picked.pop_back();
    }
    return false;
  };
  rec(0);
  return out;
}

}  // namespace ptk
