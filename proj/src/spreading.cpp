#include "ptk/spreading.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ptk/plegma.hpp"

namespace ptk {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SeqDesc SeqDesc::basis(SpaceDesc space, FamilyPtr family) {
  SeqDesc s;
  s.kind = Kind::Basis;
  s.space = std::move(space);
  s.family = std::move(family);
  return s;
}

SeqDesc SeqDesc::cumulative_chain() {
  SeqDesc s;
  s.kind = Kind::CumulativeChain;
  s.space = SpaceDesc::schreier_hash();
  s.family = Family::schreier(OrdinalCNF(1));
  return s;
}

SeqDesc SeqDesc::explicit_table(SpaceDesc space, FamilyPtr family,
                                std::map<FinSet, SpaceVec> table) {
  SeqDesc s;
  s.kind = Kind::ExplicitTable;
  s.space = std::move(space);
  s.family = std::move(family);
  s.table = std::move(table);
  return s;
}

SpaceVec SeqDesc::at(const FinSet& s) const {
  switch (kind) {
    case Kind::Basis: {
      SpaceVec v(space);
      v.set(s, Rational(1));
      return v;
    }
    case Kind::CumulativeChain: {
      SpaceVec v(space);
      for (int k = 1; k <= s.size(); ++k) v.set(s.initial_segment(k), Rational(1));
      return v;
    }
    case Kind::ExplicitTable: {
      auto it = table.find(s);
      if (it == table.end()) fail(Err::BadIndex, "sequence has no entry at {" + s.to_string() + "}");
      return it->second;
    }
  }
  fail(Err::BadInput, "unknown sequence kind");
}

std::vector<FinSet> least_plegma_tuple(const Family& F, const Window& M, int l, int min_first) {
  auto restricted = Family::restrict(F.shared_from_this(), M);
  auto mem = restricted->members(M.last());
  mem.erase(std::remove_if(mem.begin(), mem.end(), [](const FinSet& s) { return s.empty(); }),
            mem.end());
  std::vector<FinSet> tuple;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(tuple.size()) == l) return true;
    for (std::size_t i = from; i < mem.size(); ++i) {
      if (tuple.empty() && mem[i].min() < min_first) continue;
      if (!tuple.empty() && mem[i].min() <= tuple.back().min()) continue;
      tuple.push_back(mem[i]);
      if (is_plegma(tuple) && rec(i + 1)) return true;
      tuple.pop_back();
    }
    return false;
  };
  if (rec(0)) return tuple;
  return {};
}

namespace {

SpaceVec combine(const SeqDesc& seq, const std::vector<Rational>& coeffs,
                 const std::vector<FinSet>& tuple) {
  SpaceVec acc(seq.space);
  for (std::size_t j = 0; j < tuple.size(); ++j)
    acc = acc.plus(seq.at(tuple[j]).scaled(coeffs[j]));
  return acc;
}

double result_value(const NormResult& r) { return r.exact ? r.value.to_double() : (r.lower + r.upper) / 2; }

}  // namespace

SMProfile sm_profile(const SeqDesc& seq, const std::vector<Rational>& coeffs, const Window& M,
                     int steps) {
  int l = static_cast<int>(coeffs.size());
  if (l < 1) fail(Err::BadInput, "profile needs at least one coefficient");
  if (steps < l) fail(Err::BadInput, "steps must be >= the tuple length");
  SMProfile out;
  out.coeffs = coeffs;
  for (int n = l; n <= steps; ++n) {
    auto tuple = least_plegma_tuple(*seq.family, M, l, M.at(n));
    if (tuple.empty())
      fail(Err::NoTupleAtStep, "no plegma tuple with s_1(1) >= M(" + std::to_string(n) + ")");
    SMStep step;
    step.n = n;
    step.tuple = tuple;
    step.value = norm(combine(seq, coeffs, tuple));
    out.steps.push_back(std::move(step));
  }
  for (std::size_t i = 1; i < out.steps.size(); ++i)
    out.delta_trace.push_back(std::abs(result_value(out.steps[i].value) -
                                       result_value(out.steps[i - 1].value)));
  return out;
}

LpConstants lp_constants(const SeqDesc& seq, const Rational& p, int n, const Window& M,
                         long budget, std::uint64_t seed) {
  if (p < 1) fail(Err::BadInput, "lp constants need p >= 1");
  LpConstants out;
  out.seed = seed;
  auto lex = least_plegma_tuple(*seq.family, M, n, M.at(n));
  if (lex.empty()) fail(Err::NoTupleAtStep, "no qualifying plegma tuple in the window");
  std::vector<std::vector<FinSet>> tuples{lex};
  // seeded random sample: random member order, first plegma completion
  std::mt19937_64 rng(seed);
  auto restricted = Family::restrict(seq.family, M);
  auto mem = restricted->members(M.last());
  mem.erase(std::remove_if(mem.begin(), mem.end(), [](const FinSet& s) { return s.empty(); }),
            mem.end());
  long attempts = 0;
  while (static_cast<long>(tuples.size()) < 65 && attempts < budget) {
    ++attempts;
    std::vector<FinSet> shuffled = mem;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<FinSet> tuple;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
      if (static_cast<int>(tuple.size()) == n) return true;
      for (std::size_t i = from; i < shuffled.size(); ++i) {
        if (tuple.empty() && shuffled[i].min() < M.at(n)) continue;
        if (!tuple.empty() && shuffled[i].min() <= tuple.back().min()) continue;
        tuple.push_back(shuffled[i]);
        std::vector<FinSet> sorted = tuple;
        std::sort(sorted.begin(), sorted.end(),
                  [](const FinSet& a, const FinSet& b) { return a.min() < b.min(); });
        if (is_plegma(sorted) && rec(i + 1)) return true;
        tuple.pop_back();
      }
      return false;
    };
    if (rec(0)) {
      std::sort(tuple.begin(), tuple.end(),
                [](const FinSet& a, const FinSet& b) { return a.min() < b.min(); });
      if (std::find(tuples.begin(), tuples.end(), tuple) == tuples.end())
        tuples.push_back(tuple);
    }
  }
  out.tuples_sampled = static_cast<long>(tuples.size());
  // coefficient grid: sign patterns, unit vectors, uniform
  std::vector<std::vector<Rational>> grid;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Rational> a(static_cast<std::size_t>(n), Rational(1));
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) a[static_cast<std::size_t>(j)] = -1;
    grid.push_back(a);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> a(static_cast<std::size_t>(n), Rational(0));
    a[static_cast<std::size_t>(j)] = 1;
    grid.push_back(a);
  }
  double pd = rational_to_double(p);
  bool first = true;
  for (const auto& tuple : tuples) {
    for (const auto& a : grid) {
      double denom = 0;
      for (const auto& c : a) denom += std::pow(std::abs(rational_to_double(c)), pd);
      denom = std::pow(denom, 1.0 / pd);
      if (denom == 0) continue;
      double v = result_value(norm(combine(seq, a, tuple)));
      double ratio = v / denom;
      if (first || ratio < out.c_lower) {
        out.c_lower = ratio;
        out.worst_tuple = tuple;
        out.worst_coeffs = a;
      }
      if (first || ratio > out.C_upper) out.C_upper = ratio;
      first = false;
    }
  }
  return out;
}

CesaroResult cesaro_norm(int k, const Window& M, int n) {
  int need = (k + 2) * n;
  if (M.horizon() < need)
    fail(Err::HorizonRequired, "cesaro needs horizon >= " + std::to_string(need));
  CesaroResult out;
  out.y = SpaceVec(SpaceDesc::frak_x(k));
  long long total = binomial(need, k + 1);
  Rational inv(1, total);
  auto prefix = M.prefix_set(need);
  std::vector<int> idx(static_cast<std::size_t>(k + 1));
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k + 1) {
      std::vector<int> v;
      for (int i = 0; i <= k; ++i) v.push_back(prefix.at(idx[static_cast<std::size_t>(i)]));
      out.y.set(FinSet(std::move(v)), inv);
      return;
    }
    for (int e = from; e <= need - (k - pos); ++e) {
      idx[static_cast<std::size_t>(pos)] = e;
      rec(pos + 1, e + 1);
    }
  };
  rec(0, 1);
  out.bound = Rational(pow(BigInt(n), static_cast<unsigned>(k + 1)), BigInt(total));

  NormResult base = norm(out.y, out.y.support_size() <= 20 ? NormMethod::Exact
                                                           : NormMethod::BranchBound);
  if (!base.exact) {
    // merge the product-block packings: chunks of (k+2)m positions, block i
    // of a chunk skipping its first m positions
    double best = base.lower;
    nlohmann::json best_groups;
    for (int m = 1; m <= n; ++m) {
      int chunks = need / ((k + 2) * m);
      Rational w = Rational(pow(BigInt(m), static_cast<unsigned>(k + 1)), BigInt(total));
      double val = std::sqrt(static_cast<double>(chunks)) * rational_to_double(w);
      if (val > best) {
        best = val;
        nlohmann::json groups = nlohmann::json::array();
        for (int c = 0; c < chunks; ++c) {
          nlohmann::json group = nlohmann::json::array();
          int base_pos = c * (k + 2) * m;
          std::vector<std::vector<int>> fs(static_cast<std::size_t>(k + 1));
          for (int i = 1; i <= k + 1; ++i)
            for (int t = 1; t <= m; ++t)
              fs[static_cast<std::size_t>(i - 1)].push_back(M.at(base_pos + i * m + t));
          std::vector<int> pick(static_cast<std::size_t>(k + 1), 0);
          std::function<void(int)> emit = [&](int lvl) {
            if (lvl == k + 1) {
              std::vector<int> s;
              for (int i = 0; i <= k; ++i)
                s.push_back(fs[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                    pick[static_cast<std::size_t>(i)])]);
              group.push_back(s);
              return;
            }
            for (int t = 0; t < m; ++t) {
              pick[static_cast<std::size_t>(lvl)] = t;
              emit(lvl + 1);
            }
          };
          emit(0);
          groups.push_back(group);
        }
        best_groups = groups;
      }
    }
    nlohmann::json w = {{"kind", "l2_packing"}, {"groups", best_groups}};
    out.value = NormResult::from_interval(best, base.upper, base.upper - best <= 1e-9, w);
  } else {
    out.value = base;
  }
  double bound_d = rational_to_double(out.bound);
  if (out.value.lower < bound_d - 1e-12 && !(out.value.exact && out.value.value.sq >= out.bound * out.bound))
    fail(Err::BadInput, "certified norm fell below the analytic bound");
  return out;
}

std::pair<SpaceVec, NormResult> k_cesaro_sum(const SeqDesc& seq, const Window& M, int n) {
  if (M.horizon() < n) fail(Err::HorizonRequired, "k-cesaro needs horizon >= n");
  if (!seq.family || seq.family->kind() != FamilyKind::KSubsets)
    fail(Err::BadInput, "k-cesaro needs a [N]^k index family");
  int k = seq.family->k_param();
  auto idx_family = Family::restrict(seq.family, M);
  auto members = idx_family->members(M.at(n));
  std::vector<FinSet> used;
  auto prefix = M.prefix_set(n);
  for (const auto& s : members)
    if (s.is_subset_of(prefix)) used.push_back(s);
  long long total = binomial(n, k);
  if (total == 0 || used.empty()) fail(Err::EmptyRestriction, "no index sets inside the prefix");
  SpaceVec acc(seq.space);
  Rational inv(1, total);
  for (const auto& s : used) acc = acc.plus(seq.at(s).scaled(inv));
  auto r = norm(acc, acc.support_size() <= 20 || seq.space.kind == SpaceKind::XiPlegmaL1
                         ? NormMethod::Exact
                         : NormMethod::BranchBound);
  return {acc, r};
}

std::pair<SpaceVec, NormResult> f_cesaro_sum(const Family& F, const SeqDesc& seq, const Window& M,
                                             int n) {
  if (M.horizon() < n) fail(Err::HorizonRequired, "f-cesaro needs horizon >= n");
  auto prefix = M.prefix_set(n);
  std::vector<FinSet> used;
  for (const auto& s : F.members(M.at(n)))
    if (!s.empty() && s.is_subset_of(prefix)) used.push_back(s);
  if (used.empty()) fail(Err::EmptyRestriction, "F has no members inside the window prefix");
  SpaceVec acc(seq.space);
  Rational inv(1, static_cast<long long>(used.size()));
  for (const auto& s : used) acc = acc.plus(seq.at(s).scaled(inv));
  auto r = norm(acc, acc.support_size() <= 20 || seq.space.kind == SpaceKind::XiPlegmaL1
                         ? NormMethod::Exact
                         : NormMethod::BranchBound);
  return {acc, r};
}

SeqDesc boost_l1(const SeqDesc& seq, const Family& F, const Window& M, const Rational& c,
                 const Rational& eps, long budget) {
  if (!(eps > 0 && eps < 1)) fail(Err::BadInput, "boost needs 0 < eps < 1");
  if (!(c > 0 && c <= 1)) fail(Err::BadInput, "boost needs 0 < c <= 1");
  // pick e' with (c - e')/(c + 2e') > 1 - eps
  Rational ep = c * eps / 4;
  while (!((c - ep) / (c + Rational(2) * ep) > Rational(1) - eps)) {
    ep /= 2;
    if (ep < Rational(1, 1000000000)) fail(Err::BudgetExhausted, "no feasible e' found");
  }
  // grid search for b with sampled sup |sum b_i x_{t_i}| < c + e'
  std::vector<Rational> b;
  long spent = 0;
  for (int k = 1; k <= 4 && b.empty(); ++k) {
    auto tuple = least_plegma_tuple(F, M, k, M.at(k));
    if (tuple.empty()) continue;
    for (int g = 1; g <= 6 && b.empty(); ++g) {
      // compositions n_1 + ... + n_k = g with signs
      std::vector<int> comp(static_cast<std::size_t>(k), 0);
      std::function<bool(int, int)> rec = [&](int pos, int left) {
        if (++spent > budget) return false;
        if (pos == k) {
          if (left != 0) return false;
          for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            std::vector<Rational> cand;
            for (int j = 0; j < k; ++j) {
              Rational v(comp[static_cast<std::size_t>(j)], g);
              cand.push_back((mask & (1u << j)) ? -v : v);
            }
            bool nonzero = std::any_of(cand.begin(), cand.end(),
                                       [](const Rational& r) { return r != 0; });
            if (!nonzero) continue;
            auto val = norm(combine(seq, cand, tuple));
            Rational bound = c + ep;
            bool ok = val.exact ? val.value.sq < bound * bound
                                : val.upper < rational_to_double(bound);
            if (ok) {
              b = cand;
              return true;
            }
          }
          return false;
        }
        for (int take = (pos == k - 1 ? left : 0); take <= left; ++take) {
          comp[static_cast<std::size_t>(pos)] = take;
          if (rec(pos + 1, left - take)) return true;
          if (pos < k - 1) continue;
        }
        return false;
      };
      rec(0, g);
    }
  }
  if (b.empty()) fail(Err::BudgetExhausted, "no near-infimum coefficient vector found");
  int k = static_cast<int>(b.size());

  // interleaved block windows I_n = {M(nk+1),...,M((n+1)k)}, L = {max I_n}
  std::vector<int> Lvals;
  for (int n = 1; (n + 1) * k <= M.horizon(); ++n) Lvals.push_back(M.at((n + 1) * k));
  if (Lvals.empty()) fail(Err::HorizonRequired, "window too short for any block");
  Window L{std::vector<int>(Lvals)};
  Rational denom = c + Rational(2) * ep;

  std::map<FinSet, SpaceVec> table;
  auto FL = Family::restrict(F.shared_from_this(), L);
  for (const auto& s : FL->members(L.last())) {
    if (s.empty()) continue;
    auto lpos = L.positions_of(s);
    if (!lpos) continue;
    SpaceVec y(seq.space);
    bool complete = true;
    for (int i = 1; i <= k && complete; ++i) {
      // chain of the i-th elements of the blocks I_{n_j}
      std::vector<int> chain;
      for (int j = 1; j <= lpos->size(); ++j) chain.push_back(M.at(lpos->at(j) * k + i));
      FinSet t;
      bool found = false;
      for (int r = 1; r <= static_cast<int>(chain.size()); ++r) {
        t = FinSet(std::vector<int>(chain.begin(), chain.begin() + r));
        if (F.contains(t)) {
          found = true;
          break;
        }
      }
      if (!found) {
        complete = false;
        break;
      }
      y = y.plus(seq.at(t).scaled(b[static_cast<std::size_t>(i - 1)] / denom));
    }
    if (complete) table[s] = y;
  }
  if (table.empty()) fail(Err::HorizonRequired, "no block images fit inside the horizon");
  return SeqDesc::explicit_table(seq.space, FL, std::move(table));
}

}  // namespace ptk
