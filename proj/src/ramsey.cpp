#include "ptk/ramsey.hpp"

#include <algorithm>

namespace ptk {

Coloring Coloring::by_name(const std::string& name, int arity) {
  Coloring c;
  c.arity = arity;
  auto union_of = [](const std::vector<FinSet>& t) {
    FinSet u;
    for (const auto& s : t) u = u.unite(s);
    return u;
  };
  if (name == "const") {
    c.palette = 1;
    c.eval = [](const std::vector<FinSet>&) { return 0; };
  } else if (name == "parity-min") {
    c.palette = 2;
    c.eval = [union_of](const std::vector<FinSet>& t) { return union_of(t).min() % 2; };
  } else if (name == "parity-max") {
    c.palette = 2;
    c.eval = [union_of](const std::vector<FinSet>& t) { return union_of(t).max() % 2; };
  } else if (name == "parity-size") {
    c.palette = 2;
    c.eval = [union_of](const std::vector<FinSet>& t) { return union_of(t).size() % 2; };
  } else if (name.rfind("hash-mod:", 0) == 0) {
    int p = std::stoi(name.substr(9));
    if (p < 1) fail(Err::BadInput, "hash-mod needs a positive modulus");
    c.palette = p;
    c.eval = [union_of, p](const std::vector<FinSet>& t) {
      std::uint64_t h = 1469598103934665603ull;
      for (int v : union_of(t).elems()) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 1099511628211ull;
      }
      return static_cast<int>(h % static_cast<std::uint64_t>(p));
    };
  } else {
    fail(Err::BadInput, "unknown coloring: " + name);
  }
  return c;
}

namespace {

/// Shared DFS over increasing index subsets of the M-prefix. `probe` checks
/// the partial selection (only constraints involving the newly added element
/// need re-checking) and reports a homogeneous color or -2 on conflict.
struct SubsetSearch {
  const Window& M;
  int target;
  long budget;
  long checked = 0;
  std::vector<int> picked;  // window positions, increasing

  template <typename Probe>
  std::optional<std::vector<int>> run(Probe&& probe) {
    return extend(probe, 1) ? std::optional<std::vector<int>>(picked) : std::nullopt;
  }

 private:
  template <typename Probe>
  bool extend(Probe& probe, int from) {
    if (static_cast<int>(picked.size()) == target) return true;
    for (int n = from; n <= M.horizon(); ++n) {
      if (checked >= budget) return false;
      ++checked;
      picked.push_back(n);
      if (probe() && extend(probe, n + 1)) return true;
      picked.pop_back();
    }
    return false;
  }
};

Window window_from_positions(const Window& M, const std::vector<int>& pos) {
  std::vector<int> vals;
  for (int n : pos) vals.push_back(M.at(n));
  return Window(std::move(vals));
}

}  // namespace

SearchOutcome find_monochromatic(const Family& F, int l, const Coloring& c, const Window& M,
                                 int target, long budget) {
  if (target > M.horizon()) fail(Err::BadInput, "target exceeds the window horizon");
  SearchOutcome out;
  int color = -1;
  SubsetSearch search{M, target, budget};
  // the probe recomputes the homogeneous color over the whole partial
  // selection, so backtracking cannot leave a stale value behind
  auto pos = search.run([&]() {
    std::vector<int> vals;
    for (int n : search.picked) vals.push_back(M.at(n));
    Window L{std::vector<int>(vals)};
    auto restricted = Family::restrict(F.shared_from_this(), L);
    int seen = -1;
    bool ok = true;
    for_each_plm(*restricted, l, vals.back(), [&](const std::vector<FinSet>& t) {
      int col = c.eval(t);
      if (seen == -1)
        seen = col;
      else if (seen != col) {
        ok = false;
        return false;
      }
      return true;
    });
    if (ok) color = seen;
    return ok;
  });
  out.checked = search.checked;
  if (pos) {
    out.found = true;
    out.witness = window_from_positions(M, *pos);
    out.color = std::max(color, 0);
  }
  return out;
}

SearchOutcome find_homogeneous_partition(const Family& F,
                                         const std::function<int(const FinSet&)>& piece,
                                         const Window& M, int target, long budget) {
  if (target > M.horizon()) fail(Err::BadInput, "target exceeds the window horizon");
  SearchOutcome out;
  int piece_seen = -1;
  SubsetSearch search{M, target, budget};
  auto pos = search.run([&]() {
    std::vector<int> vals;
    for (int n : search.picked) vals.push_back(M.at(n));
    Window L{std::vector<int>(vals)};
    auto restricted = Family::restrict(F.shared_from_this(), L);
    int seen = -1;
    for (const auto& s : restricted->members(vals.back())) {
      int p = piece(s);
      if (seen == -1)
        seen = p;
      else if (seen != p)
        return false;
    }
    piece_seen = seen;
    return true;
  });
  out.checked = search.checked;
  if (pos) {
    out.found = true;
    out.witness = window_from_positions(M, *pos);
    out.color = std::max(piece_seen, 0);
  }
  return out;
}

std::optional<std::vector<FinSet>> find_plegma_in_dense(const std::vector<FinSet>& A, int l) {
  if (A.empty()) return std::nullopt;
  int k = A.front().size();
  for (const auto& s : A)
    if (s.size() != k || s.empty()) fail(Err::WrongArity, "dense set members must share one size");
  std::vector<FinSet> sorted = A;
  std::sort(sorted.begin(), sorted.end(),
            [](const FinSet& a, const FinSet& b) { return a.elems() < b.elems(); });
  std::vector<FinSet> tuple;
  std::function<bool(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(tuple.size()) == l) return true;
    for (std::size_t i = from; i < sorted.size(); ++i) {
      if (!tuple.empty() && sorted[i].min() <= tuple.back().min()) continue;
      tuple.push_back(sorted[i]);
      if (is_plegma(tuple) && rec(i + 1)) return true;
      tuple.pop_back();
    }
    return false;
  };
  if (rec(0)) return tuple;
  return std::nullopt;
}

SearchOutcome find_shift_embedding(const Family& F, const Family& G, const Window& M, int N,
                                   long budget) {
  SearchOutcome out;
  // L grows from M; picking position n for L(r) requires every member of F
  // decided by r positions to land inside the closure of G.
  int target = 0;
  for (int n = 1; n <= M.horizon(); ++n)
    if (M.at(n) <= N) target = n;
  target = std::min(target, M.horizon());
  if (target == 0) return out;
  SubsetSearch search{M, target, budget};
  auto probe = [&]() {
    std::vector<int> vals;
    for (int n : search.picked) vals.push_back(M.at(n));
    Window L{std::vector<int>(vals)};
    int r = L.horizon();
    // members of F that use position r (max = r) become decided now
    for (const auto& s : F.members(r)) {
      if (s.empty() || s.max() != r) continue;
      if (!G.closure_contains(L.apply(s))) return false;
    }
    return true;
  };
  auto pos = search.run(probe);
  out.checked = search.checked;
  if (pos) {
    out.found = true;
    out.witness = window_from_positions(M, *pos);
  }
  return out;
}

bool revalidate_monochromatic(const Family& F, int l, const Coloring& c, const Window& L,
                              int color) {
  auto restricted = Family::restrict(F.shared_from_this(), L);
  bool ok = true;
  for_each_plm(*restricted, l, L.last(), [&](const std::vector<FinSet>& t) {
    if (c.eval(t) != color) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

bool revalidate_partition(const Family& F, const std::function<int(const FinSet&)>& piece,
                          const Window& L, int piece_index) {
  auto restricted = Family::restrict(F.shared_from_this(), L);
  for (const auto& s : restricted->members(L.last()))
    if (piece(s) != piece_index) return false;
  return true;
}

bool revalidate_shift_embedding(const Family& F, const Family& G, const Window& L, int N) {
  for (const auto& s : F.members(L.horizon())) {
    if (s.empty()) continue;
    FinSet image = L.apply(s);
    if (!image.empty() && image.max() > N) continue;
    if (!G.closure_contains(image)) return false;
  }
  return true;
}

}  // namespace ptk
