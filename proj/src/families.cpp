#include "ptk/families.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace ptk {

namespace {

constexpr int kMaxScanN = 22;         // guard for generic subset scans
constexpr int kClosureProbeSlack = 16;  // extension probe range for bounded closure checks

std::vector<int> range_1_to(int N) {
  std::vector<int> v(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) v[static_cast<std::size_t>(i)] = i + 1;
  return v;
}

void sort_lex(std::vector<FinSet>& v) {
  std::sort(v.begin(), v.end(), [](const FinSet& a, const FinSet& b) { return a.elems() < b.elems(); });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool schreier_family_contains(const FinSet& s, const OrdinalCNF& xi) {
  // Hereditary hierarchy: S_0 is the singletons, S_{z+1} consists of unions
  // s_1 < ... < s_n with n <= min s_1 and each s_i in S_z, and at limits
  // S_xi = {s : s in S_{xi[min s]}}. All pieces of a decomposition are
  // contiguous runs of the sorted sequence, so the split search is a DP.
  struct Ctx {
    std::map<std::tuple<std::string, int, int>, bool> memo;
    const std::vector<int>* elems;

    bool in_s(const OrdinalCNF& xi, int lo, int hi) {  // [lo, hi)
      if (lo >= hi) return true;
      auto key = std::make_tuple(xi.to_string(), lo, hi);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      bool res;
      int first = (*elems)[static_cast<std::size_t>(lo)];
      if (xi.is_zero()) {
        res = (hi - lo) <= 1;
      } else if (xi.is_finite() && xi.finite_value() == 1) {
        res = (hi - lo) <= first;
      } else if (xi.is_successor()) {
        OrdinalCNF z = xi.predecessor();
        res = split(z, lo, hi, first);
      } else {
        res = in_s(xi.fundamental(static_cast<std::uint64_t>(first)), lo, hi);
      }
      memo[key] = res;
      return res;
    }

    bool split(const OrdinalCNF& z, int lo, int hi, int max_parts) {
      if (lo >= hi) return true;
      if (max_parts <= 0) return false;
      for (int j = lo + 1; j <= hi; ++j)
        if (in_s(z, lo, j) && split(z, j, hi, max_parts - 1)) return true;
      return false;
    }
  };
  if (s.empty()) return true;
  Ctx ctx;
  ctx.elems = &s.elems();
  return ctx.in_s(xi, 0, s.size());
}

FamilyPtr Family::k_subsets(int k) {
  if (k < 0) fail(Err::BadInput, "k_subsets needs k >= 0");
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::KSubsets;
  f->k_ = k;
  return f;
}

FamilyPtr Family::schreier(OrdinalCNF xi) {
  if (xi.is_zero()) fail(Err::BadInput, "schreier needs xi >= 1");
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::Schreier;
  f->xi_ = std::move(xi);
  return f;
}

FamilyPtr Family::explicit_family(std::vector<FinSet> sets) {
  auto canon = sets;
  sort_lex(canon);
  if (canon.size() != sets.size())
    fail(Err::BadInput, "explicit family has duplicate members");
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::Explicit;
  f->sets_ = std::move(canon);
  return f;
}

FamilyPtr Family::restrict(FamilyPtr base, Window L) {
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::Restrict;
  f->base_ = std::move(base);
  f->window_ = std::move(L);
  return f;
}

FamilyPtr Family::shift(FamilyPtr base, Window L) {
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::Shift;
  f->base_ = std::move(base);
  f->window_ = std::move(L);
  return f;
}

FamilyPtr Family::preimage(FamilyPtr base, Window L) {
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::Preimage;
  f->base_ = std::move(base);
  f->window_ = std::move(L);
  return f;
}

FamilyPtr Family::quotient(FamilyPtr base, Window L) {
  if (L.horizon() < 1) fail(Err::BadInput, "quotient needs a nonempty window");
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::Quotient;
  f->base_ = std::move(base);
  f->window_ = std::move(L);
  return f;
}

FamilyPtr Family::derived_at(FamilyPtr base, int n) {
  if (n < 1) fail(Err::BadInput, "derived_at needs n >= 1");
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::DerivedAt;
  f->base_ = std::move(base);
  f->n_ = n;
  return f;
}

FamilyPtr Family::section(FamilyPtr base, FinSet t) {
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::Section;
  f->base_ = std::move(base);
  f->t_ = std::move(t);
  return f;
}

FamilyPtr Family::direct_sum(FamilyPtr left, FamilyPtr right) {
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::DirectSum;
  f->base_ = std::move(left);
  f->right_ = std::move(right);
  return f;
}

FamilyPtr Family::closure_of(FamilyPtr base) {
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::Closure;
  f->base_ = std::move(base);
  return f;
}

FamilyPtr Family::max_elements(FamilyPtr base) {
  auto f = std::shared_ptr<Family>(new Family());
  f->kind_ = FamilyKind::MaxElements;
  f->base_ = std::move(base);
  return f;
}

bool Family::contains(const FinSet& s) const {
  switch (kind_) {
    case FamilyKind::KSubsets:
      return s.size() == k_;
    case FamilyKind::Schreier: {
      if (s.empty()) return false;
      if (!schreier_family_contains(s, xi_)) return false;
      return !schreier_family_contains(s.append(s.max() + 1), xi_);
    }
    case FamilyKind::Explicit:
      return std::binary_search(sets_.begin(), sets_.end(), s,
                                [](const FinSet& a, const FinSet& b) { return a.elems() < b.elems(); });
    case FamilyKind::Restrict: {
      if (!s.empty() && s.max() > window_.last())
        fail(Err::HorizonRequired, "restrict membership needs the window past " + std::to_string(s.max()));
      for (int v : s.elems())
        if (!window_.contains_value(v)) return false;
      return base_->contains(s);
    }
    case FamilyKind::Shift: {
      auto pos = window_.positions_of(s);
      if (!pos) return false;
      return base_->contains(*pos);
    }
    case FamilyKind::Preimage:
      if (!s.empty() && s.max() > window_.horizon())
        fail(Err::HorizonRequired, "preimage membership needs horizon >= " + std::to_string(s.max()));
      return base_->contains(window_.apply(s));
    case FamilyKind::Quotient: {
      // s = {l_{k_1},...,l_{k_m}} with {l_{k_j+1}} in F_(l_1) restricted to
      // the odd-position elements of L.
      if (s.empty()) return false;
      auto pos = window_.positions_of(s);
      if (!pos) return false;
      std::vector<int> shifted;
      for (int kj : pos->elems()) {
        if (kj + 1 > window_.horizon())
          fail(Err::HorizonRequired, "quotient membership needs one more window element");
        if (kj % 2 != 0) return false;  // l_{k_j+1} must sit at an odd position
        shifted.push_back(window_.at(kj + 1));
      }
      FinSet sh(std::move(shifted));
      int l1 = window_.at(1);
      if (!sh.empty() && sh.min() <= l1) return false;
      return base_->contains(FinSet(std::vector<int>{l1}).unite(sh));
    }
    case FamilyKind::DerivedAt: {
      if (!s.empty() && s.min() <= n_) return false;
      return base_->contains(FinSet(std::vector<int>{n_}).unite(s));
    }
    case FamilyKind::Section:
      return t_.is_initial_segment_of(s) && base_->contains(s);
    case FamilyKind::DirectSum: {
      for (int i = 0; i <= s.size(); ++i) {
        FinSet u = s.initial_segment(i);
        FinSet v(std::vector<int>(s.elems().begin() + i, s.elems().end()));
        if (base_->contains(u) && right_->contains(v)) return true;
      }
      return false;
    }
    case FamilyKind::Closure:
      return base_->closure_contains(s);
    case FamilyKind::MaxElements: {
      if (!base_->contains(s)) return false;
      if (base_->kind() == FamilyKind::Explicit) {
        for (const auto& m : base_->explicit_sets())
          if (s.is_proper_initial_segment_of(m)) return false;
        return true;
      }
      // bounded maximality: extensions that leave the horizon count as absent
      int lo = s.empty() ? 1 : s.max() + 1;
      for (int b = lo; b <= lo + kClosureProbeSlack; ++b) {
        try {
          if (base_->closure_contains(s.append(b))) return false;
        } catch (const DomainError& e) {
          if (e.code() != Err::HorizonRequired) throw;
        }
      }
      return true;
    }
  }
  return false;
}

bool Family::closure_contains(const FinSet& s) const {
  switch (kind_) {
    case FamilyKind::KSubsets:
      return s.size() <= k_;
    case FamilyKind::Schreier:
      return schreier_family_contains(s, xi_);
    case FamilyKind::Explicit:
      for (const auto& m : sets_)
        if (s.is_initial_segment_of(m)) return true;
      return false;
    case FamilyKind::Restrict: {
      if (!s.empty() && s.max() > window_.last())
        fail(Err::HorizonRequired, "restrict closure needs the window past " + std::to_string(s.max()));
      for (int v : s.elems())
        if (!window_.contains_value(v)) return false;
      if (base_->known_regular_thin() || base_->known_regular())
        return base_->closure_contains(s);
      break;  // bounded fallback below
    }
    case FamilyKind::Shift: {
      auto pos = window_.positions_of(s);
      if (!pos) return false;
      return base_->closure_contains(*pos);
    }
    case FamilyKind::Preimage:
      return base_->closure_contains(window_.apply(s));
    case FamilyKind::DerivedAt: {
      if (!s.empty() && s.min() <= n_) return false;
      if (base_->known_regular_thin())
        return base_->closure_contains(FinSet(std::vector<int>{n_}).unite(s));
      break;
    }
    case FamilyKind::Section: {
      if (s.is_initial_segment_of(t_)) return true;
      return t_.is_initial_segment_of(s) && base_->closure_contains(s);
    }
    case FamilyKind::DirectSum: {
      if (base_->closure_contains(s)) return true;
      for (int i = 1; i <= s.size(); ++i) {
        FinSet u = s.initial_segment(i);
        FinSet v(std::vector<int>(s.elems().begin() + i, s.elems().end()));
        if (base_->contains(u) && right_->closure_contains(v)) return true;
      }
      return false;
    }
    case FamilyKind::Closure:
      return base_->closure_contains(s);
    case FamilyKind::MaxElements:
      return base_->closure_contains(s);
    case FamilyKind::Quotient:
      break;  // bounded fallback
  }
  // Bounded fallback: search extensions of s by elements up to a slack past
  // max(s). Semantics are "closure at horizon"; exact for the catalogue
  // kinds handled above.
  if (contains(s)) return true;
  int lo = s.empty() ? 1 : s.max() + 1;
  struct Probe {
    const Family* fam;
    int limit;
    bool extend(const FinSet& t) {
      try {
        if (fam->contains(t)) return true;
      } catch (const DomainError& e) {
        if (e.code() != Err::HorizonRequired) throw;
        return false;
      }
      int from = t.empty() ? 1 : t.max() + 1;
      for (int b = from; b <= limit; ++b)
        if (extend(t.append(b))) return true;
      return false;
    }
  };
  Probe probe{this, lo + kClosureProbeSlack};
  for (int b = lo; b <= probe.limit; ++b)
    if (probe.extend(s.append(b))) return true;
  return false;
}

std::vector<FinSet> Family::members(int N) const {
  if (N < 1) fail(Err::BadInput, "members needs N >= 1");
  std::vector<FinSet> out;
  switch (kind_) {
    case FamilyKind::KSubsets: {
      std::vector<int> idx(static_cast<std::size_t>(k_));
      std::function<void(int, int)> rec = [&](int pos, int from) {
        if (pos == k_) {
          std::vector<int> v;
          for (int i = 0; i < k_; ++i) v.push_back(idx[static_cast<std::size_t>(i)]);
          out.push_back(FinSet(std::move(v)));
          return;
        }
        for (int e = from; e <= N - (k_ - pos - 1); ++e) {
          idx[static_cast<std::size_t>(pos)] = e;
          rec(pos + 1, e + 1);
        }
      };
      if (k_ == 0)
        out.push_back(FinSet());
      else
        rec(0, 1);
      break;
    }
    case FamilyKind::Schreier: {
      // DFS over the hereditary family; members are the maximal elements.
      std::function<void(const FinSet&)> rec = [&](const FinSet& t) {
        if (!t.empty() && contains(t)) {
          out.push_back(t);
          return;  // thin: nothing in the family extends a member
        }
        int from = t.empty() ? 1 : t.max() + 1;
        for (int b = from; b <= N; ++b) {
          FinSet u = t.append(b);
          if (schreier_family_contains(u, xi_)) rec(u);
        }
      };
      rec(FinSet());
      break;
    }
    case FamilyKind::Explicit: {
      for (const auto& m : sets_)
        if (m.empty() || m.max() <= N) out.push_back(m);
      break;
    }
    case FamilyKind::Restrict: {
      if (N > window_.last())
        fail(Err::HorizonRequired, "restrict enumeration needs the window past " + std::to_string(N));
      for (const auto& m : base_->members(N)) {
        bool ok = true;
        for (int v : m.elems())
          if (!window_.contains_value(v)) { ok = false; break; }
        if (ok) out.push_back(m);
      }
      break;
    }
    case FamilyKind::Shift: {
      int h = 0;
      while (h < window_.horizon() && window_.at(h + 1) <= N) ++h;
      if (h == window_.horizon() && window_.last() < N)
        fail(Err::HorizonRequired, "shift enumeration needs the window past " + std::to_string(N));
      if (h >= 1)
        for (const auto& m : base_->members(h)) out.push_back(window_.apply(m));
      else if (base_->contains(FinSet()))
        out.push_back(FinSet());
      break;
    }
    case FamilyKind::Preimage: {
      if (window_.horizon() < N)
        fail(Err::HorizonRequired, "preimage enumeration needs horizon >= " + std::to_string(N));
      for (const auto& m : base_->members(window_.at(N))) {
        auto pos = window_.positions_of(m);
        if (pos && (pos->empty() || pos->max() <= N)) out.push_back(*pos);
      }
      break;
    }
    default: {
      if (N > kMaxScanN) fail(Err::BadInput, "enumeration horizon too large for this family kind");
      std::vector<int> universe = range_1_to(N);
      for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
        std::vector<int> v;
        for (int i = 0; i < N; ++i)
          if (mask & (1u << i)) v.push_back(universe[static_cast<std::size_t>(i)]);
        FinSet s(std::move(v));
        if (contains(s)) out.push_back(s);
      }
      break;
    }
  }
  sort_lex(out);
  return out;
}

std::vector<FinSet> Family::closure_members(int N) const {
  // every element of the closure inside [1..N], including prefixes of
  // members that extend past N
  if (N > kMaxScanN) fail(Err::BadInput, "closure enumeration horizon too large");
  std::vector<FinSet> out;
  for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
    std::vector<int> v;
    for (int i = 0; i < N; ++i)
      if (mask & (1u << i)) v.push_back(i + 1);
    FinSet s(std::move(v));
    if (closure_contains(s)) out.push_back(s);
  }
  sort_lex(out);
  return out;
}

bool Family::known_regular_thin() const {
  switch (kind_) {
    case FamilyKind::KSubsets:
    case FamilyKind::Schreier:
      return true;
    case FamilyKind::DirectSum:
      return base_->known_regular_thin() && right_->known_regular_thin();
    case FamilyKind::Preimage:
      return base_->known_regular_thin();
    case FamilyKind::MaxElements:
      return base_->known_regular();
    default:
      return false;
  }
}

bool Family::known_regular() const {
  switch (kind_) {
    case FamilyKind::Closure:
      return base_->known_regular_thin() || base_->known_regular();
    default:
      return false;
  }
}

OrderValue Family::order() const {
  switch (kind_) {
    case FamilyKind::KSubsets:
      return OrderValue::of(OrdinalCNF(static_cast<std::uint64_t>(k_)));
    case FamilyKind::Schreier: {
      if (!xi_.is_finite())
        fail(Err::OrderUnknown, "order w^" + xi_.to_string() + " exceeds the w^w cap");
      return OrderValue::of(OrdinalCNF::omega_pow(static_cast<std::uint32_t>(xi_.finite_value())));
    }
    case FamilyKind::Explicit: {
      if (sets_.empty()) return OrderValue::empty_family();
      // Rank of the initial-segment closure tree; finite, so the sup is a max
      // over single-element extensions.
      std::set<std::vector<int>> closure;
      for (const auto& m : sets_)
        for (int k = 0; k <= m.size(); ++k) closure.insert(m.initial_segment(k).elems());
      std::map<std::vector<int>, int> rank;
      std::vector<std::vector<int>> nodes(closure.begin(), closure.end());
      std::sort(nodes.begin(), nodes.end(),
                [](const auto& a, const auto& b) { return a.size() > b.size(); });
      for (const auto& t : nodes) {
        int r = 0;
        for (const auto& [u, ru] : rank) {
          if (u.size() == t.size() + 1 && std::equal(t.begin(), t.end(), u.begin()))
            r = std::max(r, ru + 1);
        }
        rank[t] = r;
      }
      return OrderValue::of(OrdinalCNF(static_cast<std::uint64_t>(rank[{}])));
    }
    case FamilyKind::Restrict: {
      if (base_->known_regular_thin() || base_->known_regular()) {
        auto o = base_->order();
        o.note = "o(F|L)=o(F) for a regular thin family; restriction assumed order-preserving";
        return o;
      }
      fail(Err::OrderUnknown, "order of a restricted non-regular family");
    }
    case FamilyKind::Shift: {
      auto o = base_->order();
      o.note = "o(F(L))=o(F)";
      return o;
    }
    case FamilyKind::Preimage: {
      if (base_->known_regular_thin()) {
        auto o = base_->order();
        o.note = "o(F(L^-1))=o(F) for a regular thin family";
        return o;
      }
      fail(Err::OrderUnknown, "order of a preimage of a non-regular-thin family");
    }
    case FamilyKind::Quotient:
      return Family::derived_at(base_, window_.at(1))->order();
    case FamilyKind::DerivedAt: {
      if (base_->kind() == FamilyKind::KSubsets) {
        int k = base_->k_param();
        if (k == 0) return OrderValue::empty_family();
        return OrderValue::of(OrdinalCNF(static_cast<std::uint64_t>(k - 1)));
      }
      if (base_->kind() == FamilyKind::Schreier && base_->xi_param() == OrdinalCNF(1)) {
        // F_(n) of the Schreier family is the (n-1)-subsets above n.
        return OrderValue::of(OrdinalCNF(static_cast<std::uint64_t>(n_ - 1)));
      }
      if (base_->kind() == FamilyKind::Explicit) {
        std::vector<FinSet> derived;
        for (const auto& m : base_->explicit_sets())
          if (!m.empty() && m.min() == n_)
            derived.push_back(FinSet(std::vector<int>(m.elems().begin() + 1, m.elems().end())));
        sort_lex(derived);
        return Family::explicit_family(std::move(derived))->order();
      }
      fail(Err::OrderUnknown, "derived order for this base kind");
    }
    case FamilyKind::Section: {
      if (base_->kind() == FamilyKind::Explicit) {
        std::vector<FinSet> sec;
        for (const auto& m : base_->explicit_sets())
          if (t_.is_initial_segment_of(m)) sec.push_back(m);
        return Family::explicit_family(std::move(sec))->order();
      }
      fail(Err::OrderUnknown, "section order for this base kind");
    }
    case FamilyKind::DirectSum: {
      auto ol = base_->order();
      auto orr = right_->order();
      if (ol.minus_one || orr.minus_one) return OrderValue::empty_family();
      return OrderValue::of(ord_add(orr.ordinal, ol.ordinal));
    }
    case FamilyKind::Closure:
      return base_->order();
    case FamilyKind::MaxElements: {
      if (base_->kind() == FamilyKind::Explicit) {
        std::vector<FinSet> mx;
        for (const auto& m : base_->explicit_sets()) {
          bool maximal = true;
          for (const auto& u : base_->explicit_sets())
            if (m.is_proper_initial_segment_of(u)) { maximal = false; break; }
          if (maximal) mx.push_back(m);
        }
        return Family::explicit_family(std::move(mx))->order();
      }
      if (base_->known_regular()) {
        auto o = base_->order();
        o.note = "maximal elements of a regular family keep its order";
        return o;
      }
      fail(Err::OrderUnknown, "max-elements order for this base kind");
    }
  }
  fail(Err::OrderUnknown, "order not derivable");
}

PredicateReport Family::predicates(int N) const {
  PredicateReport rep;
  if (N > 16) fail(Err::BadInput, "predicates horizon capped at 16");
  // thin
  try {
    auto mem = members(N);
    rep.thin = Verdict::Yes;
    for (std::size_t i = 0; i < mem.size() && rep.thin == Verdict::Yes; ++i)
      for (std::size_t j = 0; j < mem.size(); ++j)
        if (i != j && mem[i].is_initial_segment_of(mem[j])) {
          rep.thin = Verdict::No;
          rep.thin_witness = mem[i];
          break;
        }
  } catch (const DomainError& e) {
    if (e.code() != Err::HorizonRequired) throw;
  }
  // hereditary and spreading of the closure, scanned over all of 2^[1..N]
  try {
    std::set<std::vector<int>> cs;
    std::uint32_t full = (1u << N);
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      std::vector<int> v;
      for (int i = 0; i < N; ++i)
        if (mask & (1u << i)) v.push_back(i + 1);
      if (closure_contains(FinSet(v))) cs.insert(v);
    }
    rep.hereditary = Verdict::Yes;
    rep.spreading = Verdict::Yes;
    for (const auto& tv : cs) {
      FinSet t{std::vector<int>(tv)};
      for (int drop = 1; drop <= t.size(); ++drop) {
        std::vector<int> u;
        for (int i = 1; i <= t.size(); ++i)
          if (i != drop) u.push_back(t.at(i));
        if (!cs.count(u)) rep.hereditary = Verdict::No;
      }
      // single-element bumps generate all dominations
      for (int i = 1; i <= t.size(); ++i) {
        std::vector<int> u = t.elems();
        int e = u[static_cast<std::size_t>(i - 1)] + 1;
        if (e > N) continue;
        if (i < t.size() && e >= t.at(i + 1)) continue;
        u[static_cast<std::size_t>(i - 1)] = e;
        if (!cs.count(u)) rep.spreading = Verdict::No;
      }
    }
  } catch (const DomainError& e) {
    if (e.code() != Err::HorizonRequired) throw;
  }
  auto all = {rep.thin, rep.hereditary, rep.spreading};
  if (std::any_of(all.begin(), all.end(), [](Verdict v) { return v == Verdict::No; }))
    rep.regular_thin = Verdict::No;
  else if (std::all_of(all.begin(), all.end(), [](Verdict v) { return v == Verdict::Yes; }))
    rep.regular_thin = Verdict::Yes;
  return rep;
}

FinSet Family::initial_segment_in(const Window& L) const {
  for (int k = 0; k <= L.horizon(); ++k) {
    FinSet p = L.prefix_set(k);
    if (contains(p)) return p;
  }
  fail(Err::NotVeryLargeAtHorizon,
       "no initial segment of the window prefix lies in the family");
}

Verdict Family::is_very_large(const Window& L) const {
  // Walks every increasing selection from the window. A branch is decided
  // positive when a prefix hits the family, decided negative when the prefix
  // leaves the closure (no extension can ever hit), and stuck when the
  // window runs out first. Yes requires no negative branch and at least one
  // decided one.
  long decided_pos = 0, stuck = 0;
  bool counterexample = false;
  std::function<void(const FinSet&, int)> rec = [&](const FinSet& p, int from) {
    if (counterexample) return;
    if (!p.empty()) {
      if (contains(p)) {
        ++decided_pos;
        return;
      }
      if (!closure_contains(p)) {
        counterexample = true;
        return;
      }
    }
    bool extended = false;
    for (int n = from; n <= L.horizon(); ++n) {
      extended = true;
      rec(p.append(L.at(n)), n + 1);
      if (counterexample) return;
    }
    if (!extended) ++stuck;
  };
  try {
    rec(FinSet(), 1);
  } catch (const DomainError& e) {
    if (e.code() != Err::HorizonRequired) throw;
    return Verdict::UnknownAtHorizon;
  }
  if (counterexample) return Verdict::No;
  if (stuck == 0) return Verdict::Yes;
  return decided_pos > 0 ? Verdict::Yes : Verdict::UnknownAtHorizon;
}

std::string Family::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case FamilyKind::KSubsets: os << "[N]^" << k_; break;
    case FamilyKind::Schreier: os << "Schreier(" << xi_.to_string() << ")"; break;
    case FamilyKind::Explicit: os << "explicit(" << sets_.size() << " sets)"; break;
    case FamilyKind::Restrict: os << base_->describe() << "|L"; break;
    case FamilyKind::Shift: os << base_->describe() << "(L)"; break;
    case FamilyKind::Preimage: os << base_->describe() << "(L^-1)"; break;
    case FamilyKind::Quotient: os << base_->describe() << "/L"; break;
    case FamilyKind::DerivedAt: os << base_->describe() << "_(" << n_ << ")"; break;
    case FamilyKind::Section: os << base_->describe() << "_[{" << t_.to_string() << "}]"; break;
    case FamilyKind::DirectSum: os << base_->describe() << "(+)" << right_->describe(); break;
    case FamilyKind::Closure: os << "closure(" << base_->describe() << ")"; break;
    case FamilyKind::MaxElements: os << "max(" << base_->describe() << ")"; break;
  }
  return os.str();
}

FamilyPtr transform(FamilyPtr f, TransformOp op, const TransformArgs& args) {
  auto need_window = [&]() -> const Window& {
    if (!args.window) fail(Err::BadInput, "transform needs a window argument");
    return *args.window;
  };
  switch (op) {
    case TransformOp::Restrict: return Family::restrict(std::move(f), need_window());
    case TransformOp::Shift: return Family::shift(std::move(f), need_window());
    case TransformOp::Preimage: return Family::preimage(std::move(f), need_window());
    case TransformOp::Quotient: return Family::quotient(std::move(f), need_window());
    case TransformOp::DerivedAt:
      if (!args.n) fail(Err::BadInput, "derived_at needs n");
      return Family::derived_at(std::move(f), *args.n);
    case TransformOp::Section:
      if (!args.t) fail(Err::BadInput, "section needs t");
      return Family::section(std::move(f), *args.t);
    case TransformOp::DirectSum:
      if (!args.other) fail(Err::BadInput, "direct_sum needs a second family");
      return Family::direct_sum(std::move(f), args.other);
  }
  fail(Err::BadInput, "unknown transform");
}

}  // namespace ptk
