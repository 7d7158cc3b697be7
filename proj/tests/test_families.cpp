#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "ptk/families.hpp"

using namespace ptk;

namespace {

FamilyPtr f_omega() { return Family::schreier(OrdinalCNF(1)); }

std::vector<FinSet> sets(const std::vector<std::string>& texts) {
  std::vector<FinSet> out;
  for (const auto& t : texts) out.push_back(FinSet::parse(t));
  return out;
}

/// Independent tree-rank oracle: longest chain above the root in the
/// initial-segment closure of an explicit list.
int rank_oracle(const std::vector<FinSet>& members) {
  std::set<std::vector<int>> closure;
  for (const auto& m : members)
    for (int k = 0; k <= m.size(); ++k) closure.insert(m.initial_segment(k).elems());
  std::function<int(const std::vector<int>&)> height = [&](const std::vector<int>& t) {
    int best = 0;
    for (const auto& u : closure) {
      if (u.size() != t.size() + 1) continue;
      if (std::equal(t.begin(), t.end(), u.begin())) best = std::max(best, 1 + height(u));
    }
    return best;
  };
  return height({});
}

}  // namespace

TEST_CASE("members of the basic catalogue") {
  auto fw = f_omega();
  CHECK(fw->members(4) == sets({"1", "2,3", "2,4"}));
  CHECK(Family::k_subsets(2)->members(3) == sets({"1,2", "1,3", "2,3"}));
  auto ds = Family::direct_sum(Family::k_subsets(1), Family::k_subsets(1));
  CHECK(ds->members(3) == sets({"1,2", "1,3", "2,3"}));
}

TEST_CASE("orders of the catalogue") {
  CHECK(Family::k_subsets(2)->order().to_string() == "2");
  CHECK(f_omega()->order().to_string() == "w");
  CHECK(Family::schreier(OrdinalCNF(2))->order().to_string() == "w^2");
  CHECK(Family::explicit_family(sets({"1", "2,3"}))->order().to_string() == "2");
  for (int k = 1; k <= 5; ++k)
    CHECK(Family::k_subsets(k)->order().to_string() == std::to_string(k));
}

TEST_CASE("explicit family tree ranks match the hand-checked table") {
  // ten cases, ranks recomputed by the independent longest-chain oracle and
  // frozen from hand derivations
  std::vector<std::pair<std::vector<std::string>, int>> table = {
      {{"1"}, 1},
      {{"1", "2,3"}, 2},
      {{"1,2,3"}, 3},
      {{"1", "2", "3"}, 1},
      {{"1,2", "1,3", "2,3"}, 2},
      {{"1", "1,2"}, 2},
      {{"2,4,6,8"}, 4},
      {{"1", "2,3", "3,4,5"}, 3},
      {{"1,2", "3"}, 2},
      {{"2", "1,3,5,7,9"}, 5},
  };
  for (const auto& [texts, expected] : table) {
    auto members = sets(texts);
    CHECK(rank_oracle(members) == expected);
    auto ord = Family::explicit_family(members)->order();
    REQUIRE(!ord.minus_one);
    CHECK(ord.ordinal == OrdinalCNF(static_cast<std::uint64_t>(expected)));
  }
  CHECK(Family::explicit_family({})->order().minus_one);
  CHECK(Family::explicit_family({})->order().to_string() == "-1");
}

TEST_CASE("direct sum order arithmetic") {
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      auto ds = Family::direct_sum(Family::k_subsets(j), Family::k_subsets(k));
      CHECK(ds->order().ordinal == OrdinalCNF(static_cast<std::uint64_t>(j + k)));
    }
  // o(G (+) F) = o(F) + o(G) with G the first block
  auto a = Family::direct_sum(Family::k_subsets(2), f_omega());
  CHECK(a->order().to_string() == "w+2");
  auto b = Family::direct_sum(f_omega(), Family::k_subsets(2));
  CHECK(b->order().to_string() == "w");
  auto c = Family::direct_sum(Family::schreier(OrdinalCNF(2)), f_omega());
  CHECK(c->order().to_string() == "w^2");
  auto d = Family::direct_sum(f_omega(), Family::schreier(OrdinalCNF(2)));
  CHECK(d->order().to_string() == "w^2+w");
}

TEST_CASE("direct sum members agree with the defining pairs") {
  auto fw = f_omega();
  auto ds = Family::direct_sum(Family::k_subsets(1), fw);
  std::set<FinSet> expect;
  for (const auto& u : Family::k_subsets(1)->members(6))
    for (const auto& v : fw->members(6))
      if (!v.empty() && u.max() < v.min()) expect.insert(u.unite(v));
  auto got = ds->members(6);
  CHECK(std::set<FinSet>(got.begin(), got.end()) == expect);
}

TEST_CASE("closure lists initial segments") {
  auto e = Family::explicit_family(sets({"2,4"}));
  CHECK(e->closure_members(4) == sets({"", "2", "2,4"}));
  CHECK(f_omega()->closure_members(3) == sets({"", "1", "2", "2,3", "3"}));
  CHECK(Family::explicit_family({})->closure_members(5).empty());
}

TEST_CASE("predicates on the catalogue") {
  auto rep = f_omega()->predicates(8);
  CHECK(rep.thin == Verdict::Yes);
  CHECK(rep.regular_thin == Verdict::Yes);

  auto bad = Family::explicit_family(sets({"1", "1,2"}))->predicates(3);
  CHECK(bad.thin == Verdict::No);
  REQUIRE(bad.thin_witness.has_value());
  CHECK(*bad.thin_witness == FinSet::parse("1"));

  auto k2 = Family::k_subsets(2)->predicates(6);
  CHECK(k2.thin == Verdict::Yes);
  CHECK(k2.spreading == Verdict::Yes);
  CHECK(k2.hereditary == Verdict::Yes);
  CHECK(k2.regular_thin == Verdict::Yes);

  // a family whose closure is not spreading
  auto skewed = Family::explicit_family(sets({"1,2"}))->predicates(4);
  CHECK(skewed.spreading == Verdict::No);
}

TEST_CASE("duplicate explicit members are rejected") {
  CHECK_THROWS_AS(Family::explicit_family(sets({"1,2", "1,2"})), DomainError);
}

TEST_CASE("schreier hierarchy membership") {
  // S_1 = {s : |s| <= min s}; the thin family keeps the maximal ones
  CHECK(schreier_family_contains(FinSet::parse("3,4"), OrdinalCNF(1)));
  CHECK(!schreier_family_contains(FinSet::parse("1,2"), OrdinalCNF(1)));
  CHECK(f_omega()->contains(FinSet::parse("3,4,5")));
  CHECK(!f_omega()->contains(FinSet::parse("3,4")));
  // S_2 holds unions of at most min s_1 many S_1 sets
  CHECK(schreier_family_contains(FinSet::parse("2,3,4,5"), OrdinalCNF(2)));
  auto s2 = Family::schreier(OrdinalCNF(2));
  for (const auto& m : s2->members(8)) {
    CHECK(schreier_family_contains(m, OrdinalCNF(2)));
    CHECK(!schreier_family_contains(m.append(m.max() + 1), OrdinalCNF(2)));
  }
  // limit construction stays enumerable; its order exceeds the ordinal cap
  auto sw = Family::schreier(OrdinalCNF::omega());
  CHECK(!sw->members(6).empty());
  CHECK_THROWS_AS(sw->order(), DomainError);
}

TEST_CASE("derived family") {
  auto d = Family::derived_at(f_omega(), 2);
  CHECK(d->members(6) == sets({"3", "4", "5", "6"}));
  auto dk = Family::derived_at(Family::k_subsets(2), 3);
  CHECK(dk->order().to_string() == "1");
  for (const auto& s : dk->members(6)) {
    CHECK(s.size() == 1);
    CHECK(s.min() > 3);
  }
}

TEST_CASE("preimage acts as the set system over indices") {
  auto pre = Family::preimage(Family::k_subsets(2), Window::evens(10));
  CHECK(pre->members(3) == sets({"1,2", "1,3", "2,3"}));
  CHECK(pre->order().to_string() == "2");
}

TEST_CASE("quotient unfolds the definition verbatim") {
  // [N]^2 over the identity window: {l_k} is a member iff l_{k+1} sits at an
  // odd position and {l_1, l_{k+1}} lies in the base family, forcing the
  // even values >= 2.
  auto q = Family::quotient(Family::k_subsets(2), Window::identity(16));
  CHECK(q->members(8) == sets({"2", "4", "6", "8"}));
  // direct unfolding for the Schreier family: F_(1) holds only the empty
  // set, so the quotient picks up no members at all
  auto qw = Family::quotient(f_omega(), Window::identity(16));
  CHECK(qw->members(12).empty());
  // quotient of [N]^3 keeps doubletons on even positions
  auto q3 = Family::quotient(Family::k_subsets(3), Window::identity(16));
  auto q3m = q3->members(10);
  CHECK(!q3m.empty());
  for (const auto& s : q3m) {
    CHECK(s.size() == 2);
    for (int v : s.elems()) CHECK(v % 2 == 0);
  }
}

TEST_CASE("restriction identities for regular thin families") {
  std::vector<FamilyPtr> catalogue = {Family::k_subsets(2), Family::k_subsets(3), f_omega()};
  Window L = Window::evens(12);
  for (const auto& F : catalogue) {
    auto restricted = Family::restrict(F, L);
    // closure(F|L) members = closure(F)|L members (the hat commutes)
    auto lhs = restricted->closure_members(12);
    std::vector<FinSet> rhs;
    for (const auto& t : Family::closure_of(F)->members(12)) {
      bool inside = true;
      for (int v : t.elems())
        if (!L.contains_value(v)) inside = false;
      if (inside) rhs.push_back(t);
    }
    std::sort(rhs.begin(), rhs.end(),
              [](const FinSet& a, const FinSet& b) { return a.elems() < b.elems(); });
    CHECK(lhs == rhs);
    // maximal elements of the restricted closure are the restricted family
    auto maxed = Family::max_elements(Family::restrict(Family::closure_of(F), L));
    CHECK(maxed->members(12) == restricted->members(12));
    // o(F(L^-1)) = o(F)
    CHECK(Family::preimage(F, L)->order().ordinal == F->order().ordinal);
  }
}

TEST_CASE("initial segment of a window in a family") {
  Window odd3 = Window::arithmetic(3, 2, 10);
  CHECK(f_omega()->initial_segment_in(odd3) == FinSet::parse("3,5,7"));
  CHECK(Family::k_subsets(2)->initial_segment_in(Window::identity(10)) == FinSet::parse("1,2"));
  CHECK(f_omega()->initial_segment_in(Window::identity(10)) == FinSet::parse("1"));
  CHECK_THROWS_AS(Family::explicit_family(sets({"9"}))->initial_segment_in(Window::identity(5)),
                  DomainError);
}

TEST_CASE("very large verdicts") {
  CHECK(f_omega()->is_very_large(Window::identity(12)) == Verdict::Yes);
  CHECK(Family::explicit_family(sets({"1"}))->is_very_large(Window::identity(6)) == Verdict::No);
  CHECK(Family::k_subsets(3)->is_very_large(Window::identity(2)) == Verdict::UnknownAtHorizon);
  CHECK(Family::k_subsets(2)->is_very_large(Window::evens(10)) == Verdict::Yes);
}

TEST_CASE("restrict needs its window to cover the horizon") {
  auto r = Family::restrict(Family::k_subsets(1), Window::identity(4));
  CHECK_THROWS_AS(r->members(9), DomainError);
  CHECK(r->members(4) == sets({"1", "2", "3", "4"}));
}

TEST_CASE("section keeps extensions of t") {
  auto sec = Family::section(f_omega(), FinSet::parse("3,4"));
  auto mem = sec->members(8);
  CHECK(!mem.empty());
  for (const auto& s : mem) CHECK(FinSet::parse("3,4").is_initial_segment_of(s));
}

TEST_CASE("shift moves members along the window") {
  auto sh = Family::shift(Family::k_subsets(2), Window::evens(10));
  CHECK(sh->contains(FinSet::parse("2,6")));
  CHECK(!sh->contains(FinSet::parse("2,5")));
  CHECK(sh->order().to_string() == "2");
  for (const auto& s : sh->members(8))
    for (int v : s.elems()) CHECK(v % 2 == 0);
}
