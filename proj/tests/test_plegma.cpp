#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "ptk/plegma.hpp"

using namespace ptk;

namespace {

FamilyPtr f_omega() { return Family::schreier(OrdinalCNF(1)); }

std::vector<FinSet> sets(const std::vector<std::string>& texts) {
  std::vector<FinSet> out;
  for (const auto& t : texts) out.push_back(FinSet::parse(t));
  return out;
}

}  // namespace

TEST_CASE("plegma predicate basics") {
  CHECK(is_plegma(sets({"1", "2"})));
  CHECK(is_plegma(sets({"1,3", "2,4"})));
  CHECK(!is_plegma(sets({"2,4", "1,3"})));
  // doubletons interleave: n1 < n2 < m1 < m2
  CHECK(!is_plegma(sets({"1,2", "3,4"})));
  CHECK(!is_plegma(sets({"1,4", "2,3"})));
  CHECK(is_plegma(sets({"1", "2,3"})));
  CHECK_THROWS_AS(is_plegma({FinSet()}), DomainError);
  CHECK_THROWS_AS(is_plegma({}), DomainError);
}

TEST_CASE("pair of unequal lengths follows the clauses") {
  // ({1,3},{2}): clause (i) gives 1 < 2 and clause (ii) with i=2, j=1 gives
  // 2 < 3; the shorter second member passes the raw predicate, though such
  // pairs never arise inside regular thin families
  CHECK(is_plegma(sets({"1,3", "2"})));
}

TEST_CASE("enumeration matches a brute-force pair filter") {
  auto fw = f_omega();
  auto tuples = enumerate_plm(*fw, 2, 6);
  auto mem = fw->members(6);
  long expected = 0;
  for (const auto& a : mem)
    for (const auto& b : mem)
      if (a != b && is_plegma({a, b})) ++expected;
  CHECK(static_cast<long>(tuples.size()) == expected);
  // lexicographic order of concatenated members
  for (std::size_t i = 1; i < tuples.size(); ++i) {
    std::vector<int> prev, cur;
    for (const auto& s : tuples[i - 1]) prev.insert(prev.end(), s.elems().begin(), s.elems().end());
    for (const auto& s : tuples[i]) cur.insert(cur.end(), s.elems().begin(), s.elems().end());
    CHECK(prev < cur);
  }
}

TEST_CASE("enumeration counts for the simplest families") {
  CHECK(enumerate_plm(*Family::k_subsets(1), 2, 3).size() == 3);
  auto t = enumerate_plm(*Family::k_subsets(2), 2, 4);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == sets({"1,3", "2,4"}));
}

TEST_CASE("plegma law properties over the catalogue") {
  std::vector<FamilyPtr> cat = {Family::k_subsets(1), Family::k_subsets(2), f_omega(),
                                Family::schreier(OrdinalCNF(2))};
  for (const auto& F : cat) {
    for (int l = 2; l <= 3; ++l) {
      for (const auto& tuple : enumerate_plm(*F, l, 9)) {
        for (std::uint32_t mask = 1; mask < (1u << tuple.size()); ++mask) {
          std::vector<FinSet> sub;
          for (std::size_t i = 0; i < tuple.size(); ++i)
            if (mask & (1u << i)) sub.push_back(tuple[i]);
          CHECK(is_plegma(sub));
        }
        for (std::size_t i = 0; i < tuple.size(); ++i)
          for (std::size_t j = i + 1; j < tuple.size(); ++j)
            CHECK(tuple[i].intersect(tuple[j]).empty());
        for (std::size_t i = 1; i < tuple.size(); ++i)
          CHECK(tuple[i - 1].size() <= tuple[i].size());
      }
    }
  }
}

TEST_CASE("skipped restriction") {
  auto fw = f_omega();
  CHECK(skipped_restriction(*fw, Window::identity(4), 4) == sets({"1", "2,4"}));
  auto k1 = Family::k_subsets(1);
  CHECK(skipped_restriction(*k1, Window::evens(4), 8) == sets({"2", "4", "6", "8"}));
  // evens with an even number strictly between the coordinates
  auto k2 = Family::k_subsets(2);
  auto got = skipped_restriction(*k2, Window::evens(4), 8);
  std::vector<FinSet> expect;
  for (const auto& s : Family::restrict(k2, Window::evens(4))->members(8)) {
    bool gap = false;
    for (int v = s.at(1) + 1; v < s.at(2); ++v)
      if (v % 2 == 0) gap = true;
    if (gap) expect.push_back(s);
  }
  CHECK(got == expect);
  CHECK(got == sets({"2,6", "2,8", "4,8"}));
}

TEST_CASE("bfs distance oracle values") {
  auto k2 = Family::k_subsets(2);
  CHECK(bfs_distance(*k2, 8, FinSet::parse("1,3"), FinSet::parse("5,7")) == 2);
  CHECK(bfs_distance(*Family::k_subsets(1), 9, FinSet::parse("2"), FinSet::parse("9")) == 1);
  CHECK(!bfs_distance(*k2, 4, FinSet::parse("2,4"), FinSet::parse("1,3")).has_value());
  CHECK_THROWS_AS(bfs_distance(*k2, 4, FinSet::parse("1,9"), FinSet::parse("2,4")), DomainError);
}

TEST_CASE("plegma path follows the construction") {
  auto k2 = Family::k_subsets(2);
  Window id = Window::identity(12);
  auto path = plegma_path(*k2, id, FinSet::parse("1,3"), FinSet::parse("5,7"));
  REQUIRE(path.size() == 3);
  CHECK(path.front() == FinSet::parse("1,3"));
  CHECK(path.back() == FinSet::parse("5,7"));
  for (std::size_t i = 0; i + 1 < path.size(); ++i) CHECK(is_plegma({path[i], path[i + 1]}));
  auto p1 = plegma_path(*Family::k_subsets(1), Window::identity(10), FinSet::parse("2"),
                        FinSet::parse("9"));
  CHECK(p1 == sets({"2", "9"}));
  auto fw = f_omega();
  auto p2 = plegma_path(*fw, Window::identity(16), FinSet::parse("2,5"),
                        FinSet::parse("6,8,10,12,14,16"));
  REQUIRE(p2.size() == 3);
  for (std::size_t i = 0; i + 1 < p2.size(); ++i) CHECK(is_plegma({p2[i], p2[i + 1]}));
  for (const auto& s : p2) CHECK(in_skipped_restriction(*fw, Window::identity(16), s));
}

TEST_CASE("path-distance theorem on seeded random pairs") {
  std::mt19937_64 rng(2024);
  std::vector<FamilyPtr> cat = {Family::k_subsets(2), Family::k_subsets(3), f_omega()};
  Window L = Window::identity(26);
  for (const auto& F : cat) {
    auto skip = skipped_restriction(*F, L, 26);
    int done = 0;
    for (int trial = 0; trial < 400 && done < 35; ++trial) {
      const FinSet& a = skip[rng() % skip.size()];
      if (a.empty()) continue;
      std::vector<const FinSet*> later;
      for (const auto& b : skip)
        if (a.entirely_below(b) && !b.empty()) later.push_back(&b);
      if (later.empty()) continue;
      const FinSet& b = *later[rng() % later.size()];
      ++done;
      auto path = plegma_path(*F, L, a, b);
      CHECK(static_cast<int>(path.size()) - 1 == a.size());
      for (std::size_t i = 0; i + 1 < path.size(); ++i) CHECK(is_plegma({path[i], path[i + 1]}));
      auto d = bfs_distance(*F, 26, a, b);
      REQUIRE(d.has_value());
      CHECK(*d == a.size());
    }
    CHECK(done >= 30);
  }
}

TEST_CASE("three-plegma path interleaves back-shifted copies") {
  auto k1 = Family::k_subsets(1);
  Window id = Window::identity(20);
  auto p = three_plegma_path(*k1, id, FinSet::parse("2"), FinSet::parse("10"));
  CHECK(p.size() == 3);
  auto k2 = Family::k_subsets(2);
  auto p2 = three_plegma_path(*k2, id, FinSet::parse("2,6"), FinSet::parse("12,16"));
  REQUIRE(p2.size() == 5);
  for (std::size_t i = 0; i + 2 < p2.size(); ++i)
    CHECK(is_plegma({p2[i], p2[i + 1], p2[i + 2]}));
  auto fw = f_omega();
  auto p3 = three_plegma_path(*fw, Window::identity(40), FinSet::parse("2,6"),
                              FinSet::parse("8,12,16,20,24,28,32,36"));
  REQUIRE(p3.size() == 5);
  for (std::size_t i = 0; i + 2 < p3.size(); ++i)
    CHECK(is_plegma({p3[i], p3[i + 1], p3[i + 2]}));
}

TEST_CASE("path length lower bound along bfs paths") {
  auto k2 = Family::k_subsets(2);
  auto mem = k2->members(9);
  for (const auto& a : mem)
    for (const auto& b : mem) {
      if (!a.entirely_below(b)) continue;
      auto d = bfs_distance(*k2, 9, a, b);
      if (d) CHECK(*d >= std::min(a.size(), b.size()));
    }
}

TEST_CASE("plegma map classification") {
  auto k2 = Family::k_subsets(2);
  auto identity = [](const FinSet& s) { return s; };
  CHECK(check_plegma_map(*k2, 6, identity).verdict == MapVerdict::Canonical);

  auto constant = [](const FinSet&) { return FinSet::parse("1,2"); };
  auto rep = check_plegma_map(*k2, 6, constant);
  CHECK(rep.verdict == MapVerdict::None);
  CHECK(rep.witness_pair.has_value());

  // {n} -> {2n, 2n+1} sends plegma pairs to successive pairs, which are not
  // plegma in either order
  auto doubling = [](const FinSet& s) {
    return FinSet(std::vector<int>{2 * s.min(), 2 * s.min() + 1});
  };
  auto rep2 = check_plegma_map(*Family::k_subsets(1), 10, doubling);
  CHECK(rep2.verdict == MapVerdict::None);
  REQUIRE(rep2.witness_pair.has_value());
  CHECK(rep2.witness_pair->first == FinSet::parse("1"));
  CHECK(rep2.witness_pair->second == FinSet::parse("2"));

  // reversal is preserving but not monotone
  auto fw = f_omega();
  auto swap_map = [&](const FinSet& s) { return FinSet(std::vector<int>{100 - s.min()}); };
  auto rep3 = check_plegma_map(*fw, 8, swap_map);
  CHECK(rep3.verdict == MapVerdict::Preserving);

  // shrinking monotone map that stays canonical
  auto min_map = [](const FinSet& s) { return FinSet(std::vector<int>{s.min()}); };
  CHECK(check_plegma_map(*k2, 6, min_map).verdict == MapVerdict::Canonical);
}

TEST_CASE("tuple reconstruction from unions") {
  auto k2 = Family::k_subsets(2);
  auto t = tuple_from_union(*k2, FinSet::parse("1,2,3,4"), 2);
  CHECK(t == sets({"1,3", "2,4"}));
  auto t1 = tuple_from_union(*Family::k_subsets(1), FinSet::parse("3,5"), 2);
  CHECK(t1 == sets({"3", "5"}));
  CHECK_THROWS_AS(tuple_from_union(*k2, FinSet::parse("1,2,3"), 2), DomainError);
}

TEST_CASE("union map round-trips over thin families") {
  std::vector<FamilyPtr> cat = {Family::k_subsets(1), Family::k_subsets(2), Family::k_subsets(3),
                                f_omega(), Family::schreier(OrdinalCNF(2))};
  for (const auto& F : cat) {
    for (int l = 1; l <= 3; ++l) {
      for (const auto& tuple : enumerate_plm(*F, l, 8)) {
        FinSet u;
        for (const auto& s : tuple) u = u.unite(s);
        CHECK(tuple_from_union(*F, u, l) == tuple);
      }
    }
  }
}
