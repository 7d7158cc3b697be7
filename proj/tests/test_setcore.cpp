#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ptk/setcore.hpp"

using namespace ptk;

TEST_CASE("apply_set on windows") {
  Window evens = Window::evens(8);
  CHECK(apply_set(evens, FinSet::parse("1,3")) == FinSet::parse("2,6"));
  Window id = Window::identity(8);
  CHECK(apply_set(id, FinSet::parse("4,7")) == FinSet::parse("4,7"));
  Window odds35 = Window::arithmetic(3, 2, 8);  // 3,5,7,9,...
  CHECK(apply_set(odds35, FinSet::parse("2,3")) == FinSet::parse("5,7"));
  CHECK_THROWS_AS(apply_set(Window::identity(3), FinSet::parse("2,5")), DomainError);
}

TEST_CASE("apply_set preserves initial segments") {
  Window L = Window::arithmetic(2, 3, 12);
  FinSet t = FinSet::parse("1,4,6,9");
  for (int k = 0; k <= t.size(); ++k) {
    FinSet s = t.initial_segment(k);
    CHECK(apply_set(L, s).is_initial_segment_of(apply_set(L, t)));
  }
}

TEST_CASE("initial segments") {
  CHECK(FinSet::parse("3,7,9").initial_segment(2) == FinSet::parse("3,7"));
  CHECK(FinSet::parse("3,7,9").initial_segment(0) == FinSet());
  CHECK(FinSet::parse("5").initial_segment(1) == FinSet::parse("5"));
  CHECK_THROWS_AS(FinSet::parse("5").initial_segment(2), DomainError);
}

TEST_CASE("set quotient") {
  CHECK(set_quotient(FinSet::parse("2,5"), FinSet::parse("3,6")) == FinSet::parse("3"));
  CHECK(set_quotient(FinSet::parse("9"), FinSet::parse("3,6")) == FinSet::parse("3,6"));
  CHECK(set_quotient(FinSet::parse("1"), FinSet::parse("3,6")) == FinSet());
  CHECK_THROWS_AS(set_quotient(FinSet(), FinSet::parse("3")), DomainError);
}

TEST_CASE("set quotient stays an initial segment of nothing larger") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> a, b;
    for (int v = 1; v <= 20; ++v) {
      if (rng() % 3 == 0) a.push_back(v);
      if (rng() % 3 == 0) b.push_back(v);
    }
    if (a.empty()) a.push_back(1);
    FinSet s1{a}, s2{b};
    FinSet q = set_quotient(s1, s2);
    CHECK(q.is_subset_of(s2));
    // q is exactly the prefix of s2 below max(s1)
    for (int v : s2.elems()) {
      if (v <= s1.max()) CHECK(q.contains(v));
      else CHECK(!q.contains(v));
    }
  }
}

TEST_CASE("ordinal parsing and printing") {
  CHECK(OrdinalCNF::parse("w^2*3+w+4").to_string() == "w^2*3+w+4");
  CHECK(OrdinalCNF::parse("17").to_string() == "17");
  CHECK(OrdinalCNF::parse("w").to_string() == "w");
  CHECK(OrdinalCNF::parse("w*2").to_string() == "w*2");
  CHECK(OrdinalCNF(0).to_string() == "0");
}

TEST_CASE("ordinal addition basics") {
  auto add = [](const std::string& a, const std::string& b) {
    return ord_add(OrdinalCNF::parse(a), OrdinalCNF::parse(b)).to_string();
  };
  CHECK(add("w", "3") == "w+3");
  CHECK(add("3", "w") == "w");
  CHECK(add("w*2+1", "w^2") == "w^2");
  CHECK(add("w^2", "w^2") == "w^2*2");
  CHECK(add("w+1", "w") == "w*2");
}

TEST_CASE("ordinal addition is associative") {
  std::mt19937 rng(99);
  auto random_ord = [&]() {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> terms;
    for (std::uint32_t e = 0; e <= 4; ++e)
      if (rng() % 2) terms.push_back({e, rng() % 5 + 1});
    return OrdinalCNF(terms);
  };
  for (int i = 0; i < 1000; ++i) {
    OrdinalCNF a = random_ord(), b = random_ord(), c = random_ord();
    CHECK(ord_add(ord_add(a, b), c) == ord_add(a, ord_add(b, c)));
  }
}

TEST_CASE("ordinal structure helpers") {
  auto w = OrdinalCNF::omega();
  CHECK(w.is_limit());
  CHECK(w.fundamental(5) == OrdinalCNF(5));
  auto w2 = OrdinalCNF::omega_pow(2);
  CHECK(w2.fundamental(3) == OrdinalCNF::parse("w*3"));
  auto x = OrdinalCNF::parse("w^2*2+w");
  CHECK(x.is_limit());
  CHECK(x.fundamental(4) == OrdinalCNF::parse("w^2*2+4"));
  CHECK(OrdinalCNF::parse("w+3").predecessor() == OrdinalCNF::parse("w+2"));
}

TEST_CASE("windows fail loudly past the horizon") {
  Window w = Window::identity(4);
  CHECK(w.at(4) == 4);
  CHECK_THROWS_AS(w.at(5), DomainError);
  CHECK_THROWS_AS(w.positions_of(FinSet::parse("9")), DomainError);
  CHECK(w.positions_of(FinSet::parse("2,3")).value() == FinSet::parse("2,3"));
  Window e = Window::evens(4);
  CHECK(!e.positions_of(FinSet::parse("3")).has_value());
}
