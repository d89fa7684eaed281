#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "ramlab/group_kernel.hpp"

using namespace ramlab;

TEST_CASE("trace quotient dimensions") {
  {
    GammaGroup g = cyclic_group(2, 2);  // C_4
    Subgroup whole = subgroup_generated(g, std::vector<int>{1});
    GammaModule m = trace_quotient(g, whole);
    CHECK(m.dim == 3);
  }
  {
    GammaGroup g = cyclic_group(2, 1);  // C_2
    Subgroup whole = subgroup_generated(g, std::vector<int>{1});
    GammaModule m = trace_quotient(g, whole);
    CHECK(m.dim == 1);
  }
  {
    GammaGroup g = elementary_abelian(2, 2);
    Subgroup i1 = subgroup_generated(g, std::vector<int>{1});  // <(1,0)>
    GammaModule m = trace_quotient(g, i1);
    CHECK(m.dim == 2);
  }
  {
    GammaGroup g = cyclic_group(3, 2);  // C_9, I = C_3
    Subgroup i = subgroup_generated(g, std::vector<int>{3});
    GammaModule m = trace_quotient(g, i);
    CHECK(m.dim == 6);
    validate_module(m);
  }
  {
    GammaGroup g = cyclic_group(2, 2);
    Subgroup not_closed{{0, 1}};
    CHECK_THROWS_AS(trace_quotient(g, not_closed), Error);
  }
}

TEST_CASE("trace annihilates the distinguished generator") {
  std::vector<std::tuple<int, int, int>> cases{{2, 2, 2}, {3, 2, 3}, {2, 3, 4}};
  for (auto [p, d, sub_gen] : cases) {
    GammaGroup g = cyclic_group(p, d);
    Subgroup i = subgroup_generated(g, std::vector<int>{sub_gen});
    GammaModule m = trace_quotient(g, i);
    validate_module(m);
    FpVec acc(m.dim, 0);
    for (int h : i.elems) acc = add_vec(p, acc, m.apply(h, m.distinguished));
    CHECK(is_zero_vec(acc));
  }
}

TEST_CASE("coinvariants") {
  CHECK(coinvariants_dim(regular_module(elementary_abelian(2, 2))) == 1);
  CHECK(coinvariants_dim(trivial_module(elementary_abelian(3, 1), 4)) == 4);
  GammaGroup c2 = cyclic_group(2, 1);
  Subgroup whole = subgroup_generated(c2, std::vector<int>{1});
  CHECK(coinvariants_dim(trace_quotient(c2, whole)) == 1);
}

TEST_CASE("wreath product arithmetic") {
  WreathGroup w(2, 2);
  auto a = w.a();
  CHECK(w.mul(a, a) == w.id());

  // conjugating the base indicator by a top unit translates it
  auto g0 = w.g(0);
  auto conj = w.mul(w.mul(g0, a), w.inv(g0));
  CHECK(conj.g == 0);
  FpVec expect(4, 0);
  expect[1] = 1;  // indicator moved from the identity to the g0 coordinate
  CHECK(conj.m == expect);

  // [(0,g),(v,0)] = ((1+g)v, 0)
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    FpVec v(4);
    for (auto& x : v) x = static_cast<std::uint8_t>(rng() % 2);
    SdElement b{v, 0};
    auto c = w.commutator(g0, b);
    CHECK(c.g == 0);
    FpVec rhs = add_vec(2, w.sd().mod().apply(g0.g, v), v);
    CHECK(c.m == rhs);
  }
}

TEST_CASE("wreath order via closure") {
  for (int u : {1, 2}) {
    WreathGroup w(2, u);
    std::set<std::pair<FpVec, int>> seen;
    std::vector<SdElement> frontier{w.id()};
    seen.insert({w.id().m, w.id().g});
    std::vector<SdElement> gens{w.a()};
    for (int q = 0; q < u; ++q) gens.push_back(w.g(q));
    while (!frontier.empty()) {
      SdElement e = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        SdElement x = w.mul(e, g);
        if (seen.insert({x.m, x.g}).second) frontier.push_back(x);
      }
    }
    CHECK(seen.size() == w.order());
  }
  WreathGroup w3(3, 1);
  CHECK(w3.order() == 81);  // p^{p^u} * p^u with p = 3, u = 1
}

TEST_CASE("mixed group elements are rejected") {
  WreathGroup w2(2, 2), w3(2, 3);
  CHECK_THROWS_AS(w2.mul(w2.a(), w3.a()), Error);
}

TEST_CASE("semidirect group axioms on random elements") {
  GammaGroup g = cyclic_group(3, 1);
  Subgroup whole = subgroup_generated(g, std::vector<int>{1});
  SemidirectGroup sd(trace_quotient(g, whole));
  std::mt19937_64 rng(42);
  auto rand_el = [&] {
    FpVec v(sd.mod().dim);
    for (auto& x : v) x = static_cast<std::uint8_t>(rng() % 3);
    return SdElement{v, static_cast<int>(rng() % 3)};
  };
  for (int it = 0; it < 50; ++it) {
    SdElement a = rand_el(), b = rand_el(), c = rand_el();
    CHECK(sd.mul(sd.mul(a, b), c) == sd.mul(a, sd.mul(b, c)));
    CHECK(sd.mul(a, sd.inv(a)) == sd.id());
    CHECK(sd.mul(sd.inv(a), a) == sd.id());
  }
}

TEST_CASE("quotient regular module") {
  GammaGroup g = cyclic_group(3, 2);
  Subgroup i = subgroup_generated(g, std::vector<int>{3});
  GammaModule m = quotient_regular_module(g, i);
  CHECK(m.dim == 3);  // |Γ|/|I|
  validate_module(m);
}
