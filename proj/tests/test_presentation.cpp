#include <functional>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "ramlab/bounds.hpp"
#include "ramlab/util.hpp"
#include "ramlab/presentation.hpp"

using namespace ramlab;

namespace {

RamificationType multiquad_type(int d, int n, ArchInertia arch = ArchInertia::Trivial) {
  std::vector<std::vector<int>> gens;
  for (int i = 0; i < n; ++i) {
    if (i < d)
      gens.push_back({1 << i});
    else
      gens.push_back({(1 << d) - 1});  // all-ones default for the extra primes
  }
  return make_ramification_type(elementary_abelian(2, d), gens, arch);
}

RamificationType cyclic_type(int p, int d, const std::vector<int>& orders,
                             ArchInertia arch = ArchInertia::Trivial) {
  GammaGroup g = cyclic_group(p, d);
  std::vector<std::vector<int>> gens;
  for (int o : orders) gens.push_back({g.order() / o});
  return make_ramification_type(g, gens, arch);
}

FElement random_element(const Presentation& m, std::mt19937_64& rng) {
  FpVec coords(m.n_dim());
  for (auto& x : coords) x = static_cast<std::uint8_t>(rng() % m.p());
  return m.element(static_cast<int>(rng() % m.type().gamma.order()), coords);
}

}  // namespace

TEST_CASE("validate_type") {
  GammaGroup g22 = elementary_abelian(2, 2);
  CHECK_NOTHROW(make_ramification_type(g22, {{1}, {2}}, ArchInertia::Trivial));
  CHECK_THROWS_AS(make_ramification_type(g22, {{1}, {1}}, ArchInertia::Trivial), Error);
  // C_9 with only a C_3 inertia does not generate
  GammaGroup c9 = cyclic_group(3, 2);
  CHECK_THROWS_AS(make_ramification_type(c9, {{3}}, ArchInertia::Trivial), Error);
  // odd group cannot have order-2 archimedean inertia
  CHECK_THROWS_AS(make_ramification_type(c9, {{1}}, ArchInertia::OrderTwo), Error);
  // non-cyclic inertia subgroup
  CHECK_THROWS_AS(make_ramification_type(g22, {{1, 2}, {2}}, ArchInertia::Trivial), Error);
}

TEST_CASE("faithful multiquad model dimensions and orders") {
  auto m2 = build_multiquad(2);
  CHECK(m2->n_dim() == 1);
  CHECK(m2->f_order() == 8);
  auto m3 = build_multiquad(3);
  CHECK(m3->n_dim() == 5);
  CHECK(m3->f_order() == 256);
  auto m4 = build_multiquad(4);
  CHECK(m4->n_dim() == 17);
  CHECK(m4->num_components() == 32);
  CHECK(m4->f_order() == (1ull << 21));
  CHECK_THROWS_AS(build_multiquad(7), Error);
}

TEST_CASE("n=2 faithful model is dihedral of order 8") {
  auto m = build_multiquad(2);
  // exhaustive closure
  std::set<MqElement> seen;
  std::vector<FElement> frontier{m->identity()};
  seen.insert(std::get<MqElement>(m->identity()));
  while (!frontier.empty()) {
    FElement e = frontier.back();
    frontier.pop_back();
    for (int i = 0; i < 2; ++i) {
      FElement x = m->mul(e, m->generator(i));
      if (seen.insert(std::get<MqElement>(x)).second) frontier.push_back(x);
    }
  }
  CHECK(seen.size() == 8);
  // x1 x2 has order 4, generators have order 2: dihedral
  FElement prod = m->mul(m->generator(0), m->generator(1));
  FElement p2 = m->mul(prod, prod);
  CHECK(!(p2 == m->identity()));
  CHECK(m->mul(p2, p2) == m->identity());
  CHECK(m->mul(m->generator(0), m->generator(0)) == m->identity());
}

TEST_CASE("faithful closure matches dimension accounting for n=3") {
  auto m = build_multiquad(3);
  std::set<MqElement> seen;
  std::vector<FElement> frontier{m->identity()};
  seen.insert(std::get<MqElement>(m->identity()));
  while (!frontier.empty()) {
    FElement e = frontier.back();
    frontier.pop_back();
    for (int i = 0; i < 3; ++i) {
      FElement x = m->mul(e, m->generator(i));
      if (seen.insert(std::get<MqElement>(x)).second) frontier.push_back(x);
    }
  }
  CHECK(seen.size() == m->f_order());
}

TEST_CASE("wreath components project compatibly") {
  // dropping an index q from U sends component (U, p) onto (U \ {q}, p):
  // tops forget the q slot, base masks sum over the q fiber
  auto m = build_multiquad(3);
  std::mt19937_64 rng(29);
  for (int it = 0; it < 50; ++it) {
    FElement w = m->identity();
    for (int k = 0; k < 8; ++k) w = m->mul(w, m->generator(rng() % 3));
    const auto& e = std::get<MqElement>(w);
    for (int c = 0; c < m->num_components(); ++c) {
      const auto& info = m->component(c);
      for (int q = 0; q < 3; ++q) {
        if (!(info.u_mask >> q & 1)) continue;
        // locate the target component (U without q, same p)
        int target = -1;
        for (int c2 = 0; c2 < m->num_components(); ++c2) {
          const auto& i2 = m->component(c2);
          if (i2.u_mask == (info.u_mask & ~(1u << q)) && i2.p_index == info.p_index)
            target = c2;
        }
        REQUIRE(target >= 0);
        const auto& i2 = m->component(target);
        // project the top
        std::uint8_t top2 = 0;
        for (int r = 0; r < 3; ++r) {
          if (!(i2.u_mask >> r & 1)) continue;
          if (e.c[c].top >> info.slot[r] & 1)
            top2 = static_cast<std::uint8_t>(top2 | (1 << i2.slot[r]));
        }
        // project the base: sum over the q fiber
        std::uint16_t base2 = 0;
        for (int mask = 0; mask < (1 << info.u); ++mask) {
          if (!(e.c[c].base >> mask & 1)) continue;
          int small = 0;
          for (int r = 0; r < 3; ++r) {
            if (!(i2.u_mask >> r & 1)) continue;
            if (mask >> info.slot[r] & 1) small |= 1 << i2.slot[r];
          }
          base2 ^= static_cast<std::uint16_t>(1 << small);
        }
        CHECK(e.c[target].top == top2);
        CHECK(e.c[target].base == base2);
      }
    }
  }
}

TEST_CASE("size cap override builds n = 5") {
  BuildOptions opts;
  opts.multiquad_cap = 5;
  auto m = build_multiquad(5, opts);
  CHECK(m->n_dim() == (5 - 2) * 16 + 1);
  std::vector<int> expect{5};
  for (int i = 2; i <= 5; ++i) expect.push_back(static_cast<int>((i - 1) * binom(5, i)));
  CHECK(m->graded_dims() == expect);
}

TEST_CASE("graded dimensions, square case") {
  CHECK(build_multiquad(3)->graded_dims() == std::vector<int>{3, 3, 2});
  CHECK(build_multiquad(4)->graded_dims() == std::vector<int>{4, 6, 8, 3});
}

TEST_CASE("general multiquad models") {
  {
    auto m = build_general_multiquad(multiquad_type(2, 3));
    CHECK(m->n_dim() == 3);
    CHECK(m->graded_dims() == std::vector<int>{3, 2});
    auto* q = dynamic_cast<QuotientMultiquadModel*>(m.get());
    REQUIRE(q != nullptr);
    CHECK(q->degree_one_dim() == 1);
  }
  {
    auto m = build_general_multiquad(multiquad_type(2, 4));
    CHECK(m->n_dim() == 5);
    CHECK(m->graded_dims() == std::vector<int>{4, 3});
  }
  {
    auto m = build_general_multiquad(multiquad_type(3, 4));
    CHECK(m->n_dim() == 9);
    CHECK(m->graded_dims() == std::vector<int>{4, 5, 3});
    auto* q = dynamic_cast<QuotientMultiquadModel*>(m.get());
    REQUIRE(q != nullptr);
    CHECK(q->degree_one_dim() == 1);
  }
  // d = 1 degenerates to the abelian model
  {
    auto m = build_general_multiquad(multiquad_type(1, 4));
    CHECK(m->n_dim() == 3);
    CHECK(m->kind() == "multiquad-abelian");
  }
}

TEST_CASE("cyclic model dimensions") {
  CHECK(build_cyclic(cyclic_type(2, 1, {2, 2}))->n_dim() == 1);
  CHECK(build_cyclic(cyclic_type(2, 2, {4, 2}))->n_dim() == 2);
  CHECK(build_cyclic(cyclic_type(3, 2, {9, 3, 3}))->n_dim() == 12);
  // no full inertia
  GammaGroup c4 = cyclic_group(2, 2);
  RamificationType t;
  t.gamma = c4;
  t.n = 2;
  t.inertia = {2, 2};
  t.arch = ArchInertia::Trivial;
  CHECK_THROWS_AS(build_cyclic(t), Error);
}

TEST_CASE("cyclic model reorders a full-inertia factor first") {
  auto m = build_cyclic(cyclic_type(2, 2, {2, 4}));
  CHECK(m->type().inertia_order(0) == 4);
  CHECK(m->input_index() == std::vector<int>{1, 0});
}

TEST_CASE("cyclic model closure matches the dimension accounting") {
  for (auto t : {cyclic_type(2, 1, {2, 2}), cyclic_type(2, 2, {4, 2}),
                 cyclic_type(3, 1, {3, 3}), cyclic_type(3, 2, {9, 3})}) {
    auto m = build_cyclic(t);
    std::set<std::pair<FpVec, int>> seen;
    std::vector<FElement> frontier{m->identity()};
    auto key = [](const SdElement& e) { return std::pair{e.m, e.g}; };
    seen.insert(key(std::get<SdElement>(m->identity())));
    while (!frontier.empty()) {
      FElement e = frontier.back();
      frontier.pop_back();
      for (int i = 0; i < m->n(); ++i) {
        FElement x = m->mul(e, m->generator(i));
        if (seen.insert(key(std::get<SdElement>(x))).second) frontier.push_back(x);
      }
    }
    CHECK(seen.size() == m->f_order());
  }
}

TEST_CASE("relator images") {
  auto m = build_multiquad(2);
  // self-commutator vanishes
  CHECK(is_zero_vec(m->relator_image(0, m->generator(0))));
  // [x1, x2] is the generator of N (the image of (x1 x2)^2)
  FpVec r = m->relator_image(0, m->generator(1));
  CHECK(r == FpVec{1});
  FElement prod = m->mul(m->generator(0), m->generator(1));
  CHECK(m->n_coords(m->mul(prod, prod)) == r);

  // cyclic C_2, n = 2: F is abelian so every relator vanishes
  auto c = build_cyclic(cyclic_type(2, 1, {2, 2}));
  std::mt19937_64 rng(1);
  for (int it = 0; it < 10; ++it)
    CHECK(is_zero_vec(c->relator_image(0, random_element(*c, rng))));
}

TEST_CASE("wild relators are rejected") {
  auto m = build_cyclic(cyclic_type(3, 1, {3, 3}));
  CHECK_NOTHROW(m->relator_image_checked(0, m->generator(1), 7));
  CHECK_THROWS_AS(m->relator_image_checked(0, m->generator(1), 5), Error);
}

TEST_CASE("relator coset matches exhaustive lift enumeration") {
  auto m = build_multiquad(2);
  // lifts of sigma = e2: w * nu over nu in N
  RelatorCoset rc = m->relator_coset(0, /*sigma=*/2);
  std::set<FpVec> achieved;
  for (int bits = 0; bits < 2; ++bits) {
    FpVec coords{static_cast<std::uint8_t>(bits)};
    achieved.insert(m->relator_image(0, m->element(2, coords)));
  }
  std::set<FpVec> coset;
  // rep + direction subspace (enumerate all direction elements)
  std::vector<FpVec> dir{FpVec{0}};
  for (int r = 0; r < rc.direction.dim(); ++r) dir.push_back(rc.direction.basis_row(r));
  std::set<FpVec> dirset;
  for (std::size_t s = 0; s < (1u << rc.direction.dim()); ++s) {
    FpVec v(m->n_dim(), 0);
    for (int k = 0; k < rc.direction.dim(); ++k)
      if (s >> k & 1) v = add_vec(2, v, rc.direction.basis_row(k));
    coset.insert(add_vec(2, rc.rep, v));
  }
  CHECK(achieved == coset);
  // sigma in I_1: coset contains zero
  RelatorCoset rc0 = m->relator_coset(0, 1);
  bool has_zero = rc0.direction.contains(rc0.rep);
  CHECK(has_zero);
}

TEST_CASE("relator coset exhaustive, n=3 square and cyclic") {
  std::mt19937_64 rng(7);
  auto m = build_multiquad(3);
  for (int i = 0; i < 3; ++i) {
    for (int sigma : {0, 3, 5}) {
      RelatorCoset rc = m->relator_coset(i, sigma);
      for (int it = 0; it < 20; ++it) {
        FpVec coords(m->n_dim());
        for (auto& x : coords) x = static_cast<std::uint8_t>(rng() % 2);
        FpVec val = m->relator_image(i, m->element(sigma, coords));
        CHECK(rc.direction.contains(sub_vec(2, val, rc.rep)));
      }
    }
  }
  auto c = build_cyclic(cyclic_type(3, 1, {3, 3}));
  for (int sigma = 0; sigma < 3; ++sigma) {
    RelatorCoset rc = c->relator_coset(1, sigma);
    for (int it = 0; it < 20; ++it) {
      FpVec coords(c->n_dim());
      for (auto& x : coords) x = static_cast<std::uint8_t>(rng() % 3);
      FpVec val = c->relator_image(1, c->element(sigma, coords));
      CHECK(rc.direction.contains(sub_vec(3, val, rc.rep)));
    }
  }
}

TEST_CASE("conditional class rank examples") {
  // all y_i = x_i with trivial archimedean datum: rank = dim N
  auto m3 = build_multiquad(3);
  FrobeniusAssignment fa;
  for (int i = 0; i < 3; ++i) fa.lifts.push_back(m3->generator(i));
  fa.arch_lift = m3->identity();
  CHECK(m3->conditional_class_rank(fa, true) == m3->n_dim());
  CHECK(m3->conditional_class_rank(fa, false) == m3->n_dim());

  // quadratic d=1: any assignment gives n-1 in the narrow sense
  AbelianQuadraticModel q(4, ArchInertia::Trivial);
  FrobeniusAssignment fq;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 4; ++i) fq.lifts.push_back(random_element(q, rng));
  CHECK(q.conditional_class_rank(fq, true) == 3);
  // quotient by a nonzero x_inf drops the ordinary rank by one
  fq.arch_lift = q.from_mask(0b0011);
  CHECK(q.conditional_class_rank(fq, false) == 2);
  fq.arch_lift = q.from_mask(0);
  CHECK(q.conditional_class_rank(fq, false) == 3);

  // n=d=2 imaginary with x_inf^2 = 0: relator spans the 1-dim N
  auto m2raw = build_multiquad(2);
  RamificationType t2 = m2raw->type();
  // rebuild as imaginary type: same model, imaginary arch handled at rank time
  FrobeniusAssignment f2;
  f2.lifts.push_back(m2raw->generator(1));
  f2.lifts.push_back(m2raw->generator(0));
  f2.arch_lift = m2raw->generator(0);  // order-2 image, square = 0 in F
  // fake an imaginary type by using the same model: conditional rank with
  // narrow=true and OrderTwo arch needs the model type to be imaginary, so
  // check directly that the relators span N.
  std::vector<FpVec> vals{m2raw->relator_image(0, *f2.lifts[0]),
                          m2raw->relator_image(1, *f2.lifts[1])};
  CHECK(m2raw->relation_module().span_closure(vals).dim() == 1);
  CHECK(m2raw->conditional_class_rank(f2, true) == 0);

  // incomplete assignment
  FrobeniusAssignment bad;
  bad.lifts.resize(2);
  CHECK_THROWS_AS(m2raw->conditional_class_rank(bad, true), Error);
}

TEST_CASE("kp condition") {
  auto m = build_multiquad(3);
  FrobeniusAssignment fa;
  for (int i = 0; i < 3; ++i) fa.lifts.push_back(m->identity());
  CHECK(kp_condition(*m, fa));
  fa.lifts[0] = m->generator(1);  // y_1 = x_2 fails for U containing 2
  CHECK(!kp_condition(*m, fa));
  // y_q = x_q itself is fine: pi_{U,p}(x_q) = 1 whenever q not in U, p != q
  for (int i = 0; i < 3; ++i) fa.lifts[i] = m->generator(i);
  CHECK(kp_condition(*m, fa));
  auto c = build_cyclic(cyclic_type(2, 1, {2, 2}));
  FrobeniusAssignment fc;
  fc.lifts.push_back(c->identity());
  fc.lifts.push_back(c->identity());
  CHECK_THROWS_AS(kp_condition(*c, fc), Error);
}

TEST_CASE("graded commutator identities in built models") {
  std::mt19937_64 rng(11);
  for (int n : {3, 4}) {
    auto m = build_multiquad(n);
    const auto& filt = m->filtration();
    auto in_filtration = [&](const FElement& e, std::size_t level) {
      // level 1 = all of F; level >= 2 via ambient subspaces
      if (level <= 1) return true;
      if (m->gamma_image(e) != 0) return false;
      if (level - 2 >= filt.size()) return std::get<MqElement>(e) ==
                                            std::get<MqElement>(m->identity());
      return filt[level - 2].contains(m->ambient(std::get<MqElement>(e)));
    };
    for (int it = 0; it < 30; ++it) {
      FElement x = random_element(*m, rng);
      FElement y = random_element(*m, rng);
      FElement z = random_element(*m, rng);
      // (1) [x,y] = [y,x]
      CHECK(m->commutator(x, y) == m->commutator(y, x));
      // (2) [xy,z] = [x,z][y,z] mod F_(i+j+k), here with i=j=k=1
      FElement lhs = m->commutator(m->mul(x, y), z);
      FElement rhs = m->mul(m->commutator(x, z), m->commutator(y, z));
      CHECK(in_filtration(m->mul(lhs, m->inv(rhs)), 3));
      // (3) N is abelian
      FElement nu1 = m->from_n_coords(m->relation_module().span_closure({}).reduce(
          FpVec(m->n_dim(), 0)));  // zero
      // use random N elements
      FpVec c1(m->n_dim()), c2(m->n_dim());
      for (auto& v : c1) v = static_cast<std::uint8_t>(rng() % 2);
      for (auto& v : c2) v = static_cast<std::uint8_t>(rng() % 2);
      FElement a = m->from_n_coords(c1), b = m->from_n_coords(c2);
      CHECK(m->commutator(a, b) == m->identity());
      // (4) z in N: [x,[y,z]] = [y,[x,z]]
      CHECK(m->commutator(x, m->commutator(y, a)) == m->commutator(y, m->commutator(x, a)));
      // (5) cyclic identity for m = 3
      FElement t1 = m->commutator(x, m->commutator(y, z));
      FElement t2 = m->commutator(y, m->commutator(z, x));
      FElement t3 = m->commutator(z, m->commutator(x, y));
      CHECK(m->mul(m->mul(t1, t2), t3) == m->identity());
      // (5) for m = 4
      FElement w = random_element(*m, rng);
      auto nest4 = [&](const FElement& a1, const FElement& a2, const FElement& a3,
                       const FElement& a4) {
        return m->commutator(a1, m->commutator(a2, m->commutator(a3, a4)));
      };
      FElement prod = m->mul(m->mul(nest4(x, y, z, w), nest4(y, z, w, x)),
                             m->mul(nest4(z, w, x, y), nest4(w, x, y, z)));
      CHECK(prod == m->identity());
    }
  }
}

TEST_CASE("repeated indices kill iterated commutators") {
  auto m = build_multiquad(4);
  std::mt19937_64 rng(13);
  for (int it = 0; it < 50; ++it) {
    int len = 2 + static_cast<int>(rng() % 3);
    std::vector<int> idx(len);
    for (auto& i : idx) i = static_cast<int>(rng() % 4);
    idx[rng() % len] = idx[(idx.size() > 1) ? (idx.size() - 1) : 0];  // force a repeat
    FElement acc = m->generator(idx.back());
    for (int k = len - 2; k >= 0; --k) acc = m->commutator(m->generator(idx[k]), acc);
    bool has_repeat = false;
    std::set<int> s;
    for (int i : idx) has_repeat |= !s.insert(i).second;
    if (has_repeat) CHECK(acc == m->identity());
  }
}

TEST_CASE("graded pieces of a one-generator submodule") {
  // For x a product of uniform-depth iterated commutators the graded pieces
  // of the submodule it generates are spanned exactly by the
  // strictly-increasing iterated commutators of x. For mixed-degree x only
  // the containment and the counting bound dim <= C(d, i-k) survive (a
  // mixed-degree counterexample exists at n = 4, coords 00001000111001110).
  std::mt19937_64 rng(2024);
  for (int n : {3, 4}) {
    auto m = build_multiquad(n);
    const auto& filt = m->filtration();
    auto check_x = [&](const FElement& x, bool expect_equality) {
      FpVec amb = m->ambient(std::get<MqElement>(x));
      if (is_zero_vec(amb)) return;
      std::size_t k = 2;
      while (k - 1 < filt.size() && filt[k - 1].contains(amb)) ++k;
      Subspace mspan(2, m->ambient_dim());
      for (int tau = 0; tau < (1 << n); ++tau) mspan.insert(m->act(tau, amb));
      for (std::size_t lev = k - 2; lev < filt.size(); ++lev) {
        int i = static_cast<int>(lev) + 2;
        Subspace lhs = intersect(mspan, filt[lev]);
        Subspace rhs = (lev + 1 < filt.size()) ? intersect(mspan, filt[lev + 1])
                                               : Subspace(2, m->ambient_dim());
        Subspace deeper = rhs;
        int depth = i - static_cast<int>(k);
        std::function<void(int, int, FElement)> rec = [&](int pos, int start, FElement acc) {
          if (pos == depth) {
            rhs.insert(m->ambient(std::get<MqElement>(acc)));
            return;
          }
          for (int s = start; s < n; ++s)
            rec(pos + 1, s + 1, m->commutator(m->generator(s), acc));
        };
        rec(0, 0, x);
        for (int r = 0; r < rhs.dim(); ++r) CHECK(lhs.contains(rhs.basis_row(r)));
        CHECK(lhs.dim() - deeper.dim() <= binom(n, i - static_cast<int>(k)));
        if (expect_equality) CHECK(lhs == rhs);
      }
    };
    for (int k = 2; k <= n; ++k) {
      std::vector<FElement> pool;
      std::function<void(std::vector<int>&, int)> gen = [&](std::vector<int>& idx, int start) {
        if (static_cast<int>(idx.size()) == k) {
          FElement acc = m->generator(idx.back());
          for (int t = static_cast<int>(idx.size()) - 2; t >= 0; --t)
            acc = m->commutator(m->generator(idx[t]), acc);
          pool.push_back(acc);
          return;
        }
        for (int s = start; s < n; ++s) {
          idx.push_back(s);
          gen(idx, s + 1);
          idx.pop_back();
        }
      };
      std::vector<int> idx;
      gen(idx, 0);
      for (int it = 0; it < 15; ++it) {
        FElement x = m->identity();
        for (auto& e : pool)
          if (rng() & 1) x = m->mul(x, e);
        check_x(x, true);
      }
    }
    for (int it = 0; it < 15; ++it) {
      FpVec coords(m->n_dim());
      for (auto& v : coords) v = static_cast<std::uint8_t>(rng() % 2);
      check_x(m->from_n_coords(coords), false);
    }
  }
}

TEST_CASE("increasing-commutator families form graded bases") {
  for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 4}}) {
    auto mp = build_general_multiquad(multiquad_type(d, n));
    auto* q = dynamic_cast<QuotientMultiquadModel*>(mp.get());
    REQUIRE(q != nullptr);
    const auto& parent = q->parent();
    const auto& filt = parent.filtration();
    const auto& B = q->basis_positions();
    std::map<int, int> e_of;
    for (auto [j, e] : q->basis_choice()) e_of[j] = e;

    auto nested = [&](const std::vector<int>& idx) {
      FElement acc = mp->generator(idx.back());
      for (int k = static_cast<int>(idx.size()) - 2; k >= 0; --k)
        acc = mp->commutator(mp->generator(idx[k]), acc);
      return acc;
    };

    for (int i = 2; i <= d; ++i) {
      std::vector<FElement> elements;
      // Type I: the i-1 leading rotations over each increasing i-subset of B
      std::vector<int> subset;
      std::function<void(int)> pick = [&](int start) {
        if (static_cast<int>(subset.size()) == i) {
          for (int rot = 0; rot < i - 1; ++rot) {
            std::vector<int> idx;
            for (int k = 0; k < i; ++k) idx.push_back(B[subset[(rot + k) % i]]);
            elements.push_back(nested(idx));
          }
          return;
        }
        for (int s = start; s < d; ++s) {
          subset.push_back(s);
          pick(s + 1);
          subset.pop_back();
        }
      };
      pick(0);
      // Type II: [x_{t_1},[...,[x_{t_{i-1}}, x_j]]] with t's in B minus e_j
      for (int j = 0; j < n; ++j) {
        if (std::find(B.begin(), B.end(), j) != B.end()) continue;
        std::vector<int> avail;
        for (int k = 0; k < d; ++k)
          if (k != e_of[j]) avail.push_back(B[k]);
        std::vector<int> tsel;
        std::function<void(int)> pick2 = [&](int start) {
          if (static_cast<int>(tsel.size()) == i - 1) {
            std::vector<int> idx = tsel;
            idx.push_back(j);
            elements.push_back(nested(idx));
            return;
          }
          for (int s = start; s < static_cast<int>(avail.size()); ++s) {
            tsel.push_back(avail[s]);
            pick2(s + 1);
            tsel.pop_back();
          }
        };
        pick2(0);
      }
      long long expect = (i - 1) * binom(d, i) +
                         static_cast<long long>(n - d) * binom(d - 1, i - 1);
      CHECK(static_cast<long long>(elements.size()) == expect);
      // independence modulo F_(i+1) + Φ(H) in the parent ambient space
      Subspace lower = filt.size() > static_cast<std::size_t>(i - 1)
                           ? sum(filt[i - 1], q->phi_h())
                           : q->phi_h();
      Subspace span = lower;
      for (const auto& e : elements) {
        FpVec amb = parent.ambient(std::get<MqElement>(e));
        CHECK(filt[i - 2].contains(amb));
        CHECK(span.insert(amb));  // each element enlarges the span
      }
      CHECK(span.dim() - lower.dim() == expect);
    }
  }
}

TEST_CASE("model element kind mismatches are rejected") {
  auto m = build_multiquad(2);
  auto c = build_cyclic(cyclic_type(2, 1, {2, 2}));
  CHECK_THROWS_AS(m->mul(m->generator(0), c->generator(0)), Error);
  CHECK_THROWS_AS(c->mul(c->generator(0), m->generator(0)), Error);
  CHECK_THROWS_AS(c->graded_dims(), Error);
}

TEST_CASE("Kurosh consistency") {
  for (int n : {2, 3, 4}) {
    auto m = build_multiquad(n);
    RamificationType t = m->type();
    CHECK(m->n_dim() == kurosh_rank(t));
  }
  for (auto orders : {std::vector<int>{4, 2}, std::vector<int>{9, 3, 3}}) {
    int p = orders[0] == 9 ? 3 : 2;
    int d = orders[0] == 9 ? 2 : 2;
    auto t = cyclic_type(p, d, orders);
    CHECK(build_cyclic(t)->n_dim() == kurosh_rank(t));
  }
}

TEST_CASE("lift independence regression") {
  auto m = build_multiquad(3);
  // two syntactically different constructions of the same F-element
  FElement a = m->mul(m->generator(0), m->generator(1));
  FElement b = m->inv(m->mul(m->generator(1), m->commutator(m->generator(1), m->generator(0))));
  b = m->mul(m->generator(0), m->mul(m->generator(1), m->commutator(m->generator(1), m->generator(0))));
  FElement c = m->mul(m->mul(m->generator(0), m->generator(1)), m->identity());
  CHECK(a == c);
  FrobeniusAssignment f1, f2;
  f1.lifts = {a, m->generator(1), m->generator(2)};
  f2.lifts = {c, m->generator(1), m->generator(2)};
  f1.arch_lift = m->identity();
  f2.arch_lift = m->identity();
  CHECK(m->conditional_class_rank(f1, true) == m->conditional_class_rank(f2, true));
}

TEST_CASE("quotient model coordinates are a homomorphism") {
  auto mp = build_general_multiquad(multiquad_type(2, 3));
  std::mt19937_64 rng(23);
  for (int it = 0; it < 40; ++it) {
    FpVec c1(mp->n_dim()), c2(mp->n_dim());
    for (auto& v : c1) v = static_cast<std::uint8_t>(rng() % 2);
    for (auto& v : c2) v = static_cast<std::uint8_t>(rng() % 2);
    FElement a = mp->from_n_coords(c1), b = mp->from_n_coords(c2);
    CHECK(mp->n_coords(a) == c1);
    CHECK(mp->n_coords(mp->mul(a, b)) == add_vec(2, c1, c2));
  }
}
