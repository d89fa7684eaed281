#include <random>

#include "doctest.h"
#include "ramlab/fp_linalg.hpp"

using namespace ramlab;

namespace {

FpMatrix from_rows(int p, const std::vector<FpVec>& rows) {
  FpMatrix m(p, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(static_cast<int>(r), rows[r]);
  return m;
}

FpMatrix random_matrix(int p, int rows, int cols, std::mt19937_64& rng) {
  FpMatrix m(p, rows, cols);
  for (auto& x : m.a) x = static_cast<std::uint8_t>(rng() % p);
  return m;
}

}  // namespace

TEST_CASE("rank basic values") {
  CHECK(rank(FpMatrix::identity(2, 3)) == 3);
  CHECK(rank(FpMatrix(3, 2, 5)) == 0);
  CHECK(rank(from_rows(2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})) == 2);
}

TEST_CASE("rank equals rank of transpose") {
  std::mt19937_64 rng(12345);
  for (int p : {2, 3, 5}) {
    for (int it = 0; it < 50; ++it) {
      FpMatrix m = random_matrix(p, 1 + static_cast<int>(rng() % 8),
                                 1 + static_cast<int>(rng() % 8), rng);
      CHECK(rank(m) == rank(m.transposed()));
    }
  }
}

TEST_CASE("quotient_dim") {
  Subspace full(2, 5);
  for (int i = 0; i < 5; ++i) {
    FpVec e(5, 0);
    e[i] = 1;
    full.insert(e);
  }
  Subspace zero(2, 5);
  CHECK(quotient_dim(full, zero) == 5);

  Subspace amb = span_of(2, 3, {{1, 0, 0}, {0, 1, 0}});
  Subspace sub = span_of(2, 3, {{1, 1, 0}});
  CHECK(quotient_dim(amb, sub) == 1);
  CHECK(quotient_dim(amb, amb) == 0);

  Subspace outside = span_of(2, 3, {{0, 0, 1}});
  CHECK_THROWS_AS(quotient_dim(amb, outside), Error);
}

TEST_CASE("dim(sum) + dim(intersect) = dim a + dim b") {
  std::mt19937_64 rng(99);
  for (int p : {2, 3}) {
    for (int it = 0; it < 60; ++it) {
      int n = 6;
      std::vector<FpVec> va, vb;
      for (int i = 0; i < 3; ++i) {
        FpVec v(n), w(n);
        for (auto& x : v) x = static_cast<std::uint8_t>(rng() % p);
        for (auto& x : w) x = static_cast<std::uint8_t>(rng() % p);
        va.push_back(v);
        vb.push_back(w);
      }
      Subspace a = span_of(p, n, va), b = span_of(p, n, vb);
      Subspace s = sum(a, b), i = intersect(a, b);
      CHECK(s.dim() + i.dim() == a.dim() + b.dim());
      for (int k = 0; k < i.dim(); ++k) {
        CHECK(a.contains(i.basis_row(k)));
        CHECK(b.contains(i.basis_row(k)));
      }
    }
  }
}

TEST_CASE("RREF canonical under row permutation") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 40; ++it) {
    int p = (it % 2) ? 2 : 3;
    std::vector<FpVec> rows;
    for (int i = 0; i < 4; ++i) {
      FpVec v(7);
      for (auto& x : v) x = static_cast<std::uint8_t>(rng() % p);
      rows.push_back(v);
    }
    Subspace a = span_of(p, 7, rows);
    std::shuffle(rows.begin(), rows.end(), rng);
    Subspace b = span_of(p, 7, rows);
    CHECK(a == b);
  }
}

TEST_CASE("coords reconstruct the vector") {
  Subspace s = span_of(3, 4, {{1, 2, 0, 1}, {0, 1, 1, 0}});
  FpVec v = add_vec(3, s.basis_row(0), s.basis_row(1));
  FpVec c = s.coords(v);
  CHECK(c == FpVec{1, 1});
  FpVec bad{1, 0, 0, 0};
  if (!s.contains(bad)) CHECK_THROWS_AS(s.coords(bad), Error);
}

TEST_CASE("null_space gives kernel vectors") {
  std::mt19937_64 rng(31337);
  for (int p : {2, 3}) {
    for (int it = 0; it < 30; ++it) {
      FpMatrix m = random_matrix(p, 4, 6, rng);
      auto ker = null_space(m);
      CHECK(static_cast<int>(ker.size()) == 6 - rank(m));
      for (const auto& v : ker) CHECK(is_zero_vec(m.apply(v)));
      CHECK(span_of(p, 6, ker).dim() == static_cast<int>(ker.size()));
    }
  }
}
