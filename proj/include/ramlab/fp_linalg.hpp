#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ramlab/error.hpp"

namespace ramlab {

using FpVec = std::vector<std::uint8_t>;

// Dense matrix over F_p, row-major byte entries. p must be a prime small
// enough that p*p fits in an int (we only ever use 2 and 3, but the code is
// generic).
struct FpMatrix {
  int p = 2;
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> a;

  FpMatrix() = default;
  FpMatrix(int p_, int rows_, int cols_)
      : p(p_), rows(rows_), cols(cols_), a(static_cast<std::size_t>(rows_) * cols_, 0) {}

  static FpMatrix identity(int p, int n);

  std::uint8_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  std::uint8_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  FpVec row(int r) const;
  void set_row(int r, std::span<const std::uint8_t> v);

  FpMatrix transposed() const;
  FpMatrix mul(const FpMatrix& rhs) const;
  // Matrix * column vector.
  FpVec apply(std::span<const std::uint8_t> v) const;

  bool operator==(const FpMatrix&) const = default;
};

int rank(const FpMatrix& m);

// Basis of {x : m x = 0} (column-vector kernel).
std::vector<FpVec> null_space(const FpMatrix& m);

// A subspace of F_p^ambient held in reduced row echelon form, so equality of
// subspaces is structural equality. Row insertion keeps the RREF invariant;
// p = 2 rows are bit-packed into machine words.
class Subspace {
 public:
  Subspace() = default;
  Subspace(int p, int ambient);

  int p() const { return p_; }
  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(pivots_.size()); }

  // Returns true if the vector enlarged the span.
  bool insert(std::span<const std::uint8_t> v);
  bool contains(std::span<const std::uint8_t> v) const;
  // Canonical representative of v modulo this subspace.
  FpVec reduce(std::span<const std::uint8_t> v) const;
  // Coordinates of v in the RREF basis; throws SubspaceNotContained if v is
  // not in the span.
  FpVec coords(std::span<const std::uint8_t> v) const;

  FpVec basis_row(int i) const;
  const std::vector<int>& pivots() const { return pivots_; }
  FpMatrix basis_matrix() const;

  bool operator==(const Subspace& o) const;

 private:
  int p_ = 2;
  int ambient_ = 0;
  std::vector<int> pivots_;                      // strictly increasing
  std::vector<std::vector<std::uint64_t>> bit_;  // p == 2 rows
  std::vector<FpVec> byte_;                      // p > 2 rows

  int words() const { return (ambient_ + 63) / 64; }
};

Subspace span_of(int p, int ambient, const std::vector<FpVec>& vectors);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
bool contains(const Subspace& s, std::span<const std::uint8_t> v);
// dim(ambient) - dim(sub); throws SubspaceNotContained unless sub lies in
// ambient.
int quotient_dim(const Subspace& ambient, const Subspace& sub);

FpVec add_vec(int p, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
FpVec sub_vec(int p, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
bool is_zero_vec(std::span<const std::uint8_t> v);

}  // namespace ramlab
