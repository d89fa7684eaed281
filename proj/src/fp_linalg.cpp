#include "ramlab/fp_linalg.hpp"

#include <algorithm>

namespace ramlab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SubspaceNotContained: return "SubspaceNotContained";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::MixedGroups: return "MixedGroups";
    case Errc::InertiaDoesNotGenerate: return "InertiaDoesNotGenerate";
    case Errc::ArchTooLarge: return "ArchTooLarge";
    case Errc::NonCyclicInertia: return "NonCyclicInertia";
    case Errc::SizeCapExceeded: return "SizeCapExceeded";
    case Errc::InvalidType: return "InvalidType";
    case Errc::InvalidArgs: return "InvalidArgs";
    case Errc::NoFullInertia: return "NoFullInertia";
    case Errc::ComponentMismatch: return "ComponentMismatch";
    case Errc::IncompleteAssignment: return "IncompleteAssignment";
    case Errc::RequiresSquareCase: return "RequiresSquareCase";
    case Errc::WildPrimeUnsupported: return "WildPrimeUnsupported";
    case Errc::DomainTooLarge: return "DomainTooLarge";
    case Errc::NotFundamental: return "NotFundamental";
    case Errc::BadModulus: return "BadModulus";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::CharConflict: return "CharConflict";
    case Errc::CharDividesDegree: return "CharDividesDegree";
    case Errc::WildPrime: return "WildPrime";
    case Errc::NotIndependent: return "NotIndependent";
    case Errc::UnitUnavailable: return "UnitUnavailable";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::UnknownCheckId: return "UnknownCheckId";
    case Errc::ParseError: return "ParseError";
  }
  return "Error";
}

namespace {

int mod_inverse(int a, int p) {
  // p prime, a != 0 mod p
  int result = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

}  // namespace

FpMatrix FpMatrix::identity(int p, int n) {
  FpMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpVec FpMatrix::row(int r) const {
  return FpVec(a.begin() + static_cast<std::size_t>(r) * cols,
               a.begin() + static_cast<std::size_t>(r + 1) * cols);
}

void FpMatrix::set_row(int r, std::span<const std::uint8_t> v) {
  std::copy(v.begin(), v.end(), a.begin() + static_cast<std::size_t>(r) * cols);
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix t(p, cols, rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
  return t;
}

FpMatrix FpMatrix::mul(const FpMatrix& rhs) const {
  FpMatrix out(p, rows, rhs.cols);
  for (int r = 0; r < rows; ++r)
    for (int k = 0; k < cols; ++k) {
      int x = at(r, k);
      if (!x) continue;
      for (int c = 0; c < rhs.cols; ++c)
        out.at(r, c) = static_cast<std::uint8_t>((out.at(r, c) + x * rhs.at(k, c)) % p);
    }
  return out;
}

FpVec FpMatrix::apply(std::span<const std::uint8_t> v) const {
  FpVec out(rows, 0);
  for (int r = 0; r < rows; ++r) {
    int acc = 0;
    for (int c = 0; c < cols; ++c) acc += at(r, c) * v[c];
    out[r] = static_cast<std::uint8_t>(acc % p);
  }
  return out;
}

FpVec add_vec(int p, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  FpVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = static_cast<std::uint8_t>((a[i] + b[i]) % p);
  return out;
}

FpVec sub_vec(int p, std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  FpVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = static_cast<std::uint8_t>((a[i] + p - b[i]) % p);
  return out;
}

bool is_zero_vec(std::span<const std::uint8_t> v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

Subspace::Subspace(int p, int ambient) : p_(p), ambient_(ambient) {}

bool Subspace::insert(std::span<const std::uint8_t> v) {
  if (static_cast<int>(v.size()) != ambient_) fail(Errc::InvalidArgs, "vector size mismatch");
  if (p_ == 2) {
    std::vector<std::uint64_t> w(words(), 0);
    for (int i = 0; i < ambient_; ++i)
      if (v[i] & 1) w[i >> 6] |= std::uint64_t{1} << (i & 63);
    // reduce against existing rows
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      int pc = pivots_[r];
      if (w[pc >> 6] >> (pc & 63) & 1)
        for (int k = 0; k < words(); ++k) w[k] ^= bit_[r][k];
    }
    int pivot = -1;
    for (int k = 0; k < words() && pivot < 0; ++k)
      if (w[k]) pivot = k * 64 + __builtin_ctzll(w[k]);
    if (pivot < 0) return false;
    // clear the new pivot column in existing rows
    for (std::size_t r = 0; r < pivots_.size(); ++r)
      if (bit_[r][pivot >> 6] >> (pivot & 63) & 1)
        for (int k = 0; k < words(); ++k) bit_[r][k] ^= w[k];
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, pivot);
    bit_.insert(bit_.begin() + pos, std::move(w));
    return true;
  }
  FpVec w(v.begin(), v.end());
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    int pc = pivots_[r];
    int coef = w[pc];
    if (!coef) continue;
    for (int k = 0; k < ambient_; ++k)
      w[k] = static_cast<std::uint8_t>((w[k] + (p_ - coef) * byte_[r][k]) % p_);
  }
  int pivot = -1;
  for (int k = 0; k < ambient_ && pivot < 0; ++k)
    if (w[k]) pivot = k;
  if (pivot < 0) return false;
  int inv = mod_inverse(w[pivot], p_);
  for (int k = 0; k < ambient_; ++k) w[k] = static_cast<std::uint8_t>(w[k] * inv % p_);
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    int coef = byte_[r][pivot];
    if (!coef) continue;
    for (int k = 0; k < ambient_; ++k)
      byte_[r][k] = static_cast<std::uint8_t>((byte_[r][k] + (p_ - coef) * w[k]) % p_);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, pivot);
  byte_.insert(byte_.begin() + pos, std::move(w));
  return true;
}

FpVec Subspace::reduce(std::span<const std::uint8_t> v) const {
  if (static_cast<int>(v.size()) != ambient_) fail(Errc::InvalidArgs, "vector size mismatch");
  FpVec w(v.begin(), v.end());
  if (p_ == 2) {
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      if (w[pivots_[r]] & 1)
        for (int k = 0; k < ambient_; ++k)
          w[k] = static_cast<std::uint8_t>(w[k] ^ ((bit_[r][k >> 6] >> (k & 63)) & 1));
    }
    return w;
  }
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    int coef = w[pivots_[r]];
    if (!coef) continue;
    for (int k = 0; k < ambient_; ++k)
      w[k] = static_cast<std::uint8_t>((w[k] + (p_ - coef) * byte_[r][k]) % p_);
  }
  return w;
}

bool Subspace::contains(std::span<const std::uint8_t> v) const {
  return is_zero_vec(reduce(v));
}

FpVec Subspace::coords(std::span<const std::uint8_t> v) const {
  if (!contains(v)) fail(Errc::SubspaceNotContained, "vector outside subspace");
  // In RREF each basis row is the unique row with a 1 in its pivot column, so
  // coordinates are just the pivot entries of v.
  FpVec c(pivots_.size());
  for (std::size_t r = 0; r < pivots_.size(); ++r) c[r] = v[pivots_[r]];
  return c;
}

FpVec Subspace::basis_row(int i) const {
  FpVec out(ambient_, 0);
  if (p_ == 2) {
    for (int k = 0; k < ambient_; ++k)
      out[k] = static_cast<std::uint8_t>((bit_[i][k >> 6] >> (k & 63)) & 1);
  } else {
    out = byte_[i];
  }
  return out;
}

FpMatrix Subspace::basis_matrix() const {
  FpMatrix m(p_, dim(), ambient_);
  for (int i = 0; i < dim(); ++i) m.set_row(i, basis_row(i));
  return m;
}

bool Subspace::operator==(const Subspace& o) const {
  return p_ == o.p_ && ambient_ == o.ambient_ && pivots_ == o.pivots_ && bit_ == o.bit_ &&
         byte_ == o.byte_;
}

Subspace span_of(int p, int ambient, const std::vector<FpVec>& vectors) {
  Subspace s(p, ambient);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.p() != b.p() || a.ambient_dim() != b.ambient_dim())
    fail(Errc::MixedGroups, "subspace sum over different ambients");
  Subspace s = a;
  for (int i = 0; i < b.dim(); ++i) s.insert(b.basis_row(i));
  return s;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.p() != b.p() || a.ambient_dim() != b.ambient_dim())
    fail(Errc::MixedGroups, "subspace intersection over different ambients");
  // Zassenhaus: reduce rows [a_i | a_i] and [b_j | 0]; rows whose left half
  // vanished have right halves spanning the intersection.
  int n = a.ambient_dim();
  Subspace big(a.p(), 2 * n);
  Subspace out(a.p(), n);
  std::vector<FpVec> rows;
  for (int i = 0; i < a.dim(); ++i) {
    FpVec r = a.basis_row(i);
    FpVec v(2 * n, 0);
    std::copy(r.begin(), r.end(), v.begin());
    std::copy(r.begin(), r.end(), v.begin() + n);
    rows.push_back(std::move(v));
  }
  for (int i = 0; i < b.dim(); ++i) {
    FpVec r = b.basis_row(i);
    FpVec v(2 * n, 0);
    std::copy(r.begin(), r.end(), v.begin());
    rows.push_back(std::move(v));
  }
  // run a plain elimination keeping track of the tail as rows become zero on
  // the left
  for (auto& v : rows) {
    FpVec w = big.reduce(v);
    bool left_zero = true;
    for (int k = 0; k < n && left_zero; ++k) left_zero = (w[k] == 0);
    if (left_zero) {
      out.insert(std::span<const std::uint8_t>(w).subspan(n));
    } else {
      big.insert(w);
    }
  }
  return out;
}

bool contains(const Subspace& s, std::span<const std::uint8_t> v) { return s.contains(v); }

int quotient_dim(const Subspace& ambient, const Subspace& sub) {
  for (int i = 0; i < sub.dim(); ++i)
    if (!ambient.contains(sub.basis_row(i)))
      fail(Errc::SubspaceNotContained, "sub is not contained in ambient");
  return ambient.dim() - sub.dim();
}

int rank(const FpMatrix& m) {
  Subspace s(m.p, m.cols);
  for (int r = 0; r < m.rows; ++r) s.insert(m.row(r));
  return s.dim();
}

std::vector<FpVec> null_space(const FpMatrix& m) {
  // RREF of m, then one kernel vector per free column.
  Subspace s(m.p, m.cols);
  for (int r = 0; r < m.rows; ++r) s.insert(m.row(r));
  std::vector<bool> is_pivot(m.cols, false);
  for (int pc : s.pivots()) is_pivot[pc] = true;
  std::vector<FpVec> out;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    FpVec v(m.cols, 0);
    v[c] = 1;
    for (int r = 0; r < s.dim(); ++r) {
      FpVec row = s.basis_row(r);
      // pivot entry is 1; solve pivot value so row . v = 0
      int val = row[c];
      if (val) v[s.pivots()[r]] = static_cast<std::uint8_t>((m.p - val) % m.p);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace ramlab
