#pragma once

#include <span>
#include <vector>

#include "ramlab/fp_linalg.hpp"

namespace ramlab {

// Abelian p-group used as the Galois group of the base extension: either
// (C_p)^{+d} or C_{p^d}. Elements are indices in [0, p^d); for the elementary
// abelian kind the index digits (base p, generator j = digit j, least
// significant first) are the exponent vector, for the cyclic kind the index
// is the residue. The enumeration order of elements is fixed once so module
// bases are reproducible bit for bit.
struct GammaGroup {
  enum class Kind { ElementaryAbelian, Cyclic };
  Kind kind = Kind::ElementaryAbelian;
  int p = 2;
  int d = 1;

  int order() const;
  int mul(int a, int b) const;
  int inv(int a) const;
  int pow(int a, long long e) const;
  int order_of(int a) const;
  int num_generators() const { return kind == Kind::Cyclic ? 1 : d; }
  int generator(int j) const;
  std::vector<int> exps(int a) const;  // exponent digits, elementary abelian
  int from_exps(std::span<const int> e) const;

  bool operator==(const GammaGroup&) const = default;
};

GammaGroup elementary_abelian(int p, int d);
GammaGroup cyclic_group(int p, int d);

struct Subgroup {
  std::vector<int> elems;  // sorted, includes the identity 0
  int order() const { return static_cast<int>(elems.size()); }
  bool contains(int g) const;
  bool operator==(const Subgroup&) const = default;
};

Subgroup subgroup_generated(const GammaGroup& g, std::span<const int> gens);
bool is_subgroup(const GammaGroup& g, const Subgroup& s);
bool is_cyclic_subgroup(const GammaGroup& g, const Subgroup& s);
// Smallest element generating s; throws NonCyclicInertia when s is not
// cyclic.
int canonical_generator(const GammaGroup& g, const Subgroup& s);

// F_p[Γ]-module given by the action matrices of the generators of Γ.
struct GammaModule {
  enum class Tag { Regular, QuotientByTrace, QuotientRegular, Trivial, Explicit };
  GammaGroup gamma;
  int p = 2;
  int dim = 0;
  std::vector<FpMatrix> gen_action;  // one per gamma generator
  Tag tag = Tag::Explicit;
  FpVec distinguished;  // QuotientByTrace: image of the identity basis vector

  FpMatrix element_action(int g) const;
  FpVec apply(int g, std::span<const std::uint8_t> v) const;
  FpVec apply_gen(int j, std::span<const std::uint8_t> v) const;
};

GammaModule regular_module(const GammaGroup& g);
GammaModule trivial_module(const GammaGroup& g, int dim);
// F_p[Γ]/(sum_{g in I} g) with its distinguished generator, the image of the
// identity basis vector. dim = |Γ| - |Γ|/|I|.
GammaModule trace_quotient(const GammaGroup& g, const Subgroup& I);
// F_p[Γ/I] with Γ acting through the quotient. dim = |Γ|/|I|.
GammaModule quotient_regular_module(const GammaGroup& g, const Subgroup& I);
GammaModule direct_sum(const GammaModule& a, const GammaModule& b);

// dim of the Γ-coinvariants M / (sum_g (g-1)M).
int coinvariants_dim(const GammaModule& m);
// Subspace sum_j (A_j - 1) M, the augmentation-ideal image.
Subspace augmentation_image(const GammaModule& m);
// Checks the generator relations of Γ hold for the action matrices.
void validate_module(const GammaModule& m);

// Closure of the span of the given vectors under the module action.
Subspace gamma_span(const GammaModule& m, const std::vector<FpVec>& vectors);

}  // namespace ramlab
