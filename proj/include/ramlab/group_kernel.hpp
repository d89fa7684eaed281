#pragma once

#include <cstdint>

#include "ramlab/gamma.hpp"

namespace ramlab {

// Element (m, g) of M ⋊ Γ with (m1,g1)(m2,g2) = (m1 + g1·m2, g1 g2).
struct SdElement {
  FpVec m;
  int g = 0;
  bool operator==(const SdElement&) const = default;
};

class SemidirectGroup {
 public:
  explicit SemidirectGroup(GammaModule mod) : mod_(std::move(mod)) {}

  const GammaModule& mod() const { return mod_; }
  const GammaGroup& gamma() const { return mod_.gamma; }

  SdElement id() const { return SdElement{FpVec(mod_.dim, 0), 0}; }
  SdElement mul(const SdElement& a, const SdElement& b) const;
  SdElement inv(const SdElement& a) const;
  SdElement commutator(const SdElement& a, const SdElement& b) const;
  SdElement pow(const SdElement& a, long long e) const;
  int order_of(const SdElement& a) const;
  std::uint64_t order() const;

 private:
  void check(const SdElement& a) const;
  GammaModule mod_;
};

// C_p ≀ (C_p)^{+u}: the semidirect product F_p[(C_p)^{+u}] ⋊ (C_p)^{+u} with
// the regular translation action. a() is the base indicator at the identity
// (its normal closure is the whole base), g(q) the q-th top unit.
class WreathGroup {
 public:
  WreathGroup(int p, int u);

  const SemidirectGroup& sd() const { return sd_; }
  int p() const { return sd_.mod().p; }
  int u() const { return sd_.gamma().d; }

  SdElement id() const { return sd_.id(); }
  SdElement mul(const SdElement& a, const SdElement& b) const { return sd_.mul(a, b); }
  SdElement inv(const SdElement& a) const { return sd_.inv(a); }
  SdElement commutator(const SdElement& a, const SdElement& b) const {
    return sd_.commutator(a, b);
  }
  SdElement a() const;
  SdElement g(int q) const;
  std::uint64_t order() const { return sd_.order(); }

 private:
  SemidirectGroup sd_;
};

}  // namespace ramlab
