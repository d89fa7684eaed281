#include "ramlab/group_kernel.hpp"

#include "ramlab/util.hpp"

namespace ramlab {

void SemidirectGroup::check(const SdElement& a) const {
  if (static_cast<int>(a.m.size()) != mod_.dim || a.g < 0 || a.g >= gamma().order())
    fail(Errc::MixedGroups, "element does not belong to this semidirect product");
}

SdElement SemidirectGroup::mul(const SdElement& a, const SdElement& b) const {
  check(a);
  check(b);
  return SdElement{add_vec(mod_.p, a.m, mod_.apply(a.g, b.m)), gamma().mul(a.g, b.g)};
}

SdElement SemidirectGroup::inv(const SdElement& a) const {
  check(a);
  int gi = gamma().inv(a.g);
  FpVec zero(mod_.dim, 0);
  return SdElement{sub_vec(mod_.p, zero, mod_.apply(gi, a.m)), gi};
}

SdElement SemidirectGroup::commutator(const SdElement& a, const SdElement& b) const {
  return mul(mul(a, b), mul(inv(a), inv(b)));
}

SdElement SemidirectGroup::pow(const SdElement& a, long long e) const {
  SdElement out = id();
  SdElement base = e >= 0 ? a : inv(a);
  long long n = e >= 0 ? e : -e;
  while (n > 0) {
    if (n & 1) out = mul(out, base);
    base = mul(base, base);
    n >>= 1;
  }
  return out;
}

int SemidirectGroup::order_of(const SdElement& a) const {
  SdElement x = a;
  int o = 1;
  while (!(x == id())) {
    x = mul(x, a);
    ++o;
  }
  return o;
}

std::uint64_t SemidirectGroup::order() const {
  std::uint64_t o = 1;
  for (int i = 0; i < mod_.dim; ++i) o *= static_cast<std::uint64_t>(mod_.p);
  return o * static_cast<std::uint64_t>(gamma().order());
}

WreathGroup::WreathGroup(int p, int u) : sd_(regular_module(elementary_abelian(p, u))) {}

SdElement WreathGroup::a() const {
  FpVec v(sd_.mod().dim, 0);
  v[0] = 1;  // basis vector at the identity of (C_p)^u
  return SdElement{std::move(v), 0};
}

SdElement WreathGroup::g(int q) const {
  return SdElement{FpVec(sd_.mod().dim, 0), sd_.gamma().generator(q)};
}

}  // namespace ramlab
