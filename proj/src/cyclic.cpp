#include <algorithm>

#include "ramlab/presentation.hpp"
#include "ramlab/util.hpp"

namespace ramlab {

CyclicModel::CyclicModel(const RamificationType& t, const BuildOptions& opts) {
  validate_type(t);
  if (t.gamma.kind != GammaGroup::Kind::Cyclic)
    fail(Errc::InvalidType, "cyclic model needs a cyclic group");
  if (t.gamma.order() > opts.cyclic_order_cap)
    fail(Errc::SizeCapExceeded, "cyclic group order cap is " +
                                    std::to_string(opts.cyclic_order_cap));
  if (t.n > opts.cyclic_n_cap)
    fail(Errc::SizeCapExceeded, "cyclic prime-count cap is " + std::to_string(opts.cyclic_n_cap));

  // Reorder so that a full-inertia factor sits first.
  perm_.resize(t.n);
  for (int i = 0; i < t.n; ++i) perm_[i] = i;
  int full = -1;
  for (int i = 0; i < t.n && full < 0; ++i)
    if (t.inertia_order(i) == t.gamma.order()) full = i;
  if (full < 0) fail(Errc::NoFullInertia, "some inertia subgroup must be the whole group");
  std::swap(perm_[0], perm_[full]);
  type_ = t;
  for (int i = 0; i < t.n; ++i) type_.inertia[i] = t.inertia[perm_[i]];

  // Codomain (⊕_{i>=2} F_p[Γ]/(Σ_{g in I_i} g)) ⋊ Γ.
  const GammaGroup& g = type_.gamma;
  GammaModule total = trivial_module(g, 0);
  block_offset_.push_back(0);
  std::vector<FpVec> distinguished;
  for (int i = 1; i < type_.n; ++i) {
    GammaModule m = trace_quotient(g, type_.inertia_subgroup(i));
    distinguished.push_back(m.distinguished);
    total = direct_sum(total, m);
    block_offset_.push_back(total.dim);
  }
  group_ = std::make_unique<SemidirectGroup>(total);

  gens_.push_back(SdElement{FpVec(total.dim, 0), 1});  // x_1 -> (0, γ)
  for (int i = 1; i < type_.n; ++i) {
    FpVec v(total.dim, 0);
    for (int k = 0; k < static_cast<int>(distinguished[i - 1].size()); ++k)
      v[block_offset_[i - 1] + k] = distinguished[i - 1][k];
    int c = g.order() / type_.inertia_order(i);  // γ^c generates I_i
    gens_.push_back(SdElement{std::move(v), c});
  }
  for (int i = 0; i < type_.n; ++i) {
    if (!(group_->pow(gens_[i], type_.inertia_order(i)) == group_->id()))
      fail(Errc::InvalidType, "generator image fails the inertia-order relation");
  }

  long long expect = 0;
  for (int i = 1; i < type_.n; ++i)
    expect += g.order() - g.order() / type_.inertia_order(i);
  if (total.dim != expect) fail(Errc::InvalidType, "cyclic relation module dimension mismatch");

  aug_ = augmentation_image(group_->mod());
  module_ = RelationModule{group_->mod()};
}

const SdElement& CyclicModel::as_sd(const FElement& a) const {
  const auto* e = std::get_if<SdElement>(&a);
  if (!e || static_cast<int>(e->m.size()) != module_.dim())
    fail(Errc::ComponentMismatch, "element does not belong to this model");
  return *e;
}

FElement CyclicModel::identity() const { return group_->id(); }

FElement CyclicModel::generator(int i) const {
  if (i < 0 || i >= type_.n) fail(Errc::InvalidArgs, "generator index");
  return gens_[i];
}

FElement CyclicModel::mul(const FElement& a, const FElement& b) const {
  return group_->mul(as_sd(a), as_sd(b));
}

FElement CyclicModel::inv(const FElement& a) const { return group_->inv(as_sd(a)); }

int CyclicModel::gamma_image(const FElement& a) const { return as_sd(a).g; }

FElement CyclicModel::canonical_lift(int sigma) const {
  return SdElement{FpVec(module_.dim(), 0), sigma};
}

FpVec CyclicModel::n_coords(const FElement& a) const {
  const SdElement& e = as_sd(a);
  if (e.g != 0) fail(Errc::SubspaceNotContained, "element has nontrivial image");
  return e.m;
}

FElement CyclicModel::from_n_coords(const FpVec& coords) const {
  if (static_cast<int>(coords.size()) != module_.dim())
    fail(Errc::InvalidArgs, "coordinate size mismatch");
  return SdElement{coords, 0};
}

std::vector<int> CyclicModel::graded_dims() const {
  fail(Errc::InvalidType, "graded dimensions are defined for the multiquadratic models");
}

std::pair<FpVec, int> CyclicModel::psi(const FElement& a) const {
  const SdElement& e = as_sd(a);
  return {aug_.reduce(e.m), e.g % type_.gamma.p};
}

bool CyclicModel::psi_condition(const FElement& a) const {
  auto [coinv, g] = psi(a);
  return is_zero_vec(coinv) && g != 0;
}

}  // namespace ramlab
