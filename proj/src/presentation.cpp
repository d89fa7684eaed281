#include "ramlab/presentation.hpp"

#include "ramlab/util.hpp"

namespace ramlab {

Subgroup RamificationType::inertia_subgroup(int i) const {
  int g = inertia[i];
  return subgroup_generated(gamma, std::span<const int>(&g, 1));
}

int RamificationType::inertia_order(int i) const { return gamma.order_of(inertia[i]); }

RamificationType make_ramification_type(const GammaGroup& gamma,
                                        const std::vector<std::vector<int>>& inertia_gens,
                                        ArchInertia arch) {
  RamificationType t;
  t.gamma = gamma;
  t.n = static_cast<int>(inertia_gens.size());
  t.arch = arch;
  for (const auto& gens : inertia_gens) {
    Subgroup s = subgroup_generated(gamma, gens);
    if (s.order() == 1) fail(Errc::InvalidType, "trivial inertia subgroup");
    t.inertia.push_back(canonical_generator(gamma, s));
  }
  validate_type(t);
  return t;
}

void validate_type(const RamificationType& t) {
  if (t.n <= 0) fail(Errc::InvalidType, "need at least one ramified prime");
  if (static_cast<int>(t.inertia.size()) != t.n) fail(Errc::InvalidType, "inertia list size");
  for (int g : t.inertia) {
    if (g <= 0 || g >= t.gamma.order()) fail(Errc::InvalidType, "inertia generator out of range");
  }
  Subgroup all = subgroup_generated(t.gamma, t.inertia);
  if (all.order() != t.gamma.order())
    fail(Errc::InertiaDoesNotGenerate, "inertia subgroups do not generate the group");
  if (t.arch == ArchInertia::OrderTwo && t.gamma.p != 2)
    fail(Errc::ArchTooLarge, "nontrivial archimedean inertia needs an even-order group");
}

FElement Presentation::power(const FElement& a, long long e) const {
  FElement out = identity();
  FElement base = e >= 0 ? a : inv(a);
  long long k = e >= 0 ? e : -e;
  for (long long i = 0; i < k; ++i) out = mul(out, base);
  return out;
}

FElement Presentation::element(int sigma, const FpVec& coords) const {
  return mul(canonical_lift(sigma), from_n_coords(coords));
}

FpVec Presentation::relator_image(int i, const FElement& y) const {
  if (i < 0 || i >= n()) fail(Errc::InvalidArgs, "relator index out of range");
  return n_coords(commutator(generator(i), y));
}

FpVec Presentation::relator_image_checked(int i, const FElement& y, long long norm) const {
  if (i < 0 || i >= n()) fail(Errc::InvalidArgs, "relator index out of range");
  int e = type().inertia_order(i);
  if (norm % e != 1 % e)
    fail(Errc::WildPrimeUnsupported,
         "local relator is not tame: Nm must be 1 mod the inertia order");
  return relator_image(i, y);
}

Subspace Presentation::one_minus_sigma_image(int g) const {
  const RelationModule& rm = relation_module();
  Subspace s(rm.p(), rm.dim());
  for (int k = 0; k < rm.dim(); ++k) {
    FpVec unit(rm.dim(), 0);
    unit[k] = 1;
    FpVec img = rm.mod.apply(g, unit);
    s.insert(sub_vec(rm.p(), img, unit));
  }
  return s;
}

RelatorCoset Presentation::relator_coset(int i, int sigma) const {
  RelatorCoset rc;
  rc.rep = relator_image(i, canonical_lift(sigma));
  rc.direction = one_minus_sigma_image(gamma_image(generator(i)));
  return rc;
}

int Presentation::conditional_class_rank(const FrobeniusAssignment& fa, bool narrow) const {
  if (static_cast<int>(fa.lifts.size()) != n())
    fail(Errc::IncompleteAssignment, "assignment must provide one lift per ramified prime");
  std::vector<FpVec> vecs;
  for (int i = 0; i < n(); ++i) {
    if (!fa.lifts[i]) fail(Errc::IncompleteAssignment, "missing Frobenius lift");
    vecs.push_back(relator_image(i, *fa.lifts[i]));
  }
  if (p() == 2) {
    if (type().arch == ArchInertia::OrderTwo) {
      if (!fa.arch_lift) fail(Errc::IncompleteAssignment, "missing archimedean lift");
      int g = gamma_image(*fa.arch_lift);
      if (g == 0 || type().gamma.order_of(g) != 2)
        fail(Errc::ComponentMismatch, "archimedean lift must map to an order-2 element");
      vecs.push_back(n_coords(mul(*fa.arch_lift, *fa.arch_lift)));
    } else if (!narrow) {
      if (!fa.arch_lift) fail(Errc::IncompleteAssignment, "missing archimedean lift");
      if (gamma_image(*fa.arch_lift) != 0)
        fail(Errc::ComponentMismatch, "archimedean lift must have trivial image for a real type");
      vecs.push_back(n_coords(*fa.arch_lift));
    }
  }
  return n_dim() - relation_module().span_closure(vecs).dim();
}

std::uint64_t Presentation::f_order() const {
  std::uint64_t o = static_cast<std::uint64_t>(type().gamma.order());
  for (int i = 0; i < n_dim(); ++i) o *= static_cast<std::uint64_t>(p());
  return o;
}

std::unique_ptr<SquareMultiquadModel> build_multiquad(int n, const BuildOptions& opts,
                                                      ArchInertia arch) {
  return std::make_unique<SquareMultiquadModel>(n, opts, arch);
}

std::unique_ptr<Presentation> build_general_multiquad(const RamificationType& t,
                                                      const BuildOptions& opts) {
  validate_type(t);
  if (t.gamma.kind != GammaGroup::Kind::ElementaryAbelian || t.gamma.p != 2)
    fail(Errc::InvalidType, "general multiquadratic model needs an elementary abelian 2-group");
  if (t.n <= t.gamma.d) fail(Errc::InvalidType, "general model needs n > d");
  if (t.gamma.d == 1) return std::make_unique<AbelianQuadraticModel>(t.n, t.arch);
  return std::make_unique<QuotientMultiquadModel>(t, opts);
}

std::unique_ptr<CyclicModel> build_cyclic(const RamificationType& t, const BuildOptions& opts) {
  return std::make_unique<CyclicModel>(t, opts);
}

std::unique_ptr<Presentation> build_presentation(const RamificationType& t,
                                                 const BuildOptions& opts) {
  validate_type(t);
  if (t.gamma.kind == GammaGroup::Kind::Cyclic && t.gamma.d > 1)
    return build_cyclic(t, opts);
  if (t.gamma.kind == GammaGroup::Kind::Cyclic) {
    // C_p with d = 1: for p = 2 the abelian quadratic model is the faithful
    // one; odd p goes through the semidirect model.
    if (t.gamma.p == 2) return std::make_unique<AbelianQuadraticModel>(t.n, t.arch);
    return build_cyclic(t, opts);
  }
  if (t.gamma.p != 2)
    fail(Errc::InvalidType, "elementary abelian models are built for p = 2 only");
  if (t.gamma.d == 1) return std::make_unique<AbelianQuadraticModel>(t.n, t.arch);
  if (t.n == t.gamma.d) return build_multiquad(t.n, opts, t.arch);
  return build_general_multiquad(t, opts);
}

bool kp_condition(const Presentation& model, const FrobeniusAssignment& fa) {
  const auto* sq = dynamic_cast<const SquareMultiquadModel*>(&model);
  if (!sq) fail(Errc::RequiresSquareCase, "kernel condition is defined in the n = d model");
  if (static_cast<int>(fa.lifts.size()) != model.n())
    fail(Errc::IncompleteAssignment, "assignment must provide one lift per ramified prime");
  for (int q = 0; q < model.n(); ++q) {
    if (!fa.lifts[q]) fail(Errc::IncompleteAssignment, "missing Frobenius lift");
    for (int c = 0; c < sq->num_components(); ++c) {
      const auto& info = sq->component(c);
      if (info.p_index == q) continue;
      if (info.u_mask >> q & 1) continue;
      if (!sq->component_is_identity(*fa.lifts[q], c)) return false;
    }
  }
  return true;
}

}  // namespace ramlab
