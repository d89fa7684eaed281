#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ramlab/gamma.hpp"
#include "ramlab/group_kernel.hpp"

namespace ramlab {

enum class ArchInertia { Trivial, OrderTwo };

// (Γ, n, {I_i}, I_inf): the data prescribing a tame Galois p-extension's
// ramification. Inertia subgroups are stored by a canonical generator.
struct RamificationType {
  GammaGroup gamma;
  int n = 0;
  std::vector<int> inertia;  // canonical generator of I_i, element index in Γ
  ArchInertia arch = ArchInertia::Trivial;

  Subgroup inertia_subgroup(int i) const;
  int inertia_order(int i) const;
};

RamificationType make_ramification_type(const GammaGroup& gamma,
                                        const std::vector<std::vector<int>>& inertia_gens,
                                        ArchInertia arch);
// Throws InertiaDoesNotGenerate / ArchTooLarge / NonCyclicInertia / InvalidType.
void validate_type(const RamificationType& t);

// ---------------------------------------------------------------------------
// Elements of the finite model F = (∗ I_i)/Φ(ker π).

// One wreath component C_2 ≀ (C_2)^{+u} of the faithful multiquadratic model,
// bit packed: base has 2^u bits indexed by exponent masks, top has u bits.
// Translation by t permutes base bit g to bit g^t.
struct MqComp {
  std::uint16_t base = 0;
  std::uint8_t top = 0;
  auto operator<=>(const MqComp&) const = default;
};

struct MqElement {
  std::vector<MqComp> c;
  auto operator<=>(const MqElement&) const = default;
};

// F-element carrier: wreath tuple (multiquadratic), semidirect (cyclic), or a
// plain (C_2)^n mask for the abelian d = 1 model.
using FElement = std::variant<MqElement, SdElement, std::uint32_t>;

struct FrobeniusAssignment {
  std::vector<std::optional<FElement>> lifts;
  std::optional<FElement> arch_lift;
};

// N = ker π / Φ(ker π) with its Γ-action in fixed coordinates.
struct RelationModule {
  GammaModule mod;
  int dim() const { return mod.dim; }
  int p() const { return mod.p; }
  Subspace span_closure(const std::vector<FpVec>& vectors) const {
    return gamma_span(mod, vectors);
  }
};

struct RelatorCoset {
  FpVec rep;           // one achievable relator value, N coordinates
  Subspace direction;  // (σ_{x_i} - 1)·N; achievable set = rep + direction
};

struct BuildOptions {
  int multiquad_cap = 4;    // max n for the faithful wreath family
  int cyclic_order_cap = 27;
  int cyclic_n_cap = 4;
};

// ---------------------------------------------------------------------------

class Presentation {
 public:
  virtual ~Presentation() = default;

  virtual const RamificationType& type() const = 0;
  int p() const { return type().gamma.p; }
  int n() const { return type().n; }
  virtual const RelationModule& relation_module() const = 0;
  int n_dim() const { return relation_module().dim(); }

  virtual FElement identity() const = 0;
  virtual FElement generator(int i) const = 0;
  virtual FElement mul(const FElement& a, const FElement& b) const = 0;
  virtual FElement inv(const FElement& a) const = 0;
  FElement commutator(const FElement& a, const FElement& b) const {
    return mul(mul(a, b), mul(inv(a), inv(b)));
  }
  FElement power(const FElement& a, long long e) const;

  virtual int gamma_image(const FElement& a) const = 0;
  // Canonical lift of a Γ-element into F.
  virtual FElement canonical_lift(int sigma) const = 0;
  // Element with given Γ-image and N-part.
  FElement element(int sigma, const FpVec& n_coords) const;
  // Coordinates in N of an element with trivial Γ-image.
  virtual FpVec n_coords(const FElement& a) const = 0;
  virtual FElement from_n_coords(const FpVec& coords) const = 0;

  // N-coordinates of the tame local relator [x_i, y]. The tame reduction
  // x^{Nm} y x^{-1} y^{-1} = [x, y] needs Nm = 1 mod |I_i|; the norm-checked
  // variant rejects wild input.
  FpVec relator_image(int i, const FElement& y) const;
  FpVec relator_image_checked(int i, const FElement& y, long long norm) const;
  RelatorCoset relator_coset(int i, int sigma) const;

  // dim of N / (sum of relator submodules + archimedean submodule).
  int conditional_class_rank(const FrobeniusAssignment& fa, bool narrow) const;

  // gr_i dims of the descending central filtration (multiquadratic models).
  virtual std::vector<int> graded_dims() const = 0;

  virtual bool supports_kp() const { return false; }

  std::uint64_t f_order() const;

  virtual std::string kind() const = 0;

 protected:
  // Subspace of N-coordinates spanned by (action(g) - 1)·N.
  Subspace one_minus_sigma_image(int g) const;
};

// Faithful model for n = d: F inside the product of all C_2 ≀ (C_2)^{+|U|}.
class SquareMultiquadModel final : public Presentation {
 public:
  explicit SquareMultiquadModel(int n, const BuildOptions& opts = {},
                                ArchInertia arch = ArchInertia::Trivial);

  const RamificationType& type() const override { return type_; }
  const RelationModule& relation_module() const override { return module_; }

  FElement identity() const override;
  FElement generator(int i) const override;
  FElement mul(const FElement& a, const FElement& b) const override;
  FElement inv(const FElement& a) const override;
  int gamma_image(const FElement& a) const override;
  FElement canonical_lift(int sigma) const override;
  FpVec n_coords(const FElement& a) const override;
  FElement from_n_coords(const FpVec& coords) const override;
  std::vector<int> graded_dims() const override;
  bool supports_kp() const override { return true; }
  std::string kind() const override { return "multiquad-square"; }

  // -- model internals used by the quotient model, kp checks and tests.
  struct CompInfo {
    std::uint32_t u_mask;   // U as a subset of {0..n-1}
    int p_index;            // the distinguished prime p, not in U
    int u;                  // |U|
    int offset;             // first ambient coordinate of this base space
    std::vector<int> slot;  // slot[q] = position of q inside U, or -1
  };
  int num_components() const { return static_cast<int>(comps_.size()); }
  const CompInfo& component(int c) const { return comps_[c]; }
  bool component_is_identity(const FElement& a, int c) const;

  int ambient_dim() const { return ambient_dim_; }
  // Base-only element <-> ambient F_2 vector over the direct sum of base
  // spaces; mq_ambient throws ComponentMismatch on nonzero tops.
  FpVec ambient(const MqElement& a) const;
  MqElement from_ambient(std::span<const std::uint8_t> v) const;
  // Γ acting on ambient vectors by per-component translation.
  FpVec act(int tau, std::span<const std::uint8_t> v) const;
  const Subspace& n_ambient_basis() const { return n_basis_; }
  // Descending central series F_(2) >= F_(3) >= ... as ambient subspaces.
  const std::vector<Subspace>& filtration() const { return filtration_; }
  MqElement word_lift(int tau) const;

 private:
  MqElement mq_mul(const MqElement& a, const MqElement& b) const;
  MqElement mq_inv(const MqElement& a) const;
  const MqElement& as_mq(const FElement& a) const;

  RamificationType type_;
  std::vector<CompInfo> comps_;
  int ambient_dim_ = 0;
  std::vector<MqElement> gens_;
  std::vector<std::pair<int, int>> gamma_probe_;  // per q: (component, top bit)
  Subspace n_basis_;
  std::vector<Subspace> filtration_;  // index 0 = F_(2)
  RelationModule module_;
};

// n > d >= 2: quotient of the n = n faithful model by Φ(H), H = ker(F -> Γ).
class QuotientMultiquadModel final : public Presentation {
 public:
  QuotientMultiquadModel(const RamificationType& t, const BuildOptions& opts = {});

  const RamificationType& type() const override { return type_; }
  const RelationModule& relation_module() const override { return module_; }

  FElement identity() const override;
  FElement generator(int i) const override;
  FElement mul(const FElement& a, const FElement& b) const override;
  FElement inv(const FElement& a) const override;
  int gamma_image(const FElement& a) const override;
  FElement canonical_lift(int sigma) const override;
  FpVec n_coords(const FElement& a) const override;
  FElement from_n_coords(const FpVec& coords) const override;
  std::vector<int> graded_dims() const override;
  std::string kind() const override { return "multiquad-quotient"; }

  const SquareMultiquadModel& parent() const { return *parent_; }
  const Subspace& phi_h() const { return phi_; }
  // Generator positions whose Γ-images form the chosen basis of Γ.
  const std::vector<int>& basis_positions() const { return basis_pos_; }
  // For each generator outside the basis, the replaced basis index e_j.
  const std::vector<std::pair<int, int>>& basis_choice() const { return e_choice_; }
  int degree_one_dim() const { return k_basis_.dim(); }
  FpVec reduce_mod_phi(std::span<const std::uint8_t> parent_ambient) const;

 private:
  int gamma_small_image(const MqElement& a) const;
  MqElement lift_k(std::span<const std::uint8_t> kappa_coords) const;
  FpVec coords_of(const MqElement& h) const;

  RamificationType type_;
  std::unique_ptr<SquareMultiquadModel> parent_;
  std::vector<int> basis_pos_;   // generator positions with independent Γ-images
  std::vector<int> v_image_;     // Γ_small image mask of generator i
  std::vector<int> lift_gen_;    // Γ_big mask lifting each Γ_small generator
  Subspace k_basis_;             // K = ker(Γ_big -> Γ_small), RREF over F_2^n
  std::vector<MqElement> k_lifts_;  // products of parent word lifts per K-basis row
  Subspace phi_;                 // Φ(H) in parent ambient coordinates
  Subspace reduced_basis_;       // image of parent N under reduce mod Φ
  std::vector<std::pair<int, int>> e_choice_;
  RelationModule module_;
};

// d = 1: F = (C_2)^n is abelian, N = even-weight vectors, trivial action.
class AbelianQuadraticModel final : public Presentation {
 public:
  AbelianQuadraticModel(int n, ArchInertia arch);

  const RamificationType& type() const override { return type_; }
  const RelationModule& relation_module() const override { return module_; }

  FElement identity() const override { return std::uint32_t{0}; }
  FElement generator(int i) const override;
  FElement mul(const FElement& a, const FElement& b) const override;
  FElement inv(const FElement& a) const override { return a; }
  int gamma_image(const FElement& a) const override;
  FElement canonical_lift(int sigma) const override;
  FpVec n_coords(const FElement& a) const override;
  FElement from_n_coords(const FpVec& coords) const override;
  std::vector<int> graded_dims() const override { return {type_.n}; }
  std::string kind() const override { return "multiquad-abelian"; }

  FElement from_mask(std::uint32_t mask) const { return mask; }

 private:
  RamificationType type_;
  RelationModule module_;
};

// Γ = C_{p^d}: F realized as (⊕_{i>=2} F_p[Γ]/(Σ_{g in I_i} g)) ⋊ Γ.
class CyclicModel final : public Presentation {
 public:
  CyclicModel(const RamificationType& t, const BuildOptions& opts = {});

  const RamificationType& type() const override { return type_; }
  const RelationModule& relation_module() const override { return module_; }

  FElement identity() const override;
  FElement generator(int i) const override;
  FElement mul(const FElement& a, const FElement& b) const override;
  FElement inv(const FElement& a) const override;
  int gamma_image(const FElement& a) const override;
  FElement canonical_lift(int sigma) const override;
  FpVec n_coords(const FElement& a) const override;
  FElement from_n_coords(const FpVec& coords) const override;
  std::vector<int> graded_dims() const override;
  std::string kind() const override { return "cyclic"; }

  const SemidirectGroup& group() const { return *group_; }
  // Model index -> index in the type passed to the constructor (the model
  // reorders so that a full-inertia factor comes first).
  const std::vector<int>& input_index() const { return perm_; }
  // Frattini-quotient invariants of an element: (coinvariant part of the
  // module component, Γ-part mod p). The cyclic lower-bound check requires a
  // vanishing first part and a generating second part.
  std::pair<FpVec, int> psi(const FElement& a) const;
  bool psi_condition(const FElement& a) const;
  const Subspace& augmentation_submodule() const { return aug_; }
  const std::vector<int>& block_offset() const { return block_offset_; }

 private:
  const SdElement& as_sd(const FElement& a) const;

  RamificationType type_;
  std::vector<int> perm_;
  std::unique_ptr<SemidirectGroup> group_;
  std::vector<SdElement> gens_;
  std::vector<int> block_offset_;
  Subspace aug_;  // I_Γ·N
  RelationModule module_;
};

// ---------------------------------------------------------------------------
// Build entry points.

std::unique_ptr<SquareMultiquadModel> build_multiquad(int n, const BuildOptions& opts = {},
                                                      ArchInertia arch = ArchInertia::Trivial);
std::unique_ptr<Presentation> build_general_multiquad(const RamificationType& t,
                                                      const BuildOptions& opts = {});
std::unique_ptr<CyclicModel> build_cyclic(const RamificationType& t,
                                          const BuildOptions& opts = {});
std::unique_ptr<Presentation> build_presentation(const RamificationType& t,
                                                 const BuildOptions& opts = {});

// Wreath-kernel condition: every y_q lies in ker π_{U,p} for all admissible
// (U, p) with q not in U ∪ {p}. Throws RequiresSquareCase unless the model is
// the faithful n = d one.
bool kp_condition(const Presentation& model, const FrobeniusAssignment& fa);

}  // namespace ramlab
