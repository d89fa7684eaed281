#include <algorithm>
#include <bit>

#include "ramlab/presentation.hpp"
#include "ramlab/util.hpp"

namespace ramlab {

namespace {

std::uint16_t translate(std::uint16_t base, int u, std::uint8_t t) {
  if (t == 0) return base;
  std::uint16_t out = 0;
  for (int g = 0; g < (1 << u); ++g)
    if (base >> g & 1) out = static_cast<std::uint16_t>(out | (1 << (g ^ t)));
  return out;
}

// Gauss-Jordan inverse of a square matrix over F_p; InvalidArgs if singular.
FpMatrix fp_inverse(const FpMatrix& m) {
  int n = m.rows;
  FpMatrix a = m;
  FpMatrix inv = FpMatrix::identity(m.p, n);
  auto scale_row = [&](FpMatrix& mat, int r, int factor) {
    for (int c = 0; c < n; ++c)
      mat.at(r, c) = static_cast<std::uint8_t>(mat.at(r, c) * factor % m.p);
  };
  auto add_row = [&](FpMatrix& mat, int dst, int src, int factor) {
    for (int c = 0; c < n; ++c)
      mat.at(dst, c) =
          static_cast<std::uint8_t>((mat.at(dst, c) + factor * mat.at(src, c)) % m.p);
  };
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n && piv < 0; ++r)
      if (a.at(r, col)) piv = r;
    if (piv < 0) fail(Errc::InvalidArgs, "singular matrix");
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a.at(piv, c), a.at(col, c));
        std::swap(inv.at(piv, c), inv.at(col, c));
      }
    }
    int inv_piv = 1;
    while (a.at(col, col) * inv_piv % m.p != 1) ++inv_piv;
    scale_row(a, col, inv_piv);
    scale_row(inv, col, inv_piv);
    for (int r = 0; r < n; ++r) {
      if (r == col || !a.at(r, col)) continue;
      int f = m.p - a.at(r, col);
      add_row(a, r, col, f);
      add_row(inv, r, col, f);
    }
  }
  return inv;
}

}  // namespace

// ---------------------------------------------------------------------------
// SquareMultiquadModel

SquareMultiquadModel::SquareMultiquadModel(int n, const BuildOptions& opts, ArchInertia arch) {
  if (n < 2) fail(Errc::InvalidArgs, "faithful model needs n >= 2");
  if (n > opts.multiquad_cap || n > 5)
    fail(Errc::SizeCapExceeded, "multiquadratic size cap is " +
                                    std::to_string(std::min(opts.multiquad_cap, 5)));
  type_.gamma = elementary_abelian(2, n);
  type_.n = n;
  for (int i = 0; i < n; ++i) type_.inertia.push_back(1 << i);
  type_.arch = arch;

  // Components (U, p) with U a proper subset of the index set and p outside
  // U, ordered by (|U|, U, p) so bases are reproducible.
  for (int size = 0; size < n; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != size) continue;
      for (int p_index = 0; p_index < n; ++p_index) {
        if (mask >> p_index & 1) continue;
        CompInfo info;
        info.u_mask = mask;
        info.p_index = p_index;
        info.u = size;
        info.offset = ambient_dim_;
        info.slot.assign(n, -1);
        int s = 0;
        for (int q = 0; q < n; ++q)
          if (mask >> q & 1) info.slot[q] = s++;
        ambient_dim_ += 1 << size;
        comps_.push_back(std::move(info));
      }
    }
  }

  for (int q = 0; q < n; ++q) {
    MqElement x;
    x.c.resize(comps_.size());
    for (std::size_t c = 0; c < comps_.size(); ++c) {
      const auto& info = comps_[c];
      if (info.u_mask >> q & 1)
        x.c[c].top = static_cast<std::uint8_t>(1 << info.slot[q]);
      else if (info.p_index == q)
        x.c[c].base = 1;  // a^U, the indicator at the identity
    }
    gens_.push_back(std::move(x));
  }

  gamma_probe_.resize(n);
  for (int q = 0; q < n; ++q) {
    for (std::size_t c = 0; c < comps_.size(); ++c) {
      if (comps_[c].u_mask >> q & 1) {
        gamma_probe_[q] = {static_cast<int>(c), comps_[c].slot[q]};
        break;
      }
    }
  }

  // N = [F, F] is the Γ-span of the pairwise commutators.
  n_basis_ = Subspace(2, ambient_dim_);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      FpVec comm = ambient(mq_mul(mq_mul(gens_[i], gens_[j]),
                                  mq_mul(mq_inv(gens_[i]), mq_inv(gens_[j]))));
      for (int tau = 0; tau < (1 << n); ++tau) n_basis_.insert(act(tau, comm));
    }
  long long expect = (static_cast<long long>(n) - 2) * (1LL << (n - 1)) + 1;
  if (n_basis_.dim() != expect)
    fail(Errc::InvalidType, "relation module dimension mismatch in faithful model");

  // Descending central series: F_(2) = N, F_(i+1) = sum_j (1 + e_j) F_(i).
  filtration_.push_back(n_basis_);
  while (filtration_.back().dim() > 0) {
    const Subspace& prev = filtration_.back();
    Subspace next(2, ambient_dim_);
    for (int r = 0; r < prev.dim(); ++r) {
      FpVec row = prev.basis_row(r);
      for (int j = 0; j < n; ++j) next.insert(add_vec(2, row, act(1 << j, row)));
    }
    filtration_.push_back(std::move(next));
  }

  GammaModule mod;
  mod.gamma = type_.gamma;
  mod.p = 2;
  mod.dim = n_basis_.dim();
  mod.tag = GammaModule::Tag::Explicit;
  for (int j = 0; j < n; ++j) {
    FpMatrix a(2, mod.dim, mod.dim);
    for (int k = 0; k < mod.dim; ++k) {
      FpVec img = n_basis_.coords(act(1 << j, n_basis_.basis_row(k)));
      for (int r = 0; r < mod.dim; ++r) a.at(r, k) = img[r];
    }
    mod.gen_action.push_back(std::move(a));
  }
  module_ = RelationModule{std::move(mod)};
}

const MqElement& SquareMultiquadModel::as_mq(const FElement& a) const {
  const auto* e = std::get_if<MqElement>(&a);
  if (!e || e->c.size() != comps_.size())
    fail(Errc::ComponentMismatch, "element does not belong to this model");
  return *e;
}

MqElement SquareMultiquadModel::mq_mul(const MqElement& a, const MqElement& b) const {
  MqElement out;
  out.c.resize(comps_.size());
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    out.c[c].base =
        static_cast<std::uint16_t>(a.c[c].base ^ translate(b.c[c].base, comps_[c].u, a.c[c].top));
    out.c[c].top = static_cast<std::uint8_t>(a.c[c].top ^ b.c[c].top);
  }
  return out;
}

MqElement SquareMultiquadModel::mq_inv(const MqElement& a) const {
  MqElement out;
  out.c.resize(comps_.size());
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    out.c[c].base = translate(a.c[c].base, comps_[c].u, a.c[c].top);
    out.c[c].top = a.c[c].top;
  }
  return out;
}

FElement SquareMultiquadModel::identity() const {
  MqElement e;
  e.c.resize(comps_.size());
  return e;
}

FElement SquareMultiquadModel::generator(int i) const {
  if (i < 0 || i >= type_.n) fail(Errc::InvalidArgs, "generator index");
  return gens_[i];
}

FElement SquareMultiquadModel::mul(const FElement& a, const FElement& b) const {
  return mq_mul(as_mq(a), as_mq(b));
}

FElement SquareMultiquadModel::inv(const FElement& a) const { return mq_inv(as_mq(a)); }

int SquareMultiquadModel::gamma_image(const FElement& a) const {
  const MqElement& e = as_mq(a);
  int mask = 0;
  for (int q = 0; q < type_.n; ++q) {
    auto [c, bit] = gamma_probe_[q];
    if (e.c[c].top >> bit & 1) mask |= 1 << q;
  }
  return mask;
}

MqElement SquareMultiquadModel::word_lift(int tau) const {
  MqElement out = std::get<MqElement>(identity());
  for (int q = 0; q < type_.n; ++q)
    if (tau >> q & 1) out = mq_mul(out, gens_[q]);
  return out;
}

FElement SquareMultiquadModel::canonical_lift(int sigma) const { return word_lift(sigma); }

FpVec SquareMultiquadModel::ambient(const MqElement& a) const {
  FpVec v(ambient_dim_, 0);
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    if (a.c[c].top) fail(Errc::ComponentMismatch, "element has a nontrivial Γ-image");
    for (int g = 0; g < (1 << comps_[c].u); ++g)
      if (a.c[c].base >> g & 1) v[comps_[c].offset + g] = 1;
  }
  return v;
}

MqElement SquareMultiquadModel::from_ambient(std::span<const std::uint8_t> v) const {
  MqElement out = std::get<MqElement>(identity());
  for (std::size_t c = 0; c < comps_.size(); ++c)
    for (int g = 0; g < (1 << comps_[c].u); ++g)
      if (v[comps_[c].offset + g] & 1)
        out.c[c].base = static_cast<std::uint16_t>(out.c[c].base | (1 << g));
  return out;
}

FpVec SquareMultiquadModel::act(int tau, std::span<const std::uint8_t> v) const {
  FpVec out(ambient_dim_, 0);
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    const auto& info = comps_[c];
    std::uint8_t t = 0;
    for (int q = 0; q < type_.n; ++q)
      if ((tau >> q & 1) && info.slot[q] >= 0) t = static_cast<std::uint8_t>(t | (1 << info.slot[q]));
    for (int g = 0; g < (1 << info.u); ++g)
      if (v[info.offset + g] & 1) out[info.offset + (g ^ t)] = 1;
  }
  return out;
}

FpVec SquareMultiquadModel::n_coords(const FElement& a) const {
  return n_basis_.coords(ambient(as_mq(a)));
}

FElement SquareMultiquadModel::from_n_coords(const FpVec& coords) const {
  if (static_cast<int>(coords.size()) != n_basis_.dim())
    fail(Errc::InvalidArgs, "coordinate size mismatch");
  FpVec v(ambient_dim_, 0);
  for (int k = 0; k < n_basis_.dim(); ++k)
    if (coords[k] & 1) v = add_vec(2, v, n_basis_.basis_row(k));
  return from_ambient(v);
}

std::vector<int> SquareMultiquadModel::graded_dims() const {
  std::vector<int> out{type_.n};
  for (std::size_t i = 0; i + 1 < filtration_.size(); ++i)
    out.push_back(filtration_[i].dim() - filtration_[i + 1].dim());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

bool SquareMultiquadModel::component_is_identity(const FElement& a, int c) const {
  const MqElement& e = as_mq(a);
  return e.c[c].base == 0 && e.c[c].top == 0;
}

// ---------------------------------------------------------------------------
// QuotientMultiquadModel

QuotientMultiquadModel::QuotientMultiquadModel(const RamificationType& t,
                                               const BuildOptions& opts)
    : type_(t) {
  validate_type(t);
  if (t.gamma.kind != GammaGroup::Kind::ElementaryAbelian || t.gamma.p != 2 || t.gamma.d < 2)
    fail(Errc::InvalidType, "quotient model needs an elementary abelian 2-group of rank >= 2");
  if (t.n <= t.gamma.d) fail(Errc::InvalidType, "quotient model needs n > d");
  parent_ = std::make_unique<SquareMultiquadModel>(t.n, opts);
  int n = t.n, d = t.gamma.d;

  v_image_ = t.inertia;
  {
    Subspace seen(2, d);
    for (int i = 0; i < n; ++i) {
      FpVec v(d, 0);
      for (int b = 0; b < d; ++b) v[b] = static_cast<std::uint8_t>(v_image_[i] >> b & 1);
      if (seen.insert(v)) basis_pos_.push_back(i);
    }
    if (static_cast<int>(basis_pos_.size()) != d)
      fail(Errc::InertiaDoesNotGenerate, "inertia images do not span the group");
  }

  // K = ker(Γ_big -> Γ_small) as the null space of the d x n image matrix.
  {
    FpMatrix vmat(2, d, n);
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < d; ++b) vmat.at(b, i) = static_cast<std::uint8_t>(v_image_[i] >> b & 1);
    k_basis_ = span_of(2, n, null_space(vmat));
  }
  for (int j = 0; j < k_basis_.dim(); ++j) {
    FpVec row = k_basis_.basis_row(j);
    int mask = 0;
    for (int q = 0; q < n; ++q)
      if (row[q] & 1) mask |= 1 << q;
    k_lifts_.push_back(parent_->word_lift(mask));
  }

  // Φ(H): squares and pairwise commutators of the K-basis lifts together with
  // the augmentation image (1 + κ)·N over the K-basis.
  phi_ = Subspace(2, parent_->ambient_dim());
  for (std::size_t j = 0; j < k_lifts_.size(); ++j) {
    phi_.insert(parent_->ambient(
        std::get<MqElement>(parent_->mul(k_lifts_[j], k_lifts_[j]))));
    for (std::size_t k = j + 1; k < k_lifts_.size(); ++k) {
      FElement comm = parent_->commutator(FElement{k_lifts_[j]}, FElement{k_lifts_[k]});
      phi_.insert(parent_->ambient(std::get<MqElement>(comm)));
    }
  }
  const Subspace& pn = parent_->n_ambient_basis();
  for (int j = 0; j < k_basis_.dim(); ++j) {
    FpVec row = k_basis_.basis_row(j);
    int mask = 0;
    for (int q = 0; q < n; ++q)
      if (row[q] & 1) mask |= 1 << q;
    for (int r = 0; r < pn.dim(); ++r) {
      FpVec v = pn.basis_row(r);
      phi_.insert(add_vec(2, v, parent_->act(mask, v)));
    }
  }
  // Φ(H) is normal in the big model, so it must be stable under all of Γ_big.
  for (int r = 0; r < phi_.dim(); ++r)
    for (int q = 0; q < n; ++q)
      if (!phi_.contains(parent_->act(1 << q, phi_.basis_row(r))))
        fail(Errc::InvalidType, "Frattini submodule is not Γ-stable");

  reduced_basis_ = Subspace(2, parent_->ambient_dim());
  for (int r = 0; r < pn.dim(); ++r) reduced_basis_.insert(phi_.reduce(pn.basis_row(r)));

  long long expect = (static_cast<long long>(n) - 2) * (1LL << (d - 1)) + 1;
  if (k_basis_.dim() + reduced_basis_.dim() != expect)
    fail(Errc::InvalidType, "relation module dimension mismatch in quotient model");

  // Lift of each Γ_small generator through the chosen basis positions.
  {
    FpMatrix mb(2, d, d);
    for (int c = 0; c < d; ++c)
      for (int b = 0; b < d; ++b)
        mb.at(b, c) = static_cast<std::uint8_t>(v_image_[basis_pos_[c]] >> b & 1);
    FpMatrix mb_inv = fp_inverse(mb);
    for (int l = 0; l < d; ++l) {
      FpVec unit(d, 0);
      unit[l] = 1;
      FpVec coef = mb_inv.apply(unit);
      int mask = 0;
      for (int c = 0; c < d; ++c)
        if (coef[c] & 1) mask |= 1 << basis_pos_[c];
      lift_gen_.push_back(mask);
    }
  }

  // Replaced-basis-index choice for the generators outside the basis: the
  // smallest e such that swapping x_e for x_j still gives a basis.
  for (int j = 0; j < n; ++j) {
    if (std::find(basis_pos_.begin(), basis_pos_.end(), j) != basis_pos_.end()) continue;
    int chosen = -1;
    for (int e = 0; e < d && chosen < 0; ++e) {
      Subspace s(2, d);
      for (int c = 0; c < d; ++c) {
        if (c == e) continue;
        FpVec v(d, 0);
        for (int b = 0; b < d; ++b) v[b] = static_cast<std::uint8_t>(v_image_[basis_pos_[c]] >> b & 1);
        s.insert(v);
      }
      FpVec vj(d, 0);
      for (int b = 0; b < d; ++b) vj[b] = static_cast<std::uint8_t>(v_image_[j] >> b & 1);
      s.insert(vj);
      if (s.dim() == d) chosen = e;
    }
    e_choice_.emplace_back(j, chosen);
  }

  GammaModule mod;
  mod.gamma = t.gamma;
  mod.p = 2;
  mod.dim = k_basis_.dim() + reduced_basis_.dim();
  mod.tag = GammaModule::Tag::Explicit;
  for (int l = 0; l < d; ++l) {
    MqElement lift = parent_->word_lift(lift_gen_[l]);
    MqElement lift_inv = std::get<MqElement>(parent_->inv(FElement{lift}));
    FpMatrix a(2, mod.dim, mod.dim);
    for (int k = 0; k < mod.dim; ++k) {
      MqElement rep = k < k_basis_.dim()
                          ? k_lifts_[k]
                          : parent_->from_ambient(reduced_basis_.basis_row(k - k_basis_.dim()));
      MqElement conj = std::get<MqElement>(
          parent_->mul(parent_->mul(FElement{lift}, FElement{rep}), FElement{lift_inv}));
      FpVec img = coords_of(conj);
      for (int r = 0; r < mod.dim; ++r) a.at(r, k) = img[r];
    }
    mod.gen_action.push_back(std::move(a));
  }
  module_ = RelationModule{std::move(mod)};
}

int QuotientMultiquadModel::gamma_small_image(const MqElement& a) const {
  int tau = parent_->gamma_image(FElement{a});
  int out = 0;
  for (int q = 0; q < type_.n; ++q)
    if (tau >> q & 1) out ^= v_image_[q];
  return out;
}

MqElement QuotientMultiquadModel::lift_k(std::span<const std::uint8_t> kappa) const {
  MqElement out = std::get<MqElement>(parent_->identity());
  for (std::size_t j = 0; j < k_lifts_.size(); ++j)
    if (kappa[j] & 1) out = std::get<MqElement>(parent_->mul(FElement{out}, FElement{k_lifts_[j]}));
  return out;
}

FpVec QuotientMultiquadModel::reduce_mod_phi(std::span<const std::uint8_t> v) const {
  return phi_.reduce(v);
}

FpVec QuotientMultiquadModel::coords_of(const MqElement& h) const {
  int tau = parent_->gamma_image(FElement{h});
  FpVec tau_vec(type_.n, 0);
  for (int q = 0; q < type_.n; ++q) tau_vec[q] = static_cast<std::uint8_t>(tau >> q & 1);
  FpVec kappa = k_basis_.coords(tau_vec);  // throws unless the image dies in Γ_small
  MqElement w = lift_k(kappa);
  MqElement nu =
      std::get<MqElement>(parent_->mul(parent_->inv(FElement{w}), FElement{h}));
  FpVec red = phi_.reduce(parent_->ambient(nu));
  FpVec rc = reduced_basis_.coords(red);
  FpVec out(kappa.size() + rc.size());
  std::copy(kappa.begin(), kappa.end(), out.begin());
  std::copy(rc.begin(), rc.end(), out.begin() + kappa.size());
  return out;
}

FElement QuotientMultiquadModel::identity() const { return parent_->identity(); }
FElement QuotientMultiquadModel::generator(int i) const { return parent_->generator(i); }
FElement QuotientMultiquadModel::mul(const FElement& a, const FElement& b) const {
  return parent_->mul(a, b);
}
FElement QuotientMultiquadModel::inv(const FElement& a) const { return parent_->inv(a); }

int QuotientMultiquadModel::gamma_image(const FElement& a) const {
  return gamma_small_image(std::get<MqElement>(a));
}

FElement QuotientMultiquadModel::canonical_lift(int sigma) const {
  FElement out = parent_->identity();
  for (int l = 0; l < type_.gamma.d; ++l)
    if (sigma >> l & 1) out = parent_->mul(out, FElement{parent_->word_lift(lift_gen_[l])});
  return out;
}

FpVec QuotientMultiquadModel::n_coords(const FElement& a) const {
  return coords_of(std::get<MqElement>(a));
}

FElement QuotientMultiquadModel::from_n_coords(const FpVec& coords) const {
  if (static_cast<int>(coords.size()) != module_.dim())
    fail(Errc::InvalidArgs, "coordinate size mismatch");
  FpVec kappa(coords.begin(), coords.begin() + k_basis_.dim());
  MqElement out = lift_k(kappa);
  FpVec v(parent_->ambient_dim(), 0);
  for (int m = 0; m < reduced_basis_.dim(); ++m)
    if (coords[k_basis_.dim() + m] & 1) v = add_vec(2, v, reduced_basis_.basis_row(m));
  return parent_->mul(FElement{out}, FElement{parent_->from_ambient(v)});
}

std::vector<int> QuotientMultiquadModel::graded_dims() const {
  std::vector<int> out{type_.n};
  const auto& filt = parent_->filtration();
  for (std::size_t i = 0; i + 1 < filt.size(); ++i) {
    int a = sum(filt[i], phi_).dim();
    int b = sum(filt[i + 1], phi_).dim();
    out.push_back(a - b);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

// ---------------------------------------------------------------------------
// AbelianQuadraticModel

AbelianQuadraticModel::AbelianQuadraticModel(int n, ArchInertia arch) {
  if (n < 1 || n > 30) fail(Errc::InvalidArgs, "abelian model size");
  type_.gamma = elementary_abelian(2, 1);
  type_.n = n;
  type_.inertia.assign(n, 1);
  type_.arch = arch;
  GammaModule mod = trivial_module(type_.gamma, n - 1);
  module_ = RelationModule{std::move(mod)};
}

FElement AbelianQuadraticModel::generator(int i) const {
  if (i < 0 || i >= type_.n) fail(Errc::InvalidArgs, "generator index");
  return std::uint32_t{1} << i;
}

FElement AbelianQuadraticModel::mul(const FElement& a, const FElement& b) const {
  return std::get<std::uint32_t>(a) ^ std::get<std::uint32_t>(b);
}

int AbelianQuadraticModel::gamma_image(const FElement& a) const {
  return std::popcount(std::get<std::uint32_t>(a)) & 1;
}

FElement AbelianQuadraticModel::canonical_lift(int sigma) const {
  return sigma ? std::uint32_t{1} : std::uint32_t{0};
}

FpVec AbelianQuadraticModel::n_coords(const FElement& a) const {
  std::uint32_t m = std::get<std::uint32_t>(a);
  if (std::popcount(m) & 1) fail(Errc::SubspaceNotContained, "element has nontrivial image");
  FpVec out(type_.n - 1);
  for (int k = 0; k + 1 < type_.n; ++k) out[k] = static_cast<std::uint8_t>(m >> k & 1);
  return out;
}

FElement AbelianQuadraticModel::from_n_coords(const FpVec& coords) const {
  if (static_cast<int>(coords.size()) != type_.n - 1)
    fail(Errc::InvalidArgs, "coordinate size mismatch");
  std::uint32_t m = 0;
  int parity = 0;
  for (int k = 0; k + 1 < type_.n; ++k)
    if (coords[k] & 1) {
      m |= std::uint32_t{1} << k;
      parity ^= 1;
    }
  if (parity) m |= std::uint32_t{1} << (type_.n - 1);
  return m;
}

}  // namespace ramlab
