#include "ramlab/explorer.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "ramlab/util.hpp"

namespace ramlab {

namespace {

std::vector<FpVec> subspace_elements(const Subspace& s) {
  std::vector<FpVec> out;
  int p = s.p();
  std::uint64_t total = 1;
  for (int i = 0; i < s.dim(); ++i) total *= static_cast<std::uint64_t>(p);
  for (std::uint64_t code = 0; code < total; ++code) {
    FpVec v(s.ambient_dim(), 0);
    std::uint64_t c = code;
    for (int i = 0; i < s.dim(); ++i) {
      int digit = static_cast<int>(c % p);
      c /= p;
      if (digit) {
        FpVec row = s.basis_row(i);
        for (int k = 0; k < s.ambient_dim(); ++k)
          v[k] = static_cast<std::uint8_t>((v[k] + digit * row[k]) % p);
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

// All achievable relator values for prime i with Γ-image ranging over the
// allowed set: a union of affine cosets, deduplicated and sorted.
std::vector<FpVec> relator_candidates(const Presentation& m, int i,
                                      const std::vector<int>& sigmas) {
  std::set<FpVec> vals;
  std::vector<int> domain = sigmas;
  if (domain.empty())
    for (int s = 0; s < m.type().gamma.order(); ++s) domain.push_back(s);
  for (int sigma : domain) {
    RelatorCoset rc = m.relator_coset(i, sigma);
    for (const FpVec& d : subspace_elements(rc.direction))
      vals.insert(add_vec(m.p(), rc.rep, d));
  }
  return {vals.begin(), vals.end()};
}

// Archimedean submodule generators: the x_inf^2 classes for an imaginary
// type, or all of N for the ordinary quotient of a real type.
std::vector<std::optional<FpVec>> arch_candidates(const Presentation& m, bool narrow,
                                                  bool enumerate,
                                                  const std::vector<int>& arch_sigmas) {
  std::vector<std::optional<FpVec>> out;
  if (m.p() != 2 || !enumerate) {
    out.push_back(std::nullopt);
    return out;
  }
  const GammaGroup& g = m.type().gamma;
  if (m.type().arch == ArchInertia::OrderTwo) {
    std::set<FpVec> vals;
    for (int s = 1; s < g.order(); ++s) {
      if (g.order_of(s) != 2) continue;
      if (!arch_sigmas.empty() &&
          std::find(arch_sigmas.begin(), arch_sigmas.end(), s) == arch_sigmas.end())
        continue;
      FElement w = m.canonical_lift(s);
      FpVec rep = m.n_coords(m.mul(w, w));
      Subspace dir = span_of(2, m.n_dim(), {});
      // (x w)^2 = w^2 + (1 + s)nu over nu in N
      Subspace one_minus(m.p(), m.n_dim());
      for (int k = 0; k < m.n_dim(); ++k) {
        FpVec unit(m.n_dim(), 0);
        unit[k] = 1;
        one_minus.insert(sub_vec(m.p(), m.relation_module().mod.apply(s, unit), unit));
      }
      for (const FpVec& d : subspace_elements(one_minus)) vals.insert(add_vec(2, rep, d));
    }
    for (const auto& v : vals) out.push_back(v);
    return out;
  }
  if (narrow) {
    out.push_back(std::nullopt);  // x_inf^2 = 1 in F
    return out;
  }
  // ordinary quotient of a real type: x_inf ranges over N
  Subspace full(m.p(), m.n_dim());
  for (int k = 0; k < m.n_dim(); ++k) {
    FpVec unit(m.n_dim(), 0);
    unit[k] = 1;
    full.insert(unit);
  }
  for (const FpVec& v : subspace_elements(full)) out.push_back(v);
  return out;
}

int rank_of_choice(const Presentation& m, const std::vector<FpVec>& rel,
                   const std::optional<FpVec>& arch) {
  std::vector<FpVec> vecs = rel;
  if (arch) vecs.push_back(*arch);
  return m.n_dim() - m.relation_module().span_closure(vecs).dim();
}

}  // namespace

MinMaxResult min_max_conditional_rank(const Presentation& model, const SearchTask& task) {
  int n = model.n();
  std::vector<std::vector<FpVec>> cand(n);
  for (int i = 0; i < n; ++i) {
    const std::vector<int>& sig =
        i < static_cast<int>(task.allowed_sigmas.size()) ? task.allowed_sigmas[i]
                                                         : std::vector<int>{};
    cand[i] = relator_candidates(model, i, sig);
  }
  auto arch = arch_candidates(model, task.narrow, task.enumerate_arch, task.arch_sigmas);

  MinMaxResult res;
  res.domain_size = arch.size();
  for (int i = 0; i < n; ++i) res.domain_size *= cand[i].size();
  res.seed = task.seed;

  auto eval_tuple = [&](std::uint64_t code) {
    std::vector<FpVec> rel(n);
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      rel[i] = cand[i][c % cand[i].size()];
      c /= cand[i].size();
    }
    const auto& a = arch[c % arch.size()];
    Witness w;
    w.relator_values = rel;
    w.arch_value = a;
    w.rank = rank_of_choice(model, rel, a);
    return w;
  };

  if (res.domain_size <= task.exhaustive_cap) {
    std::vector<MinMaxResult> partial;
    std::size_t blocks = 0;
    std::vector<MinMaxResult> block_results(256);
    parallel_blocks(
        res.domain_size,
        [&](std::size_t b, std::size_t begin, std::size_t end) {
          MinMaxResult local;
          local.min_rank = model.n_dim() + 1;
          local.max_rank = -1;
          for (std::size_t code = begin; code < end; ++code) {
            Witness w = eval_tuple(code);
            if (w.rank < local.min_rank) {
              local.min_rank = w.rank;
              local.min_witness = w;
            }
            if (w.rank > local.max_rank) {
              local.max_rank = w.rank;
              local.max_witness = w;
            }
          }
          block_results[b] = local;
        },
        &blocks);
    res.min_rank = model.n_dim() + 1;
    res.max_rank = -1;
    for (std::size_t b = 0; b < blocks; ++b) {
      const auto& lr = block_results[b];
      if (lr.max_rank < 0) continue;  // empty block
      if (lr.min_rank < res.min_rank) {
        res.min_rank = lr.min_rank;
        res.min_witness = lr.min_witness;
      }
      if (lr.max_rank > res.max_rank) {
        res.max_rank = lr.max_rank;
        res.max_witness = lr.max_witness;
      }
    }
    return res;
  }

  if (!task.allow_sampling)
    fail(Errc::DomainTooLarge, "assignment domain exceeds the exhaustive cap");
  res.sampled = true;
  std::mt19937_64 rng(task.seed);
  res.min_rank = model.n_dim() + 1;
  res.max_rank = -1;
  for (std::uint64_t it = 0; it < task.samples; ++it) {
    Witness w = eval_tuple(rng() % res.domain_size);
    if (w.rank < res.min_rank) {
      res.min_rank = w.rank;
      res.min_witness = w;
    }
    if (w.rank > res.max_rank) {
      res.max_rank = w.rank;
      res.max_witness = w;
    }
  }
  return res;
}

LbCyclicReport verify_lb_cyclic(const CyclicModel& model) {
  LbCyclicReport rep;
  int n = model.n();
  const GammaGroup& g = model.type().gamma;
  const Subspace& aug = model.augmentation_submodule();
  long long expected_rank = n - 1;

  // Per prime i >= 2, the relator values over condition-satisfying lifts form
  // rep(sigma) + (g_i - 1) I_Γ N with sigma ranging over generators of Γ.
  std::vector<std::vector<FpVec>> cand(n);
  for (int i = 1; i < n; ++i) {
    std::set<FpVec> vals;
    for (int sigma = 1; sigma < g.order(); ++sigma) {
      if (sigma % g.p == 0) continue;  // not a generator
      FpVec rep0 = model.relator_image(i, model.canonical_lift(sigma));
      int gi = model.gamma_image(model.generator(i));
      Subspace dir(model.p(), model.n_dim());
      for (int r = 0; r < aug.dim(); ++r) {
        FpVec v = aug.basis_row(r);
        dir.insert(sub_vec(model.p(), model.relation_module().mod.apply(gi, v), v));
      }
      for (const FpVec& d : subspace_elements(dir)) vals.insert(add_vec(model.p(), rep0, d));
    }
    cand[i] = {vals.begin(), vals.end()};
  }

  std::uint64_t total = 1;
  for (int i = 1; i < n; ++i) total *= cand[i].size();
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<FpVec> rel;
    std::uint64_t c = code;
    for (int i = 1; i < n; ++i) {
      rel.push_back(cand[i][c % cand[i].size()]);
      c /= cand[i].size();
    }
    Subspace span = model.relation_module().span_closure(rel);
    bool generate = span.dim() == aug.dim();
    if (generate)
      for (int r = 0; r < span.dim(); ++r) generate &= aug.contains(span.basis_row(r));
    // the full-inertia relator stays inside I_Γ N, so the rank is unchanged
    rel.push_back(model.relator_image(0, model.generator(0)));
    int rank = model.n_dim() - model.relation_module().span_closure(rel).dim();
    if (!generate || rank != expected_rank) {
      rep.ok = false;
      rep.detail = "assignment " + std::to_string(code) + " gives rank " +
                   std::to_string(rank);
      return rep;
    }
    ++rep.checked;
  }

  // Violating the condition can exceed n-1: the all-trivial assignment leaves
  // every relator zero.
  if (model.n_dim() > expected_rank) rep.off_condition_rank = model.n_dim();
  return rep;
}

KpReport verify_kp(int n, std::uint64_t random_samples, std::uint64_t seed,
                   bool plant_violation) {
  KpReport rep;
  auto model = build_multiquad(n);
  long long full = model->n_dim();

  auto kernel_condition = [&](const FrobeniusAssignment& fa) {
    if (!plant_violation) return kp_condition(*model, fa);
    // corrupted variant for the harness self test: drops the q = p exemption,
    // so it wrongly rejects assignments like y_q = x_q
    const auto* sq = dynamic_cast<const SquareMultiquadModel*>(model.get());
    for (int q = 0; q < n; ++q)
      for (int c = 0; c < sq->num_components(); ++c) {
        const auto& info = sq->component(c);
        if (info.u_mask >> q & 1) continue;
        if (!sq->component_is_identity(*fa.lifts[q], c)) return false;
      }
    return true;
  };

  auto check_one = [&](const FrobeniusAssignment& fa) {
    std::vector<FpVec> rel;
    for (int i = 0; i < n; ++i) rel.push_back(model->relator_image(i, *fa.lifts[i]));
    int rank = model->n_dim() - model->relation_module().span_closure(rel).dim();
    bool lhs = rank == full;
    bool rhs = kernel_condition(fa);
    ++rep.checked;
    if (lhs != rhs) {
      rep.ok = false;
      rep.counterexample = "rank " + std::to_string(rank) + " vs kernel condition " +
                           (rhs ? "true" : "false");
    }
    return lhs == rhs;
  };

  int order = model->type().gamma.order();
  std::uint64_t tuples = 1;
  for (int i = 0; i < n; ++i) tuples *= static_cast<std::uint64_t>(order);
  for (std::uint64_t code = 0; code < tuples && rep.ok; ++code) {
    FrobeniusAssignment fa;
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      fa.lifts.push_back(model->canonical_lift(static_cast<int>(c % order)));
      c /= order;
    }
    if (!check_one(fa) && !plant_violation) return rep;
    if (!rep.ok && plant_violation) return rep;  // planted violation detected
  }
  std::mt19937_64 rng(seed);
  for (std::uint64_t it = 0; it < random_samples && rep.ok; ++it) {
    FrobeniusAssignment fa;
    for (int i = 0; i < n; ++i) {
      FpVec coords(model->n_dim());
      for (auto& x : coords) x = static_cast<std::uint8_t>(rng() % 2);
      fa.lifts.push_back(model->element(static_cast<int>(rng() % order), coords));
    }
    check_one(fa);
  }
  return rep;
}

namespace {

// Element of the fiber product Gal(L/Q) = A x_C B used by the cyclic upper
// bound check: A = (⊕ F_p[Γ/I_i]) ⋊ Γ, B = Π I_i.
struct FiberElement {
  SdElement a;
  std::vector<int> b;
  bool operator==(const FiberElement&) const = default;
  bool operator<(const FiberElement& o) const {
    return std::tie(a.m, a.g, b) < std::tie(o.a.m, o.a.g, o.b);
  }
};

FiberElement id_elem(const SemidirectGroup& A, int n) {
  return FiberElement{A.id(), std::vector<int>(n, 0)};
}

}  // namespace

UbCyclicCountReport verify_ub_cyclic_module_count(const RamificationType& t) {
  UbCyclicCountReport rep;
  validate_type(t);
  if (t.gamma.kind != GammaGroup::Kind::Cyclic)
    fail(Errc::InvalidType, "fiber product check needs a cyclic type");
  if (t.gamma.order() > 27) fail(Errc::SizeCapExceeded, "cyclic order cap is 27");
  // order so the full-inertia factor is first
  std::vector<int> order_idx(t.n);
  for (int i = 0; i < t.n; ++i) order_idx[i] = i;
  std::stable_sort(order_idx.begin(), order_idx.end(), [&](int x, int y) {
    return t.inertia_order(x) > t.inertia_order(y);
  });
  if (t.inertia_order(order_idx[0]) != t.gamma.order())
    fail(Errc::NoFullInertia, "some inertia subgroup must be the whole group");

  const GammaGroup& g = t.gamma;
  int p = g.p;
  std::vector<int> ord(t.n);
  for (int i = 0; i < t.n; ++i) ord[i] = t.inertia_order(order_idx[i]);

  GammaModule total = trivial_module(g, 0);
  std::vector<int> offsets{0};
  std::vector<int> block_dim;
  for (int i = 1; i < t.n; ++i) {
    GammaModule m = quotient_regular_module(g, t.inertia_subgroup(order_idx[i]));
    block_dim.push_back(m.dim);
    total = direct_sum(total, m);
    offsets.push_back(total.dim);
  }
  SemidirectGroup A(total);

  auto fa_map = [&](const SdElement& a) {
    // (Γ-part, augmentation of each block)
    std::vector<int> out{a.g};
    for (int i = 1; i < t.n; ++i) {
      int s = 0;
      for (int k = offsets[i - 1]; k < offsets[i]; ++k) s = (s + a.m[k]) % p;
      out.push_back(s);
    }
    return out;
  };
  auto fb_map = [&](const std::vector<int>& b) {
    std::vector<int> out{b[0]};
    for (int i = 1; i < t.n; ++i) out.push_back(b[i] % p);
    return out;
  };

  // enumerate G = {(a, b) : fa(a) = fb(b)} and the kernel of the projection
  // to Γ through the diagonal map
  std::vector<SdElement> a_elems;
  {
    std::uint64_t count = 1;
    for (int i = 0; i < total.dim; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t code = 0; code < count; ++code) {
      FpVec v(total.dim);
      std::uint64_t c = code;
      for (int k = 0; k < total.dim; ++k) {
        v[k] = static_cast<std::uint8_t>(c % p);
        c /= p;
      }
      for (int gg = 0; gg < g.order(); ++gg) a_elems.push_back(SdElement{v, gg});
    }
  }
  std::vector<std::vector<int>> b_elems;
  {
    std::uint64_t count = 1;
    for (int i = 0; i < t.n; ++i) count *= static_cast<std::uint64_t>(ord[i]);
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<int> b(t.n);
      std::uint64_t c = code;
      for (int i = 0; i < t.n; ++i) {
        b[i] = static_cast<int>(c % ord[i]);
        c /= ord[i];
      }
      b_elems.push_back(std::move(b));
    }
  }
  auto pi_gamma = [&](const std::vector<int>& b) {
    long long acc = 0;
    for (int i = 0; i < t.n; ++i)
      acc = (acc + static_cast<long long>(b[i]) * (g.order() / ord[i])) % g.order();
    return static_cast<int>(acc);
  };

  std::set<FiberElement> kernel;
  for (const auto& a : a_elems)
    for (const auto& b : b_elems) {
      if (fa_map(a) != fb_map(b)) continue;
      if (pi_gamma(b) != 0) continue;
      kernel.insert(FiberElement{a, b});
    }
  rep.kernel_order = kernel.size();

  auto mul = [&](const FiberElement& x, const FiberElement& y) {
    FiberElement out;
    out.a = A.mul(x.a, y.a);
    out.b.resize(t.n);
    for (int i = 0; i < t.n; ++i) out.b[i] = (x.b[i] + y.b[i]) % ord[i];
    return out;
  };
  auto pw = [&](const FiberElement& x, int e) {
    FiberElement out = id_elem(A, t.n);
    for (int k = 0; k < e; ++k) out = mul(out, x);
    return out;
  };

  // Frattini subgroup of the kernel: closure of p-th powers and commutators.
  auto inverse = [&](const FiberElement& x) {
    int ox = 1;
    FiberElement acc = x;
    while (!(acc == id_elem(A, t.n))) {
      acc = mul(acc, x);
      ++ox;
    }
    return pw(x, ox - 1);
  };
  std::vector<FiberElement> gens;
  for (const auto& h : kernel) gens.push_back(pw(h, p));
  for (const auto& x : kernel)
    for (const auto& y : kernel)
      gens.push_back(mul(mul(x, y), mul(inverse(x), inverse(y))));
  std::set<FiberElement> phi{id_elem(A, t.n)};
  for (const auto& e : gens) phi.insert(e);
  std::vector<FiberElement> frontier(phi.begin(), phi.end());
  while (!frontier.empty()) {
    FiberElement e = frontier.back();
    frontier.pop_back();
    for (const auto& x : gens) {
      FiberElement y = mul(e, x);
      if (phi.insert(y).second) frontier.push_back(y);
    }
  }

  std::uint64_t quotient = kernel.size() / phi.size();
  rep.frattini_dim = 0;
  while (quotient > 1) {
    if (quotient % p) fail(Errc::InvalidType, "Frattini quotient is not a p-power");
    quotient /= p;
    ++rep.frattini_dim;
  }
  rep.expected = 0;
  for (int i = 1; i < t.n; ++i) rep.expected += g.order() / ord[i];
  rep.ok = rep.frattini_dim == rep.expected;
  return rep;
}

RankHistogram sample_rank_distribution(const Presentation& model, bool narrow,
                                       std::uint64_t samples, std::uint64_t seed) {
  RankHistogram h;
  h.samples = samples;
  h.seed = seed;
  std::mt19937_64 rng(seed);
  int order = model.type().gamma.order();
  std::vector<int> order_two;
  for (int s = 1; s < order; ++s)
    if (model.type().gamma.order_of(s) == 2) order_two.push_back(s);
  for (std::uint64_t it = 0; it < samples; ++it) {
    FrobeniusAssignment fa;
    for (int i = 0; i < model.n(); ++i) {
      FpVec coords(model.n_dim());
      for (auto& x : coords) x = static_cast<std::uint8_t>(rng() % model.p());
      fa.lifts.push_back(model.element(static_cast<int>(rng() % order), coords));
    }
    if (model.p() == 2) {
      FpVec coords(model.n_dim());
      for (auto& x : coords) x = static_cast<std::uint8_t>(rng() % 2);
      int sigma = 0;
      if (model.type().arch == ArchInertia::OrderTwo)
        sigma = order_two[rng() % order_two.size()];
      fa.arch_lift = model.element(sigma, coords);
    }
    ++h.counts[model.conditional_class_rank(fa, narrow)];
  }
  return h;
}

}  // namespace ramlab
