#include "ramlab/gamma.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ramlab/util.hpp"

namespace ramlab {

int GammaGroup::order() const { return static_cast<int>(ipow(p, d)); }

int GammaGroup::mul(int a, int b) const {
  if (kind == Kind::Cyclic) return (a + b) % order();
  int out = 0, base = 1;
  for (int j = 0; j < d; ++j) {
    int ea = a / base % p, eb = b / base % p;
    out += (ea + eb) % p * base;
    base *= p;
  }
  return out;
}

int GammaGroup::inv(int a) const {
  if (kind == Kind::Cyclic) return (order() - a) % order();
  int out = 0, base = 1;
  for (int j = 0; j < d; ++j) {
    int ea = a / base % p;
    out += (p - ea) % p * base;
    base *= p;
  }
  return out;
}

int GammaGroup::pow(int a, long long e) const {
  int n = order();
  e %= n;
  if (e < 0) e += n;
  int out = 0;
  for (long long i = 0; i < e; ++i) out = mul(out, a);
  return out;
}

int GammaGroup::order_of(int a) const {
  int o = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++o;
  }
  return o;
}

int GammaGroup::generator(int j) const {
  if (kind == Kind::Cyclic) return 1;
  return static_cast<int>(ipow(p, j));
}

std::vector<int> GammaGroup::exps(int a) const {
  std::vector<int> e(d);
  for (int j = 0; j < d; ++j) {
    e[j] = a % p;
    a /= p;
  }
  return e;
}

int GammaGroup::from_exps(std::span<const int> e) const {
  int out = 0, base = 1;
  for (int j = 0; j < d; ++j) {
    out += (e[j] % p + p) % p * base;
    base *= p;
  }
  return out;
}

GammaGroup elementary_abelian(int p, int d) {
  return GammaGroup{GammaGroup::Kind::ElementaryAbelian, p, d};
}

GammaGroup cyclic_group(int p, int d) { return GammaGroup{GammaGroup::Kind::Cyclic, p, d}; }

bool Subgroup::contains(int g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}

Subgroup subgroup_generated(const GammaGroup& g, std::span<const int> gens) {
  std::set<int> s{0};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur)
      for (int x : gens)
        if (s.insert(g.mul(a, x)).second) grew = true;
  }
  return Subgroup{std::vector<int>(s.begin(), s.end())};
}

bool is_subgroup(const GammaGroup& g, const Subgroup& s) {
  if (s.elems.empty() || s.elems[0] != 0) return false;
  for (int a : s.elems) {
    if (a < 0 || a >= g.order()) return false;
    for (int b : s.elems)
      if (!s.contains(g.mul(a, b))) return false;
  }
  return true;
}

bool is_cyclic_subgroup(const GammaGroup& g, const Subgroup& s) {
  for (int a : s.elems)
    if (g.order_of(a) == s.order()) return true;
  return false;
}

int canonical_generator(const GammaGroup& g, const Subgroup& s) {
  for (int a : s.elems)
    if (g.order_of(a) == s.order()) return a;
  fail(Errc::NonCyclicInertia, "subgroup is not cyclic");
}

FpMatrix GammaModule::element_action(int g) const {
  FpMatrix m = FpMatrix::identity(p, dim);
  auto digits = gamma.kind == GammaGroup::Kind::Cyclic ? std::vector<int>{g} : gamma.exps(g);
  for (std::size_t j = 0; j < digits.size(); ++j)
    for (int k = 0; k < digits[j]; ++k) m = gen_action[j].mul(m);
  return m;
}

FpVec GammaModule::apply(int g, std::span<const std::uint8_t> v) const {
  FpVec out(v.begin(), v.end());
  auto digits = gamma.kind == GammaGroup::Kind::Cyclic ? std::vector<int>{g} : gamma.exps(g);
  for (std::size_t j = 0; j < digits.size(); ++j)
    for (int k = 0; k < digits[j]; ++k) out = gen_action[j].apply(out);
  return out;
}

FpVec GammaModule::apply_gen(int j, std::span<const std::uint8_t> v) const {
  return gen_action[j].apply(v);
}

GammaModule regular_module(const GammaGroup& g) {
  GammaModule m;
  m.gamma = g;
  m.p = g.p;
  m.dim = g.order();
  m.tag = GammaModule::Tag::Regular;
  for (int j = 0; j < g.num_generators(); ++j) {
    FpMatrix a(g.p, m.dim, m.dim);
    int gen = g.generator(j);
    for (int h = 0; h < m.dim; ++h) a.at(g.mul(gen, h), h) = 1;
    m.gen_action.push_back(std::move(a));
  }
  return m;
}

GammaModule trivial_module(const GammaGroup& g, int dim) {
  GammaModule m;
  m.gamma = g;
  m.p = g.p;
  m.dim = dim;
  m.tag = GammaModule::Tag::Trivial;
  for (int j = 0; j < g.num_generators(); ++j)
    m.gen_action.push_back(FpMatrix::identity(g.p, dim));
  return m;
}

namespace {

// Builds the quotient of the regular module by the submodule spanned by the
// Γ-orbit of `vec`, with coordinates on the non-pivot columns.
GammaModule regular_quotient_by_orbit(const GammaGroup& g, const FpVec& vec,
                                      GammaModule::Tag tag) {
  GammaModule reg = regular_module(g);
  std::vector<FpVec> orbit;
  for (int h = 0; h < g.order(); ++h) orbit.push_back(reg.apply(h, vec));
  Subspace sub = span_of(g.p, g.order(), orbit);

  std::vector<int> free_cols;
  {
    std::vector<bool> is_pivot(g.order(), false);
    for (int c : sub.pivots()) is_pivot[c] = true;
    for (int c = 0; c < g.order(); ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
  }
  auto project = [&](std::span<const std::uint8_t> v) {
    FpVec r = sub.reduce(v);
    FpVec out(free_cols.size());
    for (std::size_t i = 0; i < free_cols.size(); ++i) out[i] = r[free_cols[i]];
    return out;
  };

  GammaModule m;
  m.gamma = g;
  m.p = g.p;
  m.dim = static_cast<int>(free_cols.size());
  m.tag = tag;
  for (int j = 0; j < g.num_generators(); ++j) {
    FpMatrix a(g.p, m.dim, m.dim);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      FpVec unit(g.order(), 0);
      unit[free_cols[k]] = 1;
      FpVec img = project(reg.apply_gen(j, unit));
      for (int r = 0; r < m.dim; ++r) a.at(r, static_cast<int>(k)) = img[r];
    }
    m.gen_action.push_back(std::move(a));
  }
  FpVec id_vec(g.order(), 0);
  id_vec[0] = 1;
  m.distinguished = project(id_vec);
  return m;
}

}  // namespace

GammaModule trace_quotient(const GammaGroup& g, const Subgroup& I) {
  if (!is_subgroup(g, I)) fail(Errc::NotASubgroup, "trace quotient needs a subgroup");
  FpVec trace(g.order(), 0);
  for (int h : I.elems) trace[h] = 1;
  return regular_quotient_by_orbit(g, trace, GammaModule::Tag::QuotientByTrace);
}

GammaModule quotient_regular_module(const GammaGroup& g, const Subgroup& I) {
  if (!is_subgroup(g, I)) fail(Errc::NotASubgroup, "quotient module needs a subgroup");
  // F_p[Γ/I] = F_p[Γ] / (submodule spanned by e_h - e_0 for h in I).
  GammaModule m;
  GammaModule reg = regular_module(g);
  std::vector<FpVec> rel;
  for (int h : I.elems) {
    if (h == 0) continue;
    FpVec v(g.order(), 0);
    v[h] = 1;
    v[0] = static_cast<std::uint8_t>(g.p - 1);
    rel.push_back(std::move(v));
  }
  // orbit closure of the relators
  std::vector<FpVec> orbit;
  for (const auto& v : rel)
    for (int h = 0; h < g.order(); ++h) orbit.push_back(reg.apply(h, v));
  Subspace sub = span_of(g.p, g.order(), orbit);
  std::vector<int> free_cols;
  {
    std::vector<bool> is_pivot(g.order(), false);
    for (int c : sub.pivots()) is_pivot[c] = true;
    for (int c = 0; c < g.order(); ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
  }
  auto project = [&](std::span<const std::uint8_t> v) {
    FpVec r = sub.reduce(v);
    FpVec out(free_cols.size());
    for (std::size_t i = 0; i < free_cols.size(); ++i) out[i] = r[free_cols[i]];
    return out;
  };
  m.gamma = g;
  m.p = g.p;
  m.dim = static_cast<int>(free_cols.size());
  m.tag = GammaModule::Tag::QuotientRegular;
  for (int j = 0; j < g.num_generators(); ++j) {
    FpMatrix a(g.p, m.dim, m.dim);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      FpVec unit(g.order(), 0);
      unit[free_cols[k]] = 1;
      FpVec img = project(reg.apply_gen(j, unit));
      for (int r = 0; r < m.dim; ++r) a.at(r, static_cast<int>(k)) = img[r];
    }
    m.gen_action.push_back(std::move(a));
  }
  FpVec id_vec(g.order(), 0);
  id_vec[0] = 1;
  m.distinguished = project(id_vec);
  return m;
}

GammaModule direct_sum(const GammaModule& a, const GammaModule& b) {
  if (!(a.gamma == b.gamma) || a.p != b.p) fail(Errc::MixedGroups, "direct sum over one group");
  GammaModule m;
  m.gamma = a.gamma;
  m.p = a.p;
  m.dim = a.dim + b.dim;
  m.tag = GammaModule::Tag::Explicit;
  for (int j = 0; j < a.gamma.num_generators(); ++j) {
    FpMatrix mat(a.p, m.dim, m.dim);
    for (int r = 0; r < a.dim; ++r)
      for (int c = 0; c < a.dim; ++c) mat.at(r, c) = a.gen_action[j].at(r, c);
    for (int r = 0; r < b.dim; ++r)
      for (int c = 0; c < b.dim; ++c) mat.at(a.dim + r, a.dim + c) = b.gen_action[j].at(r, c);
    m.gen_action.push_back(std::move(mat));
  }
  return m;
}

Subspace augmentation_image(const GammaModule& m) {
  Subspace s(m.p, m.dim);
  for (int j = 0; j < m.gamma.num_generators(); ++j) {
    for (int k = 0; k < m.dim; ++k) {
      FpVec unit(m.dim, 0);
      unit[k] = 1;
      FpVec img = m.apply_gen(j, unit);
      s.insert(sub_vec(m.p, img, unit));
    }
  }
  return s;
}

int coinvariants_dim(const GammaModule& m) { return m.dim - augmentation_image(m).dim(); }

void validate_module(const GammaModule& m) {
  for (int j = 0; j < m.gamma.num_generators(); ++j) {
    int ord = m.gamma.order_of(m.gamma.generator(j));
    FpMatrix pow = FpMatrix::identity(m.p, m.dim);
    for (int k = 0; k < ord; ++k) pow = m.gen_action[j].mul(pow);
    if (!(pow == FpMatrix::identity(m.p, m.dim)))
      fail(Errc::InvalidType, "generator action order mismatch");
    for (int i = 0; i < j; ++i) {
      if (!(m.gen_action[j].mul(m.gen_action[i]) == m.gen_action[i].mul(m.gen_action[j])))
        fail(Errc::InvalidType, "action matrices do not commute");
    }
  }
}

Subspace gamma_span(const GammaModule& m, const std::vector<FpVec>& vectors) {
  Subspace s(m.p, m.dim);
  std::vector<FpVec> work;
  for (const auto& v : vectors)
    if (s.insert(v)) work.push_back(v);
  while (!work.empty()) {
    FpVec v = std::move(work.back());
    work.pop_back();
    for (int j = 0; j < m.gamma.num_generators(); ++j) {
      FpVec img = m.apply_gen(j, v);
      if (s.insert(img)) work.push_back(std::move(img));
    }
  }
  return s;
}

}  // namespace ramlab
