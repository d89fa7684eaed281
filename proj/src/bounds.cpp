#include "ramlab/bounds.hpp"

#include <algorithm>

#include "ramlab/util.hpp"

namespace ramlab {

long long kurosh_rank(const RamificationType& t) {
  validate_type(t);
  long long order = t.gamma.order();
  long long s = 0;
  for (int i = 0; i < t.n; ++i) s += order - order / t.inertia_order(i);
  return s - order + 1;
}

long long upper_bound_Q(const RamificationType& t, const std::vector<long long>& wild_torders) {
  validate_type(t);
  long long deg = t.gamma.order();
  long long ram = t.n + static_cast<long long>(wild_torders.size());
  long long bound = (ram - 1) * deg + 1;
  for (int i = 0; i < t.n; ++i) bound -= deg / t.inertia_order(i);
  for (long long w : wild_torders) {
    if (w <= 0 || deg % w != 0) fail(Errc::InvalidArgs, "wild inertia order must divide [K:Q]");
    bound -= deg / w;
  }
  return bound;
}

long long upper_bound_Fqt(const RamificationType& t, long long q) {
  validate_type(t);
  if (q % t.gamma.p == 0)
    fail(Errc::CharDividesDegree, "the Galois group order must be prime to the characteristic");
  long long deg = t.gamma.order();
  long long bound = (static_cast<long long>(t.n) - 1) * deg + 1;
  for (int i = 0; i < t.n; ++i) bound -= deg / t.inertia_order(i);
  return bound;
}

long long lower_bound_cyclic(const RamificationType& t) {
  validate_type(t);
  if (t.gamma.kind != GammaGroup::Kind::Cyclic)
    fail(Errc::InvalidType, "cyclic lower bound needs a cyclic type");
  if (t.n == 1) return 0;
  if (t.gamma.p == 2 && t.arch == ArchInertia::Trivial) {
    for (int i = 0; i < t.n; ++i)
      if (t.inertia_order(i) == 2) return t.n - 2;
  }
  return t.n - 1;
}

long long lower_bound_multiquad(int d, int n, int alpha_inf) {
  if (d < 1 || n < d || (alpha_inf != 1 && alpha_inf != 2))
    fail(Errc::InvalidArgs, "need n >= d >= 1 and alpha in {1,2}");
  long long total = n - d;
  for (int i = 2; i <= d - 1; ++i) {
    long long term = static_cast<long long>(i - 1) * binom(d, i) +
                     static_cast<long long>(n - d) * binom(d - 1, i - 1) -
                     static_cast<long long>(n) * binom(d - 1, i - 2) - binom(d, i - alpha_inf);
    total += std::max<long long>(0, term);
  }
  return total;
}

NuReport nu_bound(const Presentation& model) {
  NuReport r;
  r.coinvariants = coinvariants_dim(model.relation_module().mod);
  r.nu = std::min<long long>(0, r.coinvariants - model.n());
  int d_gamma = model.type().gamma.kind == GammaGroup::Kind::Cyclic ? 1 : model.type().gamma.d;
  r.prop_lower = model.n() - d_gamma + r.nu;
  return r;
}

long long ub_cyclic_secondary(const RamificationType& t) {
  validate_type(t);
  long long s = 0;
  for (int i = 0; i < t.n; ++i) s += t.gamma.order() / t.inertia_order(i);
  return s - 1;
}

namespace {

bool spec_less(const PrimeSpec& a, const PrimeSpec& b) {
  if (a.infinite != b.infinite) return !a.infinite;
  return a.value < b.value;
}
bool spec_eq(const PrimeSpec& a, const PrimeSpec& b) {
  return a.infinite == b.infinite && (a.infinite || a.value == b.value);
}

bool member(const std::vector<PrimeSpec>& v, const PrimeSpec& x) {
  for (const auto& y : v)
    if (spec_eq(x, y)) return true;
  return false;
}

}  // namespace

long long generator_rank_ST_Q(const std::vector<PrimeSpec>& S_in,
                              const std::vector<PrimeSpec>& T_in, int p) {
  std::vector<PrimeSpec> S = S_in, T = T_in;
  std::sort(S.begin(), S.end(), spec_less);
  std::sort(T.begin(), T.end(), spec_less);
  for (std::size_t i = 1; i < S.size(); ++i)
    if (spec_eq(S[i - 1], S[i])) fail(Errc::InvalidArgs, "duplicate prime in S");
  for (std::size_t i = 1; i < T.size(); ++i)
    if (spec_eq(T[i - 1], T[i])) fail(Errc::InvalidArgs, "duplicate prime in T");

  auto delta_p = [&](const PrimeSpec& q) -> long long {
    if (q.infinite) return p == 2 ? 1 : 0;  // μ_p in R iff p = 2
    if (q.value == p) return p == 2 ? 1 : 0;
    return q.value % p == 1 ? 1 : 0;
  };
  long long delta = p == 2 ? 1 : 0;  // μ_p in Q iff p = 2

  long long d = 1 - delta;
  for (const auto& q : S) {
    if (member(T, q)) continue;
    d += delta_p(q);  // Q has no complex place
    if (!q.infinite && q.value == p) d += 1;  // [Q_p : Q_p] = 1
  }
  // #(T ∪ S_infinity)
  long long t_count = static_cast<long long>(T.size());
  bool inf_in_t = false;
  for (const auto& q : T)
    if (q.infinite) inf_in_t = true;
  if (!inf_in_t) t_count += 1;
  return d - t_count;
}

long long generator_rank_ST_Fqt(const std::vector<FqtPlace>& S, const std::vector<FqtPlace>& T,
                                long long q, int p) {
  if (q % p == 0) fail(Errc::CharConflict, "p must be prime to the characteristic");
  auto delta_place = [&](const FqtPlace& v) -> long long {
    // μ_p in the completion iff p | q^deg - 1
    long long norm = 1;
    for (int i = 0; i < v.degree; ++i) norm = norm * (q % p) % p;
    return norm == 1 ? 1 : 0;
  };
  long long delta = (q % p == 1) ? 1 : 0;  // μ_p in F_q(t) iff p | q - 1
  long long d = 1 - delta;
  auto in_t = [&](const FqtPlace& v) {
    for (const auto& w : T)
      if (v.infinite == w.infinite && (v.infinite || v.degree == w.degree)) return true;
    return false;
  };
  for (const auto& v : S) {
    if (in_t(v)) continue;
    d += delta_place(v);
  }
  long long t_count = static_cast<long long>(T.size());
  bool inf_in_t = false;
  for (const auto& v : T)
    if (v.infinite) inf_in_t = true;
  if (!inf_in_t) t_count += 1;
  return d - t_count;
}

BoundsReport bounds_report(const RamificationType& t, const Presentation* model) {
  BoundsReport r;
  r.kurosh = kurosh_rank(t);
  r.upper = upper_bound_Q(t);
  int d_gamma = t.gamma.kind == GammaGroup::Kind::Cyclic ? 1 : t.gamma.d;
  if (t.gamma.kind == GammaGroup::Kind::Cyclic) {
    r.lower_special = lower_bound_cyclic(t);
    r.lower_genus = r.lower_special;
    r.notes.push_back("cyclic lower bound equals the genus-field bound");
  } else {
    r.lower_genus = t.n - d_gamma;
    r.lower_special =
        lower_bound_multiquad(d_gamma, t.n, t.arch == ArchInertia::OrderTwo ? 2 : 1);
    r.notes.push_back("multiquadratic lower bound taken in the narrow sense for real types");
  }
  if (model) {
    NuReport nu = nu_bound(*model);
    r.nu = nu.nu;
    r.notes.push_back("prop-lower bound " + std::to_string(nu.prop_lower));
  }
  return r;
}

}  // namespace ramlab
