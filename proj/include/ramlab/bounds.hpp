#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramlab/presentation.hpp"

namespace ramlab {

struct BoundsReport {
  long long kurosh = 0;
  long long upper = 0;
  long long lower_genus = 0;
  long long lower_special = 0;
  long long nu = 0;
  std::vector<std::string> notes;
};

// Free rank of ker(∗ I_i -> Γ): Σ(|Γ| - |Γ|/|I_i|) - |Γ| + 1.
long long kurosh_rank(const RamificationType& t);

// Upper bound on dim Cl^+(K)[p] for K/Q of this type. Wild primes enter only
// through caller-supplied |T°_p| orders (one entry per wild prime).
long long upper_bound_Q(const RamificationType& t,
                        const std::vector<long long>& wild_torders = {});

// Function-field analogue (splitting completely at infinity); q the constant
// field size, p must not divide q.
long long upper_bound_Fqt(const RamificationType& t, long long q);

// Sharp genus-field lower bound for cyclic types.
long long lower_bound_cyclic(const RamificationType& t);

// Multiquadratic lower bound; alpha_inf = 1 (real) or 2 (imaginary).
long long lower_bound_multiquad(int d, int n, int alpha_inf);

// Model-level surrogate for the central-extension bound: nu = min(0,
// dim of the Γ-coinvariants of N minus the number of finite relator primes),
// and the assembled lower bound #R - d(Γ) + nu.
struct NuReport {
  long long nu = 0;
  long long coinvariants = 0;
  long long prop_lower = 0;
};
NuReport nu_bound(const Presentation& model);

// dim Cl(K)[p] >= Σ |Γ|/|I_i| - 1 holds for infinitely many K of the type.
long long ub_cyclic_secondary(const RamificationType& t);

// Generator rank d of G_S^T(k)(p) from the Shafarevich–Koch style formula,
// assuming the B-group vanishes (asserted by the caller).
struct PrimeSpec {
  // A finite rational prime, or the archimedean place when infinite = true.
  long long value = 0;
  bool infinite = false;
};
long long generator_rank_ST_Q(const std::vector<PrimeSpec>& S, const std::vector<PrimeSpec>& T,
                              int p);
// Function-field version over F_q(t); primes are given by their degrees, the
// place at infinity has degree 1 and is flagged.
struct FqtPlace {
  int degree = 1;
  bool infinite = false;
};
long long generator_rank_ST_Fqt(const std::vector<FqtPlace>& S, const std::vector<FqtPlace>& T,
                                long long q, int p);

BoundsReport bounds_report(const RamificationType& t, const Presentation* model = nullptr);

}  // namespace ramlab
