#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ramlab/presentation.hpp"

namespace ramlab {

// Deterministic Miller–Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);
inline bool is_prime(long long n) { return n > 1 && is_prime_u64(static_cast<std::uint64_t>(n)); }

std::vector<std::pair<long long, int>> factorize(long long n);
bool is_squarefree(long long n);

long long pow_mod(long long base, long long exp, long long mod);
int legendre(long long a, long long p);
int jacobi(long long a, long long n);
long long smallest_primitive_root(long long p);

// Exponent class of q in (Z/ell)^x modulo p^m-th powers, normalized by the
// smallest primitive root of ell; class 0 iff q splits completely in the
// degree-p^m cyclic field E_{p^m}(ell) ramified only at ell.
int power_residue_index(long long q, long long ell, int p, int m);
bool splits_in_E(long long q, long long ell, int p);

bool is_fundamental_discriminant(long long D);
// Norm (+1/-1) of the fundamental unit of Q(sqrt D), D > 0 fundamental,
// from the parity of the continued-fraction period.
int fundamental_unit_norm(long long D);

// ---------------------------------------------------------------------------

struct MultiquadAnalysis {
  std::vector<long long> class_basis;  // canonical square-class representatives
  std::vector<long long> ramified;     // finite ramified primes, ascending
  bool real = true;
  int arch_image = 0;          // complex-conjugation class in Γ (0 when real)
  RamificationType type;       // Γ = (C_2)^d in the dual basis of class_basis
  std::vector<int> inertia;    // inertia generator (Γ index) per ramified prime
  std::vector<int> frobenius;  // Frobenius class per ramified prime, mod inertia
};
// Throws WildPrime when 2 ramifies (some class not 1 mod 4), NotIndependent
// when the generators are dependent modulo squares.
MultiquadAnalysis analyze_multiquad(const std::vector<long long>& gens);

struct CyclicAnalysis {
  int p = 2;
  int d = 1;
  std::vector<long long> primes;
  std::vector<int> exponents;  // I_i = C_{p^{m_i}}
  bool real = true;
  RamificationType type;
  std::vector<int> frobenius;  // Γ-index of Frob at prime i, defined mod I_i
};
CyclicAnalysis analyze_cyclic(int p, const std::vector<std::pair<long long, int>>& components);

// ---------------------------------------------------------------------------

struct QPlace {
  long long value = 0;
  bool infinite = false;
};
// dim_{F_p} V_{S \ T}^{S u T}(Q).
int vst_dimension(const std::vector<QPlace>& S, const std::vector<QPlace>& T, int p);

enum class LbCyclicCase { OddP, II1, II2 };
// Prime tuples realizing the sharp cyclic lower bound; conditions (a)(b)(c)
// of the construction plus the case II exact-divisibility congruences.
// inertia_orders[0] must be p^d. Throws SearchExhausted past the cap.
std::vector<long long> find_primes_lb_cyclic(int p, int d, int n,
                                             const std::vector<int>& inertia_orders,
                                             LbCyclicCase c, long long cap);
// The per-position condition predicates, exposed so searches can be re-checked
// independently of the sieve.
bool lb_cyclic_conditions_ok(int p, const std::vector<int>& inertia_orders, LbCyclicCase c,
                             const std::vector<long long>& chosen, long long candidate);

// Wreath-splitting predicate for k = Q(sqrt m), m > 1 squarefree:
// ell splits completely in k(mu_p, p-th roots of the units). Throws
// UnitUnavailable unless k is real quadratic.
bool for_wreath_predicate(long long m, long long ell, int p);

// ---------------------------------------------------------------------------

// Monic irreducible polynomial over F_q (q = char^e <= 64), coefficients
// encoded as field elements in [0, q).
struct FqtPrime {
  long long q = 2;
  std::vector<int> poly;  // ascending, poly.back() == 1
  int degree() const { return static_cast<int>(poly.size()) - 1; }
  long long norm() const;
};
// Certifies irreducibility; throws NotIrreducible / InvalidArgs.
FqtPrime make_fqt_prime(long long q, const std::vector<int>& poly);
// 1 iff mu_p is contained in the completion, i.e. q^deg = 1 mod p.
int fqt_delta(const FqtPrime& v, int p);

}  // namespace ramlab
