#include "ramlab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "ramlab/util.hpp"

#include <algorithm>

namespace ramlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod_u64(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s && witness; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  if (n == 0) fail(Errc::InvalidArgs, "cannot factor zero");
  std::vector<std::pair<long long, int>> out;
  long long m = n < 0 ? -n : n;
  for (long long p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

bool is_squarefree(long long n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

long long pow_mod(long long base, long long exp, long long mod) {
  long long b = base % mod;
  if (b < 0) b += mod;
  return static_cast<long long>(powmod_u64(static_cast<u64>(b), static_cast<u64>(exp),
                                           static_cast<u64>(mod)));
}

int legendre(long long a, long long p) {
  if (p <= 2 || !is_prime(p)) fail(Errc::InvalidArgs, "legendre needs an odd prime");
  long long r = pow_mod(a, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

int jacobi(long long a, long long n) {
  if (n <= 0 || n % 2 == 0) fail(Errc::InvalidArgs, "jacobi needs positive odd n");
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

long long smallest_primitive_root(long long p) {
  if (!is_prime(p)) fail(Errc::BadModulus, "primitive root needs a prime modulus");
  if (p == 2) return 1;
  auto fac = factorize(p - 1);
  for (long long g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [q, e] : fac)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  fail(Errc::BadModulus, "no primitive root found");
}

int power_residue_index(long long q, long long ell, int p, int m) {
  long long pm = ipow(p, m);
  if (!is_prime(ell) || (ell - 1) % pm != 0)
    fail(Errc::BadModulus, "need a prime that is 1 mod p^m");
  if (q % ell == 0) fail(Errc::BadModulus, "arguments must be coprime");
  long long g = smallest_primitive_root(ell);
  long long base = pow_mod(g, (ell - 1) / pm, ell);  // order p^m
  long long target = pow_mod(q, (ell - 1) / pm, ell);
  long long cur = 1;
  for (int k = 0; k < pm; ++k) {
    if (cur == target) return k;
    cur = cur * base % ell;
  }
  fail(Errc::BadModulus, "discrete log failed");
}

bool splits_in_E(long long q, long long ell, int p) {
  return power_residue_index(q, ell, p, 1) == 0;
}

bool is_fundamental_discriminant(long long D) {
  if (D == 1 || D == 0) return false;
  long long r = ((D % 4) + 4) % 4;
  if (r == 1) return is_squarefree(D);
  if (r == 0) {
    long long m = D / 4;
    long long mr = ((m % 4) + 4) % 4;
    return (mr == 2 || mr == 3) && is_squarefree(m);
  }
  return false;
}

namespace {

// One step of the continued fraction of (P + sqrt(D)) / Q.
struct SurdState {
  long long P, Q;
  bool operator<(const SurdState& o) const { return std::pair{P, Q} < std::pair{o.P, o.Q}; }
};

long long isqrt_ll(long long n) {
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

int fundamental_unit_norm(long long D) {
  if (D <= 0 || !is_fundamental_discriminant(D))
    fail(Errc::NotFundamental, "need a positive fundamental discriminant");
  long long s = isqrt_ll(D);
  // Continued fraction of (P0 + sqrt D)/Q0 with (P0, Q0) = (1, 2) for odd D
  // and (0, 2) for D = 4m (so the surd generates the maximal order). The
  // fundamental unit has norm (-1)^(period length).
  long long P = D % 2 == 1 ? 1 : 0, Q = 2;
  std::map<SurdState, int> seen;
  int step = 0;
  while (true) {
    auto [it, fresh] = seen.emplace(SurdState{P, Q}, step);
    if (!fresh) {
      int period = step - it->second;
      return period % 2 == 1 ? -1 : 1;
    }
    long long a = (P + s) / Q;
    long long P2 = a * Q - P;
    long long Q2 = (D - P2 * P2) / Q;
    P = P2;
    Q = Q2;
    ++step;
    if (step > 10'000'000) fail(Errc::SearchExhausted, "continued fraction did not cycle");
  }
}

// ---------------------------------------------------------------------------

MultiquadAnalysis analyze_multiquad(const std::vector<long long>& gens) {
  if (gens.empty()) fail(Errc::InvalidArgs, "need at least one generator");
  std::set<long long> prime_set;
  std::vector<std::vector<std::pair<long long, int>>> facs;
  for (long long m : gens) {
    if (m == 0 || m == 1) fail(Errc::InvalidArgs, "generators must be nonzero and not 1");
    if (!is_squarefree(m)) fail(Errc::InvalidArgs, "generators must be squarefree");
    facs.push_back(factorize(m));
    for (const auto& [p, e] : facs.back()) prime_set.insert(p);
  }
  std::vector<long long> primes(prime_set.begin(), prime_set.end());
  int np = static_cast<int>(primes.size());
  // Coordinates: one per prime (ascending) then the sign.
  auto to_vec = [&](long long m, const std::vector<std::pair<long long, int>>& f) {
    FpVec v(np + 1, 0);
    for (const auto& [p, e] : f) {
      int idx = static_cast<int>(std::lower_bound(primes.begin(), primes.end(), p) -
                                 primes.begin());
      v[idx] = 1;
    }
    if (m < 0) v[np] = 1;
    return v;
  };
  Subspace cls(2, np + 1);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!cls.insert(to_vec(gens[i], facs[i])))
      fail(Errc::NotIndependent, "generators are dependent modulo squares");
  }

  MultiquadAnalysis out;
  int d = cls.dim();
  for (int b = 0; b < d; ++b) {
    FpVec row = cls.basis_row(b);
    long long rep = row[np] ? -1 : 1;
    for (int k = 0; k < np; ++k)
      if (row[k]) rep *= primes[k];
    out.class_basis.push_back(rep);
  }
  for (long long rep : out.class_basis) {
    long long a = rep < 0 ? -rep : rep;
    if (a % 2 == 0) fail(Errc::WildPrime, "2 ramifies (even class representative)");
    long long residue = ((rep % 4) + 4) % 4;
    if (residue != 1) fail(Errc::WildPrime, "2 ramifies (class not 1 mod 4)");
  }
  out.real = std::all_of(out.class_basis.begin(), out.class_basis.end(),
                         [](long long m) { return m > 0; });
  for (int b = 0; b < d; ++b)
    if (out.class_basis[b] < 0) out.arch_image |= 1 << b;

  for (int k = 0; k < np; ++k) {
    bool divides_some = false;
    for (long long rep : out.class_basis)
      if ((rep < 0 ? -rep : rep) % primes[k] == 0) divides_some = true;
    if (divides_some) out.ramified.push_back(primes[k]);
  }

  GammaGroup gamma = elementary_abelian(2, d);
  std::vector<std::vector<int>> inertia_gens;
  for (long long ell : out.ramified) {
    int mask = 0;
    for (int b = 0; b < d; ++b)
      if ((out.class_basis[b] < 0 ? -out.class_basis[b] : out.class_basis[b]) % ell == 0)
        mask |= 1 << b;
    out.inertia.push_back(mask);
    inertia_gens.push_back({mask});
  }
  out.type = make_ramification_type(gamma, inertia_gens,
                                    out.real ? ArchInertia::Trivial : ArchInertia::OrderTwo);

  for (std::size_t i = 0; i < out.ramified.size(); ++i) {
    long long ell = out.ramified[i];
    int f = 0;
    for (int b = 0; b < d; ++b) {
      long long rep = out.class_basis[b];
      long long coprime = rep;
      if ((coprime < 0 ? -coprime : coprime) % ell == 0) coprime /= ell;
      if (legendre(coprime, ell) == -1) f |= 1 << b;
    }
    out.frobenius.push_back(f);
  }
  return out;
}

CyclicAnalysis analyze_cyclic(int p, const std::vector<std::pair<long long, int>>& components) {
  if (components.empty()) fail(Errc::InvalidArgs, "need at least one component");
  CyclicAnalysis out;
  out.p = p;
  out.d = 0;
  std::set<long long> seen;
  for (const auto& [ell, m] : components) {
    if (!is_prime(ell)) fail(Errc::InvalidArgs, "component primes must be prime");
    if (!seen.insert(ell).second) fail(Errc::InvalidArgs, "component primes must be distinct");
    if (m < 1) fail(Errc::InvalidArgs, "component exponents must be positive");
    if ((ell - 1) % ipow(p, m) != 0)
      fail(Errc::BadModulus, "component prime must be 1 mod p^m");
    out.primes.push_back(ell);
    out.exponents.push_back(m);
    out.d = std::max(out.d, m);
  }
  GammaGroup gamma = cyclic_group(p, out.d);
  std::vector<std::vector<int>> inertia_gens;
  for (int m : out.exponents)
    inertia_gens.push_back({static_cast<int>(ipow(p, out.d - m))});

  out.real = true;
  if (p == 2) {
    int imag = 0;
    for (std::size_t i = 0; i < out.primes.size(); ++i) {
      long long pm = ipow(2, out.exponents[i]);
      // E_{2^m}(ell) is imaginary iff 2^m exactly divides ell - 1
      if ((out.primes[i] - 1) % (2 * pm) != 0) imag ^= 1;
    }
    out.real = imag == 0;
  }
  out.type = make_ramification_type(gamma, inertia_gens,
                                    out.real ? ArchInertia::Trivial : ArchInertia::OrderTwo);
  for (std::size_t i = 0; i < out.primes.size(); ++i) {
    long long acc = 0;
    for (std::size_t j = 0; j < out.primes.size(); ++j) {
      if (i == j) continue;
      int c = power_residue_index(out.primes[i], out.primes[j], p, out.exponents[j]);
      acc = (acc + static_cast<long long>(c) * ipow(p, out.d - out.exponents[j])) %
            gamma.order();
    }
    out.frobenius.push_back(static_cast<int>(acc));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Fermat-quotient style homomorphisms used by the V_S^T solver.
int fermat_quotient(long long u, int p) {
  // ((u^(p-1) - 1)/p) mod p as a homomorphism (Z/p^2)^x -> Z/p
  long long p2 = static_cast<long long>(p) * p;
  long long v = pow_mod(u, p - 1, p2);
  return static_cast<int>(((v - 1) / p % p + p) % p);
}

int chi1_mod8(long long u) {  // 1 iff u = 3 mod 4
  long long r = ((u % 8) + 8) % 8;
  return (r == 3 || r == 7) ? 1 : 0;
}
int chi2_mod8(long long u) {  // 1 iff u = 3,5 mod 8
  long long r = ((u % 8) + 8) % 8;
  return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int vst_dimension(const std::vector<QPlace>& S, const std::vector<QPlace>& T, int p) {
  auto key = [](const QPlace& v) { return v.infinite ? -1 : v.value; };
  std::set<long long> s_set, t_set, finite;
  for (const auto& v : S) {
    if (!v.infinite && !is_prime(v.value)) fail(Errc::InvalidArgs, "S must consist of primes");
    s_set.insert(key(v));
    if (!v.infinite) finite.insert(v.value);
  }
  for (const auto& v : T) {
    if (!v.infinite && !is_prime(v.value)) fail(Errc::InvalidArgs, "T must consist of primes");
    t_set.insert(key(v));
    if (!v.infinite) finite.insert(v.value);
  }
  std::vector<long long> qs(finite.begin(), finite.end());
  int nq = static_cast<int>(qs.size());
  bool sign_var = (p == 2);
  int nvars = nq + (sign_var ? 1 : 0);

  // candidates a = (-1)^s * prod q^{e_q}; conditions at S \ T are F_p-linear.
  std::vector<FpVec> rows;
  auto var_index = [&](long long q) {
    return static_cast<int>(std::lower_bound(qs.begin(), qs.end(), q) - qs.begin());
  };
  for (long long kv : s_set) {
    if (t_set.count(kv)) continue;
    FpVec row(nvars, 0);
    if (kv == -1) {
      if (p == 2) {
        row[nq] = 1;  // a > 0
        rows.push_back(row);
      }
      continue;
    }
    long long q0 = kv;
    // valuation condition e_{q0} = 0 mod p
    FpVec val_row(nvars, 0);
    val_row[var_index(q0)] = 1;
    rows.push_back(val_row);
    if (q0 == p) {
      if (p == 2) {
        FpVec r1(nvars, 0), r2(nvars, 0);
        for (int k = 0; k < nq; ++k) {
          if (qs[k] == 2) continue;
          r1[k] = static_cast<std::uint8_t>(chi1_mod8(qs[k]));
          r2[k] = static_cast<std::uint8_t>(chi2_mod8(qs[k]));
        }
        r1[nq] = static_cast<std::uint8_t>(chi1_mod8(-1));
        r2[nq] = static_cast<std::uint8_t>(chi2_mod8(-1));
        rows.push_back(r1);
        rows.push_back(r2);
      } else {
        FpVec r(nvars, 0);
        for (int k = 0; k < nq; ++k) {
          if (qs[k] == p) continue;
          r[k] = static_cast<std::uint8_t>(fermat_quotient(qs[k], p));
        }
        rows.push_back(r);
      }
    } else if ((q0 - 1) % p == 0) {
      // unit part must be a p-th power residue mod q0
      long long g = smallest_primitive_root(q0);
      long long base = pow_mod(g, (q0 - 1) / p, q0);
      auto dl = [&](long long u) {
        long long target = pow_mod(u, (q0 - 1) / p, q0);
        long long cur = 1;
        for (int k = 0; k < p; ++k) {
          if (cur == target) return k;
          cur = cur * base % q0;
        }
        fail(Errc::BadModulus, "residue discrete log failed");
      };
      FpVec r(nvars, 0);
      for (int k = 0; k < nq; ++k) {
        if (qs[k] == q0) continue;
        r[k] = static_cast<std::uint8_t>(dl(qs[k]));
      }
      if (sign_var) r[nq] = static_cast<std::uint8_t>(dl(q0 - 1));  // class of -1
      rows.push_back(r);
    }
  }
  FpMatrix m(p, static_cast<int>(rows.size()), nvars);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(static_cast<int>(r), rows[r]);
  return nvars - rank(m);
}

// ---------------------------------------------------------------------------

bool lb_cyclic_conditions_ok(int p, const std::vector<int>& orders, LbCyclicCase c,
                             const std::vector<long long>& chosen, long long ell) {
  int idx = static_cast<int>(chosen.size());
  int n = static_cast<int>(orders.size());
  if (!is_prime(ell) || ell == p) return false;
  for (long long q : chosen)
    if (q == ell) return false;
  long long e = orders[idx];
  if ((ell - 1) % e != 0) return false;
  if (p == 2 && c != LbCyclicCase::OddP) {
    bool exact = (ell - 1) % (2 * e) != 0;
    bool want_exact = c == LbCyclicCase::II1 ? idx == 0 : (idx == 0 || idx == n - 1);
    if (exact != want_exact) return false;
  }
  // (a) earlier primes are p-th powers mod ell. For p = 2 the first-prime
  // instance is skipped: under the case II congruences it contradicts (c) by
  // quadratic reciprocity, and the Frobenius condition never constrains the
  // lift at the first prime.
  for (std::size_t j = (p == 2 ? 1 : 0); j < chosen.size(); ++j)
    if (pow_mod(chosen[j], (ell - 1) / p, ell) != 1) return false;
  // (b) ell splits completely in E_p(q_j) for j >= 2
  for (int j = 1; j < idx; ++j)
    if (power_residue_index(ell, chosen[j], p, 1) != 0) return false;
  // (c) ell completely inert in E_p(q_1)
  if (idx >= 1 && power_residue_index(ell, chosen[0], p, 1) == 0) return false;
  return true;
}

std::vector<long long> find_primes_lb_cyclic(int p, int d, int n,
                                             const std::vector<int>& orders, LbCyclicCase c,
                                             long long cap) {
  if (static_cast<int>(orders.size()) != n || n < 1)
    fail(Errc::InvalidArgs, "need one inertia order per prime");
  if (orders[0] != ipow(p, d)) fail(Errc::InvalidArgs, "first inertia order must be p^d");
  if ((c == LbCyclicCase::II1 || c == LbCyclicCase::II2) && p != 2)
    fail(Errc::InvalidArgs, "case II needs p = 2");
  if (c == LbCyclicCase::OddP && p == 2) fail(Errc::InvalidArgs, "case OddP needs odd p");
  std::vector<long long> chosen;
  constexpr long long kWindow = 1 << 15;
  for (int i = 0; i < n; ++i) {
    long long found = 0;
    for (long long lo = 3; lo <= cap && !found; lo += kWindow) {
      long long hi = std::min(cap + 1, lo + kWindow);
      // scan the window in parallel blocks; smallest-first merge keeps the
      // result independent of scheduling
      std::vector<long long> block_hit(256, 0);
      std::size_t blocks = 0;
      parallel_blocks(
          static_cast<std::size_t>(hi - lo),
          [&](std::size_t b, std::size_t begin, std::size_t end) {
            for (std::size_t k = begin; k < end; ++k) {
              long long ell = lo + static_cast<long long>(k);
              if (lb_cyclic_conditions_ok(p, orders, c, chosen, ell)) {
                block_hit[b] = ell;
                return;
              }
            }
          },
          &blocks);
      for (std::size_t b = 0; b < blocks && !found; ++b)
        if (block_hit[b]) found = block_hit[b];
    }
    if (!found) fail(Errc::SearchExhausted, "prime search cap exceeded");
    chosen.push_back(found);
  }
  return chosen;
}

bool for_wreath_predicate(long long m, long long ell, int p) {
  if (m <= 1 || !is_squarefree(m))
    fail(Errc::UnitUnavailable, "unit data is computed for real quadratic fields only");
  if (!is_prime(ell) || ell == 2 || m % ell == 0) return false;
  if ((ell - 1) % p != 0) return false;  // mu_p condition
  long long D = ((m % 4) + 4) % 4 == 1 ? m : 4 * m;
  if (legendre(D % ell, ell) != 1) return false;  // split in k
  if (p == 2 && ell % 4 != 1) return false;       // -1 must be a square
  long long s = isqrt_ll(D);
  long long sq = 0;
  for (long long x = 1; x < ell && !sq; ++x)
    if (x * x % ell == D % ell) sq = x;
  if (sq == 0) return false;

  // Locate the cycle of the continued fraction of the order generator.
  long long P0 = D % 2 ? 1 : 0, Q0 = 2;
  std::map<SurdState, int> seen;
  long long P = P0, Q = Q0;
  int step = 0, cycle_start = -1, period = 0;
  std::vector<std::pair<long long, long long>> states;
  while (cycle_start < 0) {
    auto [it, fresh] = seen.emplace(SurdState{P, Q}, step);
    if (!fresh) {
      cycle_start = it->second;
      period = step - cycle_start;
      break;
    }
    states.emplace_back(P, Q);
    long long a = (P + s) / Q;
    long long P2 = a * Q - P;
    long long Q2 = (D - P2 * P2) / Q;
    P = P2;
    Q = Q2;
    ++step;
    if (step > 10'000'000) fail(Errc::SearchExhausted, "continued fraction did not cycle");
  }
  auto [Pr, Qr] = states[cycle_start];
  if (Qr % ell == 0) return false;

  // Fundamental unit: eps = M21 * alpha + M22 where M is the convergent
  // matrix of one full period starting at the reduced state alpha.
  for (long long root : {sq, ell - sq}) {
    long long m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    long long Pc = Pr, Qc = Qr;
    for (int i = 0; i < period; ++i) {
      long long a = (Pc + s) / Qc;
      long long P2 = a * Qc - Pc;
      long long Q2 = (D - P2 * P2) / Qc;
      long long am = a % ell;
      long long n11 = (m11 * am + m12) % ell, n21 = (m21 * am + m22) % ell;
      m12 = m11;
      m22 = m21;
      m11 = n11;
      m21 = n21;
      Pc = P2;
      Qc = Q2;
    }
    long long alpha = (Pr % ell + root) % ell * pow_mod(Qc = Qr, ell - 2, ell) % ell;
    long long unit = (m21 * alpha + m22) % ell;
    if (unit == 0) return false;
    if (pow_mod(unit, (ell - 1) / p, ell) != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// F_q arithmetic and irreducibility certification for FqtPrime.

namespace {

struct SmallField {
  int ch = 2;  // characteristic
  int e = 1;
  long long q = 2;
  std::vector<int> modulus;  // irreducible over F_ch of degree e, ascending

  int add(int a, int b) const {
    int out = 0, base = 1;
    for (int i = 0; i < e; ++i) {
      out += (a % ch + b % ch) % ch * base;
      a /= ch;
      b /= ch;
      base *= ch;
    }
    return out;
  }
  int mul(int a, int b) const {
    // polynomial multiplication mod the modulus
    std::vector<int> da(e, 0), db(e, 0);
    for (int i = 0; i < e; ++i) {
      da[i] = a % ch;
      a /= ch;
      db[i] = b % ch;
      b /= ch;
    }
    std::vector<int> prod(2 * e - 1, 0);
    for (int i = 0; i < e; ++i)
      for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % ch;
    for (int i = 2 * e - 2; i >= e; --i) {
      int c = prod[i];
      if (!c) continue;
      prod[i] = 0;
      for (int j = 0; j < e; ++j)
        prod[i - e + j] = (prod[i - e + j] + (ch - 1) * c % ch * modulus[j]) % ch;
    }
    int out = 0, base = 1;
    for (int i = 0; i < e; ++i) {
      out += prod[i] * base;
      base *= ch;
    }
    return out;
  }
  int pow(int a, long long n) const {
    int r = 1;
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }
  int neg(int a) const {
    int out = 0, base = 1;
    for (int i = 0; i < e; ++i) {
      out += (ch - a % ch) % ch * base;
      a /= ch;
      base *= ch;
    }
    return out;
  }
  int inv(int a) const {
    if (a == 0) fail(Errc::InvalidArgs, "division by zero in F_q");
    return pow(a, q - 2);
  }
};

SmallField make_field(long long q) {
  if (q < 2 || q > 64) fail(Errc::InvalidArgs, "constant field size must be in [2, 64]");
  auto fac = factorize(q);
  if (fac.size() != 1) fail(Errc::InvalidArgs, "constant field size must be a prime power");
  SmallField f;
  f.ch = static_cast<int>(fac[0].first);
  f.e = fac[0].second;
  f.q = q;
  if (f.e == 1) {
    f.modulus = {0, 1};
    return f;
  }
  // find an irreducible monic polynomial of degree e over F_ch by brute force
  long long count = ipow(f.ch, f.e);
  for (long long code = 0; code < count; ++code) {
    std::vector<int> cand(f.e + 1, 0);
    long long c = code;
    for (int i = 0; i < f.e; ++i) {
      cand[i] = static_cast<int>(c % f.ch);
      c /= f.ch;
    }
    cand[f.e] = 1;
    // irreducible iff no root-free division by lower-degree monics; degree <= 6
    // so trial division is fine
    auto divides = [&](const std::vector<int>& g) {
      std::vector<int> rem = cand;
      while (static_cast<int>(rem.size()) >= static_cast<int>(g.size())) {
        int lead = rem.back();
        if (lead) {
          int shift = static_cast<int>(rem.size() - g.size());
          for (std::size_t i = 0; i < g.size(); ++i)
            rem[shift + i] = ((rem[shift + i] - lead * g[i]) % f.ch + f.ch) % f.ch;
        }
        rem.pop_back();
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.empty()) return true;
        if (static_cast<int>(rem.size()) < static_cast<int>(g.size())) return false;
      }
      return false;
    };
    bool irreducible = true;
    for (int deg = 1; irreducible && 2 * deg <= f.e; ++deg) {
      long long sub = ipow(f.ch, deg);
      for (long long gc = 0; irreducible && gc < sub; ++gc) {
        std::vector<int> g(deg + 1, 0);
        long long t = gc;
        for (int i = 0; i < deg; ++i) {
          g[i] = static_cast<int>(t % f.ch);
          t /= f.ch;
        }
        g[deg] = 1;
        if (divides(g)) irreducible = false;
      }
    }
    if (irreducible) {
      f.modulus = cand;
      // store ascending with leading coefficient handled separately in mul
      f.modulus.pop_back();
      return f;
    }
  }
  fail(Errc::InvalidArgs, "no irreducible modulus found");
}

using FqPoly = std::vector<int>;  // ascending coefficients, elements of F_q

FqPoly poly_mod(const SmallField& f, FqPoly a, const FqPoly& m) {
  while (a.size() >= m.size()) {
    int lead = a.back();
    if (lead) {
      int shift = static_cast<int>(a.size() - m.size());
      int factor = f.mul(lead, f.inv(m.back()));
      for (std::size_t i = 0; i < m.size(); ++i)
        a[shift + i] = f.add(a[shift + i], f.neg(f.mul(factor, m[i])));
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) break;
  }
  return a;
}

FqPoly poly_mulmod(const SmallField& f, const FqPoly& a, const FqPoly& b, const FqPoly& m) {
  if (a.empty() || b.empty()) return {};
  FqPoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
  return poly_mod(f, std::move(prod), m);
}

FqPoly poly_powmod(const SmallField& f, FqPoly base, long long e, const FqPoly& m) {
  FqPoly r{1};
  while (e) {
    if (e & 1) r = poly_mulmod(f, r, base, m);
    base = poly_mulmod(f, base, base, m);
    e >>= 1;
  }
  return r;
}

FqPoly poly_gcd(const SmallField& f, FqPoly a, FqPoly b) {
  while (!b.empty()) {
    FqPoly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

long long FqtPrime::norm() const { return ipow(q, degree()); }

FqtPrime make_fqt_prime(long long q, const std::vector<int>& poly) {
  SmallField f = make_field(q);
  if (poly.size() < 2 || poly.back() != 1)
    fail(Errc::InvalidArgs, "polynomial must be monic of positive degree");
  for (int c : poly)
    if (c < 0 || c >= q) fail(Errc::InvalidArgs, "coefficients must be field elements");
  int dd = static_cast<int>(poly.size()) - 1;
  // Rabin: f irreducible iff x^{q^d} = x mod f and gcd(x^{q^{d/r}} - x, f) = 1
  // for each prime r | d. Frobenius powers computed by iterating x -> x^q.
  FqPoly x{0, 1};
  auto frob_power = [&](int k) {
    FqPoly cur = x;
    for (int i = 0; i < k; ++i) cur = poly_powmod(f, cur, q, poly);
    return cur;
  };
  auto minus_x_mod_f = [&](FqPoly v) {
    if (v.size() < 2) v.resize(2, 0);
    v[1] = f.add(v[1], f.neg(1));
    while (!v.empty() && v.back() == 0) v.pop_back();
    return poly_mod(f, std::move(v), poly);
  };
  if (!minus_x_mod_f(frob_power(dd)).empty())
    fail(Errc::NotIrreducible, "x^(q^deg) != x mod f");
  for (const auto& [r, e] : factorize(dd)) {
    FqPoly g = minus_x_mod_f(frob_power(dd / static_cast<int>(r)));
    FqPoly gc = poly_gcd(f, poly, g);
    if (gc.size() != 1) fail(Errc::NotIrreducible, "nontrivial factor detected");
  }
  FqtPrime out;
  out.q = q;
  out.poly = poly;
  return out;
}

int fqt_delta(const FqtPrime& v, int p) {
  auto fac = factorize(v.q);
  if (fac[0].first == p) fail(Errc::CharConflict, "p equals the characteristic");
  long long norm_mod = 1;
  for (int i = 0; i < v.degree(); ++i) norm_mod = norm_mod * (v.q % p) % p;
  return norm_mod == 1 ? 1 : 0;
}

}  // namespace ramlab
