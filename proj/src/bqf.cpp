#include "ramlab/bqf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ramlab/arith.hpp"
#include "ramlab/util.hpp"

namespace ramlab {

namespace {

using i128 = __int128;

long long isqrt_ll(long long n) {
  long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t form_key(const Form& f) {
  // |a|, |b| < sqrt|D| and |c| <= |D|/2 for reduced forms with |D| <= 1e7
  auto enc = [](long long x) { return static_cast<std::uint64_t>(x + (1 << 23)) & 0xffffff; };
  return enc(f[0]) ^ enc(f[1]) * 0x9e3779b97f4a7c15ull ^ enc(f[2]) * 0xc2b2ae3d27d4eb4full;
}

long long mod_positive(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

// modular inverse for |m| > 1 with gcd(a, m) = 1
long long inv_mod(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, a1 = mod_positive(a, m);
  while (a1) {
    long long q = g / a1;
    g -= q * a1;
    std::swap(g, a1);
    x -= q * x1;
    std::swap(x, x1);
  }
  return mod_positive(x, m);
}

}  // namespace

bool BqfClassGroup::is_reduced(const Form& f) const {
  auto [a, b, c] = f;
  if (d_ < 0) {
    if (a <= 0) return false;
    if (!(-a < b && b <= a && a <= c)) return false;
    if (b < 0 && (a == c || b == -a)) return false;
    return true;
  }
  // indefinite: |sqrt(D) - 2|a|| < b < sqrt(D), exact integer tests
  // (D is never a square for a fundamental discriminant)
  if (b <= 0 || b > sqrt_d_) return false;
  long long ta = 2 * (a < 0 ? -a : a);
  // sqrt(D) < 2|a| + b
  if (!(i128(ta + b) * (ta + b) > d_)) return false;
  // 2|a| < sqrt(D) + b
  if (ta > b && !(i128(ta - b) * (ta - b) < d_)) return false;
  return true;
}

Form BqfClassGroup::rho(const Form& f) const {
  auto [a, b, c] = f;
  // (a, b, c) -> (c, b', c') with b' = -b mod 2c in the reduction window
  long long abs_c = c < 0 ? -c : c;
  long long b2;
  if (d_ < 0 || abs_c > sqrt_d_) {
    // nearest residue of -b in (-|c|, |c|]
    b2 = mod_positive(-b, 2 * abs_c);
    if (b2 > abs_c) b2 -= 2 * abs_c;
  } else {
    // residue in (sqrt D - 2|c|, sqrt D]
    b2 = mod_positive(-b, 2 * abs_c);
    while (b2 > sqrt_d_) b2 -= 2 * abs_c;
    while (b2 + 2 * abs_c <= sqrt_d_) b2 += 2 * abs_c;
  }
  long long c2 = static_cast<long long>((i128(b2) * b2 - d_) / (4 * c));
  return Form{c, b2, c2};
}

Form BqfClassGroup::reduce(Form f) const {
  if (i128(f[1]) * f[1] - i128(4) * f[0] * f[2] != d_)
    fail(Errc::InvalidArgs, "form has the wrong discriminant");
  if (d_ < 0) {
    auto [a, b, c] = f;
    if (a < 0) fail(Errc::InvalidArgs, "negative definite form");
    while (true) {
      // normalize b into (-a, a]
      long long b2 = mod_positive(b, 2 * a);
      if (b2 > a) b2 -= 2 * a;
      long long c2 = static_cast<long long>((i128(b2) * b2 - d_) / (4 * a));
      b = b2;
      c = c2;
      if (a > c) {
        long long t = a;
        a = c;
        c = t;
        b = -b;
        continue;
      }
      break;
    }
    if (b < 0 && (b == -a || a == c)) b = -b;
    return Form{a, b, c};
  }
  int guard = 0;
  while (!is_reduced(f)) {
    f = rho(f);
    if (++guard > 100000) fail(Errc::InvalidArgs, "reduction did not terminate");
  }
  return f;
}

BqfClassGroup::BqfClassGroup(long long D) : d_(D) {
  if (!is_fundamental_discriminant(D)) fail(Errc::NotFundamental, "not a fundamental discriminant");
  if (D > 10'000'000 || D < -10'000'000) fail(Errc::InvalidArgs, "|D| cap is 1e7");
  std::vector<Form> reduced;
  if (D < 0) {
    for (long long a = 1; 3 * a * a <= -D; ++a) {
      for (long long b = -a + 1; b <= a; ++b) {
        if (mod_positive(b - D, 2) != 0) continue;
        long long num = b * b - D;
        if (num % (4 * a)) continue;
        long long c = num / (4 * a);
        if (c < a) continue;
        Form f{a, b, c};
        if (is_reduced(f)) reduced.push_back(f);
      }
    }
    for (int i = 0; i < static_cast<int>(reduced.size()); ++i) {
      class_index_[form_key(reduced[i])] = i;
      reps_.push_back(reduced[i]);
    }
  } else {
    sqrt_d_ = isqrt_ll(D);
    for (long long b = 1; b <= sqrt_d_; ++b) {
      if (mod_positive(b - D, 2) != 0) continue;
      long long num = (D - b * b) / 4;  // = -a*c > 0
      for (long long a1 = 1; a1 * a1 <= num; ++a1) {
        if (num % a1) continue;
        for (long long a : {a1, num / a1}) {
          long long c = -(num / a);
          for (int sign = 0; sign < 2; ++sign) {
            Form f{sign ? -a : a, b, sign ? -c : c};
            if (is_reduced(f)) reduced.push_back(f);
          }
          if (a1 * a1 == num) break;
        }
      }
    }
    std::sort(reduced.begin(), reduced.end());
    reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
    // partition into rho-cycles; canonical representative = cycle minimum
    for (const Form& f : reduced) {
      if (class_index_.count(form_key(f))) continue;
      std::vector<Form> cycle{f};
      Form g = rho(f);
      int guard = 0;
      while (!(g == f)) {
        cycle.push_back(g);
        g = rho(g);
        if (++guard > 5'000'000) fail(Errc::InvalidArgs, "cycle did not close");
      }
      Form rep = *std::min_element(cycle.begin(), cycle.end());
      int idx = static_cast<int>(reps_.size());
      reps_.push_back(rep);
      for (const Form& x : cycle) class_index_[form_key(x)] = idx;
    }
  }
  long long b0 = mod_positive(D, 2);
  Form pr{1, b0, (b0 * b0 - D) / 4};
  principal_ = class_of(pr);
}

int BqfClassGroup::class_of(Form f) const {
  Form r = reduce(f);
  auto it = class_index_.find(form_key(r));
  if (it == class_index_.end()) fail(Errc::InvalidArgs, "form not recognized");
  return it->second;
}

int BqfClassGroup::compose(int i, int j) const {
  Form f1 = reps_[i], f2 = reps_[j];
  // Dirichlet composition after replacing f2 by a properly equivalent form
  // whose leading coefficient is coprime to a1.
  auto represent_coprime = [&](const Form& f, long long coprime_to) -> Form {
    for (long long bound = 1; bound <= 64; bound *= 2) {
      for (long long x = -bound; x <= bound; ++x) {
        for (long long y = -bound; y <= bound; ++y) {
          if (std::gcd(x, y) != 1) continue;
          i128 val = i128(f[0]) * x * x + i128(f[1]) * x * y + i128(f[2]) * y * y;
          if (val == 0) continue;
          long long v = static_cast<long long>(val);
          if (std::gcd(v < 0 ? -v : v, coprime_to) != 1) continue;
          // extend (x, y) to a determinant-one matrix [[x, z], [y, w]]
          long long w = 0, z = 0;
          for (long long ww = -(bound + 1); ww <= bound + 1 && !(x * w - y * z == 1);
               ++ww)
            for (long long zz = -(bound + 1); zz <= bound + 1; ++zz)
              if (x * ww - y * zz == 1) {
                w = ww;
                z = zz;
                break;
              }
          if (x * w - y * z != 1) continue;
          long long a2 = v;
          long long b2 = static_cast<long long>(
              2 * (i128(f[0]) * x * z + i128(f[2]) * y * w) +
              i128(f[1]) * (i128(x) * w + i128(y) * z));
          long long c2 = static_cast<long long>(i128(f[0]) * z * z + i128(f[1]) * z * w +
                                                i128(f[2]) * w * w);
          return Form{a2, b2, c2};
        }
      }
    }
    fail(Errc::InvalidArgs, "no coprime representative found");
  };
  long long a1_abs = f1[0] < 0 ? -f1[0] : f1[0];
  Form g2 = represent_coprime(f2, a1_abs);
  long long a1 = f1[0], b1 = f1[1];
  long long a2 = g2[0], b2 = g2[1];
  long long a2_abs = a2 < 0 ? -a2 : a2;
  long long t = 0;
  if (a2_abs > 1) {
    long long rhs = mod_positive(static_cast<long long>(i128(b2 - b1) / 2 % a2_abs), a2_abs);
    t = mod_positive(rhs * inv_mod(a1, a2_abs) % a2_abs, a2_abs);
  }
  i128 B = i128(b1) + 2 * i128(a1) * t;
  i128 a3 = i128(a1) * a2;
  i128 b_norm = B % (2 * a3);
  Form out{static_cast<long long>(a3), static_cast<long long>(b_norm),
           static_cast<long long>((b_norm * b_norm - d_) / (4 * a3))};
  return class_of(out);
}

int BqfClassGroup::inverse(int i) const {
  Form f = reps_[i];
  return class_of(Form{f[0], -f[1], f[2]});
}

int BqfClassGroup::power(int i, long long e) const {
  if (e < 0) return power(inverse(i), -e);
  int result = principal_;
  int base = i;
  while (e) {
    if (e & 1) result = compose(result, base);
    if (e >>= 1) base = compose(base, base);
  }
  return result;
}

int BqfClassGroup::two_rank() const {
  int count = 0;
  for (int i = 0; i < h(); ++i)
    if (compose(i, i) == principal_) ++count;
  int r = 0;
  while ((1 << r) < count) ++r;
  if ((1 << r) != count) fail(Errc::InvalidArgs, "2-torsion count is not a power of 2");
  return r;
}

std::vector<long long> BqfClassGroup::invariant_factors() const {
  long long order = h();
  if (order == 1) return {};
  // For each prime l | h, count the elements killed by l^k to read off the
  // partition of the l-part, then merge into invariant factors.
  std::map<long long, std::vector<int>> parts;  // l -> cyclic-factor exponents
  for (const auto& [l, e] : factorize(order)) {
    std::vector<int> lambda{0};  // lambda_k = log_l #{x : x^{l^k} = 1}
    long long lk = 1;
    while (true) {
      lk *= l;
      int count = 0;
      for (int i = 0; i < h(); ++i)
        if (power(i, lk) == principal_) ++count;
      int lg = 0;
      long long c = count;
      while (c > 1) {
        if (c % l) fail(Errc::InvalidArgs, "torsion count is not an l-power");
        c /= l;
        ++lg;
      }
      if (lg == lambda.back()) break;  // stabilized
      lambda.push_back(lg);
    }
    std::vector<int> exps;
    for (std::size_t k = 1; k < lambda.size(); ++k) {
      int cnt = lambda[k] - lambda[k - 1];  // # factors of order >= l^k
      for (int j = static_cast<int>(exps.size()); j < cnt; ++j) exps.push_back(0);
      for (int j = 0; j < cnt; ++j) exps[j] += 1;
    }
    std::sort(exps.begin(), exps.end());
    parts[l] = exps;
  }
  std::size_t factors = 0;
  for (auto& [l, exps] : parts) factors = std::max(factors, exps.size());
  std::vector<long long> inv(factors, 1);
  for (auto& [l, exps] : parts) {
    for (std::size_t j = 0; j < exps.size(); ++j) {
      std::size_t pos = factors - exps.size() + j;
      inv[pos] *= ipow(l, exps[j]);
    }
  }
  return inv;
}

int BqfClassGroup::negative_principal() const {
  if (d_ < 0) fail(Errc::InvalidArgs, "negative principal class needs D > 0");
  long long b0 = mod_positive(d_, 2);
  return class_of(Form{-1, b0, (d_ - b0 * b0) / 4});
}

OrdinaryClassData bqf_ordinary_data(const BqfClassGroup& g) {
  OrdinaryClassData out;
  if (g.discriminant() < 0) {
    out.h = g.h();
    out.two_rank = g.two_rank();
    out.narrow_equals_ordinary = true;
    return out;
  }
  int n = g.negative_principal();
  if (n == g.principal()) {
    out.h = g.h();
    out.two_rank = g.two_rank();
    out.narrow_equals_ordinary = true;
    return out;
  }
  out.narrow_equals_ordinary = false;
  out.h = g.h() / 2;
  int count = 0;
  for (int i = 0; i < g.h(); ++i) {
    int sq = g.compose(i, i);
    if (sq == g.principal() || sq == n) ++count;
  }
  count /= 2;  // classes of the quotient group
  int r = 0;
  while ((1 << r) < count) ++r;
  if ((1 << r) != count) fail(Errc::InvalidArgs, "quotient 2-torsion count is not a power of 2");
  out.two_rank = r;
  return out;
}

}  // namespace ramlab
