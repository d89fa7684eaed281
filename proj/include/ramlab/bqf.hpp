#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ramlab/error.hpp"

namespace ramlab {

using Form = std::array<long long, 3>;  // (a, b, c), discriminant b^2 - 4ac

// Form class group of a fundamental discriminant computed from reduced binary
// quadratic forms: the class group for D < 0, the narrow class group for
// D > 0 (classes of indefinite forms under proper equivalence = reduction
// cycles).
class BqfClassGroup {
 public:
  explicit BqfClassGroup(long long D);  // NotFundamental unless fundamental, |D| <= 1e7

  long long discriminant() const { return d_; }
  int h() const { return static_cast<int>(reps_.size()); }
  int principal() const { return principal_; }
  const std::vector<Form>& class_reps() const { return reps_; }

  int class_of(Form f) const;  // class index of any form of discriminant D
  int compose(int i, int j) const;
  int inverse(int i) const;
  int power(int i, long long e) const;

  int two_rank() const;
  // Invariant factors d_1 | d_2 | ... | d_k of the abelian group.
  std::vector<long long> invariant_factors() const;

  // Index of the class of the negative principal form (D > 0); equals the
  // principal class exactly when the fundamental unit has norm -1.
  int negative_principal() const;

  Form reduce(Form f) const;

 private:
  long long d_ = 0;
  std::vector<Form> reps_;
  std::unordered_map<std::uint64_t, int> class_index_;  // reduced form -> class
  int principal_ = 0;
  long long sqrt_d_ = 0;  // floor(sqrt(D)) for D > 0

  Form rho(const Form& f) const;
  bool is_reduced(const Form& f) const;
};

struct OrdinaryClassData {
  long long h = 0;
  int two_rank = 0;
  bool narrow_equals_ordinary = true;
};
// Ordinary class group data derived from the narrow group (quotient by the
// negative principal class when the fundamental unit has norm +1).
OrdinaryClassData bqf_ordinary_data(const BqfClassGroup& g);

}  // namespace ramlab
