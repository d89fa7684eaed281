#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ramlab/bounds.hpp"
#include "ramlab/presentation.hpp"

namespace ramlab {

// One relator-value choice per ramified prime plus the archimedean datum,
// recorded as N-coordinate vectors for reporting.
struct Witness {
  std::vector<FpVec> relator_values;
  std::optional<FpVec> arch_value;  // x_inf^2 class (imaginary) or x_inf (ordinary real)
  int rank = 0;
};

struct SearchTask {
  // Allowed Γ-images per prime; empty inner list means all of Γ.
  std::vector<std::vector<int>> allowed_sigmas;
  // Γ-images allowed for the archimedean lift of an imaginary type; empty
  // means every order-2 element.
  std::vector<int> arch_sigmas;
  bool narrow = true;
  // Enumerate the archimedean datum over its full domain (all order-2 images
  // for an imaginary type; all of N for the ordinary real quotient).
  bool enumerate_arch = true;
  std::uint64_t exhaustive_cap = 1 << 24;
  bool allow_sampling = false;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
};

struct MinMaxResult {
  int min_rank = 0;
  int max_rank = 0;
  Witness min_witness;
  Witness max_witness;
  std::uint64_t domain_size = 0;
  bool sampled = false;
  std::uint64_t seed = 0;
};

// Extrema of the conditional class rank over the relator-coset domain
// (assignments enter only through their relator values, which range over
// affine cosets; the search space collapses accordingly).
MinMaxResult min_max_conditional_rank(const Presentation& model, const SearchTask& task);

struct LbCyclicReport {
  bool ok = true;
  std::uint64_t checked = 0;
  std::string detail;
  // A witness that violating the Frobenius condition can exceed n-1.
  std::optional<int> off_condition_rank;
};
// Every assignment with each psi(y_i) generating the same line as psi(x_1)
// must give conditional rank n-1 with relator images generating the
// commutator subgroup of the codomain.
LbCyclicReport verify_lb_cyclic(const CyclicModel& model);

struct KpReport {
  bool ok = true;
  std::uint64_t checked = 0;
  std::string counterexample;
};
// Equivalence: rank = (n-2)2^{n-1}+1 iff every y_q lies in all admissible
// wreath kernels. Representative tuples plus seeded random N-parts; the
// plant_violation flag corrupts one kernel test to confirm detection.
KpReport verify_kp(int n, std::uint64_t random_samples, std::uint64_t seed,
                   bool plant_violation = false);

struct UbCyclicCountReport {
  bool ok = true;
  long long frattini_dim = 0;
  long long expected = 0;
  std::uint64_t kernel_order = 0;
};
// Builds the fiber product of the two displayed field quotients abstractly
// and checks the Frattini quotient dimension of ker(G -> Γ).
UbCyclicCountReport verify_ub_cyclic_module_count(const RamificationType& t);

struct RankHistogram {
  std::map<int, std::uint64_t> counts;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};
RankHistogram sample_rank_distribution(const Presentation& model, bool narrow,
                                       std::uint64_t samples, std::uint64_t seed);

}  // namespace ramlab
