#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ramlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240811;
  int restrict_n = 0;  // when set, limits size-parameterized checks to one n
  int quadratic_samples = 100;
  long long quadratic_disc_cap = 1'000'000;
  std::uint64_t kp_samples = 10000;
  long long prime_search_cap = 1'000'000;
  int vst_random_pairs = 50;
};

const std::vector<std::string>& acceptance_check_names();
CriterionResult run_acceptance_criterion(int id, const AcceptanceOptions& opts = {});
std::vector<CriterionResult> run_all_acceptance(const AcceptanceOptions& opts = {});

}  // namespace ramlab
