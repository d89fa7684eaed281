#include <cstdio>

#include "ramlab/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : ramlab::run_all_acceptance()) {
    std::printf("[%s] criterion %2d %-20s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.detail.c_str());
    if (!r.pass) failed = r.id;
  }
  return failed;
}
