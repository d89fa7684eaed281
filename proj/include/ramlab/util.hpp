#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ramlab {

std::int64_t binom(int n, int k);
std::int64_t ipow(std::int64_t base, int exp);

std::vector<std::string> split(const std::string& s, char sep);
std::string trim(const std::string& s);

// Runs fn over [0,count) split into contiguous blocks, one per worker.
// Results must be merged by the caller in block order so output stays
// independent of thread scheduling.
void parallel_blocks(std::size_t count,
                     const std::function<void(std::size_t block, std::size_t begin,
                                              std::size_t end)>& fn,
                     std::size_t* num_blocks_out = nullptr);

}  // namespace ramlab
