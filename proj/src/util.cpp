#include "ramlab/util.hpp"

#include <thread>

namespace ramlab {

std::int64_t binom(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

void parallel_blocks(std::size_t count,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                     std::size_t* num_blocks_out) {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  std::size_t blocks = std::min<std::size_t>(hw, count ? count : 1);
  if (num_blocks_out) *num_blocks_out = blocks;
  if (blocks <= 1) {
    fn(0, 0, count);
    return;
  }
  std::vector<std::thread> threads;
  std::size_t per = (count + blocks - 1) / blocks;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t begin = b * per;
    std::size_t end = std::min(count, begin + per);
    if (begin >= end) break;
    threads.emplace_back(fn, b, begin, end);
  }
  for (auto& t : threads) t.join();
}

}  // namespace ramlab
