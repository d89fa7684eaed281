#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(RAMLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("golden JSON reports") {
  struct Case {
    const char* args;
    const char* golden;
  } cases[] = {
      {"analyze --multiquad 21 --json", "analyze_21.json"},
      {"bounds --multiquad-type d=2,n=3 --json", "bounds_d2n3.json"},
      {"vst --p 2 --S inf --json", "vst_inf.json"},
      {"present --cyclic-type p=3,d=2,orders=9:3 --json", "present_c9.json"},
  };
  for (const auto& c : cases) {
    RunResult r = run_cli(c.args);
    CHECK(r.exit_code == 0);
    std::string want = read_file(std::string(RAMLAB_GOLDEN_DIR) + "/" + c.golden);
    CHECK(r.out == want);
    // round-trips through the schema
    auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed["schema_version"] == 1);
  }
}

TEST_CASE("exit codes") {
  CHECK(run_cli("verify 12").exit_code == 0);
  CHECK(run_cli("vst --p 2 --S inf").out == "0\n");
  // unknown check id is reported as an error
  CHECK(run_cli("verify not-a-check").exit_code != 0);
  // parse errors
  CHECK(run_cli("analyze --multiquad 12").exit_code != 0);
}

TEST_CASE("seed precedence: flag over environment") {
  RunResult env_only =
      run_cli("sample --multiquad-type d=2,n=2,arch=2 --samples 50 --json", "RAMLAB_SEED=5");
  RunResult flag =
      run_cli("sample --multiquad-type d=2,n=2,arch=2 --samples 50 --seed 9 --json",
              "RAMLAB_SEED=5");
  auto a = nlohmann::json::parse(env_only.out);
  auto b = nlohmann::json::parse(flag.out);
  CHECK(a["histogram"]["seed"] == 5);
  CHECK(b["histogram"]["seed"] == 9);
}

TEST_CASE("prime search cache round trip") {
  std::string dir = "/tmp/ramlab_cache_test";
  int rc = std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
  REQUIRE(rc == 0);
  RunResult first =
      run_cli("search-primes --p 2 --d 1 --n 2 --case II.2 --cache " + dir + " --json");
  RunResult second =
      run_cli("search-primes --p 2 --d 1 --n 2 --case II.2 --cache " + dir + " --json");
  auto a = nlohmann::json::parse(first.out);
  auto b = nlohmann::json::parse(second.out);
  CHECK(a["cached"] == false);
  CHECK(b["cached"] == true);
  CHECK(a["primes"] == b["primes"]);
}

TEST_CASE("config file is overridden by flags") {
  std::string path = "/tmp/ramlab_test_config.toml";
  std::ofstream(path) << "seed = 77\n";
  RunResult from_file =
      run_cli("sample --multiquad-type d=2,n=2,arch=2 --samples 20 --config " + path +
              " --json");
  auto a = nlohmann::json::parse(from_file.out);
  CHECK(a["histogram"]["seed"] == 77);
}
