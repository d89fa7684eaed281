#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "ramlab/arith.hpp"
#include "ramlab/bounds.hpp"
#include "ramlab/explorer.hpp"

namespace ramlab {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

// Configuration resolved with precedence flags > environment > TOML file >
// defaults. The TOML subset read here is flat `key = value` lines with
// optional [sections] (section names are joined into dotted keys).
struct Config {
  std::uint64_t seed = 0;
  std::string cache_dir;  // empty disables the JSON-lines caches
  long long prime_search_cap = 1'000'000;
  int multiquad_cap = 4;
  int cyclic_order_cap = 27;
  int cyclic_n_cap = 4;
};
Config load_config(const std::string& toml_path = "");
std::optional<std::string> toml_lookup(const std::string& text, const std::string& key);

Json report_envelope(const std::string& command, const Json& inputs);
Json bounds_to_json(const BoundsReport& r);
Json type_to_json(const RamificationType& t);
Json model_to_json(const Presentation& model);  // documented model dump, stable key order
Json witness_to_json(const Witness& w);
Json minmax_to_json(const MinMaxResult& r);
Json histogram_to_json(const RankHistogram& h);
Json multiquad_analysis_to_json(const MultiquadAnalysis& a);
Json cyclic_analysis_to_json(const CyclicAnalysis& a);

// Append-only JSON-lines cache: looks up a line whose "key" object equals
// `key`; append stores {"key": ..., "value": ...}.
std::optional<Json> cache_lookup(const std::string& path, const Json& key);
void cache_append(const std::string& path, const Json& key, const Json& value);

}  // namespace ramlab
