#include "ramlab/report.hpp"

#include <cstdlib>
#include <fstream>

#include "ramlab/util.hpp"

namespace ramlab {

std::optional<std::string> toml_lookup(const std::string& text, const std::string& key) {
  std::string section;
  for (const std::string& raw : split(text, '\n')) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = trim(line.substr(0, eq));
    if (!section.empty()) k = section + "." + k;
    if (k != key) continue;
    std::string v = trim(line.substr(eq + 1));
    if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                          (v.front() == '\'' && v.back() == '\'')))
      v = v.substr(1, v.size() - 2);
    return v;
  }
  return std::nullopt;
}

Config load_config(const std::string& toml_path) {
  Config cfg;
  std::string text;
  if (!toml_path.empty()) {
    std::ifstream in(toml_path);
    if (!in) fail(Errc::ParseError, "cannot open config file " + toml_path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  auto from_toml = [&](const std::string& key) -> std::optional<std::string> {
    if (text.empty()) return std::nullopt;
    return toml_lookup(text, key);
  };
  if (auto v = from_toml("seed")) cfg.seed = std::stoull(*v);
  if (auto v = from_toml("cache")) cfg.cache_dir = *v;
  if (auto v = from_toml("prime_search_cap")) cfg.prime_search_cap = std::stoll(*v);
  if (auto v = from_toml("caps.multiquad")) cfg.multiquad_cap = std::stoi(*v);
  if (auto v = from_toml("caps.cyclic_order")) cfg.cyclic_order_cap = std::stoi(*v);
  if (auto v = from_toml("caps.cyclic_n")) cfg.cyclic_n_cap = std::stoi(*v);
  // environment overrides the file
  if (const char* s = std::getenv("RAMLAB_SEED")) cfg.seed = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("RAMLAB_CACHE")) cfg.cache_dir = s;
  return cfg;
}

Json report_envelope(const std::string& command, const Json& inputs) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  j["inputs"] = inputs;
  return j;
}

Json bounds_to_json(const BoundsReport& r) {
  Json j;
  j["kurosh"] = r.kurosh;
  j["upper"] = r.upper;
  j["lower_genus"] = r.lower_genus;
  j["lower_special"] = r.lower_special;
  j["nu"] = r.nu;
  j["notes"] = r.notes;
  return j;
}

Json type_to_json(const RamificationType& t) {
  Json j;
  j["gamma"] = (t.gamma.kind == GammaGroup::Kind::Cyclic ? "C" : "E") +
               std::to_string(t.gamma.p) + "^" + std::to_string(t.gamma.d);
  j["p"] = t.gamma.p;
  j["n"] = t.n;
  Json inertia = Json::array();
  for (int i = 0; i < t.n; ++i) {
    Json e;
    e["generator"] = t.inertia[i];
    e["order"] = t.inertia_order(i);
    inertia.push_back(e);
  }
  j["inertia"] = inertia;
  j["arch"] = t.arch == ArchInertia::OrderTwo ? "order-two" : "trivial";
  return j;
}

namespace {

Json matrix_to_json(const FpMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
    rows.push_back(row);
  }
  return rows;
}

Json vec_to_json(const FpVec& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

}  // namespace

Json model_to_json(const Presentation& model) {
  Json j;
  j["kind"] = model.kind();
  j["type"] = type_to_json(model.type());
  j["n_dim"] = model.n_dim();
  j["f_order_log_p"] = model.type().gamma.d + model.n_dim();
  Json gens = Json::array();
  for (int i = 0; i < model.n(); ++i) {
    Json g;
    g["index"] = i;
    g["gamma_image"] = model.gamma_image(model.generator(i));
    g["relator"] = "x^Nm y x^-1 y^-1";
    gens.push_back(g);
  }
  j["generators"] = gens;
  Json actions = Json::array();
  for (const auto& a : model.relation_module().mod.gen_action)
    actions.push_back(matrix_to_json(a));
  j["gamma_action"] = actions;
  if (const auto* sq = dynamic_cast<const SquareMultiquadModel*>(&model)) {
    Json comps = Json::array();
    for (int c = 0; c < sq->num_components(); ++c) {
      const auto& info = sq->component(c);
      comps.push_back(Json{{"U", info.u_mask}, {"p", info.p_index}});
    }
    j["components"] = comps;
    Json gens_full = Json::array();
    for (int i = 0; i < model.n(); ++i) {
      const auto& e = std::get<MqElement>(model.generator(i));
      Json parts = Json::array();
      for (const auto& comp : e.c)
        parts.push_back(Json{{"base", comp.base}, {"top", comp.top}});
      gens_full.push_back(parts);
    }
    j["generator_images"] = gens_full;
    Json basis = Json::array();
    for (int r = 0; r < sq->n_ambient_basis().dim(); ++r)
      basis.push_back(vec_to_json(sq->n_ambient_basis().basis_row(r)));
    j["n_basis_ambient"] = basis;
  } else if (const auto* cy = dynamic_cast<const CyclicModel*>(&model)) {
    j["block_offsets"] = cy->block_offset();
    Json gens_full = Json::array();
    for (int i = 0; i < model.n(); ++i) {
      const auto& e = std::get<SdElement>(model.generator(i));
      gens_full.push_back(Json{{"module_part", vec_to_json(e.m)}, {"gamma_part", e.g}});
    }
    j["generator_images"] = gens_full;
  }
  try {
    j["graded_dims"] = model.graded_dims();
  } catch (const Error&) {
    j["graded_dims"] = nullptr;
  }
  return j;
}

Json witness_to_json(const Witness& w) {
  Json j;
  Json rel = Json::array();
  for (const auto& v : w.relator_values) rel.push_back(vec_to_json(v));
  j["relator_values"] = rel;
  j["arch_value"] = w.arch_value ? vec_to_json(*w.arch_value) : Json(nullptr);
  j["rank"] = w.rank;
  return j;
}

Json minmax_to_json(const MinMaxResult& r) {
  Json j;
  j["min_rank"] = r.min_rank;
  j["max_rank"] = r.max_rank;
  j["domain_size"] = r.domain_size;
  j["sampled"] = r.sampled;
  if (r.sampled) j["seed"] = r.seed;
  j["min_witness"] = witness_to_json(r.min_witness);
  j["max_witness"] = witness_to_json(r.max_witness);
  return j;
}

Json histogram_to_json(const RankHistogram& h) {
  Json j;
  j["samples"] = h.samples;
  j["seed"] = h.seed;
  Json counts;
  for (const auto& [rank, count] : h.counts) counts[std::to_string(rank)] = count;
  j["counts"] = counts;
  return j;
}

Json multiquad_analysis_to_json(const MultiquadAnalysis& a) {
  Json j;
  j["class_basis"] = a.class_basis;
  j["ramified"] = a.ramified;
  j["real"] = a.real;
  j["type"] = type_to_json(a.type);
  Json frob = Json::array();
  for (std::size_t i = 0; i < a.ramified.size(); ++i) {
    Json f;
    f["prime"] = a.ramified[i];
    f["inertia"] = a.inertia[i];
    f["frobenius_mod_inertia"] = a.frobenius[i];
    frob.push_back(f);
  }
  j["frobenius"] = frob;
  return j;
}

Json cyclic_analysis_to_json(const CyclicAnalysis& a) {
  Json j;
  j["p"] = a.p;
  j["d"] = a.d;
  j["real"] = a.real;
  j["type"] = type_to_json(a.type);
  Json comps = Json::array();
  for (std::size_t i = 0; i < a.primes.size(); ++i) {
    Json c;
    c["prime"] = a.primes[i];
    c["inertia_order"] = ipow(a.p, a.exponents[i]);
    c["frobenius_mod_inertia"] = a.frobenius[i];
    comps.push_back(c);
  }
  j["components"] = comps;
  return j;
}

std::optional<Json> cache_lookup(const std::string& path, const Json& key) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  std::optional<Json> found;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    Json entry = Json::parse(line, nullptr, false);
    if (entry.is_discarded()) continue;
    if (entry.contains("key") && entry["key"] == key) found = entry["value"];
  }
  return found;
}

void cache_append(const std::string& path, const Json& key, const Json& value) {
  std::ofstream out(path, std::ios::app);
  if (!out) fail(Errc::ParseError, "cannot open cache file " + path);
  Json entry;
  entry["key"] = key;
  entry["value"] = value;
  out << entry.dump() << "\n";
}

}  // namespace ramlab
