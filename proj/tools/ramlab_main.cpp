#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "ramlab/acceptance.hpp"
#include "ramlab/bqf.hpp"
#include "ramlab/report.hpp"
#include "ramlab/util.hpp"

using namespace ramlab;

using ramlab::split;
using ramlab::trim;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::string> cache_flag;
  bool json = false;

  Config resolve() const {
    Config cfg = load_config(config_path);
    if (seed_flag) cfg.seed = *seed_flag;
    if (cache_flag) cfg.cache_dir = *cache_flag;
    return cfg;
  }
};

long long parse_ll(const std::string& s) {
  std::size_t pos = 0;
  long long v = std::stoll(s, &pos);
  if (pos != s.size()) fail(Errc::ParseError, "bad integer '" + s + "'");
  return v;
}

std::map<std::string, std::string> parse_kv(const std::string& spec) {
  std::map<std::string, std::string> out;
  for (const std::string& part : split(spec, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) fail(Errc::ParseError, "expected key=value in '" + part + "'");
    out[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
  }
  return out;
}

// "d=2,n=3[,arch=1|2][,inertia=01:10:11]" with inertia bitstrings over the d
// generators (leftmost bit = first generator).
RamificationType parse_multiquad_type(const std::string& spec) {
  auto kv = parse_kv(spec);
  if (!kv.count("d") || !kv.count("n")) fail(Errc::ParseError, "need d= and n=");
  int d = static_cast<int>(parse_ll(kv["d"]));
  int n = static_cast<int>(parse_ll(kv["n"]));
  ArchInertia arch = ArchInertia::Trivial;
  if (kv.count("arch")) arch = kv["arch"] == "2" ? ArchInertia::OrderTwo : ArchInertia::Trivial;
  std::vector<std::vector<int>> gens;
  if (kv.count("inertia")) {
    for (const std::string& bits : split(kv["inertia"], ':')) {
      if (static_cast<int>(bits.size()) != d) fail(Errc::ParseError, "inertia needs d bits");
      int mask = 0;
      for (int b = 0; b < d; ++b)
        if (bits[b] == '1') mask |= 1 << b;
      gens.push_back({mask});
    }
  } else {
    for (int i = 0; i < n; ++i) gens.push_back({i < d ? (1 << i) : (1 << d) - 1});
  }
  if (static_cast<int>(gens.size()) != n) fail(Errc::ParseError, "inertia list must have n entries");
  return make_ramification_type(elementary_abelian(2, d), gens, arch);
}

// "p=3,d=2,n=2[,arch=1|2][,orders=9:3]" with inertia subgroup orders.
RamificationType parse_cyclic_type(const std::string& spec) {
  auto kv = parse_kv(spec);
  if (!kv.count("p") || !kv.count("d")) fail(Errc::ParseError, "need p= and d=");
  int p = static_cast<int>(parse_ll(kv["p"]));
  int d = static_cast<int>(parse_ll(kv["d"]));
  GammaGroup g = cyclic_group(p, d);
  ArchInertia arch = ArchInertia::Trivial;
  if (kv.count("arch")) arch = kv["arch"] == "2" ? ArchInertia::OrderTwo : ArchInertia::Trivial;
  std::vector<std::vector<int>> gens;
  if (kv.count("orders")) {
    for (const std::string& o : split(kv["orders"], ':')) {
      long long ord = parse_ll(o);
      if (ord <= 1 || g.order() % ord) fail(Errc::ParseError, "inertia order must divide |Γ|");
      gens.push_back({static_cast<int>(g.order() / ord)});
    }
  } else {
    int n = kv.count("n") ? static_cast<int>(parse_ll(kv["n"])) : 2;
    gens.push_back({1});
    for (int i = 1; i < n; ++i) gens.push_back({g.order() / p});
  }
  return make_ramification_type(g, gens, arch);
}

RamificationType parse_type(const std::string& mq, const std::string& cy) {
  if (!mq.empty() && !cy.empty()) fail(Errc::ParseError, "give one type only");
  if (!mq.empty()) return parse_multiquad_type(mq);
  if (!cy.empty()) return parse_cyclic_type(cy);
  fail(Errc::ParseError, "need --multiquad-type or --cyclic-type");
}

std::vector<QPlace> parse_places(const std::string& s) {
  std::vector<QPlace> out;
  if (trim(s).empty()) return out;
  for (const std::string& part : split(s, ',')) {
    std::string t = trim(part);
    if (t == "inf" || t == "oo")
      out.push_back({0, true});
    else
      out.push_back({parse_ll(t), false});
  }
  return out;
}

void emit(const Json& j, bool as_json, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

BuildOptions build_opts(const Config& cfg) {
  BuildOptions b;
  b.multiquad_cap = cfg.multiquad_cap;
  b.cyclic_order_cap = cfg.cyclic_order_cap;
  b.cyclic_n_cap = cfg.cyclic_n_cap;
  return b;
}

// Conditional-rank interval over lifts whose Γ-images lie in the Frobenius
// class modulo inertia.
Json rank_interval(const Presentation& model, const std::vector<int>& frob,
                   const std::vector<int>& inertia, int arch_image, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  SearchTask task;
  const GammaGroup& g = model.type().gamma;
  for (std::size_t i = 0; i < frob.size(); ++i) {
    std::vector<int> allowed;
    Subgroup I = subgroup_generated(g, std::span<const int>(&inertia[i], 1));
    for (int e : I.elems) allowed.push_back(g.mul(frob[i], e));
    task.allowed_sigmas.push_back(allowed);
  }
  if (arch_image) task.arch_sigmas.push_back(arch_image);
  task.allow_sampling = true;
  task.seed = seed;
  MinMaxResult r = min_max_conditional_rank(model, task);
  Json j = minmax_to_json(r);
  j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return j;
}

int cmd_analyze(const GlobalOpts& g, const std::string& mq, const std::string& cy) {
  Config cfg = g.resolve();
  if (!mq.empty()) {
    std::vector<long long> gens;
    for (const std::string& s : split(mq, ',')) gens.push_back(parse_ll(trim(s)));
    MultiquadAnalysis a = analyze_multiquad(gens);
    Json j = report_envelope("analyze", Json{{"multiquad", gens}});
    j["analysis"] = multiquad_analysis_to_json(a);
    auto model = build_presentation(a.type, build_opts(cfg));
    j["bounds"] = bounds_to_json(bounds_report(a.type, model.get()));
    std::string text;
    if (a.type.gamma.d == 1) {
      long long D = a.class_basis[0];
      BqfClassGroup oracle(D);
      auto ord = bqf_ordinary_data(oracle);
      int t = static_cast<int>(a.ramified.size());
      Json o;
      o["discriminant"] = D;
      o["narrow_two_rank"] = oracle.two_rank();
      o["ordinary_two_rank"] = ord.two_rank;
      o["narrow_h"] = oracle.h();
      o["predicted_narrow"] = t - 1;
      bool all_1mod4 = true;
      for (long long q : a.ramified) all_1mod4 &= q % 4 == 1;
      o["predicted_ordinary"] = D < 0 ? t - 1 : (all_1mod4 ? t - 1 : t - 2);
      j["oracle"] = o;
      text = "quadratic field, discriminant " + std::to_string(D) + ": narrow 2-rank " +
             std::to_string(oracle.two_rank()) + ", ordinary 2-rank " +
             std::to_string(ord.two_rank) + "\n";
    } else {
      j["rank_interval"] = rank_interval(*model, a.frobenius, a.inertia, a.arch_image, cfg.seed);
      j["rank_interval"]["note"] =
          "group-theoretic domain over the Frobenius classes; lift freedom is enumerated";
      text = "multiquadratic field of degree 2^" + std::to_string(a.type.gamma.d) +
             ": conditional narrow rank in [" +
             std::to_string(j["rank_interval"]["min_rank"].get<int>()) + ", " +
             std::to_string(j["rank_interval"]["max_rank"].get<int>()) + "] (seed " +
             std::to_string(cfg.seed) + ")\n";
    }
    text += "bounds: kurosh " + std::to_string(j["bounds"]["kurosh"].get<long long>()) +
            ", upper " + std::to_string(j["bounds"]["upper"].get<long long>()) +
            ", lower " + std::to_string(j["bounds"]["lower_special"].get<long long>()) + "\n";
    emit(j, g.json, text);
    return 0;
  }
  if (!cy.empty()) {
    // primes=... runs to the end of the argument (its entries contain commas)
    auto ppos = cy.find("primes=");
    if (ppos == std::string::npos) fail(Errc::ParseError, "need primes=");
    std::string head = ppos ? cy.substr(0, ppos - 1) : "";
    auto kv = head.empty() ? std::map<std::string, std::string>{} : parse_kv(head);
    if (!kv.count("p")) fail(Errc::ParseError, "need p=");
    int p = static_cast<int>(parse_ll(kv["p"]));
    std::vector<std::pair<long long, int>> comps;
    for (const std::string& entry : split(cy.substr(ppos + 7), ',')) {
      auto bits = split(trim(entry), ':');
      if (bits.size() != 2) fail(Errc::ParseError, "primes entries are prime:exponent");
      comps.emplace_back(parse_ll(bits[0]), static_cast<int>(parse_ll(bits[1])));
    }
    CyclicAnalysis a = analyze_cyclic(p, comps);
    Json j = report_envelope("analyze", Json{{"cyclic", cy}});
    j["analysis"] = cyclic_analysis_to_json(a);
    auto model = build_presentation(a.type, build_opts(cfg));
    j["bounds"] = bounds_to_json(bounds_report(a.type, model.get()));
    std::vector<int> inertia_gens;
    for (int i = 0; i < a.type.n; ++i) inertia_gens.push_back(a.type.inertia[i]);
    j["rank_interval"] = rank_interval(*model, a.frobenius, inertia_gens, 0, cfg.seed);
    std::string text = "cyclic C_" + std::to_string(ipow(p, a.d)) +
                       " field: conditional rank in [" +
                       std::to_string(j["rank_interval"]["min_rank"].get<int>()) + ", " +
                       std::to_string(j["rank_interval"]["max_rank"].get<int>()) + "] (seed " +
                       std::to_string(cfg.seed) + ")\n";
    emit(j, g.json, text);
    return 0;
  }
  fail(Errc::ParseError, "analyze needs --multiquad or --cyclic");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"restricted-ramification presentations, class-rank bounds and oracles"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOpts g;
  app.add_option("--config", g.config_path, "TOML config file");
  std::uint64_t seed_val = 0;
  auto* seed_opt = app.add_option("--seed", seed_val, "seed for randomized commands");
  std::string cache_val;
  auto* cache_opt = app.add_option("--cache", cache_val, "cache directory");
  app.add_flag("--json", g.json, "emit the JSON report");

  std::string mq_field, cy_field;
  auto* analyze = app.add_subcommand("analyze", "bounds and rank data for a field");
  analyze->add_option("--multiquad", mq_field, "squarefree generators, e.g. 5,13");
  analyze->add_option("--cyclic", cy_field, "p=3,d=2,primes=7:2,13:1");

  std::string b_mq, b_cy;
  auto* boundsc = app.add_subcommand("bounds", "closed-form bounds for a ramification type");
  boundsc->add_option("--multiquad-type", b_mq, "d=2,n=3[,arch=..][,inertia=..]");
  boundsc->add_option("--cyclic-type", b_cy, "p=3,d=2[,n=..][,orders=9:3]");

  std::string p_mq, p_cy;
  bool p_dump = false;
  auto* present = app.add_subcommand("present", "build the finite model of F");
  present->add_option("--multiquad-type", p_mq, "d=2,n=3[,arch=..]");
  present->add_option("--cyclic-type", p_cy, "p=3,d=2[,orders=..]");
  present->add_flag("--dump", p_dump, "include basis and action matrices");

  std::string v_check = "all";
  int v_n = 0;
  auto* verify = app.add_subcommand("verify", "run acceptance checks");
  verify->add_option("check", v_check, "check id (1..12), name, or 'all'");
  verify->add_option("--n", v_n, "restrict size-parameterized checks to one n");

  int sp_p = 2, sp_d = 1, sp_n = 2;
  std::string sp_case = "II.2", sp_orders;
  long long sp_cap = 0;
  auto* search = app.add_subcommand("search-primes", "prime tuples for the cyclic lower bound");
  search->add_option("--p", sp_p);
  search->add_option("--d", sp_d);
  search->add_option("--n", sp_n);
  search->add_option("--case", sp_case, "OddP, II.1 or II.2");
  search->add_option("--orders", sp_orders, "inertia orders, e.g. 4:2:2");
  search->add_option("--cap", sp_cap, "search cap");

  int vst_p = 2;
  std::string vst_s, vst_t;
  auto* vst = app.add_subcommand("vst", "dimension of V_S^T over Q");
  vst->add_option("--p", vst_p);
  vst->add_option("--S", vst_s, "comma list of primes, 'inf' allowed");
  vst->add_option("--T", vst_t, "comma list of primes");

  long long o_disc = 0;
  auto* oracle = app.add_subcommand("oracle", "binary quadratic form class group");
  oracle->add_option("--D", o_disc, "fundamental discriminant")->required();

  std::string s_mq, s_cy;
  std::uint64_t s_samples = 1000;
  bool s_ordinary = false;
  auto* sample = app.add_subcommand("sample", "conditional-rank distribution");
  sample->add_option("--multiquad-type", s_mq);
  sample->add_option("--cyclic-type", s_cy);
  sample->add_option("--samples", s_samples);
  sample->add_flag("--ordinary", s_ordinary, "ordinary instead of narrow ranks");

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) g.seed_flag = seed_val;
  if (*cache_opt) g.cache_flag = cache_val;

  try {
    if (*analyze) return cmd_analyze(g, mq_field, cy_field);

    if (*boundsc) {
      Config cfg = g.resolve();
      RamificationType t = parse_type(b_mq, b_cy);
      std::unique_ptr<Presentation> model;
      try {
        model = build_presentation(t, build_opts(cfg));
      } catch (const Error&) {
      }
      BoundsReport r = bounds_report(t, model.get());
      Json j = report_envelope("bounds", Json{{"type", type_to_json(t)}});
      j["bounds"] = bounds_to_json(r);
      emit(j, g.json,
           "kurosh " + std::to_string(r.kurosh) + "\nupper " + std::to_string(r.upper) +
               "\nlower_genus " + std::to_string(r.lower_genus) + "\nlower_special " +
               std::to_string(r.lower_special) + "\n");
      return 0;
    }

    if (*present) {
      Config cfg = g.resolve();
      RamificationType t = parse_type(p_mq, p_cy);
      auto model = build_presentation(t, build_opts(cfg));
      Json j = report_envelope("present", Json{{"type", type_to_json(t)}});
      Json m = model_to_json(*model);
      if (!p_dump)
        for (const char* k : {"gamma_action", "generator_images", "n_basis_ambient",
                              "components", "block_offsets"})
          m.erase(k);
      j["presentation"] = m;
      std::string text = model->kind() + ": dim N = " + std::to_string(model->n_dim());
      try {
        auto dims = model->graded_dims();
        text += ", graded (";
        for (std::size_t i = 0; i < dims.size(); ++i)
          text += (i ? "," : "") + std::to_string(dims[i]);
        text += ")";
      } catch (const Error&) {
      }
      emit(j, g.json, text + "\n");
      return 0;
    }

    if (*verify) {
      AcceptanceOptions opts;
      Config cfg = g.resolve();
      if (cfg.seed) opts.seed = cfg.seed;
      opts.prime_search_cap = cfg.prime_search_cap;
      opts.restrict_n = v_n;
      std::vector<CriterionResult> results;
      if (v_check == "all") {
        results = run_all_acceptance(opts);
      } else {
        int id = -1;
        const auto& names = acceptance_check_names();
        for (std::size_t i = 0; i < names.size(); ++i)
          if (names[i] == v_check) id = static_cast<int>(i) + 1;
        if (id < 0) {
          try {
            id = static_cast<int>(parse_ll(v_check));
          } catch (const Error&) {
            fail(Errc::UnknownCheckId, "unknown check '" + v_check + "'");
          }
        }
        results.push_back(run_acceptance_criterion(id, opts));
      }
      int failed = 0;
      Json arr = Json::array();
      for (const auto& r : results) {
        Json e;
        e["id"] = r.id;
        e["name"] = r.name;
        e["pass"] = r.pass;
        e["detail"] = r.detail;
        e["seconds"] = r.seconds;
        arr.push_back(e);
        if (!g.json)
          std::printf("[%s] criterion %2d %-20s %s\n", r.pass ? "PASS" : "FAIL", r.id,
                      r.name.c_str(), r.detail.c_str());
        if (!r.pass && !failed) failed = r.id;
      }
      if (g.json) {
        Json j = report_envelope("verify", Json{{"check", v_check}});
        j["results"] = arr;
        std::cout << j.dump(2) << "\n";
      }
      return failed;
    }

    if (*search) {
      Config cfg = g.resolve();
      long long cap = sp_cap > 0 ? sp_cap : cfg.prime_search_cap;
      LbCyclicCase c = sp_case == "OddP"   ? LbCyclicCase::OddP
                       : sp_case == "II.1" ? LbCyclicCase::II1
                       : sp_case == "II.2" ? LbCyclicCase::II2
                                           : throw Error(Errc::ParseError, "bad case");
      std::vector<int> orders;
      if (!sp_orders.empty())
        for (const std::string& o : split(sp_orders, ':'))
          orders.push_back(static_cast<int>(parse_ll(o)));
      else
        for (int i = 0; i < sp_n; ++i)
          orders.push_back(static_cast<int>(i == 0 ? ipow(sp_p, sp_d) : sp_p));
      Json key{{"p", sp_p}, {"d", sp_d}, {"n", sp_n}, {"case", sp_case},
               {"orders", orders}, {"cap", cap}};
      std::string cache_path =
          cfg.cache_dir.empty() ? "" : cfg.cache_dir + "/prime_search.jsonl";
      std::vector<long long> primes;
      bool cached = false;
      if (!cache_path.empty()) {
        if (auto hit = cache_lookup(cache_path, key)) {
          primes = hit->get<std::vector<long long>>();
          cached = true;
        }
      }
      if (!cached) primes = find_primes_lb_cyclic(sp_p, sp_d, sp_n, orders, c, cap);
      if (!cache_path.empty() && !cached) cache_append(cache_path, key, Json(primes));
      Json j = report_envelope("search-primes", key);
      j["primes"] = primes;
      j["cached"] = cached;
      std::string text = "primes:";
      for (long long q : primes) text += " " + std::to_string(q);
      emit(j, g.json, text + "\n");
      return 0;
    }

    if (*vst) {
      int dim = vst_dimension(parse_places(vst_s), parse_places(vst_t), vst_p);
      Json j = report_envelope("vst", Json{{"p", vst_p}, {"S", vst_s}, {"T", vst_t}});
      j["dimension"] = dim;
      emit(j, g.json, std::to_string(dim) + "\n");
      return 0;
    }

    if (*oracle) {
      Config cfg = g.resolve();
      Json key{{"D", o_disc}};
      std::string cache_path = cfg.cache_dir.empty() ? "" : cfg.cache_dir + "/bqf.jsonl";
      Json value;
      bool cached = false;
      if (!cache_path.empty()) {
        if (auto hit = cache_lookup(cache_path, key)) {
          value = *hit;
          cached = true;
        }
      }
      if (!cached) {
        BqfClassGroup grp(o_disc);
        auto ord = bqf_ordinary_data(grp);
        value["h_narrow"] = grp.h();
        value["narrow_two_rank"] = grp.two_rank();
        value["invariant_factors"] = grp.invariant_factors();
        value["h_ordinary"] = ord.h;
        value["ordinary_two_rank"] = ord.two_rank;
        if (!cache_path.empty()) cache_append(cache_path, key, value);
      }
      Json j = report_envelope("oracle", key);
      j["class_group"] = value;
      j["cached"] = cached;
      std::string text = "h+ = " + value["h_narrow"].dump() + ", invariants " +
                         value["invariant_factors"].dump() + ", ordinary h = " +
                         value["h_ordinary"].dump() + "\n";
      emit(j, g.json, text);
      return 0;
    }

    if (*sample) {
      Config cfg = g.resolve();
      RamificationType t = parse_type(s_mq, s_cy);
      auto model = build_presentation(t, build_opts(cfg));
      RankHistogram h = sample_rank_distribution(*model, !s_ordinary, s_samples, cfg.seed);
      Json j = report_envelope("sample", Json{{"type", type_to_json(t)},
                                              {"narrow", !s_ordinary}});
      j["histogram"] = histogram_to_json(h);
      std::string text = "seed " + std::to_string(h.seed) + "\n";
      for (const auto& [rank, count] : h.counts)
        text += "rank " + std::to_string(rank) + ": " + std::to_string(count) + "\n";
      emit(j, g.json, text);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 125;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 126;
  }
  return 0;
}
