#include "mjp/run_config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>

#include "mjp/errors.hpp"

namespace mjp {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

SamplerConfig RunConfig::sampler_config() const {
  SamplerConfig out;
  const std::string& v = sampler.variant;
  if (v == "naive")
    out.variant = SamplerVariant::Naive;
  else if (v == "stationary")
    out.variant = SamplerVariant::StationaryReduced;
  else if (v == "nonstationary")
    out.variant = SamplerVariant::NonstationaryReduced;
  else if (v == "vanilla")
    out.variant = SamplerVariant::VanillaUniformization;
  else if (v == "mh_baseline")
    out.variant = SamplerVariant::VanillaUniformization;  // unused branch
  else
    throw ConfigError("unknown sampler variant '" + v + "'");

  out.omega_factor = sampler.omega_factor;
  if (sampler.psi_factor > 0.0) {
    out.psi = PsiOperator::exit_factor(sampler.psi_factor);
  } else if (sampler.psi == "exit") {
    out.psi = PsiOperator::exit_factor(1.0);
  } else if (sampler.psi == "half_exit") {
    out.psi = PsiOperator::exit_factor(0.5);
  } else if (sampler.psi == "vanilla") {
    out.psi = PsiOperator::vanilla();
  } else {
    throw ConfigError("unknown psi preset '" + sampler.psi + "'");
  }
  out.normal_envelope = sampler.normal_envelope;
  out.gamma_envelope = sampler.gamma_envelope;
  out.split = sampler.split;
  out.filter_max_bytes =
      static_cast<std::size_t>(sampler.filter_max_mb * 1024.0 * 1024.0);
  return out;
}

RunConfig parse_run_config_json(const std::string& text) {
  json root = json::parse(text);
  if (root.contains("config")) {
    // Manifest round-trip: re-run from the embedded config.
    check_keys(root, "manifest",
               {"config", "manifest_version", "elapsed_seconds", "library"});
    root = root.at("config");
  }
  check_keys(root, "config", {"name", "model", "data", "sampler", "run"});

  RunConfig cfg;
  get_if(root, "name", cfg.name);

  if (root.contains("model")) {
    const json& m = root.at("model");
    check_keys(m, "model",
               {"kind", "capacity", "horizon", "seasonal", "infer_birth",
                "birth", "death", "infection", "removal", "prey_birth",
                "predation", "predator_birth", "predator_death",
                "prior_shape", "prior_rate", "removed_fraction"});
    get_if(m, "kind", cfg.model.kind);
    get_if(m, "capacity", cfg.model.capacity);
    get_if(m, "horizon", cfg.model.horizon);
    get_if(m, "seasonal", cfg.model.seasonal);
    get_if(m, "infer_birth", cfg.model.infer_birth);
    get_if(m, "birth", cfg.model.birth);
    get_if(m, "death", cfg.model.death);
    get_if(m, "infection", cfg.model.infection);
    get_if(m, "removal", cfg.model.removal);
    get_if(m, "prey_birth", cfg.model.prey_birth);
    get_if(m, "predation", cfg.model.predation);
    get_if(m, "predator_birth", cfg.model.predator_birth);
    get_if(m, "predator_death", cfg.model.predator_death);
    get_if(m, "prior_shape", cfg.model.prior_shape);
    get_if(m, "prior_rate", cfg.model.prior_rate);
    get_if(m, "removed_fraction", cfg.model.removed_fraction);
    if (cfg.model.kind != "birth_death" && cfg.model.kind != "sir" &&
        cfg.model.kind != "lotka_volterra")
      throw ConfigError("unknown model kind '" + cfg.model.kind + "'");
  }

  if (root.contains("data")) {
    const json& d = root.at("data");
    check_keys(d, "data", {"kind", "count", "sigma", "path"});
    get_if(d, "kind", cfg.data.kind);
    get_if(d, "count", cfg.data.count);
    get_if(d, "sigma", cfg.data.sigma);
    get_if(d, "path", cfg.data.path);
    if (cfg.data.kind != "noisy_state" && cfg.data.kind != "exact_state" &&
        cfg.data.kind != "removal_times")
      throw ConfigError("unknown data kind '" + cfg.data.kind + "'");
  }

  if (root.contains("sampler")) {
    const json& s = root.at("sampler");
    check_keys(s, "sampler",
               {"variant", "omega_factor", "psi", "psi_factor", "envelope",
                "split", "filter_max_mb"});
    get_if(s, "variant", cfg.sampler.variant);
    get_if(s, "omega_factor", cfg.sampler.omega_factor);
    get_if(s, "psi", cfg.sampler.psi);
    get_if(s, "psi_factor", cfg.sampler.psi_factor);
    get_if(s, "filter_max_mb", cfg.sampler.filter_max_mb);
    if (s.contains("envelope")) {
      const json& e = s.at("envelope");
      check_keys(e, "envelope",
                 {"kind", "mu", "sigma", "kappa", "alpha", "lag"});
      const std::string kind = e.at("kind").get<std::string>();
      if (kind == "normal") {
        NormalEnvelopeParams p;
        get_if(e, "mu", p.mu);
        get_if(e, "sigma", p.sigma);
        get_if(e, "kappa", p.kappa);
        cfg.sampler.normal_envelope = p;
      } else if (kind == "gamma") {
        GammaEnvelopeParams p;
        get_if(e, "mu", p.mu);
        get_if(e, "sigma", p.sigma);
        get_if(e, "kappa", p.kappa);
        get_if(e, "alpha", p.alpha);
        get_if(e, "lag", p.lag);
        cfg.sampler.gamma_envelope = p;
      } else if (kind != "none") {
        throw ConfigError("unknown envelope kind '" + kind + "'");
      }
    }
    if (s.contains("split")) {
      const json& e = s.at("split");
      check_keys(e, "split", {"kind", "lag", "part_width"});
      const std::string kind = e.at("kind").get<std::string>();
      if (kind == "bridge" || kind == "partition") {
        SplitScheme scheme;
        scheme.kind = kind == "bridge" ? SplitScheme::Kind::Bridge
                                       : SplitScheme::Kind::Partition;
        get_if(e, "lag", scheme.lag);
        get_if(e, "part_width", scheme.part_width);
        cfg.sampler.split = scheme;
      } else if (kind != "none") {
        throw ConfigError("unknown split kind '" + kind + "'");
      }
    }
  }

  if (root.contains("run")) {
    const json& r = root.at("run");
    check_keys(r, "run", {"sweeps", "burnin", "thin", "seed", "out", "threads"});
    get_if(r, "sweeps", cfg.run.sweeps);
    get_if(r, "burnin", cfg.run.burnin);
    get_if(r, "thin", cfg.run.thin);
    get_if(r, "seed", cfg.run.seed);
    get_if(r, "out", cfg.run.out);
    get_if(r, "threads", cfg.run.threads);
    if (cfg.run.thin < 1) throw ConfigError("run.thin must be >= 1");
    if (cfg.run.burnin >= cfg.run.sweeps && cfg.run.sweeps > 0)
      throw ConfigError("run.burnin must be below run.sweeps");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return parse_run_config_json(text);
  } catch (const json::exception& err) {
    throw ConfigError(std::string("config parse error: ") + err.what());
  }
}

std::string run_config_to_json(const RunConfig& cfg) {
  json root;
  if (!cfg.name.empty()) root["name"] = cfg.name;
  json& m = root["model"];
  m["kind"] = cfg.model.kind;
  m["capacity"] = cfg.model.capacity;
  m["horizon"] = cfg.model.horizon;
  m["seasonal"] = cfg.model.seasonal;
  m["prior_shape"] = cfg.model.prior_shape;
  m["prior_rate"] = cfg.model.prior_rate;
  if (cfg.model.kind == "birth_death") {
    m["birth"] = cfg.model.birth;
    m["death"] = cfg.model.death;
    m["infer_birth"] = cfg.model.infer_birth;
  } else if (cfg.model.kind == "sir") {
    m["infection"] = cfg.model.infection;
    m["removal"] = cfg.model.removal;
    m["removed_fraction"] = cfg.model.removed_fraction;
  } else {
    m["prey_birth"] = cfg.model.prey_birth;
    m["predation"] = cfg.model.predation;
    m["predator_birth"] = cfg.model.predator_birth;
    m["predator_death"] = cfg.model.predator_death;
  }
  json& d = root["data"];
  d["kind"] = cfg.data.kind;
  d["count"] = cfg.data.count;
  d["sigma"] = cfg.data.sigma;
  if (!cfg.data.path.empty()) d["path"] = cfg.data.path;
  json& s = root["sampler"];
  s["variant"] = cfg.sampler.variant;
  s["omega_factor"] = cfg.sampler.omega_factor;
  s["psi"] = cfg.sampler.psi;
  if (cfg.sampler.psi_factor > 0.0) s["psi_factor"] = cfg.sampler.psi_factor;
  s["filter_max_mb"] = cfg.sampler.filter_max_mb;
  if (cfg.sampler.normal_envelope) {
    const auto& p = *cfg.sampler.normal_envelope;
    s["envelope"] = {{"kind", "normal"},
                     {"mu", p.mu},
                     {"sigma", p.sigma},
                     {"kappa", p.kappa}};
  } else if (cfg.sampler.gamma_envelope) {
    const auto& p = *cfg.sampler.gamma_envelope;
    s["envelope"] = {{"kind", "gamma"}, {"mu", p.mu},       {"sigma", p.sigma},
                     {"kappa", p.kappa}, {"alpha", p.alpha}, {"lag", p.lag}};
  }
  if (cfg.sampler.split) {
    s["split"] = {
        {"kind", cfg.sampler.split->kind == SplitScheme::Kind::Bridge
                     ? "bridge"
                     : "partition"},
        {"lag", cfg.sampler.split->lag},
        {"part_width", cfg.sampler.split->part_width}};
  }
  json& r = root["run"];
  r["sweeps"] = cfg.run.sweeps;
  r["burnin"] = cfg.run.burnin;
  r["thin"] = cfg.run.thin;
  r["seed"] = cfg.run.seed;
  r["out"] = cfg.run.out;
  r["threads"] = cfg.run.threads;
  return root.dump(2);
}

std::string make_manifest(const RunConfig& config, double elapsed_seconds) {
  json root;
  root["manifest_version"] = 1;
  root["library"] = "mjp";
  root["elapsed_seconds"] = elapsed_seconds;
  root["config"] = json::parse(run_config_to_json(config));
  return root.dump(2);
}

}  // namespace mjp
