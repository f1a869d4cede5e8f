#include "symbif/config.hpp"

#include "symbif/serialization.hpp"

#include <fstream>
#include <set>

namespace symbif {

namespace {

const std::set<std::string> branch_keys = {"K",        "Q",        "nl",        "crossing",        "target_norm", "step",
                                           "min_step", "max_step", "max_steps", "onset_amplitude", "newton_tol",  "isotropy"};
const std::set<std::string> top_keys = {"space", "a", "cutoff", "format", "seed", "branch"};

void read_branch_keys(const json &j, BranchConfig &b) {
  for (const auto &[key, value] : j.items())
    if (!branch_keys.count(key)) throw ConfigError("unknown branch option '" + key + "'");
  auto &o = b.options;
  if (j.contains("K")) b.K = j["K"].get<int>();
  if (j.contains("Q")) b.quadrature = j["Q"].get<int>();
  if (j.contains("nl")) b.nl = j["nl"].get<std::string>();
  if (j.contains("crossing")) b.crossing = j["crossing"].get<Rational>();
  if (j.contains("target_norm")) o.target_norm = j["target_norm"].get<double>();
  if (j.contains("step")) o.step = j["step"].get<double>();
  if (j.contains("min_step")) o.min_step = j["min_step"].get<double>();
  if (j.contains("max_step")) o.max_step = j["max_step"].get<double>();
  if (j.contains("max_steps")) o.max_steps = j["max_steps"].get<int>();
  if (j.contains("onset_amplitude")) o.onset_amplitude = j["onset_amplitude"].get<double>();
  if (j.contains("newton_tol")) o.newton_tol = j["newton_tol"].get<double>();
  if (j.contains("isotropy")) {
    const auto iso = j["isotropy"].get<std::string>();
    if (iso == "axisymmetric") o.isotropy = galerkin::IsotropyRestriction::axisymmetric();
    else if (iso == "none") o.isotropy = galerkin::IsotropyRestriction::none();
    else throw ConfigError("unknown isotropy '" + iso + "'");
  }
  if (b.K < 1) throw ConfigError("K must be positive");
  if (b.nl != "quartic" && b.nl != "linear") throw ConfigError("unknown nonlinearity '" + b.nl + "'");
  if (o.max_steps < 1) throw ConfigError("max_steps must be positive");
  if (!(o.min_step > 0 && o.min_step <= o.step && o.step <= o.max_step))
    throw ConfigError("need 0 < min_step <= step <= max_step");
  if (!(o.target_norm > 0)) throw ConfigError("target_norm must be positive");
}

}  // namespace

bool is_output_format(const std::string &format) { return format == "json" || format == "csv" || format == "pretty"; }

RunConfig parse_run_config(const json &j, const std::filesystem::path &base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  try {
    json branch = json::object();
    for (const auto &[key, value] : j.items()) {
      if (branch_keys.count(key)) branch[key] = value;
      else if (!top_keys.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    if (j.contains("branch")) {
      if (!j["branch"].is_object()) throw ConfigError("branch must be an object");
      branch.update(j["branch"]);
    }
    read_branch_keys(branch, cfg.branch);

    if (j.contains("space")) cfg.space = space_from_json(j["space"], base_dir);
    if (j.contains("a")) {
      cfg.a = j["a"].get<std::vector<int>>();
      if (cfg.a.empty()) throw ConfigError("signature list a must be nonempty");
      for (int v : cfg.a)
        if (v != 1 && v != -1) throw ConfigError("entries of a must be +1 or -1");
    }
    if (j.contains("cutoff")) {
      cfg.cutoff = j["cutoff"].get<Rational>();
      if (*cfg.cutoff < 0) throw ConfigError("cutoff must be nonnegative");
    }
    if (j.contains("format")) {
      cfg.format = j["format"].get<std::string>();
      if (!is_output_format(cfg.format)) throw ConfigError("unknown format '" + cfg.format + "'");
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  } catch (const ConfigError &) {
    throw;
  } catch (const std::exception &e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
  return parse_run_config(j, path.parent_path());
}

}  // namespace symbif
