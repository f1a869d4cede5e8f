#include "symbif/commands.hpp"

#include "symbif/acceptance.hpp"
#include "symbif/bifurcation.hpp"
#include "symbif/serialization.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace symbif::cli {

namespace {

const SymmetricSpaceData &need_space(const RunConfig &cfg) {
  if (!cfg.space) throw ConfigError("config needs a space descriptor");
  return *cfg.space;
}

const Rational &need_cutoff(const RunConfig &cfg) {
  if (!cfg.cutoff) throw ConfigError("config needs a cutoff");
  return *cfg.cutoff;
}

SystemSignature need_signature(const RunConfig &cfg) {
  if (cfg.a.empty()) throw ConfigError("config needs a signature list a");
  return SystemSignature::from_coefficients(cfg.a);
}

std::string format_or(const RunConfig &cfg, const char *fallback) {
  return cfg.format.empty() ? fallback : cfg.format;
}

std::string weights_text(const std::vector<RestrictedWeight> &ws) {
  std::string s;
  for (const auto &w : ws) s += (s.empty() ? "" : " ") + w.to_string();
  return s;
}

std::string decomp_text(const TorusRepDecomposition &d) {
  std::string s = "k0=" + d.k0.str();
  for (const auto &[h, k] : d.mults) s += " " + h.to_string() + ":" + k.str();
  return s;
}

std::string real_text(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

// Maps library exceptions onto exit codes.
template <class F>
int guarded(std::ostream &err, F &&body) {
  try {
    return body();
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const nlohmann::json::exception &e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return domain_failure;
  }
}

}  // namespace

int cmd_spectrum(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const auto &space = need_space(cfg);
    const auto &cutoff = need_cutoff(cfg);
    const auto levels = spectrum_up_to(space, cutoff);
    const auto format = format_or(cfg, "csv");
    if (format == "json") {
      out << json{{"space", space_to_json(space)}, {"cutoff", cutoff}, {"levels", levels}}.dump(2) << '\n';
    } else if (format == "csv") {
      write_spectrum_csv(out, levels);
    } else {
      out << space.description() << ", cutoff " << to_fraction_string(cutoff) << '\n';
      for (const auto &l : levels)
        out << std::setw(10) << to_fraction_string(l.eigenvalue) << "  dim " << std::setw(5) << l.real_dim << "  "
            << weights_text(l.alphas) << "  [" << decomp_text(l.torus_decomp) << "]\n";
    }
    return int(success);
  });
}

int cmd_decompose(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const auto &space = need_space(cfg);
    const auto levels = eigenvalue_levels(space, need_cutoff(cfg));
    const auto format = format_or(cfg, "json");
    json harmonics = json::array();
    if (format == "csv") out << "eigenvalue,alpha,real_dim,mu,mult\n";
    for (const auto &l : levels) {
      for (const auto &alpha : l.alphas) {
        const auto weights = harmonic_weights(space, alpha);
        const auto real_dim = harmonic_real_dim(space, alpha);
        const auto decomp = realify(weights);
        if (format == "json") {
          json ws = json::array();
          for (const auto &[mu, m] : weights) ws.push_back({{"mu", mu}, {"mult", m}});
          harmonics.push_back({{"eigenvalue", l.eigenvalue},
                               {"alpha", alpha},
                               {"real_dim", real_dim},
                               {"weights", ws},
                               {"torus_decomp", decomp}});
        } else if (format == "csv") {
          for (const auto &[mu, m] : weights)
            out << to_fraction_string(l.eigenvalue) << ",\"" << alpha.to_string() << "\"," << real_dim << ",\""
                << mu.to_string() << "\"," << m << '\n';
        } else {
          out << std::setw(10) << to_fraction_string(l.eigenvalue) << "  " << alpha.to_string() << "  dim "
              << real_dim << "  [" << decomp_text(decomp) << "]\n";
        }
      }
    }
    if (format == "json") out << json{{"space", space_to_json(space)}, {"harmonics", harmonics}}.dump(2) << '\n';
    return int(success);
  });
}

int cmd_index(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const auto &space = need_space(cfg);
    const auto sig = need_signature(cfg);
    const auto levels = bifurcation_levels(space, sig, need_cutoff(cfg));
    const auto format = format_or(cfg, "json");
    if (format == "json") {
      out << json{{"space", space_to_json(space)}, {"signature", sig}, {"levels", levels}}.dump(2) << '\n';
    } else if (format == "csv") {
      out << "level,kernel_dim,index\n";
      for (const auto &l : levels)
        out << to_fraction_string(l.lambda0) << ',' << l.kernel_dim << ",\"" << l.index.to_string() << "\"\n";
    } else {
      out << space.description() << ", n+ = " << sig.n_plus << ", n- = " << sig.n_minus << '\n';
      for (const auto &l : levels)
        out << std::setw(10) << to_fraction_string(l.lambda0) << "  ker " << std::setw(5) << l.kernel_dim
            << "  BIF = " << l.index.to_string() << '\n';
    }
    return int(success);
  });
}

int cmd_certify(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const auto &space = need_space(cfg);
    const auto sig = need_signature(cfg);
    const auto levels = bifurcation_levels(space, sig, need_cutoff(cfg));
    const auto format = format_or(cfg, "json");

    std::vector<UnboundednessCertificate> certs;
    json skipped = json::array();
    json failures = json::array();
    bool failed = false;
    for (const auto &l : levels) {
      try {
        auto c = certify_unbounded(space, sig, l.lambda0);
        if (!c.unbounded) failed = true;
        certs.push_back(std::move(c));
      } catch (const std::domain_error &e) {
        if (l.lambda0 == 0 && sig.p() % 2 == 0) {
          skipped.push_back({{"level", l.lambda0}, {"note", "p even: no claim"}});
        } else {
          failed = true;
          failures.push_back({{"level", l.lambda0}, {"reason", e.what()}});
        }
      }
    }

    if (format == "json") {
      out << json{{"signature", sig}, {"certificates", certs}, {"skipped", skipped}, {"failures", failures}}.dump(2)
          << '\n';
    } else if (format == "csv") {
      out << "level,status,witness,unbounded,symmetry_breaking,ledger,note\n";
      for (const auto &c : certs) {
        std::string ledger;
        for (const auto &e : c.ledger) ledger += (ledger.empty() ? "" : ";") + to_fraction_string(e.level) + ":" + e.coeff.str();
        out << to_fraction_string(c.level) << ",certified,\"" << (c.witness ? c.witness->to_string() : "") << "\","
            << c.unbounded << ',' << c.symmetry_breaking << ",\"" << ledger << "\",\"" << c.conclusion << "\"\n";
      }
      for (const auto &s : skipped)
        out << to_fraction_string(s["level"].get<Rational>()) << ",skipped,,,,,\"" << s["note"].get<std::string>()
            << "\"\n";
      for (const auto &f : failures)
        out << to_fraction_string(f["level"].get<Rational>()) << ",failed,,,,,\"" << f["reason"].get<std::string>()
            << "\"\n";
    } else {
      for (const auto &c : certs) {
        out << std::setw(10) << to_fraction_string(c.level) << "  " << (c.unbounded ? "unbounded" : "NOT certified");
        if (c.witness) out << "  witness " << c.witness->to_string();
        out << "  ledger";
        for (const auto &e : c.ledger) out << ' ' << to_fraction_string(e.level) << ':' << e.coeff;
        out << (c.symmetry_breaking ? "  symmetry breaking" : "") << '\n';
      }
      for (const auto &s : skipped)
        out << std::setw(10) << to_fraction_string(s["level"].get<Rational>()) << "  skipped: "
            << s["note"].get<std::string>() << '\n';
      for (const auto &f : failures)
        out << std::setw(10) << to_fraction_string(f["level"].get<Rational>()) << "  failed: "
            << f["reason"].get<std::string>() << '\n';
    }
    return failed ? int(domain_failure) : int(success);
  });
}

int cmd_branch(const RunConfig &cfg, std::ostream &out, std::ostream &summary, std::ostream &err) {
  return guarded(err, [&] {
    using namespace galerkin;
    if (cfg.space && !(cfg.space->kind() == SpaceKind::sphere && cfg.space->sphere_dims().front() == 2))
      throw ConfigError("branch runs on the 2-sphere only");
    if (cfg.a.empty()) throw ConfigError("config needs a signature list a");
    const auto &b = cfg.branch;
    const auto format = format_or(cfg, "csv");

    const GalerkinBasis basis(b.K, b.quadrature);
    const GalerkinSystem system(basis, b.nl == "linear" ? Nonlinearity::linear() : Nonlinearity::quartic(), cfg.a);
    if (trivial_branch_crossings(basis, cfg.a, b.crossing, b.crossing).empty())
      throw ConfigError("not a crossing: " + to_fraction_string(b.crossing));

    std::vector<BranchState> states;
    std::string outcome;
    std::string message;
    int code = success;
    try {
      auto result = continue_branch(system, b.crossing, b.options);
      states = std::move(result.states);
      outcome = to_string(result.outcome);
    } catch (const ContinuationError &e) {
      states = e.partial();
      outcome = "diverged";
      message = e.what();
      code = domain_failure;
    } catch (const std::invalid_argument &e) {
      outcome = "diverged";
      message = e.what();
      code = domain_failure;
    }
    if (!message.empty()) err << "error: " << message << '\n';

    bool nonconstant = true;
    for (const auto &s : states)
      if (!(system.max_component_variance(s.coeffs) > 1e-8 * s.h1_norm * s.h1_norm)) nonconstant = false;

    json info = {{"outcome", outcome},
                 {"rows", states.size()},
                 {"crossing", b.crossing},
                 {"a", cfg.a},
                 {"K", b.K},
                 {"nl", b.nl},
                 {"target_norm", b.options.target_norm},
                 {"max_steps", b.options.max_steps},
                 {"nonconstant", nonconstant},
                 {"correspondence", "heuristic"}};
    if (!states.empty())
      info["final"] = {{"lambda", states.back().lambda},
                       {"h1_norm", states.back().h1_norm},
                       {"arclength", states.back().arclength}};
    if (!message.empty()) info["error"] = message;

    if (format == "json") {
      out << json{{"rows", states}, {"summary", info}}.dump(2) << '\n';
      return code;
    }

    std::vector<std::pair<Eigen::Index, std::string>> leading;
    const auto &modes = basis.modes();
    for (int i = 0; i < system.components(); ++i)
      for (std::size_t j = 0; j < modes.size(); ++j)
        if (modes[j].k <= 4 && b.options.isotropy.allows(i, modes[j]))
          leading.emplace_back(i * basis.size() + static_cast<Eigen::Index>(j),
                               "c" + std::to_string(i) + "_" + std::to_string(modes[j].k) + "_" +
                                   std::to_string(modes[j].m));
    const char *sep = format == "csv" ? "," : " ";
    out << "arclength" << sep << "lambda" << sep << "h1_norm";
    for (const auto &[idx, name] : leading) out << sep << name;
    out << '\n';
    for (const auto &s : states) {
      out << real_text(s.arclength) << sep << real_text(s.lambda) << sep << real_text(s.h1_norm);
      for (const auto &[idx, name] : leading) out << sep << real_text(s.coeffs(idx));
      out << '\n';
    }
    summary << info.dump(2) << '\n';
    return code;
  });
}

int cmd_selftest(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const auto format = format_or(cfg, "pretty");
    std::vector<acceptance::CriterionResult> results;
    if (format == "json") {
      results = acceptance::run_all(cfg.seed);
      json arr = json::array();
      for (const auto &r : results)
        arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      out << json{{"seed", cfg.seed}, {"criteria", arr}}.dump(2) << '\n';
    } else if (format == "csv") {
      out << "id,name,passed,seconds,detail\n";
      results = acceptance::run_all(cfg.seed, [&](const acceptance::CriterionResult &r) {
        out << r.id << ",\"" << r.name << "\"," << r.passed << ',' << r.seconds << ",\"" << r.detail << "\"\n";
      });
    } else {
      results = acceptance::run_all(cfg.seed, [&](const acceptance::CriterionResult &r) {
        out << acceptance::format_line(r) << '\n' << std::flush;
      });
    }
    for (const auto &r : results)
      if (!r.passed) return int(domain_failure);
    return int(success);
  });
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Equivariant bifurcation toolkit for elliptic systems on symmetric spaces", "symbif"};
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "write primary output to this file");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--seed", seed, "random seed for sampling checks");
  app.require_subcommand(1, 1);
  for (const char *name : {"spectrum", "decompose", "index", "certify", "branch", "selftest"})
    app.add_subcommand(name)->fallthrough();
  app.get_subcommand("spectrum")->description("eigenvalues, multiplicities and torus decompositions");
  app.get_subcommand("decompose")->description("weight multiplicities of each irreducible summand");
  app.get_subcommand("index")->description("bifurcation indices on [-cutoff, cutoff]");
  app.get_subcommand("certify")->description("unboundedness certificates on [-cutoff, cutoff]");
  app.get_subcommand("branch")->description("continuation of a bifurcating branch on S^2");
  app.get_subcommand("selftest")->description("acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int(success) : int(usage_error);
  }

  RunConfig cfg;
  if (!config_path.empty()) {
    try {
      cfg = load_run_config(config_path);
    } catch (const ConfigError &e) {
      err << "error: " << e.what() << '\n';
      return usage_error;
    }
  }
  if (!format.empty()) cfg.format = format;
  if (seed) cfg.seed = *seed;

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot write " << out_path << '\n';
      return usage_error;
    }
  }
  std::ostream &primary = out_path.empty() ? out : file;

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd != "selftest" && config_path.empty()) {
    err << "error: " << cmd << " needs --config\n";
    return usage_error;
  }
  if (cmd == "spectrum") return cmd_spectrum(cfg, primary, err);
  if (cmd == "decompose") return cmd_decompose(cfg, primary, err);
  if (cmd == "index") return cmd_index(cfg, primary, err);
  if (cmd == "certify") return cmd_certify(cfg, primary, err);
  if (cmd == "branch") return cmd_branch(cfg, primary, out_path.empty() ? err : out, err);
  return cmd_selftest(cfg, primary, err);
}

}  // namespace symbif::cli
