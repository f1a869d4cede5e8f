#pragma once

#include "symbif/config.hpp"

#include <iosfwd>

namespace symbif::cli {

enum ExitCode : int { success = 0, domain_failure = 1, usage_error = 2 };

/// Spectrum table up to cutoff. Default format csv.
int cmd_spectrum(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Per-alpha weight multiplicities and torus decompositions up to cutoff, in
/// the same shape as generic weight tables. Default format json.
int cmd_decompose(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Levels of Lambda in [-cutoff, cutoff] with kernel dims and indices.
int cmd_index(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Certificates for every guaranteed level in [-cutoff, cutoff].
int cmd_certify(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Continuation run on S^2. Branch rows go to `out`; for csv and pretty
/// output the JSON summary goes to `summary`. Solver failure still writes
/// the accepted rows and returns 1.
int cmd_branch(const RunConfig &cfg, std::ostream &out, std::ostream &summary, std::ostream &err);

/// Acceptance suite; exit 0 when every criterion passes.
int cmd_selftest(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Full command line: symbif <subcommand> [--config PATH] [--out PATH]
/// [--format json|csv|pretty] [--seed N].
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace symbif::cli
