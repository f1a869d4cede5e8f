#pragma once

#include "symbif/galerkin.hpp"
#include "symbif/symmetric_space.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symbif {

/// Malformed or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BranchConfig {
  int K = 8;
  std::optional<int> quadrature;
  std::string nl = "quartic";
  Rational crossing{2};
  galerkin::ContinuationOptions options;
};

struct RunConfig {
  std::optional<SymmetricSpaceData> space;
  /// Laplacian coefficients, each +-1; empty when absent.
  std::vector<int> a;
  std::optional<Rational> cutoff;
  /// json | csv | pretty; empty selects the command default.
  std::string format;
  std::uint64_t seed = 0;
  BranchConfig branch;
};

/// Continuation keys may sit at top level or inside a "branch" object:
/// K, Q, nl, crossing, target_norm, step, min_step, max_step, max_steps,
/// onset_amplitude, newton_tol, isotropy ("axisymmetric" | "none").
RunConfig parse_run_config(const nlohmann::json &j, const std::filesystem::path &base_dir = {});
RunConfig load_run_config(const std::filesystem::path &path);

bool is_output_format(const std::string &format);

}  // namespace symbif
