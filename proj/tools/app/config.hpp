#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qalab/approx_core.hpp"
#include "qalab/corpus.hpp"

namespace qalab::app {

/// Invalid configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FunctionSpec {
  std::string name;  // corpus name, empty when `expr` is used
  Params params;
  std::string expr;

  std::string label() const;
};

struct ExperimentConfig {
  FunctionSpec fn;
  double a = -1.0;
  double b = 1.0;
  std::optional<std::vector<int>> degrees;  // absent: per-command default; empty: no solver runs
  double tol = 1e-6;
  double threshold = 0.95;
  std::filesystem::path out_dir = "qalab-out";
  std::uint64_t seed = 0;

  // capacity
  std::vector<std::pair<double, double>> set;  // intervals of K (default: the domain)
  int points = 200;
  double radius = 2.0;
  int tau_degree = 12;
  std::size_t grid_res = 41;
  double grid_half_width = 3.0;

  // probe
  std::size_t res = 64;
  double z_half_width = 2.0;
  double w_half_width = 2.0;
  double eps = 0.1;
  std::optional<std::size_t> tail_start;
  std::string approximants;  // "partial_sums" or "minimax"; empty picks by function
  std::size_t x_grid = 201;
  double floor = 0.1;
  double slice_w_re = 0.0;
  double slice_w_im = 0.0;
};

/// "a..b" (inclusive), "a..b:step" or a comma-separated list; strictly increasing, >= 0.
/// An empty string is an empty list.
std::vector<int> parse_degrees(const std::string& text);

/// "k=v" into a parameter map entry.
std::pair<std::string, double> parse_param(const std::string& text);

/// Reads a JSON config file into `cfg`; unknown keys are rejected.
void load_config_file(const std::filesystem::path& path, ExperimentConfig& cfg);

/// Builds the function and validates it on a sample grid of the domain.
SampledFunction build_function(const FunctionSpec& spec, const IntervalDomain& dom);

}  // namespace qalab::app
