#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "pcd/density.hpp"
#include "pcd/optimizer.hpp"

namespace pcd {

// Raised for malformed or invalid configuration documents. Messages carry the
// JSON location (syntax errors) or the offending field path (validation).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputConfig {
  std::string samples_path = "samples.csv";
  std::string diagnostics_path = "diagnostics.json";
  std::string plot_data_prefix = "plot";
  bool emit_plot_data = false;
  Eigen::VectorXd plot_direction;  // empty: first coordinate axis
};

struct RunConfig {
  GaussianMixture density;
  OptimizerConfig optimizer;
  OutputConfig output;
};

// Parses and fully validates a JSON configuration document (schema documented
// in the README; versioned by its "format_version" field).
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

// Emits a document that parse_config maps back to identical values.
std::string serialize_config(const RunConfig& config);

}  // namespace pcd
