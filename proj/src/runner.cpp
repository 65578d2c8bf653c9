#include "pcd/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pcd/optimizer.hpp"
#include "pcd/projection.hpp"
#include "pcd/univariate.hpp"

namespace pcd {
namespace {

constexpr int kPlotGridPoints = 513;
constexpr double kPlotRangeSigmas = 4.0;

double parse_strict_double(std::string_view text, const std::string& context) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error(context + ": invalid number '" + std::string(text) + "'");
  }
  return value;
}

void check_stream(const std::ostream& out, const std::string& path) {
  if (!out) {
    throw std::runtime_error("failed writing " + path);
  }
}

// Step CDF of the sample set at an arbitrary point, half weight on ties.
// Clamped to 1 so accumulated rounding cannot push the table above it.
double sample_cdf(const Eigen::VectorXd& r, const Eigen::VectorXd& w, double t) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r[i] < t) {
      total += w[i];
    } else if (r[i] == t) {
      total += 0.5 * w[i];
    }
  }
  return std::min(total, 1.0);
}

void write_plot_data(const RunConfig& config, const DiracMixture& samples) {
  const std::string scatter_path = config.output.plot_data_prefix + "_samples.dat";
  std::ofstream scatter(scatter_path, std::ios::binary);
  if (!scatter) {
    throw std::runtime_error("cannot open " + scatter_path);
  }
  for (int i = 0; i < samples.count(); ++i) {
    for (int d = 0; d < samples.dimension(); ++d) {
      scatter << format_shortest(samples.locations()(d, i)) << ' ';
    }
    scatter << format_shortest(samples.weights()[i]) << '\n';
  }
  scatter.flush();
  check_stream(scatter, scatter_path);

  Eigen::VectorXd axis = config.output.plot_direction;
  if (axis.size() == 0) {
    axis = Eigen::VectorXd::Zero(config.density.dimension());
    axis[0] = 1.0;
  }
  const Direction dir(std::move(axis));
  const ProjectedMixture1D pm = project_gaussian_mixture(config.density, dir);
  const Eigen::VectorXd r = project_dirac_mixture(samples, dir);
  const double margin = kPlotRangeSigmas * pm.max_sigma();
  const double lo = std::min(r.minCoeff(), pm.min_mean() - margin);
  const double hi = std::max(r.maxCoeff(), pm.max_mean() + margin);

  const std::string table_path = config.output.plot_data_prefix + "_pcd.dat";
  std::ofstream table(table_path, std::ios::binary);
  if (!table) {
    throw std::runtime_error("cannot open " + table_path);
  }
  for (int i = 0; i < kPlotGridPoints; ++i) {
    const double t = lo + (hi - lo) * i / (kPlotGridPoints - 1);
    table << format_shortest(t) << ' ' << format_shortest(projected_cdf(pm, t)) << ' '
          << format_shortest(sample_cdf(r, samples.weights(), t)) << '\n';
  }
  table.flush();
  check_stream(table, table_path);
}

void write_diagnostics(const RunConfig& config, const OptimizerConfig& opt,
                       const ApproximationResult& result) {
  const Moments target = mixture_moments(config.density);
  const Moments achieved = dirac_moments(result.samples);
  nlohmann::json j;
  j["format_version"] = 1;
  j["converged"] = result.diagnostics.converged;
  j["iterations"] = result.diagnostics.iterations;
  j["initial_distance"] = result.diagnostics.initial_distance;
  j["final_distance"] = result.diagnostics.final_distance;
  j["reorder_events"] = result.diagnostics.reorder_events;
  j["max_change_history"] = result.diagnostics.max_change_history;
  nlohmann::json moments;
  nlohmann::json mean_error = nlohmann::json::array();
  for (Eigen::Index i = 0; i < target.mean.size(); ++i) {
    mean_error.push_back(std::abs(achieved.mean[i] - target.mean[i]));
  }
  moments["mean_abs_error"] = std::move(mean_error);
  moments["covariance_rel_frobenius_error"] =
      (achieved.covariance - target.covariance).norm() / target.covariance.norm();
  j["moment_errors"] = std::move(moments);
  nlohmann::json run_info;
  run_info["dimension"] = config.density.dimension();
  run_info["sample_count"] = opt.sample_count;
  run_info["direction_count"] =
      opt.direction_count > 0 ? opt.direction_count : 10 * config.density.dimension();
  run_info["step_size"] = opt.step_size;
  run_info["seed"] = opt.seed;
  j["run"] = std::move(run_info);

  std::ofstream out(config.output.diagnostics_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + config.output.diagnostics_path);
  }
  out << j.dump(2) << '\n';
  out.flush();
  check_stream(out, config.output.diagnostics_path);
}

int thread_override_from_env() {
  const char* text = std::getenv("PCD_SAMPLER_THREADS");
  if (text == nullptr) {
    return -1;
  }
  int value = 0;
  const std::string_view view(text);
  const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
  if (ec != std::errc() || ptr != view.data() + view.size() || value < 0) {
    throw std::runtime_error("PCD_SAMPLER_THREADS must be a nonnegative integer");
  }
  return value;
}

}  // namespace

std::string format_shortest(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) {
    throw std::runtime_error("failed to format a double");
  }
  return std::string(buffer, ptr);
}

void write_samples_csv(const std::string& path, const DiracMixture& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path);
  }
  for (int i = 0; i < samples.count(); ++i) {
    for (int d = 0; d < samples.dimension(); ++d) {
      out << format_shortest(samples.locations()(d, i)) << ',';
    }
    out << format_shortest(samples.weights()[i]) << '\n';
  }
  out.flush();
  check_stream(out, path);
}

DiracMixture read_samples_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) {
      continue;
    }
    std::vector<double> fields;
    std::size_t start = 0;
    const std::string context = path + ":" + std::to_string(line_number);
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view field(line.data() + start,
                                   (comma == std::string::npos ? line.size() : comma) - start);
      fields.push_back(parse_strict_double(field, context));
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
    if (fields.size() < 2) {
      throw std::runtime_error(context + ": expected coordinates and a weight");
    }
    if (!rows.empty() && fields.size() != rows.front().size()) {
      throw std::runtime_error(context + ": inconsistent column count");
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) {
    throw std::runtime_error(path + ": no samples found");
  }
  const int n = static_cast<int>(rows.front().size()) - 1;
  const int l = static_cast<int>(rows.size());
  Eigen::MatrixXd locations(n, l);
  Eigen::VectorXd weights(l);
  for (int i = 0; i < l; ++i) {
    for (int d = 0; d < n; ++d) {
      locations(d, i) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
    }
    weights[i] = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
  }
  return DiracMixture(std::move(locations), std::move(weights));
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    OptimizerConfig opt = config.optimizer;
    const int thread_override = thread_override_from_env();
    if (thread_override >= 0) {
      opt.threads = thread_override;
    }
    const ApproximationResult result = approximate(config.density, opt);
    write_samples_csv(config.output.samples_path, result.samples);
    write_diagnostics(config, opt, result);
    if (config.output.emit_plot_data) {
      write_plot_data(config, result.samples);
    }
    return result.diagnostics.converged ? kExitConverged : kExitNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run(const RunConfig& config) { return run(config, std::cerr); }

}  // namespace pcd
