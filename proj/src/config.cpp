#include "pcd/config.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

namespace pcd {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) {
    fail(path, "expected an object");
  }
  const auto it = obj.find(key);
  if (it == obj.end()) {
    fail(path + "." + key, "missing required field");
  }
  return *it;
}

const json* optional_member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) {
    fail(path, "expected an object");
  }
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) {
    fail(path, "expected a number");
  }
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) {
    fail(path, "expected an integer");
  }
  return v.get<int>();
}

std::uint64_t as_uint64(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) {
    fail(path, "expected a boolean");
  }
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) {
    fail(path, "expected a string");
  }
  return v.get<std::string>();
}

Eigen::VectorXd as_vector(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) {
    fail(path, "expected a nonempty array of numbers");
  }
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = as_number(v[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

Eigen::MatrixXd as_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) {
    fail(path, "expected a nonempty array of rows");
  }
  std::vector<Eigen::VectorXd> rows;
  rows.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    rows.push_back(as_vector(v[i], path + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) {
      fail(path, "rows must have equal length");
    }
  }
  Eigen::MatrixXd out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = rows[i];
  }
  return out;
}

DirectionKind parse_scheme(const std::string& name, const std::string& path) {
  if (name == "random-gaussian") return DirectionKind::RandomGaussian;
  if (name == "deterministic-2d-equiangular") return DirectionKind::Equiangular2D;
  if (name == "fixed-seed-random") return DirectionKind::FixedSeedRandom;
  fail(path,
       "unknown direction scheme (expected random-gaussian, "
       "deterministic-2d-equiangular, or fixed-seed-random)");
}

std::string scheme_name(DirectionKind kind) {
  switch (kind) {
    case DirectionKind::RandomGaussian: return "random-gaussian";
    case DirectionKind::Equiangular2D: return "deterministic-2d-equiangular";
    case DirectionKind::FixedSeedRandom: return "fixed-seed-random";
  }
  throw std::logic_error("unknown direction scheme");
}

InitKind parse_init_policy(const std::string& name, const std::string& path) {
  if (name == "draw-from-density") return InitKind::DrawFromDensity;
  if (name == "explicit") return InitKind::ExplicitLocations;
  if (name == "principal-axes") return InitKind::PrincipalAxes;
  fail(path,
       "unknown init policy (expected draw-from-density, explicit, or "
       "principal-axes)");
}

std::string init_policy_name(InitKind kind) {
  switch (kind) {
    case InitKind::DrawFromDensity: return "draw-from-density";
    case InitKind::ExplicitLocations: return "explicit";
    case InitKind::PrincipalAxes: return "principal-axes";
  }
  throw std::logic_error("unknown init policy");
}

GaussianMixture parse_density(const json& dj) {
  const std::string path = "config.density";
  const std::string type = as_string(member(dj, path, "type"), path + ".type");
  if (type != "gaussian_mixture") {
    fail(path + ".type", "unsupported density type (expected gaussian_mixture)");
  }
  const Eigen::VectorXd weights = as_vector(member(dj, path, "weights"), path + ".weights");
  const json& means_json = member(dj, path, "means");
  const json& covs_json = member(dj, path, "covariances");
  if (!means_json.is_array() || !covs_json.is_array()) {
    fail(path, "means and covariances must be arrays");
  }
  const std::size_t m = static_cast<std::size_t>(weights.size());
  if (means_json.size() != m || covs_json.size() != m) {
    fail(path, "weights, means, and covariances must have matching lengths");
  }
  std::vector<GaussianComponent> components;
  components.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    GaussianComponent c;
    c.weight = weights[static_cast<Eigen::Index>(i)];
    c.mean = as_vector(means_json[i], path + ".means[" + std::to_string(i) + "]");
    c.covariance = as_matrix(covs_json[i], path + ".covariances[" + std::to_string(i) + "]");
    components.push_back(std::move(c));
  }
  try {
    return GaussianMixture(std::move(components));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v[i]);
  }
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.push_back(vector_to_json(m.row(i)));
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }
  const int version = as_int(member(j, "config", "format_version"), "config.format_version");
  if (version != 1) {
    fail("config.format_version", "unsupported format version (expected 1)");
  }

  GaussianMixture density = parse_density(member(j, "config", "density"));
  const int dimension = density.dimension();

  OptimizerConfig opt;
  opt.sample_count = as_int(member(j, "config", "sample_count"), "config.sample_count");
  if (opt.sample_count < 1) {
    fail("config.sample_count", "must be at least 1");
  }
  if (const json* w = optional_member(j, "config", "weights")) {
    opt.sample_weights = as_vector(*w, "config.weights");
    if (opt.sample_weights.size() != opt.sample_count) {
      fail("config.weights", "length must equal sample_count");
    }
    try {
      opt.sample_weights = normalize_weights(std::move(opt.sample_weights), "sample weights");
    } catch (const std::invalid_argument& e) {
      fail("config.weights", e.what());
    }
  }

  if (const json* oj = optional_member(j, "config", "optimizer")) {
    const std::string path = "config.optimizer";
    if (const json* v = optional_member(*oj, path, "direction_count")) {
      opt.direction_count = as_int(*v, path + ".direction_count");
      if (opt.direction_count < 0) {
        fail(path + ".direction_count", "must be nonnegative (0 selects the default)");
      }
    }
    if (const json* v = optional_member(*oj, path, "step_size")) {
      opt.step_size = as_number(*v, path + ".step_size");
      if (!(opt.step_size > 0.0) || opt.step_size > 1.0) {
        fail(path + ".step_size", "must lie in (0, 1]");
      }
    }
    if (const json* v = optional_member(*oj, path, "threshold")) {
      opt.threshold = as_number(*v, path + ".threshold");
    }
    if (const json* v = optional_member(*oj, path, "max_iterations")) {
      opt.max_iterations = as_int(*v, path + ".max_iterations");
      if (opt.max_iterations < 1) {
        fail(path + ".max_iterations", "must be at least 1");
      }
    }
    if (const json* v = optional_member(*oj, path, "scheme")) {
      opt.scheme = parse_scheme(as_string(*v, path + ".scheme"), path + ".scheme");
    }
    if (const json* v = optional_member(*oj, path, "seed")) {
      opt.seed = as_uint64(*v, path + ".seed");
    }
    if (const json* v = optional_member(*oj, path, "threads")) {
      opt.threads = as_int(*v, path + ".threads");
      if (opt.threads < 0) {
        fail(path + ".threads", "must be nonnegative (0 selects hardware concurrency)");
      }
    }
  }
  if (opt.scheme == DirectionKind::Equiangular2D && dimension != 2) {
    fail("config.optimizer.scheme", "deterministic-2d-equiangular requires a 2D density");
  }

  if (const json* ij = optional_member(j, "config", "init")) {
    const std::string path = "config.init";
    opt.init.kind = parse_init_policy(as_string(member(*ij, path, "policy"), path + ".policy"),
                                      path + ".policy");
    if (opt.init.kind == InitKind::ExplicitLocations) {
      const Eigen::MatrixXd rows =
          as_matrix(member(*ij, path, "locations"), path + ".locations");
      if (rows.rows() != opt.sample_count || rows.cols() != dimension) {
        fail(path + ".locations",
             "expected sample_count rows of dimension-length coordinates");
      }
      opt.init.locations = rows.transpose();
    } else if (optional_member(*ij, path, "locations") != nullptr) {
      fail(path + ".locations", "only valid with the explicit policy");
    }
    if (opt.init.kind == InitKind::PrincipalAxes && density.component_count() != 1) {
      fail(path + ".policy", "principal-axes requires a single-component density");
    }
  }

  OutputConfig out;
  if (const json* outj = optional_member(j, "config", "output")) {
    const std::string path = "config.output";
    if (const json* v = optional_member(*outj, path, "samples")) {
      out.samples_path = as_string(*v, path + ".samples");
    }
    if (const json* v = optional_member(*outj, path, "diagnostics")) {
      out.diagnostics_path = as_string(*v, path + ".diagnostics");
    }
    if (const json* v = optional_member(*outj, path, "plot_data_prefix")) {
      out.plot_data_prefix = as_string(*v, path + ".plot_data_prefix");
    }
    if (const json* v = optional_member(*outj, path, "emit_plot_data")) {
      out.emit_plot_data = as_bool(*v, path + ".emit_plot_data");
    }
    if (const json* v = optional_member(*outj, path, "plot_direction")) {
      out.plot_direction = as_vector(*v, path + ".plot_direction");
      if (out.plot_direction.size() != dimension) {
        fail(path + ".plot_direction", "length must equal the density dimension");
      }
      if (out.plot_direction.norm() < 1e-12) {
        fail(path + ".plot_direction", "norm must be at least 1e-12");
      }
    }
  }

  return RunConfig{std::move(density), std::move(opt), std::move(out)};
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read config file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
  json j;
  j["format_version"] = 1;

  json dj;
  dj["type"] = "gaussian_mixture";
  json weights = json::array();
  json means = json::array();
  json covariances = json::array();
  for (const auto& c : config.density.components()) {
    weights.push_back(c.weight);
    means.push_back(vector_to_json(c.mean));
    covariances.push_back(matrix_to_json(c.covariance));
  }
  dj["weights"] = std::move(weights);
  dj["means"] = std::move(means);
  dj["covariances"] = std::move(covariances);
  j["density"] = std::move(dj);

  j["sample_count"] = config.optimizer.sample_count;
  if (config.optimizer.sample_weights.size() > 0) {
    j["weights"] = vector_to_json(config.optimizer.sample_weights);
  }

  json oj;
  oj["direction_count"] = config.optimizer.direction_count;
  oj["step_size"] = config.optimizer.step_size;
  oj["threshold"] = config.optimizer.threshold;
  oj["max_iterations"] = config.optimizer.max_iterations;
  oj["scheme"] = scheme_name(config.optimizer.scheme);
  oj["seed"] = config.optimizer.seed;
  oj["threads"] = config.optimizer.threads;
  j["optimizer"] = std::move(oj);

  json ij;
  ij["policy"] = init_policy_name(config.optimizer.init.kind);
  if (config.optimizer.init.kind == InitKind::ExplicitLocations) {
    ij["locations"] = matrix_to_json(config.optimizer.init.locations.transpose());
  }
  j["init"] = std::move(ij);

  json outj;
  outj["samples"] = config.output.samples_path;
  outj["diagnostics"] = config.output.diagnostics_path;
  outj["plot_data_prefix"] = config.output.plot_data_prefix;
  outj["emit_plot_data"] = config.output.emit_plot_data;
  if (config.output.plot_direction.size() > 0) {
    outj["plot_direction"] = vector_to_json(config.output.plot_direction);
  }
  j["output"] = std::move(outj);

  return j.dump(2) + "\n";
}

}  // namespace pcd
