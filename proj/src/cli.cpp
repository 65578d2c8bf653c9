#include "pcd/cli.hpp"

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pcd/config.hpp"
#include "pcd/runner.hpp"
#include "pcd/sphere.hpp"
#include "pcd/univariate.hpp"

namespace pcd {

int run_main(int argc, char** argv) {
  CLI::App app{"Deterministic Dirac mixture approximation of Gaussian mixtures "
               "via projected cumulative distributions"};
  app.require_subcommand(1);

  std::string config_path;
  std::string samples_path;
  int normal_count = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "Run the approximation pipeline");
  run_cmd->add_option("config", config_path, "JSON run configuration")->required();

  CLI::App* solve_cmd =
      app.add_subcommand("solve1d", "Print a closed-form 1D solution");
  solve_cmd
      ->add_option("--normal", normal_count,
                   "Component count for the standard normal solution")
      ->required();

  CLI::App* distance_cmd = app.add_subcommand(
      "distance", "Print the projected distance between a density and a sample CSV");
  distance_cmd->add_option("config", config_path, "JSON run configuration")->required();
  distance_cmd->add_option("samples", samples_path, "Samples CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (run_cmd->parsed()) {
      return run(load_config(config_path));
    }
    if (solve_cmd->parsed()) {
      if (normal_count < 1) {
        std::cerr << "error: --normal must be at least 1\n";
        return kExitError;
      }
      const Eigen::VectorXd locations = standard_normal_locations(normal_count);
      for (Eigen::Index i = 0; i < locations.size(); ++i) {
        std::cout << format_shortest(locations[i]) << '\n';
      }
      return 0;
    }
    const RunConfig config = load_config(config_path);
    const DiracMixture samples = read_samples_csv(samples_path);
    if (samples.dimension() != config.density.dimension()) {
      std::cerr << "error: sample dimension " << samples.dimension()
                << " does not match the density dimension "
                << config.density.dimension() << '\n';
      return kExitError;
    }
    const int n = config.density.dimension();
    const int k = config.optimizer.direction_count > 0 ? config.optimizer.direction_count
                                                       : 10 * n;
    const DirectionScheme scheme{config.optimizer.scheme, k, config.optimizer.seed};
    const double estimate = distance_nd_estimate(
        config.density, samples, iteration_directions(scheme, n, 0));
    std::cout << format_shortest(estimate) << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace pcd
