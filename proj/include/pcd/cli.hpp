#pragma once

namespace pcd {

// Entry point for the pcd-sampler command line tool. Subcommands:
//   run <config>                approximate per the configuration document
//   solve1d --normal L          print the closed-form standard normal set
//   distance <config> <csv>     print the projected distance estimate
// Exit codes: 0 success (run: converged), 2 run finished without converging,
// 1 any error.
int run_main(int argc, char** argv);

}  // namespace pcd
