#pragma once

#include <iosfwd>
#include <string>

#include "pcd/config.hpp"
#include "pcd/density.hpp"

namespace pcd {

inline constexpr int kExitConverged = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotConverged = 2;

// Shortest decimal representation that parses back to the same double.
std::string format_shortest(double value);

// CSV exchange format: one row per sample, N coordinate columns then the
// weight column, no header, '\n' line endings.
void write_samples_csv(const std::string& path, const DiracMixture& samples);
DiracMixture read_samples_csv(const std::string& path);

// Executes the full pipeline: optimize, then write the samples CSV, the
// diagnostics JSON, and (when enabled) plot data tables. Returns
// kExitConverged or kExitNotConverged (outputs are written either way);
// failures are reported on `err` and yield kExitError. The environment
// variable PCD_SAMPLER_THREADS, when set, overrides the thread count.
int run(const RunConfig& config, std::ostream& err);
int run(const RunConfig& config);

}  // namespace pcd
