#pragma once

#include <vector>

namespace pcd {

// Iteration record shared by the 1D solver and the multivariate optimizer.
// `max_change_history[t]` is the largest applied per-sample change in
// iteration t (absolute value in 1D, Euclidean column norm in N-D).
struct RunDiagnostics {
  int iterations = 0;
  bool converged = false;
  double initial_distance = 0.0;
  double final_distance = 0.0;
  int reorder_events = 0;
  std::vector<double> max_change_history;
};

}  // namespace pcd
