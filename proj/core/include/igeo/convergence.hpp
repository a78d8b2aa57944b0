#pragma once

// Error-versus-budget sweeps for the Cauchy and Crofton estimators.

#include <cstdint>
#include <string_view>
#include <vector>

#include "igeo/mesh.hpp"
#include "igeo/parallel.hpp"

namespace igeo {

enum class ConvergenceEstimator { kCauchy, kCrofton };

std::string_view to_string(ConvergenceEstimator est);
ConvergenceEstimator parse_convergence_estimator(std::string_view text);

/// One budget level, aggregated over independent replicates.
struct ConvergenceRow {
  std::uint64_t n = 0;
  double value = 0.0;      // mean estimate over replicates
  double std_error = 0.0;  // RMS of the per-replicate standard errors
  double abs_error = 0.0;  // RMS of |estimate - exact surface area|
};

/// Replicate k at level n uses seed substream (n, k), so rows are reproducible
/// on their own.
std::vector<ConvergenceRow> convergence_sweep(const SimplicialMesh& mesh, ConvergenceEstimator est,
                                              const std::vector<std::uint64_t>& ladder, int replicates,
                                              std::uint64_t seed, const ExecPolicy& exec = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace igeo
