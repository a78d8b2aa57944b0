#include "igeo/convergence.hpp"

#include <cmath>
#include <string>

#include "igeo/estimators.hpp"
#include "igeo/random.hpp"

namespace igeo {

std::string_view to_string(ConvergenceEstimator est) {
  return est == ConvergenceEstimator::kCauchy ? "cauchy" : "crofton";
}

ConvergenceEstimator parse_convergence_estimator(std::string_view text) {
  if (text == "cauchy") return ConvergenceEstimator::kCauchy;
  if (text == "crofton") return ConvergenceEstimator::kCrofton;
  throw Error(ErrorCode::kInvalidArgument, "unknown estimator '" + std::string(text) + "'");
}

std::vector<ConvergenceRow> convergence_sweep(const SimplicialMesh& mesh, ConvergenceEstimator est,
                                              const std::vector<std::uint64_t>& ladder, int replicates,
                                              std::uint64_t seed, const ExecPolicy& exec) {
  if (replicates < 1) throw Error(ErrorCode::kInvalidArgument, "replicates must be positive");
  const double exact = exact_surface_area(mesh);
  const RandomStream root(seed);
  std::vector<ConvergenceRow> rows;
  rows.reserve(ladder.size());
  for (const std::uint64_t n : ladder) {
    ConvergenceRow row;
    row.n = n;
    double se2 = 0.0;
    double err2 = 0.0;
    for (int k = 0; k < replicates; ++k) {
      const RandomStream rs = root.substream(n).substream(static_cast<std::uint64_t>(k));
      const Estimate e =
          est == ConvergenceEstimator::kCauchy ? cauchy_area(mesh, n, rs, {}, exec) : crofton_area(mesh, n, rs, exec);
      row.value += e.value;
      se2 += e.std_error * e.std_error;
      err2 += (e.value - exact) * (e.value - exact);
    }
    row.value /= replicates;
    row.std_error = std::sqrt(se2 / replicates);
    row.abs_error = std::sqrt(err2 / replicates);
    rows.push_back(row);
  }
  return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::kInvalidArgument, "slope needs two or more points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "slope needs positive values");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw Error(ErrorCode::kInvalidArgument, "slope needs distinct x values");
  return (m * sxy - sx * sy) / denom;
}

}  // namespace igeo
