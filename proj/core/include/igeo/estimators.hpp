#pragma once

// Surface-area and projected-volume estimators from integral geometry.
//
// Every stochastic estimator draws sample i from `rs.substream(i)` and reduces
// through accumulate_samples, so a fixed seed gives bit-identical results for
// any worker count.

#include <cstdint>
#include <string>
#include <string_view>

#include "igeo/mesh.hpp"
#include "igeo/parallel.hpp"
#include "igeo/random.hpp"
#include "igeo/types.hpp"

namespace igeo {

/// Monte Carlo result. std_error is the sample standard deviation of the
/// per-sample estimator divided by sqrt(samples).
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t discarded = 0;
  std::uint64_t seed = 0;
};

Estimate make_estimate(const RunningStats& stats, double scale, std::uint64_t seed);

/// How a projected r-volume counts the fibers over a point of the target flat.
enum class RVolumeMode {
  kComponents,  // half the number of connected components of the fiber slice
  kBodyShadow,  // 1 if the fiber meets the body, else 0 (silhouette)
};

std::string_view to_string(RVolumeMode mode);
/// Accepts "components", "body_shadow" and "body-shadow".
RVolumeMode parse_rvolume_mode(std::string_view text);

/// (1/2) sum_f |dir . N_f| |f|: the multiplicity-weighted projected area onto dir^perp.
double projected_area_exact(const SimplicialMesh& mesh, const UnitDirection& dir);

/// (omega_{n-1} R^{n-1} / 2) * mean line count, anchors uniform in the radius-R
/// disk of dir^perp around the projected bounding-ball center.
Estimate projected_area_raycast(const SimplicialMesh& mesh, const UnitDirection& dir, std::uint64_t samples,
                                const RandomStream& rs, const ExecPolicy& exec = {});

struct CauchyOptions {
  /// Use the Halton direction set (n in {2,3}) instead of pseudorandom directions.
  bool halton = false;
  /// When > 0, each direction's projected area is itself ray cast with this many lines.
  std::uint64_t raycast_samples = 0;
};

/// (O_{n-1} / omega_{n-1}) * mean over uniform directions of projected_area_exact.
Estimate cauchy_area(const SimplicialMesh& mesh, std::uint64_t directions, const RandomStream& rs,
                     const CauchyOptions& options = {}, const ExecPolicy& exec = {});

/// (O_{n-1} R^{n-1} / 2) * mean line count over lines meeting the bounding ball.
Estimate crofton_area(const SimplicialMesh& mesh, std::uint64_t lines, const RandomStream& rs,
                      const ExecPolicy& exec = {});

/// Volume of {x : dist(x, mesh) < eps} / (2 eps), sampled in the eps-inflated
/// bounding box. Needs 0 < eps < R/10.
Estimate tube_area(const SimplicialMesh& mesh, double epsilon, std::uint64_t points, const RandomStream& rs,
                   const ExecPolicy& exec = {});

/// d-volume of the body's shadow on span(flat.basis()), 1 <= d <= n-1.
Estimate silhouette_volume(const SimplicialMesh& mesh, const AffineFlat& flat, std::uint64_t samples,
                           const RandomStream& rs, const ExecPolicy& exec = {});

/// Projected d-volume onto span(flat.basis()) in the given mode.
Estimate projected_rvolume(const SimplicialMesh& mesh, const AffineFlat& flat, RVolumeMode mode,
                           std::uint64_t samples, const RandomStream& rs, const ExecPolicy& exec = {});

struct MeanVolume {
  int r = 0;
  RVolumeMode mode = RVolumeMode::kBodyShadow;
  double grassmannian_volume = 0.0;  // m(G_{n,n-r})
  Estimate integral;                 // I_r
  Estimate mean;                     // E = I_r / m(G_{n,n-r})
};

/// I_r = integral over G_{n,n-r} of the projected (n-r)-volume. The standard
/// error is the between-flat spread, which already carries the inner noise;
/// `discarded` counts inner samples.
MeanVolume mean_rvolume(const SimplicialMesh& mesh, int r, RVolumeMode mode, std::uint64_t flats,
                        std::uint64_t inner, const RandomStream& rs, const ExecPolicy& exec = {});

struct RecursionBudget {
  std::uint64_t outer = 256;
  std::uint64_t inner = 4096;
};

struct RecursionResult {
  Estimate lhs;
  Estimate rhs;
  double rel_gap = 0.0;                // |lhs - rhs| / max(|lhs|, |rhs|)
  double combined_rel_std_error = 0.0; // sqrt(se_l^2 + se_r^2) / max(|lhs|, |rhs|)
  bool agrees(double sigmas = 3.0) const { return rel_gap < sigmas * combined_rel_std_error; }
};

/// Checks I_r(K) = (2 / O_{r-1}) * integral over G_{n,n-1} of I^{(n-1)}_{r-1}(K'_{n-1}).
/// The shadow K' is never meshed: membership in its sub-shadows is a fiber test
/// against the original mesh. At r = 1 the inner term is the (n-1)-volume of the
/// shadow in the chosen mode. Throws Error(kInsufficientBudget) when either side's
/// standard error exceeds 20% of its value.
RecursionResult recursion_check(const SimplicialMesh& mesh, int r, RVolumeMode mode, const RecursionBudget& budget,
                                const RandomStream& rs, const ExecPolicy& exec = {});

}  // namespace igeo
