#include "igeo/estimators.hpp"

#include <cmath>
#include <sstream>

#include "igeo/intersect.hpp"
#include "igeo/measures.hpp"
#include "igeo/samplers.hpp"

namespace igeo {

namespace {

constexpr ExecPolicy kSequential{1};

void require_samples(std::uint64_t n, std::uint64_t min, const char* what) {
  if (n < min) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be at least " + std::to_string(min));
  }
}

void require_target_dim(const SimplicialMesh& mesh, const AffineFlat& flat) {
  if (flat.ambient_dim() != mesh.dim() || flat.dim() < 1 || flat.dim() > mesh.dim() - 1) {
    throw Error(ErrorCode::kInvalidArgument, "target flat must have dimension 1..n-1 in the mesh's space");
  }
}

// Shared sampler for projections onto a d-flat: u uniform in the radius-R d-ball
// around the projected bounding-ball center, fiber u + flat^perp.
template <class Score>
Estimate fiber_estimate(const SimplicialMesh& mesh, const AffineFlat& flat, std::uint64_t samples,
                        const RandomStream& rs, const ExecPolicy& exec, double scale_factor, Score&& score) {
  require_target_dim(mesh, flat);
  require_samples(samples, 1, "sample count");
  const Ball& ball = mesh.ball();
  const int d = flat.dim();
  const Matrix& basis = flat.basis();
  const FiberFamily fibers(basis);
  const Vector center = basis.transpose() * ball.center;
  const double scale = scale_factor * measures::ball_volume_omega(d) * std::pow(ball.radius, d);
  const RunningStats stats = accumulate_samples(samples, exec, [&](std::uint64_t i, RunningStats& acc) {
    RandomStream s = rs.substream(i);
    const Vector y = center + ball.radius * sample_unit_ball(s, d);
    const Vector u = basis * y;
    try {
      acc.add(score(fibers, u));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateSlice) throw;
      acc.discard();
    }
  });
  return make_estimate(stats, scale, rs.seed());
}

}  // namespace

Estimate make_estimate(const RunningStats& stats, double scale, std::uint64_t seed) {
  Estimate e;
  e.value = scale * stats.mean;
  e.std_error = std::abs(scale) * stats.std_error();
  e.samples = stats.count;
  e.discarded = stats.discarded;
  e.seed = seed;
  return e;
}

std::string_view to_string(RVolumeMode mode) {
  return mode == RVolumeMode::kComponents ? "components" : "body_shadow";
}

RVolumeMode parse_rvolume_mode(std::string_view text) {
  if (text == "components") return RVolumeMode::kComponents;
  if (text == "body_shadow" || text == "body-shadow") return RVolumeMode::kBodyShadow;
  throw Error(ErrorCode::kInvalidArgument, "unknown r-volume mode '" + std::string(text) + "'");
}

double projected_area_exact(const SimplicialMesh& mesh, const UnitDirection& dir) {
  if (dir.dim() != mesh.dim()) throw Error(ErrorCode::kInvalidArgument, "direction and mesh dimensions differ");
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    total += std::abs(dir.dot(mesh.normal(f))) * mesh.measure(f);
  }
  return 0.5 * total;
}

Estimate projected_area_raycast(const SimplicialMesh& mesh, const UnitDirection& dir, std::uint64_t samples,
                                const RandomStream& rs, const ExecPolicy& exec) {
  require_samples(samples, 1, "ray count");
  const int n = mesh.dim();
  if (dir.dim() != n) throw Error(ErrorCode::kInvalidArgument, "direction and mesh dimensions differ");
  const Ball& ball = mesh.ball();
  Matrix axis(n, 1);
  axis.col(0) = dir.coords();
  const Matrix plane = orthonormal_complement(axis);
  const Vector center = ball.center - dir.dot(ball.center) * dir.coords();
  const double scale = 0.5 * measures::ball_volume_omega(n - 1) * std::pow(ball.radius, n - 1);
  const RunningStats stats = accumulate_samples(samples, exec, [&](std::uint64_t i, RunningStats& acc) {
    RandomStream s = rs.substream(i);
    const Vector through = center + plane * (ball.radius * sample_unit_ball(s, n - 1));
    try {
      acc.add(count_line_mesh(OrientedLine(dir, through), mesh, s));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPersistentDegeneracy) throw;
      acc.discard();
    }
  });
  return make_estimate(stats, scale, rs.seed());
}

Estimate cauchy_area(const SimplicialMesh& mesh, std::uint64_t directions, const RandomStream& rs,
                     const CauchyOptions& options, const ExecPolicy& exec) {
  require_samples(directions, 2, "direction count");
  const int n = mesh.dim();
  const double scale = measures::sphere_area_O(n - 1) / measures::ball_volume_omega(n - 1);
  const RunningStats stats = accumulate_samples(directions, exec, [&](std::uint64_t i, RunningStats& acc) {
    RandomStream s = rs.substream(i);
    const UnitDirection dir = options.halton ? halton_sphere(i, n) : sample_sphere(s, n);
    if (options.raycast_samples > 0) {
      const Estimate inner = projected_area_raycast(mesh, dir, options.raycast_samples, s.substream(1), kSequential);
      acc.discarded += inner.discarded;
      acc.add(inner.value);
    } else {
      acc.add(projected_area_exact(mesh, dir));
    }
  });
  return make_estimate(stats, scale, rs.seed());
}

Estimate crofton_area(const SimplicialMesh& mesh, std::uint64_t lines, const RandomStream& rs,
                      const ExecPolicy& exec) {
  require_samples(lines, 2, "line count");
  const int n = mesh.dim();
  const Ball& ball = mesh.ball();
  // line_measure_ball / (2 omega_{n-1}) = O_{n-1} R^{n-1} / 2
  const double scale = measures::line_measure_ball(n, ball.radius) / (2.0 * measures::ball_volume_omega(n - 1));
  const RunningStats stats = accumulate_samples(lines, exec, [&](std::uint64_t i, RunningStats& acc) {
    RandomStream s = rs.substream(i);
    const OrientedLine line = sample_line_meeting_ball(s, n, ball.center, ball.radius);
    try {
      acc.add(count_line_mesh(line, mesh, s));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPersistentDegeneracy) throw;
      acc.discard();
    }
  });
  return make_estimate(stats, scale, rs.seed());
}

Estimate tube_area(const SimplicialMesh& mesh, double epsilon, std::uint64_t points, const RandomStream& rs,
                   const ExecPolicy& exec) {
  require_samples(points, 1, "point count");
  const double radius = mesh.ball().radius;
  if (!(epsilon > 0.0) || !(epsilon < radius / 10.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tube epsilon must satisfy 0 < eps < R/10");
  }
  const int n = mesh.dim();
  const Vector lo = mesh.box_lo().array() - epsilon;
  const Vector width = (mesh.box_hi() - mesh.box_lo()).array() + 2.0 * epsilon;
  const double box_volume = width.prod();
  const RunningStats stats = accumulate_samples(points, exec, [&](std::uint64_t i, RunningStats& acc) {
    RandomStream s = rs.substream(i);
    Vector x(n);
    for (int k = 0; k < n; ++k) x[k] = lo[k] + width[k] * s.uniform();
    acc.add(within_distance(x, mesh, epsilon) ? 1.0 : 0.0);
  });
  return make_estimate(stats, box_volume / (2.0 * epsilon), rs.seed());
}

Estimate silhouette_volume(const SimplicialMesh& mesh, const AffineFlat& flat, std::uint64_t samples,
                           const RandomStream& rs, const ExecPolicy& exec) {
  return fiber_estimate(mesh, flat, samples, rs, exec, 1.0, [&](const FiberFamily& fibers, const Vector& u) {
    return fibers.hits(mesh, u) ? 1.0 : 0.0;
  });
}

Estimate projected_rvolume(const SimplicialMesh& mesh, const AffineFlat& flat, RVolumeMode mode,
                           std::uint64_t samples, const RandomStream& rs, const ExecPolicy& exec) {
  if (mode == RVolumeMode::kBodyShadow) return silhouette_volume(mesh, flat, samples, rs, exec);
  return fiber_estimate(mesh, flat, samples, rs, exec, 0.5, [&](const FiberFamily& fibers, const Vector& u) {
    return static_cast<double>(fibers.components(mesh, u));
  });
}

MeanVolume mean_rvolume(const SimplicialMesh& mesh, int r, RVolumeMode mode, std::uint64_t flats,
                        std::uint64_t inner, const RandomStream& rs, const ExecPolicy& exec) {
  const int n = mesh.dim();
  if (r < 1 || r > n - 1) throw Error(ErrorCode::kInvalidArgument, "mean r-volume needs 1 <= r <= n-1");
  require_samples(flats, 2, "flat count");
  require_samples(inner, 1, "inner sample count");
  const int d = n - r;
  const RunningStats stats = accumulate_samples(flats, exec, [&](std::uint64_t i, RunningStats& acc) {
    RandomStream s = rs.substream(i);
    const AffineFlat flat = sample_grassmannian(s, n, d);
    const Estimate e = projected_rvolume(mesh, flat, mode, inner, s.substream(1), kSequential);
    acc.discarded += e.discarded;
    acc.add(e.value);
  });
  MeanVolume out;
  out.r = r;
  out.mode = mode;
  out.grassmannian_volume = measures::grassmannian_volume(n, d);
  out.integral = make_estimate(stats, out.grassmannian_volume, rs.seed());
  out.mean = make_estimate(stats, 1.0, rs.seed());
  return out;
}

RecursionResult recursion_check(const SimplicialMesh& mesh, int r, RVolumeMode mode, const RecursionBudget& budget,
                                const RandomStream& rs, const ExecPolicy& exec) {
  const int n = mesh.dim();
  if (r < 1 || r > n - 1) throw Error(ErrorCode::kInvalidArgument, "recursion check needs 1 <= r <= n-1");
  require_samples(budget.outer, 2, "outer budget");
  require_samples(budget.inner, 1, "inner budget");

  RecursionResult out;
  out.lhs = mean_rvolume(mesh, r, mode, budget.outer, budget.inner, rs.substream(0), exec).integral;

  // Inner mean (r-1)-volume of the shadow on a hyperplane H, as a one-flat sample
  // over G_{n-1,n-r} inside H. At r = 1 the flat is H itself and m(G_{n-1,n-1}) = 1.
  const RandomStream root = rs.substream(1);
  const double inner_mass = measures::grassmannian_volume(n - 1, n - r);
  const RunningStats stats = accumulate_samples(budget.outer, exec, [&](std::uint64_t i, RunningStats& acc) {
    RandomStream s = root.substream(i);
    const AffineFlat hyperplane = sample_grassmannian(s, n, n - 1);
    Matrix target = hyperplane.basis();
    if (r > 1) target = hyperplane.basis() * sample_grassmannian(s, n - 1, n - r).basis();
    const Estimate e =
        projected_rvolume(mesh, AffineFlat::through_origin(target), mode, budget.inner, s.substream(1), kSequential);
    acc.discarded += e.discarded;
    acc.add(inner_mass * e.value);
  });
  const double outer_scale = (2.0 / measures::sphere_area_O(r - 1)) * measures::grassmannian_volume(n, n - 1);
  out.rhs = make_estimate(stats, outer_scale, rs.seed());

  const double denom = std::max(std::abs(out.lhs.value), std::abs(out.rhs.value));
  out.rel_gap = denom > 0.0 ? std::abs(out.lhs.value - out.rhs.value) / denom : 0.0;
  out.combined_rel_std_error = denom > 0.0 ? std::hypot(out.lhs.std_error, out.rhs.std_error) / denom : 0.0;

  const auto starved = [](const Estimate& e) { return e.value == 0.0 || e.std_error > 0.2 * std::abs(e.value); };
  if (starved(out.lhs) || starved(out.rhs)) {
    std::ostringstream os;
    os << "standard errors exceed 20% of values (lhs " << out.lhs.value << " +- " << out.lhs.std_error << ", rhs "
       << out.rhs.value << " +- " << out.rhs.std_error << ")";
    throw Error(ErrorCode::kInsufficientBudget, os.str());
  }
  return out;
}

}  // namespace igeo
