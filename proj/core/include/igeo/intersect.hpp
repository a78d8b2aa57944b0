#pragma once

// Line and flat queries against a simplicial mesh.
//
// Degenerate configurations (a line through a ridge or vertex, a flat grazing a
// lower-dimensional face) form a measure-zero set for every sampling measure
// used here. They are detected with explicit tolerances and either resolved by
// jittering the query (lines) or reported so the caller can resample (flats).

#include <cstddef>
#include <optional>

#include "igeo/mesh.hpp"
#include "igeo/random.hpp"
#include "igeo/types.hpp"

namespace igeo {

/// Barycentric coordinates within this distance of zero mark a hit degenerate.
inline constexpr double kBarycentricTol = 1e-9;
/// |det| below this times the Hadamard bound marks a line parallel to a facet.
inline constexpr double kDeterminantRelTol = 1e-12;
/// Flat-to-face distances below this times the mesh scale are degenerate.
inline constexpr double kSliceRelTol = 1e-9;
/// Anchor jitter, relative to the bounding radius, used to escape degenerate lines.
inline constexpr double kJitterRel = 1e-7;
inline constexpr int kMaxJitterRetries = 8;

struct QueryOptions {
  /// Test every facet instead of walking the BVH.
  bool brute_force = false;
};

struct HitRecord {
  std::size_t facet = 0;
  double t = 0.0;
  Vector barycentric;  // n coordinates, vertex order of the facet
  bool degenerate = false;
};

/// Solves [v1-v0 ... v_{n-1}-v0 | -d] [lambda_1..lambda_{n-1}; t] = anchor - v0.
std::optional<HitRecord> intersect_ray_facet(const OrientedLine& line, const SimplicialMesh& mesh, std::size_t facet);

struct LineHits {
  int count = 0;        // non-degenerate hits
  int degenerate = 0;   // degenerate hits
};
/// Raw facet-wise hit tally, no retry.
LineHits collect_line_hits(const OrientedLine& line, const SimplicialMesh& mesh, const QueryOptions& opts = {});

/// Number of facets crossed by the line. Degenerate or odd tallies trigger up to
/// kMaxJitterRetries anchor perturbations drawn from `rs`; throws
/// Error(kPersistentDegeneracy) when none succeeds.
int count_line_mesh(const OrientedLine& line, const SimplicialMesh& mesh, RandomStream& rs,
                    const QueryOptions& opts = {});

/// Family of parallel fibers {u + span(target)^perp}, described by the
/// orthonormal functionals spanning `target`.
class FiberFamily {
 public:
  /// `target` is n x d column-orthonormal, 1 <= d <= n-1.
  explicit FiberFamily(const Matrix& target);

  int ambient_dim() const { return static_cast<int>(functionals_.rows()); }
  int target_dim() const { return static_cast<int>(functionals_.cols()); }
  int fiber_dim() const { return ambient_dim() - target_dim(); }
  const Matrix& functionals() const { return functionals_; }

  /// Connected components of (fiber through u) cap mesh; pieces are joined only
  /// through shared ridges. Throws Error(kDegenerateSlice).
  int components(const SimplicialMesh& mesh, const Vector& u, const QueryOptions& opts = {}) const;

  /// Whether the fiber through u meets the mesh; exits on the first robust
  /// crossing. Throws Error(kDegenerateSlice) when only degenerate contacts exist.
  bool hits(const SimplicialMesh& mesh, const Vector& u, const QueryOptions& opts = {}) const;

 private:
  Matrix functionals_;
  std::optional<UnitDirection> line_dir_;  // set when fibers are lines
};

/// Components of flat cap mesh for a flat of dimension 1..n-1.
int slice_components(const AffineFlat& flat, const SimplicialMesh& mesh, const QueryOptions& opts = {});
bool flat_hits_mesh(const AffineFlat& flat, const SimplicialMesh& mesh, const QueryOptions& opts = {});

/// Euclidean distance from p to the closest facet.
double point_mesh_distance(const Vector& p, const SimplicialMesh& mesh, const QueryOptions& opts = {});

/// dist(p, mesh) < eps, with BVH and supporting-plane pruning.
bool within_distance(const Vector& p, const SimplicialMesh& mesh, double eps, const QueryOptions& opts = {});

/// Distance from p to conv(points[0..count)) in any dimension (recursive face descent).
double point_simplex_distance(const Vector& p, const Vector* points, int count);

}  // namespace igeo
