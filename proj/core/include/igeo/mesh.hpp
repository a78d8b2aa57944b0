#pragma once

// Closed oriented simplicial hypersurfaces in R^n and their exact reductions.
//
// A facet is an (n-1)-simplex given by n vertex indices. Orientation follows
// the vertex order: the facet normal N satisfies det[N, v1-v0, ..., v_{n-1}-v0] > 0,
// and a mesh is outward oriented when its enclosed volume is positive.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "igeo/bvh.hpp"
#include "igeo/types.hpp"

namespace igeo {

/// Facet is degenerate when sqrt(det(B^T B)) < kDegeneracyRelTol * (max edge)^(n-1).
inline constexpr double kDegeneracyRelTol = 1e-12;

struct Ball {
  Vector center;
  double radius = 0.0;
};

class SimplicialMesh {
 public:
  /// `facets` holds num_facets * dim vertex indices. Throws kInvalidArgument on
  /// out-of-range or repeated indices and kUnsupportedDimension outside [2, kMaxDim].
  /// Degenerate facets are accepted here and reported by validate_mesh.
  SimplicialMesh(int dim, std::vector<Vector> vertices, std::vector<int> facets);

  int dim() const { return dim_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_facets() const { return measures_.size(); }

  const Vector& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  std::span<const int> facet(std::size_t f) const {
    return {facets_.data() + f * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  const std::vector<int>& facet_indices() const { return facets_; }

  bool is_degenerate(std::size_t f) const { return degenerate_[f] != 0; }
  /// Cached measure and unit normal; zero for degenerate facets.
  double measure(std::size_t f) const { return measures_[f]; }
  const Vector& normal(std::size_t f) const { return normals_[f]; }

  /// Facet across the ridge opposite local vertex `local`, or -1 when that
  /// ridge does not have exactly two incident facets.
  int neighbor(std::size_t f, int local) const {
    return neighbors_[f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(local)];
  }

  const Ball& ball() const { return ball_; }
  /// Axis-aligned bounding box of all vertices.
  const Vector& box_lo() const { return box_lo_; }
  const Vector& box_hi() const { return box_hi_; }
  /// Length scale for absolute tolerances (the bounding radius).
  double scale() const { return ball_.radius; }

  const FacetBvh& bvh() const { return bvh_; }
  const double* facet_box_lo(std::size_t f) const { return &facet_lo_[f * static_cast<std::size_t>(dim_)]; }
  const double* facet_box_hi(std::size_t f) const { return &facet_hi_[f * static_cast<std::size_t>(dim_)]; }

  struct RidgeIncidence {
    std::vector<int> vertices;  // sorted
    std::vector<std::size_t> facets;
    std::vector<int> signs;     // induced orientation per incident facet
  };
  const std::vector<RidgeIncidence>& ridges() const { return ridges_; }
  bool closed() const { return closed_; }

  /// Same vertices, every facet orientation reversed.
  SimplicialMesh flipped() const;

  /// Mesh with `fn` applied to every vertex (facets unchanged).
  template <class Fn>
  SimplicialMesh mapped(Fn&& fn) const {
    std::vector<Vector> out;
    out.reserve(vertices_.size());
    for (const Vector& v : vertices_) out.push_back(fn(v));
    return SimplicialMesh(dim_, std::move(out), facets_);
  }

 private:
  int dim_;
  std::vector<Vector> vertices_;
  std::vector<int> facets_;
  std::vector<double> measures_;
  std::vector<Vector> normals_;
  std::vector<char> degenerate_;
  std::vector<int> neighbors_;
  std::vector<RidgeIncidence> ridges_;
  bool closed_ = false;
  Ball ball_;
  Vector box_lo_;
  Vector box_hi_;
  std::vector<double> facet_lo_;
  std::vector<double> facet_hi_;
  FacetBvh bvh_;
};

/// (n-1)-volume sqrt(det(B^T B)) / (n-1)!; throws kDegenerateFacet.
double facet_measure(const SimplicialMesh& mesh, std::size_t f);
/// Unit normal induced by the facet orientation; throws kDegenerateFacet.
UnitDirection facet_normal(const SimplicialMesh& mesh, std::size_t f);

double exact_surface_area(const SimplicialMesh& mesh);

/// Signed volume (1/n) sum_f (v0_f . N_f) |f|. Throws kNotClosed.
double enclosed_volume(const SimplicialMesh& mesh);

struct ValidationReport {
  std::vector<std::vector<int>> boundary_ridges;      // one incident facet
  std::vector<std::vector<int>> nonmanifold_ridges;   // three or more
  std::vector<std::vector<int>> inconsistent_ridges;  // same induced orientation twice
  std::vector<std::size_t> degenerate_facets;
  double signed_volume = 0.0;

  bool closed() const { return boundary_ridges.empty() && nonmanifold_ridges.empty(); }
  bool consistently_oriented() const { return inconsistent_ridges.empty(); }
  bool outward() const { return signed_volume > 0.0; }
  bool ok() const { return closed() && consistently_oriented() && degenerate_facets.empty() && outward(); }
  std::string summary() const;
};

ValidationReport validate_mesh(const SimplicialMesh& mesh);

/// Centroid-of-vertices center with the max-distance radius (within 2x of optimal).
Ball bounding_ball(const SimplicialMesh& mesh);

}  // namespace igeo
