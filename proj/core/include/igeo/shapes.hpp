#pragma once

// Deterministic test hypersurfaces. Every generator returns a closed,
// consistently and outward oriented mesh.

#include <span>

#include "igeo/mesh.hpp"

namespace igeo::shapes {

/// n=2: regular polygon with 4*2^refinement edges (first vertex on +x).
/// n=3: icosphere with 20*4^refinement facets.
/// n=4: 16-cell boundary, each tetrahedron split 8^refinement ways, projected to the sphere.
SimplicialMesh make_sphere(int n, int refinement, double radius);

/// Axis-aligned box centered at the origin; each (n-1)-face is split into
/// (n-1)! Kuhn simplices.
SimplicialMesh make_box(int n, std::span<const double> half_extents);

/// Radial star. n=2: 2*spikes*2^refinement vertices on
///   rho(theta) = r_in + (r_out - r_in) (1 + cos(spikes theta)) / 2.
/// n=3: icosphere(refinement) vertices scaled by
///   rho = r_in + (r_out - r_in) (1 + sin^k(polar) cos(k azimuth)) / 2,  k = spikes.
SimplicialMesh make_star(int n, int spikes, double r_in, double r_out, int refinement);

/// Reuleaux triangle of the given width (centroid at the origin); three arcs
/// of radius `width`, 2^refinement edges each.
SimplicialMesh make_reuleaux(double width, int refinement);

/// Torus around the z axis with 8*2^refinement major and 4*2^refinement minor segments.
SimplicialMesh make_torus(double major_radius, double minor_radius, int refinement);

/// True when no vertex lies outside any facet's supporting half-space by more
/// than `tol` times the mesh scale.
bool is_convex(const SimplicialMesh& mesh, double tol = 1e-9);

}  // namespace igeo::shapes
