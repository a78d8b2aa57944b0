#include "igeo/shapes.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

namespace igeo::shapes {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

class MidpointCache {
 public:
  explicit MidpointCache(std::vector<Vector>& vertices) : vertices_(vertices) {}

  int operator()(int a, int b) {
    const EdgeKey key = edge_key(a, b);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    vertices_.push_back(0.5 * (vertices_[static_cast<std::size_t>(a)] + vertices_[static_cast<std::size_t>(b)]));
    const int id = static_cast<int>(vertices_.size()) - 1;
    cache_.emplace(key, id);
    return id;
  }

 private:
  std::vector<Vector>& vertices_;
  std::map<EdgeKey, int> cache_;
};

// Reorders each facet so that det[v0 - center; v1 - v0; ...] > 0. Valid for
// meshes that are radial graphs around `center`.
void orient_about(int n, const std::vector<Vector>& vertices, std::vector<int>& facets, const Vector& center) {
  const auto dim = static_cast<std::size_t>(n);
  for (std::size_t f = 0; f < facets.size() / dim; ++f) {
    int* ids = &facets[f * dim];
    const Vector& v0 = vertices[static_cast<std::size_t>(ids[0])];
    Matrix m(n, n);
    m.row(0) = (v0 - center).transpose();
    for (int j = 1; j < n; ++j) m.row(j) = (vertices[static_cast<std::size_t>(ids[j])] - v0).transpose();
    if (m.determinant() < 0.0) std::swap(ids[0], ids[1]);
  }
}

void project_to_sphere(std::vector<Vector>& vertices, double radius) {
  for (Vector& v : vertices) v *= radius / v.norm();
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be positive and finite");
  }
}

void require_refinement(int refinement, int max) {
  if (refinement < 0 || refinement > max) {
    throw Error(ErrorCode::kInvalidArgument, "refinement must be in [0, " + std::to_string(max) + "]");
  }
}

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Vector vec3(double x, double y, double z) {
  Vector v(3);
  v << x, y, z;
  return v;
}

SimplicialMesh closed_polygon(std::vector<Vector> vertices) {
  const int count = static_cast<int>(vertices.size());
  double twice_area = 0.0;
  for (int i = 0; i < count; ++i) {
    const Vector& a = vertices[static_cast<std::size_t>(i)];
    const Vector& b = vertices[static_cast<std::size_t>((i + 1) % count)];
    twice_area += a[0] * b[1] - a[1] * b[0];
  }
  if (twice_area < 0.0) std::reverse(vertices.begin(), vertices.end());
  std::vector<int> facets;
  facets.reserve(static_cast<std::size_t>(2 * count));
  for (int i = 0; i < count; ++i) {
    facets.push_back(i);
    facets.push_back((i + 1) % count);
  }
  return SimplicialMesh(2, std::move(vertices), std::move(facets));
}

std::pair<std::vector<Vector>, std::vector<int>> icosphere_unit(int refinement) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vector> vertices = {
      vec3(-1, phi, 0), vec3(1, phi, 0), vec3(-1, -phi, 0), vec3(1, -phi, 0),
      vec3(0, -1, phi), vec3(0, 1, phi), vec3(0, -1, -phi), vec3(0, 1, -phi),
      vec3(phi, 0, -1), vec3(phi, 0, 1), vec3(-phi, 0, -1), vec3(-phi, 0, 1),
  };
  std::vector<int> facets = {0, 11, 5, 0, 5,  1, 0, 1, 7, 0, 7,  10, 0, 10, 11, 1, 5, 9, 5, 11,
                             4, 11, 10, 2, 10, 7, 6, 7, 1, 8, 3,  9, 4, 3,  4,  2, 3, 2, 6, 3,
                             6, 8,  3, 8, 9,  4, 9, 5, 2, 4, 11, 6, 2, 10, 8,  6, 7, 9, 8, 1};
  project_to_sphere(vertices, 1.0);
  for (int level = 0; level < refinement; ++level) {
    MidpointCache mid(vertices);
    std::vector<int> next;
    next.reserve(facets.size() * 4);
    for (std::size_t f = 0; f < facets.size() / 3; ++f) {
      const int a = facets[3 * f], b = facets[3 * f + 1], c = facets[3 * f + 2];
      const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      next.insert(next.end(), {a, ab, ca, b, bc, ab, c, ca, bc, ab, bc, ca});
    }
    facets = std::move(next);
    project_to_sphere(vertices, 1.0);
  }
  orient_about(3, vertices, facets, Vector::Zero(3));
  return {std::move(vertices), std::move(facets)};
}

SimplicialMesh sixteen_cell_sphere(int refinement, double radius) {
  std::vector<Vector> vertices;
  for (int k = 0; k < 4; ++k) {
    for (double s : {1.0, -1.0}) {
      Vector v = Vector::Zero(4);
      v[k] = s;
      vertices.push_back(v);
    }
  }
  std::vector<int> facets;
  for (int mask = 0; mask < 16; ++mask) {
    for (int k = 0; k < 4; ++k) facets.push_back(2 * k + ((mask >> k) & 1));
  }
  for (int level = 0; level < refinement; ++level) {
    MidpointCache mid(vertices);
    std::vector<int> next;
    next.reserve(facets.size() * 8);
    for (std::size_t f = 0; f < facets.size() / 4; ++f) {
      const int a = facets[4 * f], b = facets[4 * f + 1], c = facets[4 * f + 2], d = facets[4 * f + 3];
      const int ab = mid(a, b), ac = mid(a, c), ad = mid(a, d), bc = mid(b, c), bd = mid(b, d), cd = mid(c, d);
      // Four corner tetrahedra, then the inner octahedron cut along the ac-bd diagonal.
      next.insert(next.end(), {a, ab, ac, ad, b, ab, bc, bd, c, ac, bc, cd, d, ad, bd, cd});
      next.insert(next.end(), {ac, bd, ab, ad, ac, bd, ad, cd, ac, bd, cd, bc, ac, bd, bc, ab});
    }
    facets = std::move(next);
  }
  project_to_sphere(vertices, radius);
  orient_about(4, vertices, facets, Vector::Zero(4));
  return SimplicialMesh(4, std::move(vertices), std::move(facets));
}

}  // namespace

SimplicialMesh make_sphere(int n, int refinement, double radius) {
  require_positive(radius, "radius");
  switch (n) {
    case 2: {
      require_refinement(refinement, 20);
      const int count = 4 << refinement;
      std::vector<Vector> vertices;
      vertices.reserve(static_cast<std::size_t>(count));
      for (int j = 0; j < count; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / count;
        vertices.push_back(vec2(radius * std::cos(theta), radius * std::sin(theta)));
      }
      return closed_polygon(std::move(vertices));
    }
    case 3: {
      require_refinement(refinement, 7);
      auto [vertices, facets] = icosphere_unit(refinement);
      for (Vector& v : vertices) v *= radius;
      return SimplicialMesh(3, std::move(vertices), std::move(facets));
    }
    case 4:
      require_refinement(refinement, 4);
      return sixteen_cell_sphere(refinement, radius);
    default:
      throw Error(ErrorCode::kUnsupportedDimension, "make_sphere supports n in {2,3,4}");
  }
}

SimplicialMesh make_box(int n, std::span<const double> half_extents) {
  if (n < 2 || n > kMaxDim) throw Error(ErrorCode::kUnsupportedDimension, "make_box dimension out of range");
  if (static_cast<int>(half_extents.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "make_box needs one half extent per axis");
  }
  for (double h : half_extents) require_positive(h, "half extent");

  std::vector<Vector> vertices;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vector v(n);
    for (int k = 0; k < n; ++k) v[k] = ((mask >> k) & 1) ? half_extents[static_cast<std::size_t>(k)] : -half_extents[static_cast<std::size_t>(k)];
    vertices.push_back(v);
  }
  std::vector<int> facets;
  for (int axis = 0; axis < n; ++axis) {
    for (int side = 0; side < 2; ++side) {
      std::vector<int> free_axes;
      for (int k = 0; k < n; ++k) {
        if (k != axis) free_axes.push_back(k);
      }
      // Kuhn triangulation: one simplex per monotone path through the face's corners.
      std::vector<int> perm = free_axes;
      do {
        int mask = side << axis;
        facets.push_back(mask);
        for (int k : perm) {
          mask |= 1 << k;
          facets.push_back(mask);
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  orient_about(n, vertices, facets, Vector::Zero(n));
  return SimplicialMesh(n, std::move(vertices), std::move(facets));
}

SimplicialMesh make_star(int n, int spikes, double r_in, double r_out, int refinement) {
  if (spikes < 3) throw Error(ErrorCode::kInvalidArgument, "star needs at least 3 spikes");
  require_positive(r_in, "r_in");
  if (!(r_out >= r_in) || !std::isfinite(r_out)) throw Error(ErrorCode::kInvalidArgument, "star needs r_in <= r_out");
  const double amplitude = r_out - r_in;
  switch (n) {
    case 2: {
      require_refinement(refinement, 16);
      const int count = (2 * spikes) << refinement;
      std::vector<Vector> vertices;
      vertices.reserve(static_cast<std::size_t>(count));
      for (int j = 0; j < count; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / count;
        const double rho = r_in + amplitude * (1.0 + std::cos(spikes * theta)) / 2.0;
        vertices.push_back(vec2(rho * std::cos(theta), rho * std::sin(theta)));
      }
      return closed_polygon(std::move(vertices));
    }
    case 3: {
      require_refinement(refinement, 7);
      auto [vertices, facets] = icosphere_unit(refinement);
      for (Vector& v : vertices) {
        // sin^k(polar) cos(k azimuth) = Re((x + iy)^k) on the unit sphere: smooth at the poles.
        const double harmonic = std::pow(std::complex<double>(v[0], v[1]), spikes).real();
        v *= r_in + amplitude * (1.0 + harmonic) / 2.0;
      }
      return SimplicialMesh(3, std::move(vertices), std::move(facets));
    }
    default:
      throw Error(ErrorCode::kUnsupportedDimension, "make_star supports n in {2,3}");
  }
}

SimplicialMesh make_reuleaux(double width, int refinement) {
  require_positive(width, "width");
  require_refinement(refinement, 20);
  const double circumradius = width / std::sqrt(3.0);
  std::vector<Vector> corners;
  for (int k = 0; k < 3; ++k) {
    const double angle = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * k / 3.0;
    corners.push_back(vec2(circumradius * std::cos(angle), circumradius * std::sin(angle)));
  }
  const int per_arc = 1 << refinement;
  std::vector<Vector> vertices;
  for (int k = 0; k < 3; ++k) {
    // Arc from corner k to corner k+1, centered at the remaining corner.
    const Vector& from = corners[static_cast<std::size_t>(k)];
    const Vector& to = corners[static_cast<std::size_t>((k + 1) % 3)];
    const Vector& center = corners[static_cast<std::size_t>((k + 2) % 3)];
    const Vector a = from - center;
    const Vector b = to - center;
    const double start = std::atan2(a[1], a[0]);
    const double sweep = std::atan2(a[0] * b[1] - a[1] * b[0], a.dot(b));
    for (int j = 0; j < per_arc; ++j) {
      const double angle = start + sweep * j / per_arc;
      vertices.push_back(center + vec2(width * std::cos(angle), width * std::sin(angle)));
    }
  }
  return closed_polygon(std::move(vertices));
}

SimplicialMesh make_torus(double major_radius, double minor_radius, int refinement) {
  require_positive(minor_radius, "minor radius");
  if (!(major_radius > minor_radius) || !std::isfinite(major_radius)) {
    throw Error(ErrorCode::kInvalidArgument, "torus needs 0 < r < R");
  }
  require_refinement(refinement, 8);
  const int nu = 8 << refinement;
  const int nv = 4 << refinement;
  std::vector<Vector> vertices;
  vertices.reserve(static_cast<std::size_t>(nu * nv));
  for (int i = 0; i < nu; ++i) {
    const double u = 2.0 * std::numbers::pi * i / nu;
    for (int j = 0; j < nv; ++j) {
      const double v = 2.0 * std::numbers::pi * j / nv;
      const double ring = major_radius + minor_radius * std::cos(v);
      vertices.push_back(vec3(ring * std::cos(u), ring * std::sin(u), minor_radius * std::sin(v)));
    }
  }
  auto id = [nu, nv](int i, int j) { return ((i % nu) * nv) + (j % nv); };
  std::vector<int> facets;
  facets.reserve(static_cast<std::size_t>(6 * nu * nv));
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      facets.insert(facets.end(), {a, b, c, a, c, d});
    }
  }
  SimplicialMesh mesh(3, std::move(vertices), std::move(facets));
  if (enclosed_volume(mesh) < 0.0) return mesh.flipped();
  return mesh;
}

bool is_convex(const SimplicialMesh& mesh, double tol) {
  const double slack = tol * mesh.scale();
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    if (mesh.is_degenerate(f)) continue;
    const Vector& v0 = mesh.vertex(static_cast<std::size_t>(mesh.facet(f)[0]));
    for (const Vector& v : mesh.vertices()) {
      if (mesh.normal(f).dot(v - v0) > slack) return false;
    }
  }
  return true;
}

}  // namespace igeo::shapes
