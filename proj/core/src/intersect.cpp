#include "igeo/intersect.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace igeo {

namespace {

const Vector& facet_vertex(const SimplicialMesh& mesh, std::size_t f, int i) {
  return mesh.vertex(static_cast<std::size_t>(mesh.facet(f)[static_cast<std::size_t>(i)]));
}

// Slab test for the infinite line against a padded box.
bool line_meets_box(const Vector& anchor, const Vector& dir, const double* lo, const double* hi, double pad) {
  double tmin = -std::numeric_limits<double>::infinity();
  double tmax = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < anchor.size(); ++k) {
    const double a = anchor[k];
    const double d = dir[k];
    const double l = lo[k] - pad;
    const double h = hi[k] + pad;
    if (std::abs(d) < 1e-300) {
      if (a < l || a > h) return false;
      continue;
    }
    double t1 = (l - a) / d;
    double t2 = (h - a) / d;
    if (t1 > t2) std::swap(t1, t2);
    tmin = std::max(tmin, t1);
    tmax = std::min(tmax, t2);
    if (tmin > tmax) return false;
  }
  return true;
}

double box_squared_distance(const Vector& p, const double* lo, const double* hi) {
  double sum = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double x = p[k];
    if (x < lo[k]) {
      sum += (lo[k] - x) * (lo[k] - x);
    } else if (x > hi[k]) {
      sum += (x - hi[k]) * (x - hi[k]);
    }
  }
  return sum;
}

template <class Visit>
void for_line_candidates(const SimplicialMesh& mesh, const OrientedLine& line, const QueryOptions& opts, Visit&& visit) {
  if (opts.brute_force) {
    for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
      if (!visit(f)) return;
    }
    return;
  }
  const double pad = kSliceRelTol * mesh.scale();
  const Vector& anchor = line.anchor();
  const Vector& dir = line.direction().coords();
  mesh.bvh().traverse([&](const double* lo, const double* hi) { return line_meets_box(anchor, dir, lo, hi, pad); },
                      visit);
}

enum class SliceClass { kMiss, kHit, kDegenerate };

// Whether the origin lies in conv(points) for `count` points of R^d. Assumes the
// origin is not within tolerance of the hull boundary.
bool hull_contains_origin(const Vector* points, int count, int d) {
  if (d == 1) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < count; ++i) {
      lo = std::min(lo, points[i][0]);
      hi = std::max(hi, points[i][0]);
    }
    return lo < 0.0 && hi > 0.0;
  }
  // Caratheodory: the origin is in the hull iff it is in some d-simplex of the points.
  const unsigned full = 1u << count;
  for (unsigned mask = 0; mask < full; ++mask) {
    if (std::popcount(mask) != d + 1) continue;
    int idx[kMaxDim + 1];
    int c = 0;
    for (int i = 0; i < count; ++i) {
      if (mask & (1u << i)) idx[c++] = i;
    }
    Matrix m(d, d);
    double hadamard = 1.0;
    for (int j = 0; j < d; ++j) {
      m.col(j) = points[idx[j + 1]] - points[idx[0]];
      hadamard *= m.col(j).norm();
    }
    Eigen::PartialPivLU<Matrix> lu(m);
    const double det = lu.determinant();
    if (!(std::abs(det) > 1e-14 * hadamard)) continue;
    const Vector mu = lu.solve(Vector(-points[idx[0]]));
    const double lambda0 = 1.0 - mu.sum();
    if (lambda0 >= 0.0 && mu.minCoeff() >= 0.0) return true;
  }
  return false;
}

// Classifies a facet against the fiber given its vertices' coordinates in the
// functional frame, shifted so the fiber is the origin.
SliceClass classify_projected(const Vector* q, int count, int d, double tol) {
  for (int j = 0; j < d; ++j) {
    bool all_pos = true;
    bool all_neg = true;
    for (int i = 0; i < count; ++i) {
      all_pos = all_pos && q[i][j] > tol;
      all_neg = all_neg && q[i][j] < -tol;
    }
    if (all_pos || all_neg) return SliceClass::kMiss;
  }
  if (d == 1) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < count; ++i) {
      if (std::abs(q[i][0]) <= tol) return SliceClass::kDegenerate;
      lo = std::min(lo, q[i][0]);
      hi = std::max(hi, q[i][0]);
    }
    return (lo < 0.0 && hi > 0.0) ? SliceClass::kHit : SliceClass::kMiss;
  }
  // The fiber must stay clear of every face of dimension < d; checking the
  // (d-1)-faces covers the smaller ones.
  const Vector origin = Vector::Zero(d);
  const unsigned full = 1u << count;
  for (unsigned mask = 0; mask < full; ++mask) {
    if (std::popcount(mask) != d) continue;
    Vector sub[kMaxDim];
    int c = 0;
    for (int i = 0; i < count; ++i) {
      if (mask & (1u << i)) sub[c++] = q[i];
    }
    if (point_simplex_distance(origin, sub, c) <= tol) return SliceClass::kDegenerate;
  }
  return hull_contains_origin(q, count, d) ? SliceClass::kHit : SliceClass::kMiss;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

std::optional<HitRecord> intersect_ray_facet(const OrientedLine& line, const SimplicialMesh& mesh, std::size_t facet) {
  const int n = mesh.dim();
  if (line.dim() != n) throw Error(ErrorCode::kInvalidArgument, "line and mesh dimensions differ");
  if (mesh.is_degenerate(facet)) return std::nullopt;
  const Vector& v0 = facet_vertex(mesh, facet, 0);
  const Vector& dir = line.direction().coords();

  Matrix m(n, n);
  double hadamard = 1.0;
  for (int j = 1; j < n; ++j) {
    m.col(j - 1) = facet_vertex(mesh, facet, j) - v0;
    hadamard *= m.col(j - 1).norm();
  }
  m.col(n - 1) = -dir;
  const Vector rhs = line.anchor() - v0;

  Eigen::PartialPivLU<Matrix> lu(m);
  const double det = lu.determinant();
  if (!(std::abs(det) > kDeterminantRelTol * hadamard)) {
    // Parallel: only a line lying in the facet's hyperplane is a (degenerate) contact.
    if (std::abs(mesh.normal(facet).dot(rhs)) > kSliceRelTol * mesh.scale()) return std::nullopt;
    HitRecord rec;
    rec.facet = facet;
    rec.t = dir.dot(v0 - line.anchor());
    rec.barycentric = Vector::Constant(n, 1.0 / n);
    rec.degenerate = true;
    return rec;
  }
  const Vector x = lu.solve(rhs);
  HitRecord rec;
  rec.facet = facet;
  rec.t = x[n - 1];
  rec.barycentric.resize(n);
  double rest = 0.0;
  for (int j = 1; j < n; ++j) {
    rec.barycentric[j] = x[j - 1];
    rest += x[j - 1];
  }
  rec.barycentric[0] = 1.0 - rest;
  const double min_coord = rec.barycentric.minCoeff();
  if (min_coord < -kBarycentricTol) return std::nullopt;
  rec.degenerate = min_coord <= kBarycentricTol;
  return rec;
}

LineHits collect_line_hits(const OrientedLine& line, const SimplicialMesh& mesh, const QueryOptions& opts) {
  LineHits hits;
  for_line_candidates(mesh, line, opts, [&](std::size_t f) {
    if (const auto rec = intersect_ray_facet(line, mesh, f)) {
      if (rec->degenerate) {
        ++hits.degenerate;
      } else {
        ++hits.count;
      }
    }
    return true;
  });
  return hits;
}

int count_line_mesh(const OrientedLine& line, const SimplicialMesh& mesh, RandomStream& rs, const QueryOptions& opts) {
  const int n = mesh.dim();
  OrientedLine current = line;
  for (int attempt = 0;; ++attempt) {
    const LineHits hits = collect_line_hits(current, mesh, opts);
    const bool parity_ok = !mesh.closed() || hits.count % 2 == 0;
    if (hits.degenerate == 0 && parity_ok) return hits.count;
    if (attempt == kMaxJitterRetries) break;
    Vector g(n);
    do {
      for (int k = 0; k < n; ++k) g[k] = rs.normal();
      g -= line.direction().dot(g) * line.direction().coords();
    } while (g.squaredNorm() < 1e-300);
    g *= kJitterRel * mesh.scale() / g.norm();
    current = OrientedLine(line.direction(), line.anchor() + g);
  }
  throw Error(ErrorCode::kPersistentDegeneracy,
              "line stayed degenerate after " + std::to_string(kMaxJitterRetries) + " jitters");
}

FiberFamily::FiberFamily(const Matrix& target) : functionals_(target) {
  const int n = static_cast<int>(target.rows());
  const int d = static_cast<int>(target.cols());
  if (d < 1 || d > n - 1) throw Error(ErrorCode::kInvalidArgument, "fiber family needs 1 <= d <= n-1");
  if ((target.transpose() * target - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::kInvalidArgument, "fiber functionals must be orthonormal");
  }
  if (d == n - 1) line_dir_.emplace(orthonormal_complement(target).col(0));
}

int FiberFamily::components(const SimplicialMesh& mesh, const Vector& u, const QueryOptions& opts) const {
  if (line_dir_) {
    const LineHits hits = collect_line_hits(OrientedLine(*line_dir_, u), mesh, opts);
    if (hits.degenerate > 0 || (mesh.closed() && hits.count % 2 != 0)) {
      throw Error(ErrorCode::kDegenerateSlice, "line fiber touches a ridge or lies in a facet");
    }
    return hits.count;
  }

  const int n = ambient_dim();
  const int d = target_dim();
  const double tol = kSliceRelTol * mesh.scale();
  const Vector level = functionals_.transpose() * u;

  std::vector<std::size_t> crossed;
  std::vector<Vector> projected;  // n entries per crossed facet
  auto project = [&](std::size_t f, Vector* q) {
    for (int i = 0; i < n; ++i) q[i] = functionals_.transpose() * facet_vertex(mesh, f, i) - level;
  };
  auto visit = [&](std::size_t f) {
    if (mesh.is_degenerate(f)) return true;
    Vector q[kMaxDim];
    project(f, q);
    switch (classify_projected(q, n, d, tol)) {
      case SliceClass::kDegenerate:
        throw Error(ErrorCode::kDegenerateSlice, "fiber grazes a lower-dimensional face");
      case SliceClass::kHit:
        crossed.push_back(f);
        projected.insert(projected.end(), q, q + n);
        break;
      case SliceClass::kMiss:
        break;
    }
    return true;
  };
  if (opts.brute_force) {
    for (std::size_t f = 0; f < mesh.num_facets(); ++f) visit(f);
  } else {
    mesh.bvh().traverse(
        [&](const double* lo, const double* hi) {
          for (int j = 0; j < d; ++j) {
            double mid = 0.0;
            double half = 0.0;
            for (int k = 0; k < n; ++k) {
              mid += functionals_(k, j) * 0.5 * (lo[k] + hi[k]);
              half += std::abs(functionals_(k, j)) * 0.5 * (hi[k] - lo[k]);
            }
            if (std::abs(mid - level[j]) > half + tol) return false;
          }
          return true;
        },
        visit);
  }
  if (crossed.empty()) return 0;

  // Traversal order differs between BVH and brute force; sort for lookup.
  std::vector<std::size_t> order(crossed.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return crossed[a] < crossed[b]; });
  std::vector<std::size_t> sorted(crossed.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = crossed[order[i]];

  UnionFind uf(crossed.size());
  for (std::size_t slot = 0; slot < crossed.size(); ++slot) {
    const std::size_t f = crossed[slot];
    const Vector* q = &projected[slot * static_cast<std::size_t>(n)];
    for (int local = 0; local < n; ++local) {
      const int g = mesh.neighbor(f, local);
      if (g < 0) continue;
      const auto it = std::lower_bound(sorted.begin(), sorted.end(), static_cast<std::size_t>(g));
      if (it == sorted.end() || *it != static_cast<std::size_t>(g)) continue;
      Vector ridge[kMaxDim];
      int c = 0;
      for (int i = 0; i < n; ++i) {
        if (i != local) ridge[c++] = q[i];
      }
      if (hull_contains_origin(ridge, c, d)) {
        uf.unite(static_cast<int>(slot), static_cast<int>(order[static_cast<std::size_t>(it - sorted.begin())]));
      }
    }
  }
  int count = 0;
  for (std::size_t slot = 0; slot < crossed.size(); ++slot) {
    if (uf.find(static_cast<int>(slot)) == static_cast<int>(slot)) ++count;
  }
  return count;
}

bool FiberFamily::hits(const SimplicialMesh& mesh, const Vector& u, const QueryOptions& opts) const {
  bool found = false;
  bool degenerate = false;
  if (line_dir_) {
    const OrientedLine line(*line_dir_, u);
    for_line_candidates(mesh, line, opts, [&](std::size_t f) {
      if (const auto rec = intersect_ray_facet(line, mesh, f)) {
        if (!rec->degenerate) {
          found = true;
          return false;
        }
        degenerate = true;
      }
      return true;
    });
  } else {
    const int n = ambient_dim();
    const int d = target_dim();
    const double tol = kSliceRelTol * mesh.scale();
    const Vector level = functionals_.transpose() * u;
    auto visit = [&](std::size_t f) {
      if (mesh.is_degenerate(f)) return true;
      Vector q[kMaxDim];
      for (int i = 0; i < n; ++i) q[i] = functionals_.transpose() * facet_vertex(mesh, f, i) - level;
      switch (classify_projected(q, n, d, tol)) {
        case SliceClass::kHit:
          found = true;
          return false;
        case SliceClass::kDegenerate:
          degenerate = true;
          break;
        case SliceClass::kMiss:
          break;
      }
      return true;
    };
    if (opts.brute_force) {
      for (std::size_t f = 0; f < mesh.num_facets() && visit(f); ++f) {
      }
    } else {
      mesh.bvh().traverse(
          [&](const double* lo, const double* hi) {
            for (int j = 0; j < d; ++j) {
              double mid = 0.0;
              double half = 0.0;
              for (int k = 0; k < n; ++k) {
                mid += functionals_(k, j) * 0.5 * (lo[k] + hi[k]);
                half += std::abs(functionals_(k, j)) * 0.5 * (hi[k] - lo[k]);
              }
              if (std::abs(mid - level[j]) > half + tol) return false;
            }
            return true;
          },
          visit);
    }
  }
  if (found) return true;
  if (degenerate) throw Error(ErrorCode::kDegenerateSlice, "fiber only touches the mesh degenerately");
  return false;
}

int slice_components(const AffineFlat& flat, const SimplicialMesh& mesh, const QueryOptions& opts) {
  if (flat.ambient_dim() != mesh.dim() || flat.dim() >= mesh.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "slicing flat must have dimension 1..n-1");
  }
  return FiberFamily(orthonormal_complement(flat.basis())).components(mesh, flat.offset(), opts);
}

bool flat_hits_mesh(const AffineFlat& flat, const SimplicialMesh& mesh, const QueryOptions& opts) {
  if (flat.ambient_dim() != mesh.dim() || flat.dim() >= mesh.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "flat must have dimension 1..n-1");
  }
  return FiberFamily(orthonormal_complement(flat.basis())).hits(mesh, flat.offset(), opts);
}

double point_simplex_distance(const Vector& p, const Vector* points, int count) {
  if (count == 1) return (p - points[0]).norm();
  const int k = count - 1;
  Matrix edges(p.size(), k);
  for (int j = 0; j < k; ++j) edges.col(j) = points[j + 1] - points[0];
  const Matrix gram = edges.transpose() * edges;
  Eigen::PartialPivLU<Matrix> lu(gram);
  double scale = 1.0;
  for (int j = 0; j < k; ++j) scale *= gram(j, j);
  const bool well_posed = std::abs(lu.determinant()) > 1e-20 * scale && scale > 0.0;

  Vector lambda(count);
  if (well_posed) {
    const Vector mu = lu.solve(Vector(edges.transpose() * (p - points[0])));
    lambda[0] = 1.0 - mu.sum();
    for (int j = 0; j < k; ++j) lambda[j + 1] = mu[j];
    if (lambda.minCoeff() >= 0.0) return (p - points[0] - edges * mu).norm();
  }
  double best = std::numeric_limits<double>::infinity();
  for (int drop = 0; drop < count; ++drop) {
    if (well_posed && lambda[drop] >= 0.0) continue;
    Vector sub[kMaxDim + 1];
    int c = 0;
    for (int i = 0; i < count; ++i) {
      if (i != drop) sub[c++] = points[i];
    }
    best = std::min(best, point_simplex_distance(p, sub, c));
  }
  return best;
}

namespace {
double facet_distance(const Vector& p, const SimplicialMesh& mesh, std::size_t f) {
  Vector pts[kMaxDim];
  for (int i = 0; i < mesh.dim(); ++i) pts[i] = facet_vertex(mesh, f, i);
  return point_simplex_distance(p, pts, mesh.dim());
}
}  // namespace

double point_mesh_distance(const Vector& p, const SimplicialMesh& mesh, const QueryOptions& opts) {
  if (p.size() != mesh.dim()) throw Error(ErrorCode::kInvalidArgument, "point and mesh dimensions differ");
  double best = std::numeric_limits<double>::infinity();
  auto visit = [&](std::size_t f) {
    if (!mesh.is_degenerate(f)) {
      const double plane = std::abs(mesh.normal(f).dot(p - facet_vertex(mesh, f, 0)));
      if (plane >= best) return true;
    }
    best = std::min(best, facet_distance(p, mesh, f));
    return true;
  };
  if (opts.brute_force) {
    for (std::size_t f = 0; f < mesh.num_facets(); ++f) visit(f);
  } else {
    mesh.bvh().traverse([&](const double* lo, const double* hi) { return box_squared_distance(p, lo, hi) < best * best; },
                        visit);
  }
  return best;
}

bool within_distance(const Vector& p, const SimplicialMesh& mesh, double eps, const QueryOptions& opts) {
  if (p.size() != mesh.dim()) throw Error(ErrorCode::kInvalidArgument, "point and mesh dimensions differ");
  bool found = false;
  const double eps2 = eps * eps;
  auto visit = [&](std::size_t f) {
    if (!mesh.is_degenerate(f)) {
      if (std::abs(mesh.normal(f).dot(p - facet_vertex(mesh, f, 0))) >= eps) return true;
    }
    if (facet_distance(p, mesh, f) < eps) {
      found = true;
      return false;
    }
    return true;
  };
  if (opts.brute_force) {
    for (std::size_t f = 0; f < mesh.num_facets() && visit(f); ++f) {
    }
  } else {
    mesh.bvh().traverse([&](const double* lo, const double* hi) { return box_squared_distance(p, lo, hi) < eps2; },
                        visit);
  }
  return found;
}

}  // namespace igeo
