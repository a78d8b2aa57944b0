#include "igeo/mesh.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

namespace igeo {

namespace {

double factorial(int k) {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

// Sorts `ids` in place and returns the parity (+1/-1) of the sorting permutation.
int sort_with_parity(int* ids, int count) {
  int sign = 1;
  for (int i = 1; i < count; ++i) {
    for (int j = i; j > 0 && ids[j - 1] > ids[j]; --j) {
      std::swap(ids[j - 1], ids[j]);
      sign = -sign;
    }
  }
  return sign;
}

struct RidgeEntry {
  std::array<int, kMaxDim> key;
  std::size_t facet;
  int local;
  int sign;
};

}  // namespace

SimplicialMesh::SimplicialMesh(int dim, std::vector<Vector> vertices, std::vector<int> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {
  if (dim_ < 2 || dim_ > kMaxDim) {
    throw Error(ErrorCode::kUnsupportedDimension, "ambient dimension must be in [2, " + std::to_string(kMaxDim) + "]");
  }
  const auto n = static_cast<std::size_t>(dim_);
  if (facets_.size() % n != 0) throw Error(ErrorCode::kInvalidArgument, "facet index list length not a multiple of dim");
  for (const Vector& v : vertices_) {
    if (v.size() != dim_) throw Error(ErrorCode::kInvalidArgument, "vertex dimension mismatch");
    if (!v.allFinite()) throw Error(ErrorCode::kInvalidArgument, "non-finite vertex coordinate");
  }
  const std::size_t nf = facets_.size() / n;
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t i = 0; i < n; ++i) {
      const int id = facets_[f * n + i];
      if (id < 0 || static_cast<std::size_t>(id) >= vertices_.size()) {
        throw Error(ErrorCode::kInvalidArgument, "facet " + std::to_string(f) + " has out-of-range vertex index");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (facets_[f * n + j] == id) {
          throw Error(ErrorCode::kInvalidArgument, "facet " + std::to_string(f) + " repeats a vertex");
        }
      }
    }
  }

  // Per-facet measure, normal and box.
  measures_.assign(nf, 0.0);
  normals_.assign(nf, Vector::Zero(dim_));
  degenerate_.assign(nf, 0);
  facet_lo_.assign(nf * n, 0.0);
  facet_hi_.assign(nf * n, 0.0);
  const double fact = factorial(dim_ - 1);
  for (std::size_t f = 0; f < nf; ++f) {
    const std::span<const int> ids = facet(f);
    const Vector& v0 = vertices_[static_cast<std::size_t>(ids[0])];
    Matrix edges(dim_, dim_ - 1);
    for (int j = 1; j < dim_; ++j) edges.col(j - 1) = vertices_[static_cast<std::size_t>(ids[static_cast<std::size_t>(j)])] - v0;

    double max_edge = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        max_edge = std::max(max_edge, (vertices_[static_cast<std::size_t>(ids[a])] - vertices_[static_cast<std::size_t>(ids[b])]).norm());
      }
    }
    const Matrix gram = edges.transpose() * edges;
    const double gram_det = std::max(gram.determinant(), 0.0);
    const double gram_sqrt = std::sqrt(gram_det);

    // Cofactor expansion: N_i = (-1)^i det(E^T without column i), so that N.x = det[x; E^T].
    Vector cof(dim_);
    const Matrix et = edges.transpose();
    for (int i = 0; i < dim_; ++i) {
      Matrix minor(dim_ - 1, dim_ - 1);
      for (int c = 0, cc = 0; c < dim_; ++c) {
        if (c == i) continue;
        minor.col(cc++) = et.col(c);
      }
      cof[i] = ((i % 2) ? -1.0 : 1.0) * minor.determinant();
    }

    const bool degenerate = !(max_edge > 0.0) || gram_sqrt < kDegeneracyRelTol * std::pow(max_edge, dim_ - 1) ||
                            !(cof.norm() > 0.0);
    degenerate_[f] = degenerate ? 1 : 0;
    if (!degenerate) {
      measures_[f] = gram_sqrt / fact;
      normals_[f] = cof / cof.norm();
    }
    for (std::size_t k = 0; k < n; ++k) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = vertices_[static_cast<std::size_t>(ids[i])][static_cast<Eigen::Index>(k)];
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      facet_lo_[f * n + k] = lo;
      facet_hi_[f * n + k] = hi;
    }
  }

  // Ridge incidence and orientation by sorting ridge keys.
  std::vector<RidgeEntry> entries;
  entries.reserve(nf * n);
  for (std::size_t f = 0; f < nf; ++f) {
    const std::span<const int> ids = facet(f);
    for (int local = 0; local < dim_; ++local) {
      RidgeEntry e{};
      e.key.fill(-1);
      int c = 0;
      for (int i = 0; i < dim_; ++i) {
        if (i != local) e.key[static_cast<std::size_t>(c++)] = ids[static_cast<std::size_t>(i)];
      }
      const int parity = sort_with_parity(e.key.data(), dim_ - 1);
      e.facet = f;
      e.local = local;
      e.sign = ((local % 2) ? -1 : 1) * parity;
      entries.push_back(e);
    }
  }
  std::sort(entries.begin(), entries.end(), [](const RidgeEntry& a, const RidgeEntry& b) {
    return std::tie(a.key, a.facet, a.local) < std::tie(b.key, b.facet, b.local);
  });
  neighbors_.assign(nf * n, -1);
  closed_ = true;
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    while (j < entries.size() && entries[j].key == entries[i].key) ++j;
    RidgeIncidence ridge;
    ridge.vertices.assign(entries[i].key.begin(), entries[i].key.begin() + (dim_ - 1));
    for (std::size_t k = i; k < j; ++k) {
      ridge.facets.push_back(entries[k].facet);
      ridge.signs.push_back(entries[k].sign);
    }
    if (j - i == 2) {
      neighbors_[entries[i].facet * n + static_cast<std::size_t>(entries[i].local)] = static_cast<int>(entries[i + 1].facet);
      neighbors_[entries[i + 1].facet * n + static_cast<std::size_t>(entries[i + 1].local)] = static_cast<int>(entries[i].facet);
    } else {
      closed_ = false;
    }
    ridges_.push_back(std::move(ridge));
    i = j;
  }
  if (nf == 0) closed_ = false;

  // Bounding ball and box.
  box_lo_ = Vector::Constant(dim_, std::numeric_limits<double>::infinity());
  box_hi_ = Vector::Constant(dim_, -std::numeric_limits<double>::infinity());
  Vector centroid = Vector::Zero(dim_);
  for (const Vector& v : vertices_) {
    centroid += v;
    box_lo_ = box_lo_.cwiseMin(v);
    box_hi_ = box_hi_.cwiseMax(v);
  }
  if (!vertices_.empty()) centroid /= static_cast<double>(vertices_.size());
  double radius = 0.0;
  for (const Vector& v : vertices_) radius = std::max(radius, (v - centroid).norm());
  ball_.center = centroid;
  ball_.radius = radius;

  bvh_ = FacetBvh(dim_, facet_lo_, facet_hi_);
}

SimplicialMesh SimplicialMesh::flipped() const {
  std::vector<int> out = facets_;
  const auto n = static_cast<std::size_t>(dim_);
  for (std::size_t f = 0; f < num_facets(); ++f) std::swap(out[f * n], out[f * n + 1]);
  return SimplicialMesh(dim_, vertices_, std::move(out));
}

double facet_measure(const SimplicialMesh& mesh, std::size_t f) {
  if (mesh.is_degenerate(f)) throw Error(ErrorCode::kDegenerateFacet, "facet " + std::to_string(f));
  return mesh.measure(f);
}

UnitDirection facet_normal(const SimplicialMesh& mesh, std::size_t f) {
  if (mesh.is_degenerate(f)) throw Error(ErrorCode::kDegenerateFacet, "facet " + std::to_string(f));
  return UnitDirection(mesh.normal(f));
}

double exact_surface_area(const SimplicialMesh& mesh) {
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) total += facet_measure(mesh, f);
  return total;
}

namespace {
double signed_volume_unchecked(const SimplicialMesh& mesh) {
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    const Vector& v0 = mesh.vertex(static_cast<std::size_t>(mesh.facet(f)[0]));
    total += v0.dot(mesh.normal(f)) * mesh.measure(f);
  }
  return total / mesh.dim();
}
}  // namespace

double enclosed_volume(const SimplicialMesh& mesh) {
  if (!mesh.closed()) throw Error(ErrorCode::kNotClosed, "mesh has ridges without exactly two incident facets");
  return signed_volume_unchecked(mesh);
}

ValidationReport validate_mesh(const SimplicialMesh& mesh) {
  ValidationReport report;
  for (const auto& ridge : mesh.ridges()) {
    if (ridge.facets.size() == 1) {
      report.boundary_ridges.push_back(ridge.vertices);
    } else if (ridge.facets.size() > 2) {
      report.nonmanifold_ridges.push_back(ridge.vertices);
    } else if (ridge.signs[0] == ridge.signs[1]) {
      report.inconsistent_ridges.push_back(ridge.vertices);
    }
  }
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    if (mesh.is_degenerate(f)) report.degenerate_facets.push_back(f);
  }
  report.signed_volume = signed_volume_unchecked(mesh);
  return report;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (ok() ? "valid" : "invalid") << ": boundary_ridges=" << boundary_ridges.size()
     << " nonmanifold_ridges=" << nonmanifold_ridges.size() << " inconsistent_ridges=" << inconsistent_ridges.size()
     << " degenerate_facets=" << degenerate_facets.size() << " signed_volume=" << signed_volume;
  return os.str();
}

Ball bounding_ball(const SimplicialMesh& mesh) {
  if (mesh.num_vertices() == 0) throw Error(ErrorCode::kInvalidArgument, "empty mesh");
  return mesh.ball();
}

}  // namespace igeo
