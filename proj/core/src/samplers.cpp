#include "igeo/samplers.hpp"

#include <cmath>
#include <numbers>

namespace igeo {

namespace {

Vector gaussian(RandomStream& rs, int n) {
  Vector g(n);
  for (int k = 0; k < n; ++k) g[k] = rs.normal();
  return g;
}

void require_radius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidArgument, "sampling radius must be positive");
  }
}

}  // namespace

UnitDirection sample_sphere(RandomStream& rs, int n) {
  if (n < 2 || n > kMaxDim) throw Error(ErrorCode::kUnsupportedDimension, "sphere dimension out of range");
  while (true) {
    Vector g = gaussian(rs, n);
    if (g.squaredNorm() > 1e-300) return UnitDirection(g);
  }
}

AffineFlat sample_grassmannian(RandomStream& rs, int n, int r) {
  if (n < 1 || n > kMaxDim || r < 1 || r > n) {
    throw Error(ErrorCode::kInvalidArgument, "grassmannian needs 1 <= r <= n");
  }
  while (true) {
    Matrix g(n, r);
    for (int j = 0; j < r; ++j) g.col(j) = gaussian(rs, n);
    Matrix q;
    try {
      q = orthonormalize(g);
    } catch (const Error&) {
      continue;  // probability zero
    }
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < n; ++i) {
        if (std::abs(q(i, j)) > 1e-12) {
          if (q(i, j) < 0.0) q.col(j) = -q.col(j);
          break;
        }
      }
    }
    return AffineFlat::through_origin(std::move(q));
  }
}

OrientedLine sample_line_meeting_ball(RandomStream& rs, int n, const Vector& center, double radius) {
  require_radius(radius);
  const UnitDirection dir = sample_sphere(rs, n);
  // A Gaussian projected onto dir^perp is an isotropic Gaussian there.
  Vector g;
  do {
    g = gaussian(rs, n);
    g -= dir.dot(g) * dir.coords();
  } while (g.squaredNorm() < 1e-300);
  const double rho = radius * std::pow(rs.uniform(), 1.0 / (n - 1));
  return OrientedLine(dir, center + (rho / g.norm()) * g);
}

Vector sample_unit_ball(RandomStream& rs, int d) {
  if (d < 1 || d > kMaxDim) throw Error(ErrorCode::kInvalidArgument, "ball dimension out of range");
  if (d <= 4) {
    while (true) {
      Vector x(d);
      for (int k = 0; k < d; ++k) x[k] = 2.0 * rs.uniform() - 1.0;
      if (x.squaredNorm() <= 1.0) return x;
    }
  }
  Vector g;
  do {
    g = gaussian(rs, d);
  } while (g.squaredNorm() < 1e-300);
  return (std::pow(rs.uniform(), 1.0 / d) / g.norm()) * g;
}

Vector sample_ball_point(RandomStream& rs, int n, const Vector& center, double radius) {
  require_radius(radius);
  return center + radius * sample_unit_ball(rs, n);
}

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= base;
  }
  return result;
}

UnitDirection halton_sphere(std::uint64_t index, int n) {
  // Offset by one to skip the all-zero point.
  const double a = radical_inverse(index + 1, 2);
  switch (n) {
    case 2: {
      const double theta = 2.0 * std::numbers::pi * a;
      Vector v(2);
      v << std::cos(theta), std::sin(theta);
      return UnitDirection(v);
    }
    case 3: {
      const double b = radical_inverse(index + 1, 3);
      const double z = 1.0 - 2.0 * a;
      const double phi = 2.0 * std::numbers::pi * b;
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vector v(3);
      v << s * std::cos(phi), s * std::sin(phi), z;
      return UnitDirection(v);
    }
    default:
      throw Error(ErrorCode::kUnsupportedDimension, "Halton directions support n in {2,3}");
  }
}

}  // namespace igeo
