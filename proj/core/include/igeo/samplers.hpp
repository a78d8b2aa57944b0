#pragma once

// Random sources for the measures integrated against: uniform directions on
// S^{n-1}, the rotation-invariant measure on the Grassmannian G_{n,r}, and the
// motion-invariant measure on lines restricted to those meeting a ball.

#include <cstdint>

#include "igeo/random.hpp"
#include "igeo/types.hpp"

namespace igeo {

/// Normalized standard Gaussian vector.
UnitDirection sample_sphere(RandomStream& rs, int n);

/// Gram-Schmidt of an n x r Gaussian matrix; each column's first entry with
/// magnitude above 1e-12 is made positive. Offset is zero.
AffineFlat sample_grassmannian(RandomStream& rs, int n, int r);

/// Direction uniform on S^{n-1}; the line's foot point relative to `center` is
/// uniform in the radius-R (n-1)-ball of the direction's complement.
OrientedLine sample_line_meeting_ball(RandomStream& rs, int n, const Vector& center, double radius);

/// Uniform in the unit d-ball (d coordinates).
Vector sample_unit_ball(RandomStream& rs, int d);

/// Uniform in the solid ball B(center, radius); rejection from the cube for n <= 4.
Vector sample_ball_point(RandomStream& rs, int n, const Vector& center, double radius);

/// Point `index` of a Halton-based direction set on S^{n-1}; n in {2, 3} only.
UnitDirection halton_sphere(std::uint64_t index, int n);

/// Radical inverse of `index` in `base`.
double radical_inverse(std::uint64_t index, unsigned base);

}  // namespace igeo
