#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "igeo/mesh.hpp"
#include "igeo/shapes.hpp"
#include "igeo/types.hpp"

namespace testing {

inline igeo::Vector vec(std::initializer_list<double> xs) {
  igeo::Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (const double x : xs) v[i++] = x;
  return v;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// |value - expected| < k * se, with a floor so a zero std error still compares.
inline bool within_sigmas(double value, double expected, double se, double k = 3.0) {
  return std::abs(value - expected) <= k * se + 1e-12 * std::abs(expected);
}

// [0,1]^n boundary.
inline igeo::SimplicialMesh unit_cube(int n = 3) {
  const std::vector<double> half(static_cast<std::size_t>(n), 0.5);
  return igeo::shapes::make_box(n, half).mapped([](const igeo::Vector& v) {
    return igeo::Vector(v.array() + 0.5);
  });
}

// Cube centered at the origin with unit edge.
inline igeo::SimplicialMesh centered_cube(int n = 3) {
  const std::vector<double> half(static_cast<std::size_t>(n), 0.5);
  return igeo::shapes::make_box(n, half);
}

}  // namespace testing
