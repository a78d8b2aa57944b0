#pragma once

// Closed-form constants of integral geometry. All products are accumulated in
// log space, so large dimensions do not overflow.

#include <string>
#include <vector>

namespace igeo::measures {

/// A constant together with the name of the closed form that produced it.
struct MeasureValue {
  double value = 0.0;
  std::string formula_id;
};

/// Surface area of the unit sphere S^r in R^{r+1}: 2 pi^{(r+1)/2} / Gamma((r+1)/2).
double sphere_area_O(int r);

/// Volume of the unit ball in R^r: pi^{r/2} / Gamma(r/2 + 1); omega_0 = 1.
double ball_volume_omega(int r);

/// m(G_{n,r}) = (O_{n-1} ... O_{n-r}) / (O_{r-1} ... O_1 O_0).
/// Defined for 0 <= r <= n; the empty products at r = 0 and r = n give 1.
double grassmannian_volume(int n, int r);

/// Measure of the r-planes through the origin containing a fixed q-plane:
/// (O_{n-q-1} ... O_{n-r}) / (O_{r-q-1} ... O_1 O_0), for 0 <= q < r <= n-1.
/// Throws Error(kInvalidFlag) otherwise.
double flag_measure(int n, int r, int q);

/// Invariant measure of the lines meeting a ball of radius R: O_{n-1} omega_{n-1} R^{n-1}.
double line_measure_ball(int n, double radius);

/// Both sides of the mean-volume recursion evaluated on the unit n-ball:
///   lhs = m(G_{n,n-r}) omega_{n-r},
///   rhs = (2 / O_{r-1}) m(G_{n,n-1}) m(G_{n-1,n-r}) omega_{n-r}.
struct BallRecursion {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_gap() const;
};
BallRecursion ball_recursion(int n, int r);

/// Rows of O_k, omega_k for k <= n and m(G_{n,r}) for r <= n.
struct ConstantsTable {
  int n = 0;
  std::vector<MeasureValue> sphere_areas;
  std::vector<MeasureValue> ball_volumes;
  std::vector<MeasureValue> grassmannian_volumes;
};
ConstantsTable constants_table(int n);

}  // namespace igeo::measures
