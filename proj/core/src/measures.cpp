#include "igeo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "igeo/types.hpp"

namespace igeo::measures {

namespace {

double log_sphere_area(int r) {
  const double a = 0.5 * (r + 1);
  return std::log(2.0) + a * std::log(std::numbers::pi) - std::lgamma(a);
}

double log_ball_volume(int r) {
  const double a = 0.5 * r;
  return a * std::log(std::numbers::pi) - std::lgamma(a + 1.0);
}

// log(O_hi * O_{hi-1} * ... * O_lo); empty when lo > hi.
double log_sphere_area_chain(int hi, int lo) {
  double sum = 0.0;
  for (int k = hi; k >= lo; --k) sum += log_sphere_area(k);
  return sum;
}

void require_nonnegative(int r) {
  if (r < 0) throw Error(ErrorCode::kInvalidArgument, "index must be nonnegative");
}

}  // namespace

double sphere_area_O(int r) {
  require_nonnegative(r);
  return std::exp(log_sphere_area(r));
}

double ball_volume_omega(int r) {
  require_nonnegative(r);
  if (r == 0) return 1.0;
  return std::exp(log_ball_volume(r));
}

double grassmannian_volume(int n, int r) {
  if (n < 1 || r < 0 || r > n) throw Error(ErrorCode::kInvalidArgument, "grassmannian needs 0 <= r <= n");
  return std::exp(log_sphere_area_chain(n - 1, n - r) - log_sphere_area_chain(r - 1, 0));
}

double flag_measure(int n, int r, int q) {
  if (!(0 <= q && q < r && r <= n - 1)) {
    throw Error(ErrorCode::kInvalidFlag, "flag measure needs 0 <= q < r <= n-1 (got n=" + std::to_string(n) +
                                             ", r=" + std::to_string(r) + ", q=" + std::to_string(q) + ")");
  }
  return std::exp(log_sphere_area_chain(n - q - 1, n - r) - log_sphere_area_chain(r - q - 1, 0));
}

double line_measure_ball(int n, double radius) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "line measure needs n >= 2");
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  return sphere_area_O(n - 1) * ball_volume_omega(n - 1) * std::pow(radius, n - 1);
}

double BallRecursion::rel_gap() const {
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

BallRecursion ball_recursion(int n, int r) {
  if (n < 2 || r < 1 || r > n - 1) throw Error(ErrorCode::kInvalidArgument, "ball recursion needs 1 <= r <= n-1");
  BallRecursion out;
  const double omega = ball_volume_omega(n - r);
  out.lhs = grassmannian_volume(n, n - r) * omega;
  out.rhs = (2.0 / sphere_area_O(r - 1)) * grassmannian_volume(n, n - 1) * grassmannian_volume(n - 1, n - r) * omega;
  return out;
}

ConstantsTable constants_table(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "constants table needs n >= 1");
  ConstantsTable table;
  table.n = n;
  for (int k = 0; k <= n; ++k) {
    table.sphere_areas.push_back({sphere_area_O(k), "O_" + std::to_string(k) + " = 2 pi^((k+1)/2) / Gamma((k+1)/2)"});
    table.ball_volumes.push_back({ball_volume_omega(k), "omega_" + std::to_string(k) + " = pi^(k/2) / Gamma(k/2+1)"});
  }
  for (int r = 0; r <= n; ++r) {
    table.grassmannian_volumes.push_back(
        {grassmannian_volume(n, r), "m(G_" + std::to_string(n) + "," + std::to_string(r) +
                                        ") = O_{n-1}..O_{n-r} / (O_{r-1}..O_0)"});
  }
  return table;
}

}  // namespace igeo::measures
