#include <doctest.h>

#include <cmath>
#include <numbers>

#include "igeo/measures.hpp"
#include "igeo/types.hpp"

using namespace igeo;
using namespace igeo::measures;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: long-double tgamma, products evaluated directly.
long double o_ref(int r) {
  const long double a = 0.5L * (r + 1);
  return 2.0L * std::pow(std::numbers::pi_v<long double>, a) / std::tgamma(a);
}

long double omega_ref(int r) {
  const long double a = 0.5L * r;
  return std::pow(std::numbers::pi_v<long double>, a) / std::tgamma(a + 1.0L);
}

long double grass_ref(int n, int r) {
  long double num = 1.0L, den = 1.0L;
  for (int k = n - r; k <= n - 1; ++k) num *= o_ref(k);
  for (int k = 0; k <= r - 1; ++k) den *= o_ref(k);
  return num / den;
}

double rel(double a, long double b) { return static_cast<double>(std::abs((a - b) / b)); }

}  // namespace

TEST_CASE("sphere areas") {
  CHECK(sphere_area_O(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sphere_area_O(1) == doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK(sphere_area_O(2) == doctest::Approx(4 * kPi).epsilon(1e-15));
  CHECK(sphere_area_O(3) == doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
  CHECK(sphere_area_O(5) == doctest::Approx(kPi * kPi * kPi).epsilon(1e-14));
  for (int r = 0; r <= 20; ++r) CHECK(rel(sphere_area_O(r), o_ref(r)) < 1e-12);
  CHECK_THROWS_AS(sphere_area_O(-1), Error);
}

TEST_CASE("ball volumes") {
  CHECK(ball_volume_omega(0) == 1.0);
  CHECK(ball_volume_omega(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ball_volume_omega(2) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(ball_volume_omega(3) == doctest::Approx(4 * kPi / 3).epsilon(1e-15));
  for (int r = 1; r <= 10; ++r) {
    CHECK(std::abs(ball_volume_omega(r) - sphere_area_O(r - 1) / r) <= 1e-14 * ball_volume_omega(r));
  }
  for (int r = 0; r <= 20; ++r) CHECK(rel(ball_volume_omega(r), omega_ref(r)) < 1e-12);
}

TEST_CASE("grassmannian volumes") {
  CHECK(grassmannian_volume(3, 1) == doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(grassmannian_volume(3, 2) == doctest::Approx(2 * kPi).epsilon(1e-14));
  for (int n = 2; n <= 6; ++n) {
    CHECK(grassmannian_volume(n, 0) == doctest::Approx(1.0));
    CHECK(grassmannian_volume(n, n) == doctest::Approx(1.0));
    for (int r = 1; r < n; ++r) {
      CHECK(rel(grassmannian_volume(n, r), grass_ref(n, r)) < 1e-12);
      CHECK(std::abs(grassmannian_volume(n, r) - grassmannian_volume(n, n - r)) <= 1e-12 * grassmannian_volume(n, r));
    }
  }
  CHECK_THROWS_AS(grassmannian_volume(3, 4), Error);
}

TEST_CASE("flag measures") {
  for (int n = 3; n <= 7; ++n) {
    // Hyperplanes through the origin of R^n.
    CHECK(std::abs(flag_measure(n, n - 1, 0) - sphere_area_O(n - 1) / 2) <= 1e-12 * sphere_area_O(n - 1));
    for (int r = 1; r <= n - 2; ++r) {
      // Hyperplanes containing a fixed r-plane.
      CHECK(std::abs(flag_measure(n, n - 1, r) - sphere_area_O(n - r - 1) / 2) <= 1e-12 * sphere_area_O(n - r - 1));
    }
    for (int r = 1; r <= n - 1; ++r) {
      // q = 0 is the Grassmannian product.
      CHECK(rel(flag_measure(n, r, 0), grass_ref(n, r)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(flag_measure(4, 2, 2), Error);
  CHECK_THROWS_AS(flag_measure(4, 4, 1), Error);
  CHECK_THROWS_AS(flag_measure(4, 2, -1), Error);
  try {
    flag_measure(3, 1, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidFlag);
  }
}

TEST_CASE("line measure of a ball") {
  CHECK(line_measure_ball(2, 1.0) == doctest::Approx(4 * kPi).epsilon(1e-15));
  CHECK(line_measure_ball(3, 1.0) == doctest::Approx(4 * kPi * kPi).epsilon(1e-15));
  for (int n = 2; n <= 6; ++n) {
    CHECK(line_measure_ball(n, 2.4) / line_measure_ball(n, 1.2) == doctest::Approx(std::pow(2.0, n - 1)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(line_measure_ball(3, 0.0), Error);
}

TEST_CASE("ball recursion closed form") {
  for (int n = 2; n <= 6; ++n) {
    for (int r = 1; r <= n - 1; ++r) {
      const BallRecursion b = ball_recursion(n, r);
      CHECK(b.rel_gap() < 1e-10);
      CHECK(rel(b.lhs, grass_ref(n, n - r) * omega_ref(n - r)) < 1e-12);
    }
  }
  const ConstantsTable t = constants_table(4);
  CHECK(t.sphere_areas.size() == 5);
  CHECK(t.grassmannian_volumes.size() == 5);
  CHECK_FALSE(t.grassmannian_volumes[2].formula_id.empty());
}
