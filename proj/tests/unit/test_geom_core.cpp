#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

#include "igeo/mesh.hpp"
#include "igeo/mesh_io.hpp"
#include "igeo/shapes.hpp"
#include "support.hpp"

using namespace igeo;
using testing::vec;

namespace {

SimplicialMesh single_facet(int n, std::vector<Vector> verts) {
  std::vector<int> f;
  for (int i = 0; i < n; ++i) f.push_back(i);
  return SimplicialMesh(n, std::move(verts), f);
}

SimplicialMesh without_facet(const SimplicialMesh& m, std::size_t drop) {
  std::vector<int> f;
  for (std::size_t k = 0; k < m.num_facets(); ++k) {
    if (k == drop) continue;
    for (const int v : m.facet(k)) f.push_back(v);
  }
  return SimplicialMesh(m.dim(), m.vertices(), f);
}

SimplicialMesh with_facet_flipped(const SimplicialMesh& m, std::size_t which) {
  std::vector<int> f = m.facet_indices();
  const std::size_t n = static_cast<std::size_t>(m.dim());
  std::swap(f[which * n], f[which * n + 1]);
  return SimplicialMesh(m.dim(), m.vertices(), f);
}

}  // namespace

TEST_CASE("facet measure of simple simplices") {
  CHECK(facet_measure(single_facet(3, {vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0})}), 0) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(facet_measure(single_facet(2, {vec({0, 0}), vec({3, 4})}), 0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(facet_measure(single_facet(4, {vec({0, 0, 0, 0}), vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, 0, 1, 0})}),
                      0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("degenerate facet is rejected by facet_measure and reported by validation") {
  const SimplicialMesh m = single_facet(3, {vec({0, 0, 0}), vec({1, 1, 1}), vec({2, 2, 2})});
  CHECK(m.is_degenerate(0));
  CHECK_THROWS_AS(facet_measure(m, 0), Error);
  CHECK(validate_mesh(m).degenerate_facets.size() == 1);
}

TEST_CASE("facet normal orientation and orthogonality") {
  const SimplicialMesh tri = single_facet(3, {vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0})});
  const Vector n3 = facet_normal(tri, 0).coords();
  CHECK((n3 - vec({0, 0, 1})).norm() < 1e-15);

  // Bottom edge of a counterclockwise unit square points out through y = 0.
  const SimplicialMesh edge = single_facet(2, {vec({0, 0}), vec({1, 0})});
  CHECK((facet_normal(edge, 0).coords() - vec({0, -1})).norm() < 1e-15);

  const SimplicialMesh star = shapes::make_star(3, 6, 0.5, 1.0, 2);
  for (std::size_t f = 0; f < star.num_facets(); ++f) {
    const auto ids = star.facet(f);
    for (int k = 1; k < 3; ++k) {
      CHECK(std::abs(star.normal(f).dot(star.vertex(ids[k]) - star.vertex(ids[0]))) < 1e-10);
    }
  }
}

TEST_CASE("surface area and volume of reference meshes") {
  const SimplicialMesh cube = testing::unit_cube();
  CHECK(cube.num_facets() == 12);
  CHECK(exact_surface_area(cube) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(enclosed_volume(cube) == doctest::Approx(1.0).epsilon(1e-14));

  const SimplicialMesh sphere = shapes::make_sphere(3, 4, 1.0);
  CHECK(sphere.num_facets() == 5120);
  CHECK(testing::rel(exact_surface_area(sphere), 4 * std::numbers::pi) < 2e-3);
  CHECK(testing::rel(enclosed_volume(sphere), 4 * std::numbers::pi / 3) < 5e-3);

  // A 100-gon is not a generator level, so build it here.
  std::vector<Vector> pts;
  std::vector<int> edges;
  for (int i = 0; i < 100; ++i) {
    const double a = 2 * std::numbers::pi * i / 100;
    pts.push_back(vec({std::cos(a), std::sin(a)}));
    edges.push_back(i);
    edges.push_back((i + 1) % 100);
  }
  const SimplicialMesh gon(2, pts, edges);
  CHECK(exact_surface_area(gon) == doctest::Approx(200 * std::sin(std::numbers::pi / 100)).epsilon(1e-13));
  CHECK(testing::rel(exact_surface_area(gon), 2 * std::numbers::pi) < 7e-4);

  CHECK(enclosed_volume(cube.flipped()) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("validation findings") {
  const SimplicialMesh cube = testing::unit_cube();
  CHECK(validate_mesh(cube).ok());

  const ValidationReport open = validate_mesh(without_facet(cube, 0));
  CHECK_FALSE(open.closed());
  CHECK(open.boundary_ridges.size() == 3);
  CHECK_THROWS_AS(enclosed_volume(without_facet(cube, 0)), Error);

  const ValidationReport flipped = validate_mesh(with_facet_flipped(cube, 0));
  CHECK(flipped.closed());
  CHECK(flipped.inconsistent_ridges.size() == 3);

  CHECK_FALSE(validate_mesh(cube.flipped()).outward());
}

TEST_CASE("bounding ball") {
  const SimplicialMesh sphere = shapes::make_sphere(3, 3, 1.0);
  const Ball b = bounding_ball(sphere);
  CHECK(b.center.norm() < 1e-12);
  CHECK(b.radius <= 1.0 + 1e-9);

  const Ball c = bounding_ball(testing::unit_cube());
  CHECK(c.radius <= std::sqrt(3.0));
  CHECK(c.radius >= std::sqrt(3.0) / 2);

  const Vector shift = vec({3, -2, 7});
  const Ball moved = bounding_ball(sphere.mapped([&](const Vector& v) { return Vector(v + shift); }));
  CHECK((moved.center - (b.center + shift)).norm() < 1e-12);
  CHECK(moved.radius == doctest::Approx(b.radius).epsilon(1e-12));
}

TEST_CASE("closed meshes balance their area-weighted normals") {
  for (const SimplicialMesh& m :
       {testing::unit_cube(), shapes::make_sphere(3, 3, 1.0), shapes::make_star(3, 6, 0.5, 1.0, 3),
        shapes::make_torus(2.0, 0.5, 3), shapes::make_star(2, 5, 0.5, 1.0, 2), shapes::make_sphere(4, 1, 1.0)}) {
    Vector sum = Vector::Zero(m.dim());
    for (std::size_t f = 0; f < m.num_facets(); ++f) sum += m.measure(f) * m.normal(f);
    CHECK(sum.norm() <= 1e-9 * exact_surface_area(m));
  }
}

TEST_CASE("rigid motions preserve area and volume") {
  const SimplicialMesh star = shapes::make_star(3, 6, 0.5, 1.0, 3);
  const Eigen::Matrix3d q =
      Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
  const Vector t = vec({0.3, -4.0, 11.0});
  const SimplicialMesh moved = star.mapped([&](const Vector& v) { return Vector(q * v + t); });
  CHECK(testing::rel(exact_surface_area(moved), exact_surface_area(star)) < 1e-9);
  CHECK(testing::rel(enclosed_volume(moved), enclosed_volume(star)) < 1e-9);
  for (std::size_t f = 0; f < star.num_facets(); f += 97) {
    CHECK(testing::rel(moved.measure(f), star.measure(f)) < 1e-9);
  }
}

TEST_CASE("unit direction, line and flat invariants") {
  const UnitDirection d(vec({3, 4, 0}));
  CHECK(std::abs(d.coords().norm() - 1.0) <= 1e-12);
  CHECK_THROWS_AS(UnitDirection(vec({0, 0, 0})), Error);

  const OrientedLine line(d, vec({1, 1, 1}));
  CHECK(std::abs(line.anchor().dot(d.coords())) <= 1e-10);
  // Same line: (1,1,1) is still on it.
  const Vector p = vec({1, 1, 1});
  const double t = d.dot(p);
  CHECK((line.point_at(t) - p).norm() < 1e-12);

  Matrix basis(3, 2);
  basis << 1, 0, 0, 1, 0, 0;
  const AffineFlat flat = AffineFlat::through_origin(basis);
  CHECK(flat.dim() == 2);
  const Matrix p2 = flat.projector();
  CHECK((p2 * p2 - p2).norm() < 1e-12);

  Matrix bad(3, 2);
  bad << 1, 1, 0, 1, 0, 0;
  CHECK_THROWS_AS(AffineFlat::through_origin(bad), Error);

  const Matrix comp = orthonormal_complement(basis);
  CHECK(comp.cols() == 1);
  CHECK((basis.transpose() * comp).norm() < 1e-12);
}

TEST_CASE("nOFF round trip and parse errors") {
  const SimplicialMesh star = shapes::make_star(3, 6, 0.5, 1.0, 2);
  std::stringstream buf;
  write_noff(buf, star);
  const SimplicialMesh back = read_noff(buf);
  REQUIRE(back.num_facets() == star.num_facets());
  REQUIRE(back.num_vertices() == star.num_vertices());
  for (std::size_t i = 0; i < star.num_vertices(); ++i) CHECK(back.vertex(i) == star.vertex(i));
  CHECK(back.facet_indices() == star.facet_indices());

  std::istringstream commented("# square\nnOFF\n2\n4 4 # counts\n0 0\n1 0\n1 1\n0 1\n0 1\n1 2\n2 3\n3 0\n");
  CHECK(exact_surface_area(read_noff(commented)) == doctest::Approx(4.0));

  std::istringstream bad_header("OFF\n2\n1 1\n");
  CHECK_THROWS_AS(read_noff(bad_header), Error);
  std::istringstream bad_index("nOFF\n2\n2 1\n0 0\n1 0\n0 5\n");
  CHECK_THROWS_AS(read_noff(bad_index), Error);
  std::istringstream truncated("nOFF\n3\n3 1\n0 0 0\n1 0 0\n");
  CHECK_THROWS_AS(read_noff(truncated), Error);
  CHECK_THROWS_AS(read_noff_file("/nonexistent/mesh.noff"), Error);
}
