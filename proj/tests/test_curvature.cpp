#include "reilly/curvature.hpp"
#include "reilly/errors.hpp"
#include "reilly/generate.hpp"
#include "reilly/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace reilly;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form curvature of x^2/a^2 + y^2/b^2 + z^2/c^2 = 1 at a point on it,
// outward normal, convex side positive.
struct QuadricCurvature {
  double H, K;
};

QuadricCurvature ellipsoid_curvature(double a, double b, double c, const Vec3& p) {
  const double a2 = a * a, b2 = b * b, c2 = c * c;
  const double h2 = p.x() * p.x() / (a2 * a2) + p.y() * p.y() / (b2 * b2) + p.z() * p.z() / (c2 * c2);
  const double h = std::sqrt(h2);
  const double abc2 = a2 * b2 * c2;
  return {(a2 + b2 + c2 - p.squaredNorm()) / (2.0 * abc2 * h * h2), 1.0 / (abc2 * h2 * h2)};
}

double weighted_rms(const SurfaceGeometry& g, const std::vector<double>& err) {
  double s = 0.0, w = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    s += g[i].weight * err[i] * err[i];
    w += g[i].weight;
  }
  return std::sqrt(s / w);
}

}  // namespace

TEST(Oracle, QuadricFormulaAtKnownPoints) {
  // sanity of the test oracle itself
  const auto pole = ellipsoid_curvature(1.0, 1.0, 2.0, Vec3(0, 0, 2));
  EXPECT_DOUBLE_EQ(pole.H, 2.0);
  EXPECT_DOUBLE_EQ(pole.K, 4.0);
  const auto round = ellipsoid_curvature(3.0, 3.0, 3.0, Vec3(0, 3, 0));
  EXPECT_DOUBLE_EQ(round.H, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(round.K, 1.0 / 9.0);
}

TEST(VertexGeometry, RoundSphere) {
  const double r = 2.0;
  const TriMesh m = generate(Sphere{r}, 4);
  const SurfaceGeometry g = vertex_geometry(m);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(g[i].H, 1.0 / r, 1e-3 / r);
    EXPECT_NEAR(g[i].K, 1.0 / (r * r), 5e-3 / (r * r));
    // angle-weighted normals are O(h^2) off radial; h ~ 0.06 here
    EXPECT_LT(std::acos(std::min(1.0, g[i].normal.dot(m.positions[i].normalized()))), 5e-3);
    EXPECT_GE(g[i].kappa1, g[i].kappa2);
    EXPECT_NEAR(0.5 * (g[i].kappa1 + g[i].kappa2), g[i].H, 1e-12);
  }
}

TEST(VertexGeometry, EllipsoidMatchesClosedForm) {
  const double a = 1.0, b = 1.2, c = 1.6;
  double prev_h = 0.0, prev_k = 0.0;
  for (int s = 3; s <= 5; ++s) {
    const TriMesh m = generate(Ellipsoid{a, b, c}, s);
    const SurfaceGeometry g = vertex_geometry(m);
    std::vector<double> eh(g.size()), ek(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto exact = ellipsoid_curvature(a, b, c, m.positions[i]);
      eh[i] = g[i].H - exact.H;
      ek[i] = g[i].K - exact.K;
    }
    const double rh = weighted_rms(g, eh), rk = weighted_rms(g, ek);
    if (s > 3) {
      EXPECT_LT(rh, prev_h);
      EXPECT_LT(rk, prev_k);
    }
    prev_h = rh;
    prev_k = rk;
  }
  EXPECT_LT(prev_h, 5e-3);
  EXPECT_LT(prev_k, 1e-2);
}

TEST(VertexGeometry, EllipsoidPole) {
  // {1,1,2}: H = c / a^2 = 2, K = c^2 / a^4 = 4 at (0, 0, c)
  const TriMesh m = generate(Ellipsoid{1.0, 1.0, 2.0}, 5);
  ASSERT_NEAR(m.positions[0].z(), 2.0, 1e-14);
  const SurfaceGeometry g = vertex_geometry(m);
  EXPECT_NEAR(g[0].H, 2.0, 2e-3);
  EXPECT_NEAR(g[0].K, 4.0, 4e-3);
}

TEST(VertexGeometry, GaussBonnetIsExact) {
  for (const TriMesh& m : {generate(Ellipsoid{1.0, 2.0, 0.7}, 3), generate(PerturbedSphere{4, 2, 0.1}, 3),
                           generate(Torus{2.0, 0.7}, 2)}) {
    const SurfaceGeometry g = vertex_geometry(m);
    const double total = integrate(g, mesh_hk(g, 2));
    EXPECT_NEAR(total, 2.0 * kPi * euler_characteristic(m), 1e-9);
  }
}

TEST(VertexGeometry, TorusHasBothCurvatureSigns) {
  const SurfaceGeometry g = vertex_geometry(generate(Torus{2.0, 0.5}, 2));
  double kmin = 1e300, kmax = -1e300;
  for (const auto& v : g) {
    kmin = std::min(kmin, v.K);
    kmax = std::max(kmax, v.K);
  }
  EXPECT_LT(kmin, 0.0);
  EXPECT_GT(kmax, 0.0);
}

TEST(VertexGeometry, InwardOrientationIsFlippedBack) {
  TriMesh m = generate(Sphere{1.0}, 2);
  for (Face& f : m.faces) std::swap(f[1], f[2]);
  const SurfaceGeometry g = vertex_geometry(m);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_GT(g[i].normal.dot(m.positions[i]), 0.99);
    EXPECT_GT(g[i].H, 0.99);
  }
}

TEST(MeshHk, SelectsByOrder) {
  const SurfaceGeometry g = vertex_geometry(generate(Ellipsoid{1.0, 1.0, 1.3}, 1));
  EXPECT_EQ(mesh_hk(g, 0), std::vector<double>(g.size(), 1.0));
  EXPECT_EQ(mesh_hk(g, 1)[5], g[5].H);
  EXPECT_EQ(mesh_hk(g, 2)[5], g[5].K);
  EXPECT_EQ(mesh_hk(g, 3), std::vector<double>(g.size(), 0.0));
  EXPECT_THROW(mesh_hk(g, 4), InvalidArgument);
}

TEST(HsiungMinkowski, SphereResidualIsSmall) {
  const double r = 1.5;
  const TriMesh m = generate(Sphere{r}, 4);
  const SurfaceGeometry g = vertex_geometry(m);
  const double volume = 4.0 / 3.0 * kPi * r * r * r;
  for (int k : {1, 2}) EXPECT_LT(std::abs(hsiung_minkowski_residual(m, g, k)), 0.01 * volume);
}

TEST(HsiungMinkowski, EllipsoidRefinementRatio) {
  for (int k : {1, 2}) {
    double prev = 0.0;
    for (int s = 2; s <= 5; ++s) {
      const TriMesh m = normalize(generate(Ellipsoid{1.0, 1.0, 1.4}, s)).mesh;
      const double res = std::abs(hsiung_minkowski_residual(m, vertex_geometry(m), k));
      if (s > 2) EXPECT_GE(prev / res, 3.0) << "k=" << k << " s=" << s;
      prev = res;
    }
  }
}

TEST(HsiungMinkowski, IntegralFromExplicitData) {
  // unit sphere, exact data: H_0 = 1, H_1 = 1, <X, nu> = 1 -> integrand 0
  const std::vector<double> w{1.0, 2.0};
  const std::vector<Vec3> x{Vec3::UnitX(), Vec3::UnitY()};
  const std::vector<double> ones{1.0, 1.0};
  EXPECT_EQ(hsiung_minkowski_integral(w, x, x, ones, ones), 0.0);
  const std::vector<double> half{0.5, 0.5};
  EXPECT_DOUBLE_EQ(hsiung_minkowski_integral(w, x, x, ones, half), 1.5);
  EXPECT_THROW(hsiung_minkowski_integral(w, x, x, ones, std::vector<double>{1.0}), InvalidArgument);
}

TEST(DeltaPosition, CoordinateEnergyEqualsTwiceArea) {
  // sum over coordinates of x^T K x = int |grad X|^2 = n Area, exactly
  const TriMesh m = generate(PerturbedSphere{3, 1, 0.2}, 3);
  const SparseSymMatrix K = assemble_stiffness(m);
  double energy = 0.0;
  for (int d = 0; d < 3; ++d) {
    std::vector<double> x(m.num_vertices());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = m.positions[i][d];
    energy += K.quadratic_form(x);
  }
  EXPECT_NEAR(energy, 2.0 * total_area(m), 1e-10 * total_area(m));
}

TEST(DeltaPosition, EllipsoidResidualRefinementRatio) {
  double prev = 0.0;
  for (int s = 2; s <= 5; ++s) {
    const TriMesh m = normalize(generate(Ellipsoid{1.0, 1.0, 1.5}, s)).mesh;
    const SparseSymMatrix M = assemble_mass(m);
    const double res = delta_position_residual(m, vertex_geometry(m), assemble_stiffness(m), M.diagonal_values());
    if (s > 2) EXPECT_GE(prev / res, 3.0) << "s=" << s;
    prev = res;
  }
}

TEST(Norms, Definitions) {
  const std::vector<double> w{1.0, 3.0};
  const std::vector<double> f{2.0, -1.0};
  EXPECT_DOUBLE_EQ(integrate(std::span<const double>(w), f), -1.0);
  EXPECT_DOUBLE_EQ(lp_norm(w, f, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(lp_norm(w, f, 2.0), std::sqrt(7.0));
  EXPECT_DOUBLE_EQ(sup_norm(f), 2.0);
  EXPECT_THROW(lp_norm(w, f, 0.5), InvalidArgument);
  const std::vector<double> bad{1.0, std::nan("")};
  EXPECT_THROW(integrate(std::span<const double>(w), bad), InvalidArgument);
}

TEST(Norms, LpNormIsMonotoneInExponentOnUnitArea) {
  const TriMesh m = normalize(generate(Ellipsoid{1.0, 1.0, 1.8}, 3)).mesh;
  const SurfaceGeometry g = vertex_geometry(m);
  const auto h = mesh_hk(g, 1);
  double prev = 0.0;
  for (double q : {1.0, 2.0, 3.0, 4.0, 8.0}) {
    const double v = lp_norm(g, h, q);
    EXPECT_GE(v, prev * (1.0 - 1e-12));
    prev = v;
  }
  EXPECT_LE(prev, sup_norm(h) * (1.0 + 1e-12));
}

TEST(TangentialProjection, IsOrthogonalToNormal) {
  const TriMesh m = generate(Ellipsoid{1.0, 2.0, 0.5}, 2);
  const SurfaceGeometry g = vertex_geometry(m);
  const auto t = tangential_projection(m, g);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_LT(std::abs(t[i].dot(g[i].normal)), 1e-14 * (1.0 + m.positions[i].norm()));
    // X = X^T + <X, nu> nu
    EXPECT_LT((t[i] + m.positions[i].dot(g[i].normal) * g[i].normal - m.positions[i]).norm(), 1e-13);
  }
}

TEST(GeometryCsv, HeaderAndRows) {
  const SurfaceGeometry g = vertex_geometry(icosahedron());
  std::ostringstream out;
  write_geometry_csv(g, out);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "vertex_id,nx,ny,nz,H,K,kappa1,kappa2,weight");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 13);
}
