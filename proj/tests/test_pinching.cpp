#include "reilly/bvh.hpp"
#include "reilly/errors.hpp"
#include "reilly/generate.hpp"
#include "reilly/pinching.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace reilly;

namespace {

constexpr double kPi = std::numbers::pi;

struct Prepared {
  TriMesh mesh;
  SurfaceGeometry geom;
  double lambda1;
};

Prepared prepare(const ShapeSpec& shape, int subdiv) {
  Prepared p;
  p.mesh = normalize(generate(shape, subdiv)).mesh;
  p.geom = vertex_geometry(p.mesh);
  p.lambda1 = first_eigenpair(assemble_stiffness(p.mesh), assemble_mass(p.mesh)).lambda;
  return p;
}

// Brute-force closest point: every triangle.
double brute_distance(const TriMesh& m, const Vec3& q) {
  double best = std::numeric_limits<double>::infinity();
  for (const Face& f : m.faces)
    best = std::min(best, (closest_point_on_triangle(q, m.positions[f[0]], m.positions[f[1]], m.positions[f[2]]) - q).norm());
  return best;
}

}  // namespace

TEST(ClosestPoint, Regions) {
  const Vec3 a(0, 0, 0), b(1, 0, 0), c(0, 1, 0);
  EXPECT_LT((closest_point_on_triangle(Vec3(0.2, 0.2, 3.0), a, b, c) - Vec3(0.2, 0.2, 0.0)).norm(), 1e-15);
  EXPECT_EQ(closest_point_on_triangle(Vec3(-1, -1, 0), a, b, c), a);
  EXPECT_EQ(closest_point_on_triangle(Vec3(2, -1, 1), a, b, c), b);
  EXPECT_EQ(closest_point_on_triangle(Vec3(-1, 3, 0), a, b, c), c);
  EXPECT_LT((closest_point_on_triangle(Vec3(0.5, -2, 0), a, b, c) - Vec3(0.5, 0, 0)).norm(), 1e-15);
  EXPECT_LT((closest_point_on_triangle(Vec3(1, 1, 0), a, b, c) - Vec3(0.5, 0.5, 0)).norm(), 1e-15);
}

TEST(Bvh, AgreesWithBruteForce) {
  const TriMesh m = generate(PerturbedSphere{3, 2, 0.15}, 3);
  const TriangleBvh bvh(m);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 300; ++i) {
    const Vec3 q(u(rng), u(rng), u(rng));
    const ClosestHit hit = bvh.closest(q);
    EXPECT_NEAR(hit.distance, brute_distance(m, q), 1e-12);
    EXPECT_NEAR((hit.point - q).norm(), hit.distance, 1e-12);
  }
}

TEST(Deficit, SphereIsTheEqualityCase) {
  const Prepared s = prepare(Sphere{1.0}, 4);
  for (int k : {1, 2}) {
    const DeficitTerms d = reilly_deficit(s.mesh, s.geom, k, 2.0, s.lambda1);
    EXPECT_LE(std::abs(d.deficit), 0.05 * 2.0 * d.norm_hk_2p * d.norm_hk_2p);
    EXPECT_TRUE(d.hk_positive);
  }
}

TEST(Deficit, MatchesDirectEvaluation) {
  const Prepared e = prepare(Ellipsoid{1.0, 1.0, 1.3}, 3);
  const double p = 3.0;
  const DeficitTerms d = reilly_deficit(e.mesh, e.geom, 2, p, e.lambda1);
  double int_h = 0.0, int_k2p = 0.0;
  for (const auto& g : e.geom) {
    int_h += g.weight * g.H;
    int_k2p += g.weight * std::pow(std::abs(g.K), 2.0 * p);
  }
  const double norm = std::pow(int_k2p, 1.0 / (2.0 * p));
  EXPECT_NEAR(d.int_hkm1, int_h, 1e-12 * int_h);
  EXPECT_NEAR(d.norm_hk_2p, norm, 1e-12 * norm);
  EXPECT_NEAR(d.deficit, e.lambda1 * int_h * int_h - 2.0 * norm * norm, 1e-9 * norm * norm);
  EXPECT_LT(d.deficit, 0.0);
  EXPECT_FALSE(d.p_below_two);
}

TEST(Deficit, Preconditions) {
  const TriMesh raw = generate(Sphere{1.0}, 2);
  const SurfaceGeometry g = vertex_geometry(raw);
  EXPECT_THROW(reilly_deficit(raw, g, 1, 2.0, 2.0), PreconditionError);
  const TriMesh n = normalize(raw).mesh;
  const SurfaceGeometry gn = vertex_geometry(n);
  EXPECT_THROW(reilly_deficit(n, gn, 3, 2.0, 25.0), InvalidArgument);
  EXPECT_THROW(reilly_deficit(n, gn, 1, 0.5, 25.0), InvalidArgument);
  EXPECT_TRUE(reilly_deficit(n, gn, 1, 1.5, 25.0).p_below_two);
}

TEST(Predicates, PinchingAndGate) {
  EXPECT_TRUE(pinching_predicate(-0.5, 1.0));
  EXPECT_FALSE(pinching_predicate(-1.5, 1.0));
  EXPECT_THROW(pinching_predicate(0.0, 0.0), InvalidArgument);
  EXPECT_TRUE(lemma_gate(0.9, 1.0));
  EXPECT_FALSE(lemma_gate(1.0, 1.0));
}

TEST(SphereModel, RadiusFromLambda) {
  const SphereModel m = sphere_model(normalize(generate(Sphere{1.0}, 2)).mesh, 8.0);
  EXPECT_DOUBLE_EQ(m.radius, 0.5);
  EXPECT_EQ(m.center, Vec3::Zero());
}

TEST(Distances, AnnulusOnConcentricSphere) {
  const TriMesh m = normalize(generate(Sphere{1.0}, 3)).mesh;
  const double r = m.positions[0].norm();
  EXPECT_NEAR(annulus_epsilon(m, SphereModel{Vec3::Zero(), 1.25 * r}), 0.25 * r, 1e-12);
  EXPECT_THROW(annulus_epsilon(translated(m, Vec3(0.01, 0, 0)), SphereModel{Vec3::Zero(), r}), PreconditionError);
}

TEST(Distances, DensityOnConcentricSphere) {
  const TriMesh m = generate(Sphere{1.0}, 4);
  // model outside the inscribed mesh: distance is the radial gap, up to the chord sag
  const double eps = density_epsilon(m, SphereModel{Vec3::Zero(), 1.1}, 500);
  EXPECT_GT(eps, 0.1);
  EXPECT_LT(eps, 0.1 + 2e-3);
  EXPECT_THROW(density_epsilon(m, SphereModel{}, 0), InvalidArgument);
}

TEST(Distances, FibonacciPointsLieOnTheModel) {
  const SphereModel model{Vec3(1, 2, 3), 0.7};
  const auto pts = fibonacci_sphere(model, 101);
  ASSERT_EQ(pts.size(), 101u);
  Vec3 mean = Vec3::Zero();
  for (const Vec3& p : pts) {
    EXPECT_NEAR((p - model.center).norm(), 0.7, 1e-14);
    mean += p;
  }
  EXPECT_LT((mean / 101.0 - model.center).norm(), 0.02);
}

TEST(Distances, HausdorffAgreesWithPointCloudOracle) {
  const Prepared e = prepare(Ellipsoid{1.0, 1.0, 1.2}, 4);
  const SphereModel model = sphere_model(e.mesh, e.lambda1);
  const HausdorffResult h = hausdorff_to_sphere(e.mesh, model, 4000);

  // two-sided Hausdorff between dense point clouds of both surfaces
  std::vector<Vec3> surface = e.mesh.positions;
  for (const Face& f : e.mesh.faces)
    surface.push_back((e.mesh.positions[f[0]] + e.mesh.positions[f[1]] + e.mesh.positions[f[2]]) / 3.0);
  const auto sphere = fibonacci_sphere(model, 20000);
  double mesh_to_sphere = 0.0;
  for (const Vec3& p : surface) mesh_to_sphere = std::max(mesh_to_sphere, std::abs((p - model.center).norm() - model.radius));
  double sphere_to_mesh = 0.0;
  for (std::size_t i = 0; i < sphere.size(); i += 7) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& p : surface) best = std::min(best, (p - sphere[i]).squaredNorm());
    sphere_to_mesh = std::max(sphere_to_mesh, std::sqrt(best));
  }
  const double oracle = std::max(mesh_to_sphere, sphere_to_mesh);
  EXPECT_NEAR(h.hausdorff, oracle, 0.05 * oracle);
  EXPECT_EQ(h.hausdorff, std::max(h.annulus, h.density));
}

TEST(Fields, VanishOnTheSphere) {
  const Prepared s = prepare(Sphere{1.0}, 4);
  const double x2 = 1.0 / (4.0 * kPi);
  const VectorField y = field_Y(s.mesh, s.geom, 1, s.lambda1);
  // |Y| would be n H ~ 2 / r pointwise if nothing cancelled
  EXPECT_LT(y.l2sq, 1e-6 * 4.0 / x2);
  const ZField z = field_Z(s.mesh, s.geom, 2, s.lambda1);
  EXPECT_EQ(z.hk_positive, Hypothesis::kSatisfied);
  EXPECT_LT(z.field.l2sq, 1e-3 * std::sqrt(x2));
  const PhiResult phi = phi_fn(s.mesh, s.lambda1);
  EXPECT_LT(phi.sup, 1e-6 * std::pow(x2, 1.5));
}

TEST(Fields, ZRejectsVertexAtTheOrigin) {
  Prepared s = prepare(Sphere{1.0}, 1);
  s.mesh.positions[0] = Vec3::Zero();
  EXPECT_THROW(field_Z(s.mesh, s.geom, 1, s.lambda1), PreconditionError);
}

TEST(LemmaSuite, PassesOnSphereAndMildEllipsoids) {
  for (const ShapeSpec& shape : std::vector<ShapeSpec>{Sphere{1.0}, Ellipsoid{1.0, 1.0, 1.1}, Ellipsoid{1.0, 1.0, 1.2}}) {
    const Prepared e = prepare(shape, 3);
    for (int k : {1, 2}) {
      const auto checks = lemma_suite(e.mesh, e.geom, k, 2.0, e.lambda1);
      EXPECT_EQ(checks.size(), k == 2 ? 12u : 11u);
      for (const LemmaCheck& c : checks) {
        EXPECT_TRUE(c.pass()) << shape_name(shape) << " k=" << k << " " << c.id << " lhs=" << c.lhs << " rhs=" << c.rhs;
        EXPECT_GE(c.margin(0.05), 0.0);
      }
    }
  }
}

TEST(LemmaSuite, TorusReportsViolationsWithoutThrowing) {
  const TriMesh m = normalize(generate(Torus{2.0, 0.5}, 2)).mesh;
  const SurfaceGeometry g = vertex_geometry(m);
  const double lambda1 = first_eigenpair(assemble_stiffness(m), assemble_mass(m)).lambda;
  const auto checks = lemma_suite(m, g, 2, 2.0, lambda1);
  int violated = 0;
  for (const auto& c : checks) violated += c.status == CheckStatus::kHypothesisViolated;
  EXPECT_GT(violated, 0);
}

TEST(LemmaCheck, MarginAndExcess) {
  LemmaCheck c;
  c.lhs = 1.02;
  c.rhs = 1.0;
  c.scale = 2.0;
  EXPECT_DOUBLE_EQ(c.margin(0.05), (1.0 + 0.1 - 1.02) / 2.0);
  EXPECT_NEAR(c.excess(), 0.01, 1e-15);
  c.lhs = 0.5;
  EXPECT_EQ(c.excess(), 0.0);
}

TEST(Distortion, SphereToItsOwnModelIsNearlyIsometric) {
  const Prepared s = prepare(Sphere{1.0}, 4);
  EXPECT_LT(map_F_distortion(s.mesh, sphere_model(s.mesh, s.lambda1)), 0.05);
}

TEST(Distortion, DoubledModelRadiusGivesThree) {
  // vertices on |x| = R map to 2x exactly, so every face scales by 2: |s^2 - 1| = 3
  const TriMesh m = generate(Sphere{1.0}, 2);
  EXPECT_NEAR(map_F_distortion(m, SphereModel{Vec3::Zero(), 2.0}), 3.0, 1e-9);
}

TEST(Distortion, GrowsWithEccentricity) {
  double prev = -1.0;
  for (double t : {0.05, 0.1, 0.2}) {
    const Prepared e = prepare(Ellipsoid{1.0, 1.0, 1.0 + t}, 3);
    const double theta = map_F_distortion(e.mesh, sphere_model(e.mesh, e.lambda1));
    EXPECT_GT(theta, prev);
    prev = theta;
  }
}

TEST(Grosjean, NearEqualityOnSphereAndViolationOnTorus) {
  const Prepared s = prepare(Sphere{1.0}, 4);
  const GrosjeanResult g = grosjean_bound_check(s.geom, s.lambda1);
  EXPECT_TRUE(g.pass);
  EXPECT_NEAR(s.lambda1, g.bound, 0.05 * g.bound);
  const SurfaceGeometry torus = vertex_geometry(generate(Torus{2.0, 0.5}, 1));
  EXPECT_EQ(grosjean_bound_check(torus, 1.0).scal_positive, Hypothesis::kViolated);
}

TEST(AlmostEinstein, SphereIsNearlyEinstein) {
  const Prepared s = prepare(Sphere{1.0}, 4);
  const EinsteinReport e = almost_einstein_analysis(s.mesh, s.geom, s.lambda1, 1000);
  EXPECT_TRUE(e.almost_einstein);
  EXPECT_LT(e.eps_rel, 0.02);
  EXPECT_NEAR(e.target_radius, std::sqrt(1.0 / (4.0 * kPi)), 1e-3 * e.target_radius);
  EXPECT_LT(e.distance.hausdorff, 0.02 * e.target_radius);
  // discrete K sits slightly above 1/r^2, so the lower bound holds up to the slack
  EXPECT_LE(e.lower, s.lambda1 * 1.05);
  EXPECT_GE(e.upper, s.lambda1);
}

TEST(FullReport, TorusIsDataNotFailure) {
  const PinchingReport r = full_report(generate(Torus{2.0, 0.5}, 2), 2, 2.0);
  EXPECT_FALSE(r.hk_positive);
  EXPECT_EQ(r.grosjean.scal_positive, Hypothesis::kViolated);
}

TEST(FullReport, ShapeAndPositionDoNotMatter) {
  const TriMesh m = generate(Ellipsoid{1.0, 1.0, 1.15}, 3);
  const PinchingReport a = full_report(m, 1, 2.0);
  const PinchingReport b = full_report(translated(scaled(m, 7.0), Vec3(1, -2, 3)), 1, 2.0);
  EXPECT_NEAR(a.lambda1, b.lambda1, 1e-8 * a.lambda1);
  EXPECT_NEAR(a.deficit, b.deficit, 1e-7 * std::abs(a.deficit));
  EXPECT_NEAR(a.hausdorff, b.hausdorff, 1e-8 * a.hausdorff);
  EXPECT_NEAR(a.normalization_scale, 7.0 * b.normalization_scale, 1e-12);
}
