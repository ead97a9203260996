#pragma once

#include "reilly/bvh.hpp"
#include "reilly/curvature.hpp"
#include "reilly/mesh.hpp"
#include "reilly/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reilly {

// Intrinsic dimension of the surfaces handled by the mesh pipeline.
inline constexpr int kSurfaceDim = 2;

// Comparison sphere S(center, sqrt(n / lambda1)).
struct SphereModel {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
};

// lambda1 (int H_{k-1})^2 - n ||H_k||_{2p}^2 on a unit-area mesh, with the
// pieces that make it up.
struct DeficitTerms {
  int k = 1;
  double p = 2.0;
  double lambda1 = 0.0;
  double int_hkm1 = 0.0;
  double norm_hk_2p = 0.0;
  double deficit = 0.0;
  bool hk_positive = false;
  bool p_below_two = false;  // theorem hypothesis is p >= 2
};

// Requires a normalized mesh (PreconditionError otherwise); k in {1, 2}, p >= 1.
DeficitTerms reilly_deficit(const TriMesh& mesh, const SurfaceGeometry& geom, int k, double p, double lambda1);

// D > -C. Throws InvalidArgument unless C > 0.
bool pinching_predicate(double deficit, double c);

// C < (n/2) ||H_k||_{2p}^2, the hypothesis shared by the L2 lemmas.
bool lemma_gate(double c, double norm_hk_2p);

SphereModel sphere_model(const TriMesh& mesh, double lambda1);

// Smallest eps with every vertex in the shell r - eps <= |X - x0| <= r + eps.
// Throws PreconditionError if the mesh centroid is not at the model center.
double annulus_epsilon(const TriMesh& mesh, const SphereModel& model);

// Max distance from `samples` Fibonacci-lattice points of the model sphere to
// the mesh surface.
double density_epsilon(const TriMesh& mesh, const SphereModel& model, int samples);
double density_epsilon(const TriangleBvh& bvh, const SphereModel& model, int samples);

std::vector<Vec3> fibonacci_sphere(const SphereModel& model, int samples);

struct HausdorffResult {
  double annulus = 0.0;
  double density = 0.0;
  double hausdorff = 0.0;  // max of the two one-sided distances
};

HausdorffResult hausdorff_to_sphere(const TriMesh& mesh, const SphereModel& model, int samples);

struct VectorField {
  std::vector<Vec3> values;
  double l2sq = 0.0;
  double l1 = 0.0;
};

// Y = n H_k nu - lambda1 (int H_{k-1}) X.
VectorField field_Y(const TriMesh& mesh, const SurfaceGeometry& geom, int k, double lambda1);

enum class Hypothesis { kSatisfied, kViolated };

struct ZField {
  VectorField field;
  double bound = 0.0;  // (n/lambda1)^{3/2} (int H_{k-1})^{-2} C with C = max(0, -D)
  Hypothesis hk_positive = Hypothesis::kSatisfied;
};

// Z = sqrt(n/lambda1) |X|^{1/2} H_k / (int H_{k-1}) nu - X / |X|^{1/2}.
// Throws PreconditionError if some |X| < 1e-9 sqrt(area).
ZField field_Z(const TriMesh& mesh, const SurfaceGeometry& geom, int k, double lambda1, double p = 2.0);

struct PhiResult {
  std::vector<double> values;  // |X| (|X| - sqrt(n/lambda1))^2
  double sup = 0.0;
  double l2 = 0.0;
  double sqrt_l1 = 0.0;  // || phi^{1/2} ||_1
};

PhiResult phi_fn(const TriMesh& mesh, double lambda1);
PhiResult phi_fn(const TriMesh& mesh, std::span<const double> weights, double lambda1);

enum class CheckStatus { kPass, kFail, kHypothesisViolated, kSkipped };

std::string to_string(CheckStatus status);

struct LemmaCheck {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double scale = 1.0;  // magnitude the slack is measured against
  CheckStatus status = CheckStatus::kPass;
  std::string note;

  bool pass() const { return status == CheckStatus::kPass; }
  // (rhs + tol * scale - lhs) / scale; negative when the check fails.
  double margin(double tol) const { return (rhs + tol * scale - lhs) / scale; }
  // max(0, lhs - rhs) / scale: the part of the slack actually used.
  double excess() const { return std::max(0.0, lhs - rhs) / scale; }
};

struct LemmaOptions {
  double tol_disc = 0.05;
  double eps_c = 1e-12;
};

// The explicit inequality chains of the L2 lemmas, evaluated with the minimal
// pinching constant C = max(eps_c, -D). Never throws on hypothesis failures:
// they are recorded per check.
//
// Ids, in order: pinching_gate, position_l2_upper, position_l2_lower,
// radius_sandwich_left, radius_sandwich_right, tangential_part, y_field_l2,
// z_field_l2, phi_holder, phi_split, phi_cauchy_schwarz, and for k = 2
// maclaurin_chain.
std::vector<LemmaCheck> lemma_suite(const TriMesh& mesh, const SurfaceGeometry& geom, int k, double p,
                                    double lambda1, const LemmaOptions& options = {});

// Max over faces of |s^2 - 1| for the singular values s of the linear map
// taking each flat triangle onto the chord triangle of its image under
// F(x) = r (x - x0) / |x - x0|.
double map_F_distortion(const TriMesh& mesh, const SphereModel& model);

struct GrosjeanResult {
  Hypothesis scal_positive = Hypothesis::kSatisfied;
  double bound = 0.0;  // max Scal / (n - 1)
  bool pass = false;   // lambda1 <= bound (1 + tol)
};

// Scal = n (n - 1) H_2 = 2 K on surfaces.
GrosjeanResult grosjean_bound_check(const SurfaceGeometry& geom, double lambda1, double tol_disc = 0.05);

struct EinsteinReport {
  bool almost_einstein = false;  // k* > 0
  double k_star = 0.0;           // (max K + min K) / 2
  double eps = 0.0;              // (max K - min K) / 2 = ||Ric - k* g||_inf
  double eps_rel = 0.0;          // eps / k*
  double target_radius = 0.0;    // sqrt((n - 1) / k*)
  HausdorffResult distance;
  double lower = 0.0;            // n (k* - eps) / (n - 1), Lichnerowicz
  double upper = 0.0;            // n (k* + eps) / (n - 1), scalar-curvature bound
  bool lower_holds = false;      // reported only
  bool upper_holds = false;
};

EinsteinReport almost_einstein_analysis(const TriMesh& mesh, const SurfaceGeometry& geom, double lambda1,
                                        int samples = 2000, double tol_disc = 0.05);

struct ReportOptions {
  SolverOptions solver;
  int samples = 2000;
  double tol_disc = 0.05;
  double eps_c = 1e-12;
  MassScheme mass = MassScheme::kLumpedMixed;
};

struct PinchingReport {
  std::string name;
  int k = 1;
  double p = 2.0;
  std::size_t vertices = 0;
  std::size_t faces = 0;
  double normalization_scale = 1.0;
  Vec3 normalization_shift = Vec3::Zero();

  double lambda1 = 0.0;
  double lambda1_residual = 0.0;
  int solver_iterations = 0;
  double int_hkm1 = 0.0;
  double norm_hk_2p = 0.0;
  double deficit = 0.0;
  bool hk_positive = false;
  bool p_below_two = false;
  std::string remark;

  double rayleigh_bound = 0.0;
  double norm_x_sq = 0.0;
  double hsiung_minkowski = 0.0;
  double identity_residual = 0.0;

  SphereModel model;
  double annulus_eps_star = 0.0;
  double density_eps_star = 0.0;
  double hausdorff = 0.0;
  std::optional<double> distortion_theta_star;

  double y_l2sq = 0.0;
  std::optional<double> z_l2sq;
  double phi_sup = 0.0;
  double phi_l2 = 0.0;

  std::vector<LemmaCheck> lemma_checks;
  double tol_disc = 0.05;
  GrosjeanResult grosjean;
  std::optional<EinsteinReport> einstein;
};

// normalize -> geometry -> spectrum -> every check. Deterministic given options.
PinchingReport full_report(const TriMesh& mesh, int k, double p, const ReportOptions& options = {});

}  // namespace reilly
