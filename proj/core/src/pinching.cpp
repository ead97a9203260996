#include "reilly/pinching.hpp"

#include "reilly/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace reilly {

namespace {

constexpr double kN = kSurfaceDim;

void require_normalized(const TriMesh& mesh, const char* what) {
  const double area = total_area(mesh);
  if (std::abs(area - 1.0) > 1e-9) {
    throw PreconditionError(std::string(what) + " needs a normalized mesh (area = " + std::to_string(area) + ")");
  }
  if (!is_centered(mesh)) {
    throw PreconditionError(std::string(what) + " needs a normalized mesh (centroid not at the origin)");
  }
}

void require_k(int k) {
  if (k < 1 || k > kSurfaceDim) throw InvalidArgument("k must be 1 or 2 on surfaces, got " + std::to_string(k));
}

void require_lambda(double lambda1) {
  if (!(lambda1 > 0.0)) throw PreconditionError("lambda1 must be positive");
}

bool all_positive(std::span<const double> f) {
  return std::all_of(f.begin(), f.end(), [](double v) { return v > 0.0; });
}

struct VectorNorms {
  double l2sq = 0.0;
  double l1 = 0.0;
};

VectorNorms vector_norms(std::span<const double> w, std::span<const Vec3> v) {
  VectorNorms out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double len = v[i].norm();
    out.l2sq += w[i] * len * len;
    out.l1 += w[i] * len;
  }
  return out;
}

LemmaCheck make_check(std::string id, double lhs, double rhs, double scale, double tol) {
  LemmaCheck c;
  c.id = std::move(id);
  c.lhs = lhs;
  c.rhs = rhs;
  c.scale = scale > 0.0 ? scale : 1.0;
  c.status = (lhs <= rhs + tol * c.scale) ? CheckStatus::kPass : CheckStatus::kFail;
  return c;
}

LemmaCheck blocked_check(std::string id, CheckStatus status, std::string note) {
  LemmaCheck c;
  c.id = std::move(id);
  c.status = status;
  c.note = std::move(note);
  return c;
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kHypothesisViolated: return "hypothesis_violated";
    case CheckStatus::kSkipped: return "skipped";
  }
  return "unknown";
}

DeficitTerms reilly_deficit(const TriMesh& mesh, const SurfaceGeometry& geom, int k, double p, double lambda1) {
  require_k(k);
  require_lambda(lambda1);
  if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
  require_normalized(mesh, "reilly_deficit");
  const std::vector<double> w = weights(geom);
  const std::vector<double> hk = mesh_hk(geom, k);
  DeficitTerms d;
  d.k = k;
  d.p = p;
  d.lambda1 = lambda1;
  d.int_hkm1 = integrate(w, mesh_hk(geom, k - 1));
  d.norm_hk_2p = lp_norm(w, hk, 2.0 * p);
  d.deficit = lambda1 * d.int_hkm1 * d.int_hkm1 - kN * d.norm_hk_2p * d.norm_hk_2p;
  d.hk_positive = all_positive(hk);
  d.p_below_two = p < 2.0;
  return d;
}

bool pinching_predicate(double deficit, double c) {
  if (!(c > 0.0)) throw InvalidArgument("pinching constant C must be positive");
  return deficit > -c;
}

bool lemma_gate(double c, double norm_hk_2p) { return c < 0.5 * kN * norm_hk_2p * norm_hk_2p; }

SphereModel sphere_model(const TriMesh& mesh, double lambda1) {
  require_lambda(lambda1);
  (void)mesh;  // the model is centered at the normalized mesh's centroid, the origin
  return SphereModel{Vec3::Zero(), std::sqrt(kN / lambda1)};
}

double annulus_epsilon(const TriMesh& mesh, const SphereModel& model) {
  const double length = std::sqrt(total_area(mesh));
  if ((surface_centroid(mesh) - model.center).norm() > 1e-9 * length) {
    throw PreconditionError("annulus_epsilon: mesh centroid is not at the model center");
  }
  double eps = 0.0;
  for (const Vec3& x : mesh.positions) eps = std::max(eps, std::abs((x - model.center).norm() - model.radius));
  return eps;
}

std::vector<Vec3> fibonacci_sphere(const SphereModel& model, int samples) {
  if (samples < 1) throw InvalidArgument("sample count must be positive");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> pts;
  pts.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / samples;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.push_back(model.center + model.radius * Vec3(rho * std::cos(phi), rho * std::sin(phi), z));
  }
  return pts;
}

double density_epsilon(const TriangleBvh& bvh, const SphereModel& model, int samples) {
  double eps = 0.0;
  for (const Vec3& s : fibonacci_sphere(model, samples)) eps = std::max(eps, bvh.distance(s));
  return eps;
}

double density_epsilon(const TriMesh& mesh, const SphereModel& model, int samples) {
  if (samples < 1) throw InvalidArgument("sample count must be positive");
  return density_epsilon(TriangleBvh(mesh), model, samples);
}

HausdorffResult hausdorff_to_sphere(const TriMesh& mesh, const SphereModel& model, int samples) {
  HausdorffResult r;
  r.annulus = annulus_epsilon(mesh, model);
  r.density = density_epsilon(mesh, model, samples);
  r.hausdorff = std::max(r.annulus, r.density);
  return r;
}

VectorField field_Y(const TriMesh& mesh, const SurfaceGeometry& geom, int k, double lambda1) {
  require_k(k);
  require_lambda(lambda1);
  require_normalized(mesh, "field_Y");
  const std::vector<double> w = weights(geom);
  const std::vector<double> hk = mesh_hk(geom, k);
  const double coeff = lambda1 * integrate(w, mesh_hk(geom, k - 1));
  VectorField y;
  y.values.resize(mesh.positions.size());
  for (std::size_t i = 0; i < y.values.size(); ++i) {
    y.values[i] = kN * hk[i] * geom[i].normal - coeff * mesh.positions[i];
  }
  const VectorNorms norms = vector_norms(w, y.values);
  y.l2sq = norms.l2sq;
  y.l1 = norms.l1;
  return y;
}

ZField field_Z(const TriMesh& mesh, const SurfaceGeometry& geom, int k, double lambda1, double p) {
  require_k(k);
  require_lambda(lambda1);
  require_normalized(mesh, "field_Z");
  const std::vector<double> w = weights(geom);
  const std::vector<double> hk = mesh_hk(geom, k);
  const double int_hkm1 = integrate(w, mesh_hk(geom, k - 1));
  const double r = std::sqrt(kN / lambda1);
  ZField z;
  z.hk_positive = all_positive(hk) ? Hypothesis::kSatisfied : Hypothesis::kViolated;
  z.field.values.resize(mesh.positions.size());
  for (std::size_t i = 0; i < mesh.positions.size(); ++i) {
    const Vec3& x = mesh.positions[i];
    const double len = x.norm();
    if (len < 1e-9) throw PreconditionError("field_Z: vertex " + std::to_string(i) + " sits at the origin");
    const double root = std::sqrt(len);
    z.field.values[i] = (r * root * hk[i] / int_hkm1) * geom[i].normal - x / root;
  }
  const VectorNorms norms = vector_norms(w, z.field.values);
  z.field.l2sq = norms.l2sq;
  z.field.l1 = norms.l1;
  const double norm_hk = lp_norm(w, hk, 2.0 * p);
  const double deficit = lambda1 * int_hkm1 * int_hkm1 - kN * norm_hk * norm_hk;
  z.bound = r * r * r / (int_hkm1 * int_hkm1) * std::max(0.0, -deficit);
  return z;
}

PhiResult phi_fn(const TriMesh& mesh, std::span<const double> w, double lambda1) {
  require_lambda(lambda1);
  if (w.size() != mesh.positions.size()) throw InvalidArgument("phi_fn: weight count does not match vertices");
  const double r = std::sqrt(kN / lambda1);
  PhiResult out;
  out.values.resize(mesh.positions.size());
  double l2sq = 0.0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double len = mesh.positions[i].norm();
    const double v = len * (len - r) * (len - r);
    out.values[i] = v;
    out.sup = std::max(out.sup, v);
    l2sq += w[i] * v * v;
    out.sqrt_l1 += w[i] * std::sqrt(v);
  }
  out.l2 = std::sqrt(l2sq);
  return out;
}

PhiResult phi_fn(const TriMesh& mesh, double lambda1) {
  return phi_fn(mesh, vertex_areas(mesh, AreaScheme::kMixedVoronoi), lambda1);
}

std::vector<LemmaCheck> lemma_suite(const TriMesh& mesh, const SurfaceGeometry& geom, int k, double p,
                                    double lambda1, const LemmaOptions& options) {
  const double tol = options.tol_disc;
  const DeficitTerms d = reilly_deficit(mesh, geom, k, p, lambda1);
  const std::vector<double> w = weights(geom);
  const double c = std::max(options.eps_c, -d.deficit);
  const double L = lambda1;
  const double I = d.int_hkm1;
  const double N = d.norm_hk_2p * d.norm_hk_2p;
  const double r2 = kN / L;
  const double r = std::sqrt(r2);

  double x2 = 0.0, x_l1 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    x2 += w[i] * mesh.positions[i].squaredNorm();
    x_l1 += w[i] * mesh.positions[i].norm();
  }
  const bool gate = lemma_gate(c, d.norm_hk_2p);
  const bool rayleigh = L * x2 <= kN * (1.0 + tol);
  const bool hk_pos = d.hk_positive;
  const std::string hk_note = "H_" + std::to_string(k) + " <= 0 at some vertex";
  const std::string gate_note = "C >= (n/2) ||H_k||_2p^2";
  const std::string rayleigh_note = "discrete lambda1 ||X||^2 <= n fails";

  std::vector<LemmaCheck> checks;

  {
    LemmaCheck g;
    g.id = "pinching_gate";
    g.lhs = c;
    g.rhs = 0.5 * kN * N;
    g.scale = g.rhs;
    g.status = gate ? CheckStatus::kPass : CheckStatus::kHypothesisViolated;
    checks.push_back(g);
  }

  checks.push_back(make_check("position_l2_upper", x2, r2, r2, tol));

  if (!gate) {
    checks.push_back(blocked_check("position_l2_lower", CheckStatus::kHypothesisViolated, gate_note));
    checks.push_back(blocked_check("radius_sandwich_left", CheckStatus::kHypothesisViolated, gate_note));
  } else {
    const double denom = c + L * I * I;
    checks.push_back(make_check("position_l2_lower", kN * L * std::pow(I, 4) / (denom * denom), x2, x2, tol));
    checks.push_back(make_check("radius_sandwich_left", r2, 2.0 * I * I / N, 2.0 * I * I / N, tol));
  }

  if (!hk_pos) {
    checks.push_back(blocked_check("radius_sandwich_right", CheckStatus::kHypothesisViolated, hk_note));
  } else {
    const std::vector<double> h = mesh_hk(geom, 1);
    const double rhs = 2.0 * std::pow(sup_norm(h), 2.0 * (k - 1)) / N;
    checks.push_back(make_check("radius_sandwich_right", 2.0 * I * I / N, rhs, rhs, tol));
  }

  if (!gate) {
    checks.push_back(blocked_check("tangential_part", CheckStatus::kHypothesisViolated, gate_note));
  } else if (!rayleigh) {
    checks.push_back(blocked_check("tangential_part", CheckStatus::kSkipped, rayleigh_note));
  } else {
    const std::vector<Vec3> xt = tangential_projection(mesh, geom);
    const double xt2 = vector_norms(w, xt).l2sq;
    checks.push_back(make_check("tangential_part", xt2, c * x2 / (kN * N), x2, tol));
  }

  const VectorField y = field_Y(mesh, geom, k, L);
  if (!rayleigh) {
    checks.push_back(blocked_check("y_field_l2", CheckStatus::kSkipped, rayleigh_note));
  } else {
    checks.push_back(make_check("y_field_l2", y.l2sq, kN * c, kN * kN * N, tol));
  }

  const ZField z = field_Z(mesh, geom, k, L, p);
  if (!hk_pos) {
    checks.push_back(blocked_check("z_field_l2", CheckStatus::kHypothesisViolated, hk_note));
  } else if (!gate) {
    checks.push_back(blocked_check("z_field_l2", CheckStatus::kHypothesisViolated, gate_note));
  } else {
    checks.push_back(make_check("z_field_l2", z.field.l2sq, r2 * r / (I * I) * c, x_l1, tol));
  }

  const PhiResult phi = phi_fn(mesh, w, L);
  const double phi_scale = r2 * r;
  checks.push_back(make_check("phi_holder", phi.l2, std::pow(phi.sup, 0.75) * std::sqrt(phi.sqrt_l1),
                              phi_scale, tol));

  double xy_l1 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) xy_l1 += w[i] * std::sqrt(mesh.positions[i].norm()) * y.values[i].norm();
  const double y_term = xy_l1 / (L * std::abs(I));
  checks.push_back(make_check("phi_split", phi.sqrt_l1, y_term + r * z.field.l1, std::pow(r, 1.5), tol));
  checks.push_back(make_check("phi_cauchy_schwarz", y_term,
                              std::pow(x2, 0.25) * std::sqrt(y.l2sq) / (L * std::abs(I)), std::pow(r, 1.5), tol));

  if (k >= 2) {
    if (!hk_pos) {
      checks.push_back(blocked_check("maclaurin_chain", CheckStatus::kHypothesisViolated, hk_note));
    } else {
      double worst = -std::numeric_limits<double>::infinity();
      double hsup = 0.0;
      for (const VertexGeometry& g : geom) {
        worst = std::max(worst, std::sqrt(g.K) - g.H);
        hsup = std::max(hsup, std::abs(g.H));
      }
      checks.push_back(make_check("maclaurin_chain", worst, 0.0, hsup, tol));
    }
  }
  return checks;
}

double map_F_distortion(const TriMesh& mesh, const SphereModel& model) {
  const double length = std::sqrt(total_area(mesh));
  std::vector<Vec3> image(mesh.positions.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const Vec3 x = mesh.positions[i] - model.center;
    const double len = x.norm();
    if (len < 1e-9 * length) throw PreconditionError("map_F_distortion: vertex " + std::to_string(i) + " at the center");
    image[i] = model.radius * x / len;
  }
  double theta = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& t = mesh.faces[f];
    const Vec3 e1 = mesh.positions[t[1]] - mesh.positions[t[0]];
    const Vec3 e2 = mesh.positions[t[2]] - mesh.positions[t[0]];
    const Vec3 f1 = image[t[1]] - image[t[0]];
    const Vec3 f2 = image[t[2]] - image[t[0]];
    Eigen::Matrix2d g, gi;
    g << e1.dot(e1), e1.dot(e2), e1.dot(e2), e2.dot(e2);
    gi << f1.dot(f1), f1.dot(f2), f1.dot(f2), f2.dot(f2);
    if (gi.determinant() <= 1e-14 * gi.trace() * gi.trace()) {
      throw PreconditionError("map_F_distortion: image of face " + std::to_string(f) + " is degenerate");
    }
    // s^2 are the eigenvalues of gi relative to g
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2d> solver(gi, g, Eigen::EigenvaluesOnly);
    for (int j = 0; j < 2; ++j) theta = std::max(theta, std::abs(solver.eigenvalues()[j] - 1.0));
  }
  return theta;
}

GrosjeanResult grosjean_bound_check(const SurfaceGeometry& geom, double lambda1, double tol_disc) {
  GrosjeanResult g;
  double kmax = -std::numeric_limits<double>::infinity();
  double kmin = std::numeric_limits<double>::infinity();
  for (const VertexGeometry& v : geom) {
    kmax = std::max(kmax, v.K);
    kmin = std::min(kmin, v.K);
  }
  const double scal_max = kN * (kN - 1.0) * kmax;
  g.bound = scal_max / (kN - 1.0);
  g.scal_positive = kmin > 0.0 ? Hypothesis::kSatisfied : Hypothesis::kViolated;
  g.pass = g.scal_positive == Hypothesis::kSatisfied && lambda1 <= g.bound * (1.0 + tol_disc);
  return g;
}

EinsteinReport almost_einstein_analysis(const TriMesh& mesh, const SurfaceGeometry& geom, double lambda1,
                                        int samples, double tol_disc) {
  require_lambda(lambda1);
  EinsteinReport e;
  double kmax = -std::numeric_limits<double>::infinity();
  double kmin = std::numeric_limits<double>::infinity();
  for (const VertexGeometry& v : geom) {
    kmax = std::max(kmax, v.K);
    kmin = std::min(kmin, v.K);
  }
  e.k_star = 0.5 * (kmax + kmin);
  e.eps = 0.5 * (kmax - kmin);
  e.almost_einstein = e.k_star > 0.0;
  if (!e.almost_einstein) return e;
  e.eps_rel = e.eps / e.k_star;
  e.target_radius = std::sqrt((kN - 1.0) / e.k_star);
  e.distance = hausdorff_to_sphere(mesh, SphereModel{surface_centroid(mesh), e.target_radius}, samples);
  e.lower = kN * (e.k_star - e.eps) / (kN - 1.0);
  e.upper = kN * (e.k_star + e.eps) / (kN - 1.0);
  e.lower_holds = lambda1 >= e.lower * (1.0 - tol_disc);
  e.upper_holds = lambda1 <= e.upper * (1.0 + tol_disc);
  return e;
}

PinchingReport full_report(const TriMesh& input, int k, double p, const ReportOptions& options) {
  require_k(k);
  if (!(p >= 1.0)) throw InvalidArgument("p must be >= 1");
  validate(input);

  const Normalized norm = normalize(input);
  const TriMesh& mesh = norm.mesh;
  const SurfaceGeometry geom = vertex_geometry(mesh);
  const SparseSymMatrix stiffness = assemble_stiffness(mesh);
  const SparseSymMatrix mass = assemble_mass(mesh, options.mass);
  const EigenPair eig = first_eigenpair(stiffness, mass, options.solver);
  const double L = eig.lambda;

  PinchingReport rep;
  rep.name = input.name;
  rep.k = k;
  rep.p = p;
  rep.vertices = mesh.num_vertices();
  rep.faces = mesh.num_faces();
  rep.normalization_scale = norm.scale;
  rep.normalization_shift = norm.shift;
  rep.tol_disc = options.tol_disc;
  rep.lambda1 = L;
  rep.lambda1_residual = eig.residual;

  const DeficitTerms d = reilly_deficit(mesh, geom, k, p, L);
  rep.int_hkm1 = d.int_hkm1;
  rep.norm_hk_2p = d.norm_hk_2p;
  rep.deficit = d.deficit;
  rep.hk_positive = d.hk_positive;
  rep.p_below_two = d.p_below_two;
  if (p >= kN / (2.0 * k)) rep.remark = "p >= n/(2k): pinching constants do not depend on ||H_k||_2p";

  rep.rayleigh_bound = rayleigh_upper_bound_coords(mesh);
  rep.norm_x_sq = kN / rep.rayleigh_bound;
  rep.hsiung_minkowski = hsiung_minkowski_residual(mesh, geom, k);
  rep.identity_residual = delta_position_residual(mesh, geom, stiffness, mass.diagonal_values());

  rep.model = sphere_model(mesh, L);
  const HausdorffResult hd = hausdorff_to_sphere(mesh, rep.model, options.samples);
  rep.annulus_eps_star = hd.annulus;
  rep.density_eps_star = hd.density;
  rep.hausdorff = hd.hausdorff;
  try {
    rep.distortion_theta_star = map_F_distortion(mesh, rep.model);
  } catch (const PreconditionError&) {
    rep.distortion_theta_star.reset();
  }

  rep.y_l2sq = field_Y(mesh, geom, k, L).l2sq;
  const ZField z = field_Z(mesh, geom, k, L, p);
  if (z.hk_positive == Hypothesis::kSatisfied) rep.z_l2sq = z.field.l2sq;
  const PhiResult phi = phi_fn(mesh, weights(geom), L);
  rep.phi_sup = phi.sup;
  rep.phi_l2 = phi.l2;

  rep.lemma_checks = lemma_suite(mesh, geom, k, p, L, LemmaOptions{options.tol_disc, options.eps_c});
  rep.grosjean = grosjean_bound_check(geom, L, options.tol_disc);
  rep.einstein = almost_einstein_analysis(mesh, geom, L, options.samples, options.tol_disc);
  return rep;
}

}  // namespace reilly
