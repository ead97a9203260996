#include "reilly/curvature.hpp"

#include "reilly/errors.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace reilly {

SurfaceGeometry vertex_geometry(const TriMesh& mesh) {
  const std::size_t nv = mesh.positions.size();
  const std::vector<double> area = vertex_areas(mesh, AreaScheme::kMixedVoronoi);
  std::vector<Vec3> normal_acc(nv, Vec3::Zero());
  std::vector<Vec3> laplace_x(nv, Vec3::Zero());
  std::vector<double> angle_sum(nv, 0.0);

  for (const Face& t : mesh.faces) {
    const std::array<Vec3, 3> p{mesh.positions[t[0]], mesh.positions[t[1]], mesh.positions[t[2]]};
    const Vec3 fn = (p[1] - p[0]).cross(p[2] - p[0]).normalized();
    for (int c = 0; c < 3; ++c) {
      const int a = (c + 1) % 3, b = (c + 2) % 3;
      const Vec3 u = p[a] - p[c];
      const Vec3 v = p[b] - p[c];
      const double cross = u.cross(v).norm();
      const double angle = std::atan2(cross, u.dot(v));
      angle_sum[t[c]] += angle;
      normal_acc[t[c]] += angle * fn;
      // edge (a, b) is opposite corner c
      const double w = 0.5 * u.dot(v) / cross;
      const Vec3 e = p[a] - p[b];
      laplace_x[t[a]] += w * e;
      laplace_x[t[b]] -= w * e;
    }
  }

  const double orientation = signed_volume(mesh) < 0.0 ? -1.0 : 1.0;
  SurfaceGeometry geom(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    VertexGeometry& g = geom[i];
    g.weight = area[i];
    g.normal = orientation * normal_acc[i].normalized();

    const Vec3 hn = laplace_x[i] / area[i];  // discrete 2 H nu
    const double hn_norm = hn.norm();
    if (hn_norm * std::sqrt(area[i]) > 1e-10) {
      g.H = std::copysign(0.5 * hn_norm, hn.dot(g.normal));
    }
    const double defect = 2.0 * std::numbers::pi - angle_sum[i];
    if (std::abs(defect) > 1e-12) g.K = defect / area[i];

    const double disc = std::sqrt(std::max(g.H * g.H - g.K, 0.0));
    g.kappa1 = g.H + disc;
    g.kappa2 = g.H - disc;
  }
  return geom;
}

std::vector<double> mesh_hk(const SurfaceGeometry& geom, int k) {
  if (k < 0 || k > 3) throw InvalidArgument("mesh H_k is defined for k in {0, 1, 2, 3} on surfaces");
  std::vector<double> out(geom.size());
  for (std::size_t i = 0; i < geom.size(); ++i) {
    out[i] = k == 0 ? 1.0 : k == 1 ? geom[i].H : k == 2 ? geom[i].K : 0.0;
  }
  return out;
}

std::vector<double> weights(const SurfaceGeometry& geom) {
  std::vector<double> w(geom.size());
  for (std::size_t i = 0; i < geom.size(); ++i) w[i] = geom[i].weight;
  return w;
}

std::vector<Vec3> tangential_projection(const TriMesh& mesh, const SurfaceGeometry& geom) {
  std::vector<Vec3> out(mesh.positions.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec3& x = mesh.positions[i];
    const Vec3& nu = geom[i].normal;
    Vec3 t = x - x.dot(nu) * nu;
    // one more projection removes the rounding left by the first
    t -= t.dot(nu) * nu;
    out[i] = t;
  }
  return out;
}

double integrate(std::span<const double> w, std::span<const double> f) {
  if (w.size() != f.size()) {
    throw InvalidArgument("integrate: " + std::to_string(f.size()) + " values for " + std::to_string(w.size()) +
                          " vertices");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::isnan(f[i])) throw InvalidArgument("integrate: NaN at vertex " + std::to_string(i));
    acc += f[i] * w[i];
  }
  return acc;
}

double integrate(const TriMesh& mesh, std::span<const double> f) {
  return integrate(vertex_areas(mesh, AreaScheme::kMixedVoronoi), f);
}

double integrate(const SurfaceGeometry& geom, std::span<const double> f) { return integrate(weights(geom), f); }

double lp_norm(std::span<const double> w, std::span<const double> f, double q) {
  if (!(q >= 1.0)) throw InvalidArgument("lp_norm: exponent must be >= 1");
  if (w.size() != f.size()) throw InvalidArgument("lp_norm: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::isnan(f[i])) throw InvalidArgument("lp_norm: NaN at vertex " + std::to_string(i));
    acc += w[i] * std::pow(std::abs(f[i]), q);
  }
  return std::pow(acc, 1.0 / q);
}

double lp_norm(const SurfaceGeometry& geom, std::span<const double> f, double q) {
  return lp_norm(weights(geom), f, q);
}

double sup_norm(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double hsiung_minkowski_integral(std::span<const double> w, std::span<const Vec3> positions,
                                 std::span<const Vec3> normals, std::span<const double> hkm1,
                                 std::span<const double> hk) {
  const std::size_t n = w.size();
  if (positions.size() != n || normals.size() != n || hkm1.size() != n || hk.size() != n) {
    throw InvalidArgument("hsiung_minkowski_integral: size mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * (hkm1[i] - hk[i] * positions[i].dot(normals[i]));
  return acc;
}

double hsiung_minkowski_residual(const TriMesh& mesh, const SurfaceGeometry& geom, int k) {
  if (k < 1 || k > 2) throw InvalidArgument("hsiung_minkowski_residual: k must be 1 or 2 on surfaces");
  std::vector<Vec3> normals(geom.size());
  for (std::size_t i = 0; i < geom.size(); ++i) normals[i] = geom[i].normal;
  return hsiung_minkowski_integral(weights(geom), mesh.positions, normals, mesh_hk(geom, k - 1), mesh_hk(geom, k));
}

double delta_position_residual(const TriMesh& mesh, const SurfaceGeometry& geom, const SparseSymMatrix& stiffness,
                               std::span<const double> mass_diag) {
  constexpr double n = 2.0;
  const std::size_t nv = mesh.positions.size();
  if (static_cast<std::size_t>(stiffness.dim()) != nv || mass_diag.size() != nv || geom.size() != nv) {
    throw InvalidArgument("delta_position_residual: size mismatch");
  }
  std::vector<double> sq(nv);
  for (std::size_t i = 0; i < nv; ++i) sq[i] = mesh.positions[i].squaredNorm();
  const std::vector<double> lap = stiffness.multiply(sq);
  double acc = 0.0;
  for (std::size_t i = 0; i < nv; ++i) {
    const double lhs = 0.5 * lap[i] / mass_diag[i];
    const double rhs = n * geom[i].H * geom[i].normal.dot(mesh.positions[i]) - n;
    const double r = lhs - rhs;
    acc += mass_diag[i] * r * r;
  }
  return std::sqrt(acc);
}

void write_geometry_csv(const SurfaceGeometry& geom, std::ostream& out) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "vertex_id,nx,ny,nz,H,K,kappa1,kappa2,weight\n";
  for (std::size_t i = 0; i < geom.size(); ++i) {
    const VertexGeometry& g = geom[i];
    out << i << ',' << g.normal.x() << ',' << g.normal.y() << ',' << g.normal.z() << ',' << g.H << ',' << g.K << ','
        << g.kappa1 << ',' << g.kappa2 << ',' << g.weight << '\n';
  }
  out.precision(old_precision);
}

}  // namespace reilly
