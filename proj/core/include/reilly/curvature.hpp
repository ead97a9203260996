#pragma once

#include "reilly/mesh.hpp"
#include "reilly/sparse.hpp"
#include "reilly/symmetric.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace reilly {

// Discrete second-fundamental-form data at one vertex of a surface (n = 2).
struct VertexGeometry {
  Vec3 normal = Vec3::UnitZ();  // outward unit normal
  double H = 0.0;               // mean curvature, (kappa1 + kappa2) / 2
  double K = 0.0;               // Gauss curvature, equal to H_2 for surfaces
  double kappa1 = 0.0;          // kappa1 >= kappa2
  double kappa2 = 0.0;
  double weight = 0.0;          // mixed-Voronoi area
};

using SurfaceGeometry = std::vector<VertexGeometry>;

// Normals: angle-weighted face normals, flipped globally if the enclosed signed
// volume is negative. H: cotangent mean-curvature normal over the mixed area,
// half its norm, signed by its alignment with the normal. K: angle defect over
// the mixed area. kappa = H +- sqrt(max(H^2 - K, 0)).
SurfaceGeometry vertex_geometry(const TriMesh& mesh);

// Per-vertex H_k for k in {0, 1, 2}: 1, H, K.
std::vector<double> mesh_hk(const SurfaceGeometry& geom, int k);

std::vector<double> weights(const SurfaceGeometry& geom);

// X^T = X - <X, nu> nu.
std::vector<Vec3> tangential_projection(const TriMesh& mesh, const SurfaceGeometry& geom);

// sum_i f_i w_i; throws InvalidArgument on size mismatch or a NaN in f.
double integrate(std::span<const double> weights, std::span<const double> f);
double integrate(const TriMesh& mesh, std::span<const double> f);
double integrate(const SurfaceGeometry& geom, std::span<const double> f);

// (sum_i w_i |f_i|^q)^(1/q) under the raw area measure, q >= 1.
double lp_norm(std::span<const double> weights, std::span<const double> f, double q);
double lp_norm(const SurfaceGeometry& geom, std::span<const double> f, double q);
double sup_norm(std::span<const double> f);

// int (H_{k-1} - H_k <X, nu>) with explicit per-vertex data.
double hsiung_minkowski_integral(std::span<const double> weights, std::span<const Vec3> positions,
                                 std::span<const Vec3> normals, std::span<const double> hkm1,
                                 std::span<const double> hk);

// Same integral from the discrete geometry, k in {1, 2}.
double hsiung_minkowski_residual(const TriMesh& mesh, const SurfaceGeometry& geom, int k);

// Mass-weighted L2 norm of 1/2 Delta|X|^2 - (n H <nu, X> - n) with
// Delta = M^{-1} K (positive on the eigenproblem side), n = 2.
double delta_position_residual(const TriMesh& mesh, const SurfaceGeometry& geom, const SparseSymMatrix& stiffness,
                               std::span<const double> mass_diag);

// CSV: vertex_id, nx, ny, nz, H, K, kappa1, kappa2, weight
void write_geometry_csv(const SurfaceGeometry& geom, std::ostream& out);

}  // namespace reilly
