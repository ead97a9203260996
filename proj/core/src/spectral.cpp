#include "reilly/spectral.hpp"

#include "reilly/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <Eigen/SparseCholesky>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>

namespace reilly {

SparseSymMatrix assemble_stiffness(const TriMesh& mesh) {
  std::vector<Triplet> trips;
  trips.reserve(mesh.faces.size() * 12);
  for (const Face& t : mesh.faces) {
    for (int c = 0; c < 3; ++c) {
      const int a = t[(c + 1) % 3], b = t[(c + 2) % 3];
      const Vec3 u = mesh.positions[a] - mesh.positions[t[c]];
      const Vec3 v = mesh.positions[b] - mesh.positions[t[c]];
      const double w = 0.5 * u.dot(v) / u.cross(v).norm();
      trips.push_back({a, b, -w});
      trips.push_back({b, a, -w});
      trips.push_back({a, a, w});
      trips.push_back({b, b, w});
    }
  }
  return SparseSymMatrix::from_triplets(static_cast<int>(mesh.positions.size()), std::move(trips));
}

SparseSymMatrix assemble_mass(const TriMesh& mesh, MassScheme scheme) {
  const std::vector<double> w =
      vertex_areas(mesh, scheme == MassScheme::kLumpedMixed ? AreaScheme::kMixedVoronoi : AreaScheme::kBarycentric);
  return SparseSymMatrix::diagonal(w);
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void deflate_constant(MatrixXd& X, const VectorXd& mass) {
  const double total = mass.sum();
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double mean = mass.dot(X.col(j)) / total;
    X.col(j).array() -= mean;
  }
}

// Fix the sign so the entry of largest magnitude is positive.
void canonical_sign(VectorXd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0.0) v = -v;
}

}  // namespace

Spectrum lowest_spectrum(const SparseSymMatrix& K, const SparseSymMatrix& M, int count, const SolverOptions& options) {
  const int n = K.dim();
  if (M.dim() != n) throw InvalidArgument("stiffness and mass dimensions differ");
  if (!M.is_diagonal()) throw InvalidArgument("mass matrix must be diagonal");
  if (count < 1 || count > n - 1) {
    throw InvalidArgument("requested " + std::to_string(count) + " eigenpairs from a " + std::to_string(n) +
                          "-dimensional problem");
  }
  if (!(options.tol > 0.0)) throw InvalidArgument("solver tolerance must be positive");

  const std::vector<double> mdiag = M.diagonal_values();
  const VectorXd mass = Eigen::Map<const VectorXd>(mdiag.data(), n);
  if ((mass.array() <= 0.0).any()) throw InvalidArgument("mass matrix must have a positive diagonal");
  const double area = mass.sum();

  const Eigen::SparseMatrix<double> Ke = K.to_eigen();
  Eigen::SparseMatrix<double> Me(n, n);
  {
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < n; ++i) trips.emplace_back(i, i, mass[i]);
    Me.setFromTriplets(trips.begin(), trips.end());
  }
  const double shift = 1.0 / area;
  const Eigen::SparseMatrix<double> shifted = Ke + shift * Me;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(shifted);
  if (factor.info() != Eigen::Success) {
    throw SolverError("factorization of K + sigma M failed", std::numeric_limits<double>::infinity());
  }

  const int block = std::min(n - 1, std::max(2 * count, count + 8));
  const int maxiter = options.maxiter > 0 ? options.maxiter
                                          : static_cast<int>(std::ceil(10.0 * std::sqrt(static_cast<double>(n))));

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXd X(n, block);
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) X(i, j) = gauss(rng);
  }
  deflate_constant(X, mass);

  Spectrum out;
  out.tol = options.tol;
  out.shift = shift;
  VectorXd theta;
  double best = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= maxiter; ++it) {
    MatrixXd Y = factor.solve(mass.asDiagonal() * X);
    deflate_constant(Y, mass);

    const MatrixXd KY = Ke * Y;
    MatrixXd Kr = Y.transpose() * KY;
    MatrixXd Mr = Y.transpose() * mass.asDiagonal() * Y;
    Kr = 0.5 * (Kr + Kr.transpose()).eval();
    Mr = 0.5 * (Mr + Mr.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> ritz(Kr, Mr);
    if (ritz.info() != Eigen::Success) {
      throw SolverError("Rayleigh-Ritz step failed (block lost rank)", best);
    }
    theta = ritz.eigenvalues();
    X = Y * ritz.eigenvectors();
    const MatrixXd KX = KY * ritz.eigenvectors();

    if (it >= 3 && theta[0] * area < 1e-10) {
      throw DisconnectedError("first nonzero eigenvalue is numerically zero (lambda1 * area = " +
                              std::to_string(theta[0] * area) + "); the surface is disconnected");
    }

    double worst = 0.0;
    std::vector<double> residuals(count);
    for (int j = 0; j < count; ++j) {
      const VectorXd mx = mass.cwiseProduct(X.col(j));
      const double r = (KX.col(j) - theta[j] * mx).norm() / (std::abs(theta[j]) * mx.norm());
      residuals[j] = r;
      worst = std::max(worst, r);
    }
    best = std::min(best, worst);
    if (worst <= options.tol) {
      out.iterations = it;
      for (int j = 0; j < count; ++j) {
        VectorXd v = X.col(j);
        canonical_sign(v);
        EigenPair pair;
        pair.lambda = theta[j];
        pair.vector.assign(v.data(), v.data() + n);
        pair.residual = residuals[j];
        out.pairs.push_back(std::move(pair));
      }
      return out;
    }
  }
  throw SolverError("eigensolver did not converge in " + std::to_string(maxiter) + " iterations (best residual " +
                        std::to_string(best) + ")",
                    best);
}

EigenPair first_eigenpair(const SparseSymMatrix& K, const SparseSymMatrix& M, const SolverOptions& options) {
  return lowest_spectrum(K, M, 1, options).pairs.front();
}

double rayleigh_upper_bound_coords(const TriMesh& mesh) {
  const double area = total_area(mesh);
  if (std::abs(area - 1.0) > 1e-9) {
    throw PreconditionError("rayleigh_upper_bound_coords needs a unit-area mesh (area = " + std::to_string(area) + ")");
  }
  if (!is_centered(mesh)) throw PreconditionError("rayleigh_upper_bound_coords needs the centroid at the origin");
  const std::vector<double> w = vertex_areas(mesh, AreaScheme::kMixedVoronoi);
  double x2 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) x2 += w[i] * mesh.positions[i].squaredNorm();
  return 2.0 / x2;
}

std::string spectrum_json(const Spectrum& spectrum) {
  nlohmann::ordered_json j;
  j["lambda"] = nlohmann::ordered_json::array();
  j["residuals"] = nlohmann::ordered_json::array();
  for (const EigenPair& p : spectrum.pairs) {
    j["lambda"].push_back(p.lambda);
    j["residuals"].push_back(p.residual);
  }
  j["solver"] = {{"tol", spectrum.tol}, {"iters", spectrum.iterations}, {"shift", spectrum.shift}};
  return j.dump(2);
}

void write_matrix_market(const SparseSymMatrix& matrix, std::ostream& out) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  const auto offsets = matrix.row_offsets();
  const auto cols = matrix.col_indices();
  const auto vals = matrix.values();
  std::size_t lower = 0;
  for (int r = 0; r < matrix.dim(); ++r) {
    for (int k = offsets[r]; k < offsets[r + 1]; ++k) lower += cols[k] <= r ? 1 : 0;
  }
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << matrix.dim() << ' ' << matrix.dim() << ' ' << lower << '\n';
  for (int r = 0; r < matrix.dim(); ++r) {
    for (int k = offsets[r]; k < offsets[r + 1]; ++k) {
      if (cols[k] <= r) out << r + 1 << ' ' << cols[k] + 1 << ' ' << vals[k] << '\n';
    }
  }
  out.precision(old_precision);
}

void write_matrix_market(const SparseSymMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_matrix_market(matrix, out);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace reilly
