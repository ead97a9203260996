#pragma once

#include "reilly/mesh.hpp"
#include "reilly/sparse.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace reilly {

// Cotangent stiffness: w_ij = -(cot a_ij + cot b_ij) / 2 off the diagonal,
// rows summing to zero.
SparseSymMatrix assemble_stiffness(const TriMesh& mesh);

enum class MassScheme { kLumpedMixed, kBarycentric };

SparseSymMatrix assemble_mass(const TriMesh& mesh, MassScheme scheme = MassScheme::kLumpedMixed);

struct EigenPair {
  double lambda = 0.0;
  std::vector<double> vector;  // M-normalized, M-orthogonal to constants
  // ||K u - lambda M u||_2 / (lambda ||M u||_2)
  double residual = 0.0;
};

struct SolverOptions {
  double tol = 1e-8;
  int maxiter = 0;  // 0: 10 * sqrt(dim)
  std::uint64_t seed = 0;
};

struct Spectrum {
  std::vector<EigenPair> pairs;  // ascending
  int iterations = 0;
  double tol = 0.0;
  double shift = 0.0;
};

// Smallest `count` nonzero eigenpairs of K u = lambda M u. Block shift-invert
// subspace iteration on (K + sigma M) with the constant mode deflated in the
// M inner product and Rayleigh-Ritz after every sweep.
// Throws SolverError on non-convergence and DisconnectedError when a zero
// eigenvalue survives deflation.
Spectrum lowest_spectrum(const SparseSymMatrix& K, const SparseSymMatrix& M, int count,
                         const SolverOptions& options = {});

EigenPair first_eigenpair(const SparseSymMatrix& K, const SparseSymMatrix& M, const SolverOptions& options = {});

// n / int |X|^2 (n = 2): the Rayleigh quotient of the coordinate functions.
// Throws PreconditionError unless the mesh is centered with unit area.
double rayleigh_upper_bound_coords(const TriMesh& mesh);

// {"lambda": [...], "residuals": [...], "solver": {"tol": ..., "iters": ...}}
std::string spectrum_json(const Spectrum& spectrum);

void write_matrix_market(const SparseSymMatrix& matrix, std::ostream& out);
void write_matrix_market(const SparseSymMatrix& matrix, const std::filesystem::path& path);

}  // namespace reilly
