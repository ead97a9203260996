#pragma once

#include <Eigen/SparseCore>

#include <cstddef>
#include <span>
#include <vector>

namespace reilly {

struct Triplet {
  int row;
  int col;
  double value;
};

// Symmetric sparse operator in compressed-sparse-row layout with sorted
// column indices and no duplicate entries.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;

  // Duplicates are summed. Throws InvalidArgument if the result is not
  // symmetric to 1e-12 relative.
  static SparseSymMatrix from_triplets(int dim, std::vector<Triplet> triplets);
  static SparseSymMatrix diagonal(std::span<const double> diag);

  int dim() const { return dim_; }
  std::size_t nonzeros() const { return values_.size(); }
  bool symmetric() const { return symmetric_; }
  bool is_diagonal() const;

  std::span<const int> row_offsets() const { return row_offsets_; }
  std::span<const int> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  double coeff(int row, int col) const;
  std::vector<double> diagonal_values() const;
  double trace() const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;
  double quadratic_form(std::span<const double> x) const;

  Eigen::SparseMatrix<double> to_eigen() const;

 private:
  int dim_ = 0;
  bool symmetric_ = true;
  std::vector<int> row_offsets_{0};
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

}  // namespace reilly
