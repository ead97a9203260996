#include "reilly/sparse.hpp"

#include "reilly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace reilly {

SparseSymMatrix SparseSymMatrix::from_triplets(int dim, std::vector<Triplet> triplets) {
  if (dim < 0) throw InvalidArgument("negative matrix dimension");
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= dim || t.col < 0 || t.col >= dim) {
      throw InvalidArgument("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) + ") out of range");
    }
  }
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

  SparseSymMatrix m;
  m.dim_ = dim;
  m.row_offsets_.assign(dim + 1, 0);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size();) {
    const int r = triplets[i].row, c = triplets[i].col;
    double v = 0.0;
    for (; i < triplets.size() && triplets[i].row == r && triplets[i].col == c; ++i) v += triplets[i].value;
    m.col_indices_.push_back(c);
    m.values_.push_back(v);
    ++m.row_offsets_[r + 1];
  }
  for (int r = 0; r < dim; ++r) m.row_offsets_[r + 1] += m.row_offsets_[r];

  double scale = 0.0;
  for (double v : m.values_) scale = std::max(scale, std::abs(v));
  for (int r = 0; r < dim; ++r) {
    for (int k = m.row_offsets_[r]; k < m.row_offsets_[r + 1]; ++k) {
      const int c = m.col_indices_[k];
      if (std::abs(m.values_[k] - m.coeff(c, r)) > 1e-12 * scale) {
        throw InvalidArgument("matrix is not symmetric at (" + std::to_string(r) + ", " + std::to_string(c) + ")");
      }
    }
  }
  return m;
}

SparseSymMatrix SparseSymMatrix::diagonal(std::span<const double> diag) {
  SparseSymMatrix m;
  m.dim_ = static_cast<int>(diag.size());
  m.row_offsets_.resize(diag.size() + 1);
  for (std::size_t i = 0; i <= diag.size(); ++i) m.row_offsets_[i] = static_cast<int>(i);
  m.col_indices_.resize(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.col_indices_[i] = static_cast<int>(i);
  m.values_.assign(diag.begin(), diag.end());
  return m;
}

bool SparseSymMatrix::is_diagonal() const {
  for (int r = 0; r < dim_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) {
      if (col_indices_[k] != r && values_[k] != 0.0) return false;
    }
  }
  return true;
}

double SparseSymMatrix::coeff(int row, int col) const {
  const auto first = col_indices_.begin() + row_offsets_[row];
  const auto last = col_indices_.begin() + row_offsets_[row + 1];
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

std::vector<double> SparseSymMatrix::diagonal_values() const {
  std::vector<double> d(dim_);
  for (int r = 0; r < dim_; ++r) d[r] = coeff(r, r);
  return d;
}

double SparseSymMatrix::trace() const {
  double t = 0.0;
  for (int r = 0; r < dim_; ++r) t += coeff(r, r);
  return t;
}

void SparseSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_) {
    throw InvalidArgument("multiply: vector size does not match matrix dimension");
  }
  for (int r = 0; r < dim_; ++r) {
    double acc = 0.0;
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) acc += values_[k] * x[col_indices_[k]];
    y[r] = acc;
  }
}

std::vector<double> SparseSymMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(dim_);
  multiply(x, y);
  return y;
}

double SparseSymMatrix::quadratic_form(std::span<const double> x) const {
  const std::vector<double> y = multiply(x);
  double acc = 0.0;
  for (int i = 0; i < dim_; ++i) acc += x[i] * y[i];
  return acc;
}

Eigen::SparseMatrix<double> SparseSymMatrix::to_eigen() const {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(values_.size());
  for (int r = 0; r < dim_; ++r) {
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) trips.emplace_back(r, col_indices_[k], values_[k]);
  }
  Eigen::SparseMatrix<double> out(dim_, dim_);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace reilly
