#pragma once

#include <span>
#include <vector>

namespace reilly {

// Principal curvatures kappa_1..kappa_n of an n-dimensional hypersurface.
class CurvatureTuple {
 public:
  explicit CurvatureTuple(std::vector<double> kappa);

  int n() const { return static_cast<int>(kappa_.size()); }
  std::span<const double> kappa() const { return kappa_; }

 private:
  std::vector<double> kappa_;
};

double binomial(int n, int k);

// e_k(kappa): coefficient of x^k in prod_i (1 + kappa_i x), O(n k).
// The input is sorted first so the result is bitwise permutation invariant.
double elem_sym(const CurvatureTuple& t, int k);

// e_0..e_n in one pass.
std::vector<double> elem_sym_all(const CurvatureTuple& t);

// H_k = e_k / C(n, k) for 1 <= k <= n, H_0 = 1, H_{n+1} = 0.
double normalized_hk(const CurvatureTuple& t, int k);

struct MaclaurinChain {
  enum class Status { kOk, kHypothesisViolated };
  Status status = Status::kOk;
  // values[j-1] = sign(H_j) |H_j|^(1/j) for j = 1..k; empty on violation.
  std::vector<double> values;
  bool monotone = false;
  double hk = 0.0;
};

// Checks H_k^(1/k) <= ... <= H_2^(1/2) <= H within 1e-12 relative slack.
// H_k <= 0 is reported as kHypothesisViolated.
MaclaurinChain maclaurin_chain(const CurvatureTuple& t, int k);

}  // namespace reilly
