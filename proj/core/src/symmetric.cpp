#include "reilly/symmetric.hpp"

#include "reilly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace reilly {

namespace {

std::vector<double> recurrence(std::span<const double> kappa, int kmax) {
  std::vector<double> sorted(kappa.begin(), kappa.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> e(kmax + 1, 0.0);
  e[0] = 1.0;
  int seen = 0;
  for (double x : sorted) {
    ++seen;
    for (int j = std::min(seen, kmax); j >= 1; --j) e[j] += x * e[j - 1];
  }
  return e;
}

}  // namespace

CurvatureTuple::CurvatureTuple(std::vector<double> kappa) : kappa_(std::move(kappa)) {
  if (kappa_.empty()) throw InvalidArgument("curvature tuple must have n >= 1 entries");
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

double elem_sym(const CurvatureTuple& t, int k) {
  if (k < 0 || k > t.n()) {
    throw InvalidArgument("elem_sym: k = " + std::to_string(k) + " outside [0, " + std::to_string(t.n()) + "]");
  }
  return recurrence(t.kappa(), k)[k];
}

std::vector<double> elem_sym_all(const CurvatureTuple& t) { return recurrence(t.kappa(), t.n()); }

double normalized_hk(const CurvatureTuple& t, int k) {
  const int n = t.n();
  if (k < 0 || k > n + 1) {
    throw InvalidArgument("normalized_hk: k = " + std::to_string(k) + " outside [0, " + std::to_string(n + 1) + "]");
  }
  if (k == 0) return 1.0;
  if (k == n + 1) return 0.0;
  return elem_sym(t, k) / binomial(n, k);
}

MaclaurinChain maclaurin_chain(const CurvatureTuple& t, int k) {
  const int n = t.n();
  if (k < 1 || k > n) {
    throw InvalidArgument("maclaurin_chain: k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  const std::vector<double> e = recurrence(t.kappa(), k);
  MaclaurinChain out;
  out.hk = e[k] / binomial(n, k);
  if (!(out.hk > 0.0)) {
    out.status = MaclaurinChain::Status::kHypothesisViolated;
    return out;
  }
  out.values.reserve(k);
  for (int j = 1; j <= k; ++j) {
    const double hj = e[j] / binomial(n, j);
    out.values.push_back(std::copysign(std::pow(std::abs(hj), 1.0 / j), hj));
  }
  out.monotone = true;
  for (int j = 1; j < k; ++j) {
    const double slack = 1e-12 * std::max(std::abs(out.values[j - 1]), std::abs(out.values[j]));
    if (out.values[j] > out.values[j - 1] + slack) out.monotone = false;
  }
  return out;
}

}  // namespace reilly
