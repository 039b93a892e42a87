#include "overshoot/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace overshoot::detail {

namespace {
constexpr double kPivotTol = 1e-9;
constexpr int kMaxIters = 200000;
}  // namespace

LpSolution simplex_max(const std::vector<std::vector<double>>& A,
                       const std::vector<double>& b, const std::vector<double>& c) {
  std::size_t m = A.size();
  std::size_t d = c.size();
  for (const auto& row : A)
    if (row.size() != d) throw std::invalid_argument("simplex: ragged constraint matrix");
  if (b.size() != m) throw std::invalid_argument("simplex: rhs size mismatch");
  for (double bi : b)
    if (bi < 0.0) throw std::invalid_argument("simplex: rhs must be nonnegative");

  // Standard form with x = u - v, u,v >= 0, plus one slack per row.
  std::size_t n = 2 * d + m;
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      T[i][j] = A[i][j];
      T[i][d + j] = -A[i][j];
    }
    T[i][2 * d + i] = 1.0;
    T[i][n] = b[i];
  }
  for (std::size_t j = 0; j < d; ++j) {
    T[m][j] = -c[j];
    T[m][d + j] = c[j];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = 2 * d + i;

  for (int iter = 0; iter < kMaxIters; ++iter) {
    // Bland: entering variable is the smallest index with negative reduced cost.
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (T[m][j] < -kPivotTol) { enter = j; break; }
    }
    if (enter == n) {
      LpSolution sol{LpStatus::optimal, T[m][n], std::vector<double>(d, 0.0)};
      for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < d) sol.x[basis[i]] += T[i][n];
        else if (basis[i] < 2 * d) sol.x[basis[i] - d] -= T[i][n];
      }
      return sol;
    }
    // Ratio test; ties again by smallest basis index (Bland).
    std::size_t leave = m;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= kPivotTol) continue;
      double ratio = T[i][n] / T[i][enter];
      if (leave == m || ratio < best_ratio - 1e-15 ||
          (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) return {LpStatus::unbounded, 0.0, {}};

    double piv = T[leave][enter];
    for (std::size_t j = 0; j <= n; ++j) T[leave][j] /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = T[i][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  throw std::runtime_error("simplex: iteration limit hit");
}

}  // namespace overshoot::detail
