#pragma once

#include <vector>

namespace overshoot::detail {

enum class LpStatus { optimal, unbounded };

struct LpSolution {
  LpStatus status;
  double objective;
  std::vector<double> x;
};

// Maximizes c.x subject to A x <= b with x free, for b >= 0 (the origin is
// then feasible and no phase-1 is needed). Free variables are split into
// positive parts internally; dense tableau, Bland's rule. Sized for the tiny
// instances used here (tens of rows), where exactness beats speed.
LpSolution simplex_max(const std::vector<std::vector<double>>& A,
                       const std::vector<double>& b, const std::vector<double>& c);

}  // namespace overshoot::detail
