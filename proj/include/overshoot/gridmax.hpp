#pragma once

#include <cstdint>
#include <functional>

namespace overshoot {

struct CertifiedMax {
  double value = 0;        // best sample seen; a guaranteed lower bound on the sup
  double arg = 0;          // where it was seen
  double cert_error = 0;   // lipschitz * final_step / 2; sup <= value + cert_error
  double final_step = 0;
  std::int64_t evaluations = 0;
};

// Maximizes f over [lo, hi] for a function with |f'| <= lipschitz. Stages of
// uniform grids: after scanning at step h, only cells whose sample is within
// lipschitz*h/2 of the stage best can contain the supremum, and those survive
// into the next stage at step h/refine_ratio. This keeps the certificate of a
// flat scan at the final step while visiting far fewer points.
//
// Deterministic: samples are indexed globally in ascending order and ties keep
// the earliest index, so the result is identical for any thread count.
CertifiedMax certified_grid_max(const std::function<double(double)>& f, double lo,
                                double hi, double lipschitz, double target_step,
                                int threads = 1, int coarse_points = 4097,
                                int refine_ratio = 16);

}  // namespace overshoot
