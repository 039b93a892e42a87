#pragma once

#include <cstdint>
#include <vector>

#include "overshoot/kernels.hpp"

namespace overshoot {

struct GridSpec {
  int points = 2049;            // t-samples over one period on the truncated route
  std::int64_t truncation = 0;  // kernel shifts per side; 0 = sized from target_tail
  double target_tail = 1e-8;    // admissible truncation-tail bound
  double refine_cert = 1e-9;    // grid certificate target on the folded route
  int threads = 1;
};

struct OperatorNormResult {
  double value = 0;
  double t_star = 0;
  double cert_error = 0;  // grid slack plus truncation tail
  double tail_bound = 0;  // truncation part alone (0 when folded exactly)
  std::int64_t terms = 0; // shifts summed per point, or fold residues
  bool exact_fold = false;
  bool diverges = false;
  double growth_rate = 0; // norm increase per factor e in truncation (sinc probe)
};

// Sampling instants t_l = pi l / (L B).
std::vector<double> sample_instants(double L, double B, std::int64_t l_first,
                                    std::int64_t l_last);

// (pi/(L B)) * sum over |l| <= half_width of |g(t - t_l)|: the objective whose
// supremum over one period is the interpolation operator norm.
double shifted_abs_sum(const KernelSpec& kernel, double L, double t,
                       std::int64_t half_width);

// Supremum of the shifted absolute sum over one period [0, pi/(L B)].
//
// When the shift lattice is commensurate with the kernel's oscillation the
// infinite sum collapses to finitely many residues (the 1/sin^2 cotangent-sum
// identity) and the result carries no truncation tail; otherwise a truncated
// sum with a certified 1/t^2 tail is scanned on a flat grid. A sinc kernel
// makes the sum log-divergent: the result reports growth instead of a norm.
OperatorNormResult operator_norm(const KernelSpec& kernel, double L,
                                 const GridSpec& grid = {});

struct ReconstructResult {
  double value = 0;
  double tail_bound = 0;  // bound on the discarded out-of-window contribution
  std::int64_t terms = 0;
};

// (pi/(L B)) * sum_l samples[l] g(t - t_l) over the provided window;
// samples[i] belongs to lattice index first_index + i. The tail bound charges
// the samples' sup norm against the kernel envelope beyond the window and
// must come in below target_tail. Requires L >= (extension + 1)/2, the rate
// at which the kernel reproduces band-limited signals; allow_low_rate skips
// that check for deliberate under-sampling experiments.
ReconstructResult reconstruct(const std::vector<double>& samples,
                              std::int64_t first_index, const KernelSpec& kernel,
                              double L, double t, double target_tail = 1e-6,
                              bool allow_low_rate = false);

// Truncated cardinal series sum_{|l - l0| <= M} samples[l] sinc(B t - pi l).
// No certificate: the sinc tail is only O(1/t). Out-of-window samples are
// treated as zero.
ReconstructResult shannon_reconstruct(const std::vector<double>& samples,
                                      std::int64_t first_index, double B, double t,
                                      std::int64_t M);

}  // namespace overshoot
