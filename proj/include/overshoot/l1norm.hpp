#pragma once

#include <cstdint>
#include <vector>

#include "overshoot/kernels.hpp"

namespace overshoot {

struct QuadratureSpec {
  double abs_tol = 1e-8;
  // Integrate |g| exactly on [-core_halfwidth, core_halfwidth] and bracket the
  // rest analytically. 0 picks a width from abs_tol and the kernel envelope.
  double core_halfwidth = 0;
  int max_subdivisions = 200000;
};

struct L1Result {
  double value = 0;
  double cert_error = 0;
  std::int64_t evaluations = 0;
  double core_halfwidth = 0;
  // True when the tail used the periodic-cycle bracket; false means the
  // cruder envelope bound (incommensurate oscillation frequencies).
  bool tail_bracketed = false;
};

// Integral of |g| over the line. The integrand is |h(u)|/u^2 with h a finite
// sine product, so the core splits at the sign pattern of h and the tail over
// whole cycles is pinned between trigamma values. Rejects the sinc family,
// whose integral diverges; see sinc_l1_divergence.
L1Result kernel_l1(const KernelSpec& kernel, const QuadratureSpec& spec = {});

struct L1Floor {
  double value = 0;
  double cert_error = 0;
  bool satisfied = false;  // value consistent with the unit lower bound
};

// The response at zero frequency is 1, so the integral of |g| can never fall
// below 1. Checks the computed value against that floor.
L1Floor l1_lower_floor(const KernelSpec& kernel, const QuadratureSpec& spec = {});

struct L1VsC2Item {
  double extension = 0;
  double l1 = 0;
  double l1_cert = 0;
  double opnorm = 0;
  double opnorm_cert = 0;
  bool pointwise_ok = false;  // l1 <= opnorm within the two certificates
};

struct L1VsC2Report {
  std::vector<L1VsC2Item> items;
  double min_l1 = 0;
  double min_opnorm = 0;
  double combined_cert = 0;
  bool ok = false;
};

// Averaging the shifted-magnitude sum over one sample period reproduces the
// integral of |g|, so the peak constant dominates the L1 norm at every
// extension factor. Checks that ordering for a list of trapezoid extensions
// at sampling rate L.
L1VsC2Report l1_vs_c2_check(const std::vector<double>& extensions, double L);

struct SincL1Divergence {
  double last_partial = 0;
  double growth_rate = 0;  // increments per factor-2 window growth, / ln 2
  bool diverges = false;
};

// Partial integrals of |sin(Bt)/(pi t)| over [-T, T] for doubling T. The
// increments settle to 4/pi^2 per log-factor, which flags the divergence.
SincL1Divergence sinc_l1_divergence(double bandwidth, double t0 = 0,
                                    int doublings = 6);

struct TrigammaResult {
  double value = 0;
  double abs_error = 0;
};

// Sum of 1/(x+j)^2 over j >= 0 via recurrence shift plus the asymptotic
// series, with the first omitted term as the error bound.
TrigammaResult trigamma_certified(double x);

}  // namespace overshoot
