#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "overshoot/kernels.hpp"
#include "overshoot/rational.hpp"

namespace overshoot {

enum class BoundMethod {
  c1_cos,
  c1_sqrt,
  c2_sota,
  asymptotic,
  c2_new,
  c1_corollary,
  nyquist,
  layered,
};

std::string_view method_name(BoundMethod m);

struct BoundResult {
  double value = 0;
  BoundMethod method = BoundMethod::c1_cos;
  std::optional<double> t_star;  // maximizer in normalized time, when one exists
  double cert_error = 0;         // 0 for closed forms
  std::string branch;            // winning branch for composite methods
};

// 1/cos(pi/(2L)), exact for integer L where the cosine extremal attains it.
BoundResult c1_cos_bound(double L);

// sqrt(L/(L-1)), the expansion-pushed form (extension taken to 2L-1).
BoundResult c1_sqrt_bound(double L);

// sqrt((ext+1)/(ext-1)) for a trapezoid with the given expansion factor.
BoundResult c2_sota_bound(double extension);

// (2/pi) log(2 ext/(ext-1)). Carries an unknown O(1) offset; diagnostic only
// and never mixed into minimum combinations.
BoundResult c2_asymptotic(double extension);

// Averaged absolute-Dirichlet objective behind the optimized bounds:
// (1/terms) * sum_{l=0}^{terms-1} |D_order(pi t / order - 2 pi l / terms)|.
// Even in t; Lipschitz constant pi*(order+1).
double dirichlet_sum_objective(int order, int terms, double t);

// Optimized bound at the rational rate: maximum of the objective with
// order = n, terms = 2(n+m), over |t| <= n/(2(n+1)). step = 0 picks a grid
// fine enough for a certificate below 1e-9.
BoundResult c2_new_bound(const RationalRate& rate, double step = 0);

// Half-integer specialization at even n: order = n/2, terms = n+1, over
// |t| <= n/(2(n+2)). Bounds the peak constant at L = (n+1)/n.
BoundResult c1_corollary_bound(int n, double step = 0);

// min{ sqrt(2n+1), c2_new } for data bounded by one. branch records which
// side won.
BoundResult nyquist_overshoot_bound(const RationalRate& rate, double step = 0);

struct LayerContribution {
  double weight;
  BoundResult bound;
};

struct LayeredBoundReport {
  BoundResult total;
  std::vector<LayerContribution> layers;
};

// Weighted sum of per-layer trapezoid bounds at the common oversampling
// factor L. A layer whose (extension, L) pair lands on a rational rate uses
// the optimized Nyquist branch, anything else falls back to the closed form.
LayeredBoundReport layered_overshoot_report(const LayeredFilter& filter, double L,
                                            double step = 0);
BoundResult layered_overshoot_bound(const LayeredFilter& filter, double L,
                                    double step = 0);

// Minimum of every applicable upper bound at L: the two closed forms always,
// the optimized rate bound whenever L admits one. Ties keep the earlier
// candidate (closed forms first).
BoundResult best_upper_bound(double L, double step = 0);

}  // namespace overshoot
