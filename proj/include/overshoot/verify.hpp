#pragma once

#include <cstdint>
#include <vector>

namespace overshoot {

// Real trigonometric polynomial a0/2 + sum_{k=1..N} a_k cos(k theta) +
// b_k sin(k theta). b[0] is kept for aligned indexing and must stay 0.
struct TrigPoly {
  int degree = 0;
  std::vector<double> a;  // size degree + 1
  std::vector<double> b;  // size degree + 1, b[0] unused

  static TrigPoly zero(int degree);
  double eval(double theta) const;
  void validate() const;
};

struct SupNorm {
  double value = 0;       // grid maximum: a guaranteed lower bound on the sup
  double cert_error = 0;  // Bernstein slack: sup <= value + cert_error
  double arg = 0;
};

// Grid maximum of |f| over one period plus the Bernstein certificate
// value * (N*step + (N*step)^2/2).
SupNorm sup_norm_certified(const TrigPoly& f, double step);

// max_{l < N1} |f(2 pi l / N1)|.
double sampled_sup(const TrigPoly& f, int N1);

struct McResult {
  double ratio = 0;  // best grid-sup / sampled-sup seen: a lower-bound witness
  TrigPoly witness;
  double witness_sup = 0;
  double witness_sampled = 0;
  int discarded = 0;  // trials with a vanishing sampled sup
  int trials = 0;
  std::uint64_t seed = 0;
};

// Random search for polynomials that peak between the sample points:
// coefficients drawn i.i.d. standard normal from a per-trial stream, ratio
// maximized over trials. Requires N1 > 2N; identical seeds give identical
// results for any thread count.
McResult monte_carlo_lower_bound(int N, int N1, int trials, std::uint64_t seed,
                                 double sup_step = 0, int threads = 1);

struct LpResult {
  double value = 0;       // best LP optimum over the scanned peak locations
  double t_star = 0;
  double grid_slack = 0;  // bound on what refinement of the peak grid could add
  bool unbounded = false;
  TrigPoly witness;
  int solves = 0;
};

// Sharpest degree-N polynomial bounded by 1 on the N1-point lattice: for each
// candidate peak location t* solve max f(t*) s.t. |f(2 pi l / N1)| <= 1, then
// refine around the best t*. Lattice symmetry confines t* to [0, pi/N1].
// N1 <= 2N leaves free directions and is reported as unbounded.
LpResult lp_c1_trig(int N, int N1, int tstar_points = 512, int refine_rounds = 3);

struct ExtremalReport {
  double sampled = 0;
  double sup = 0;
  double ratio = 0;
};

// The degree-1 extremal cos(pi(t - 1/(2L)))/cos(pi/(2L)) at integer L:
// samples on the rate-L lattice stay at 1 while the sup is 1/cos(pi/(2L)),
// so the ratio reproduces the peak constant exactly.
ExtremalReport extremal_check(int L);

}  // namespace overshoot
