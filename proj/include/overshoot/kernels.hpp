#pragma once

#include <cstdint>
#include <vector>

namespace overshoot {

// Piecewise-trapezoidal lowpass response built from layers. Layer k spans
// [breakpoints[k], extension_factors[k] * breakpoints[k]] in frequency and
// carries weight amplitudes[k] - amplitudes[k+1]. Amplitudes are nonincreasing
// and end at exactly zero; by convention amplitudes[0] = 1 so that the layer
// weights form a convex combination.
struct LayeredFilter {
  std::vector<double> breakpoints;        // rad/s, strictly increasing, > 0
  std::vector<double> amplitudes;         // same length as breakpoints, last = 0
  std::vector<double> extension_factors;  // one per layer, each > 1

  std::size_t layer_count() const { return extension_factors.size(); }
  void validate() const;  // throws std::invalid_argument on any violation
};

enum class KernelFamily { sinc, trapezoid, triangle, layered };

// One term of the closed time-domain form: coeff * sin(a t) * sin(b t) / t^2.
// Every family except sinc decomposes into a finite list of these, which gives
// both the 1/t^2 tail envelope (|term| <= coeff / t^2) and fast lattice sums.
struct ProductForm {
  double coeff;
  double a;
  double b;
};

// A reproducing/interpolation kernel. Construct through the factories; all
// evaluation is closed-form and even in its argument.
class KernelSpec {
 public:
  static KernelSpec sinc(double bandwidth);
  static KernelSpec trapezoid(double bandwidth, double extension);  // extension > 1
  static KernelSpec triangle(int n);                // triangular spectrum, edge pi/n
  static KernelSpec triangle_support(double edge);  // triangular spectrum, given edge
  static KernelSpec layered(LayeredFilter filter);

  KernelFamily family() const { return family_; }

  // Flat in-band edge B. Zero for the triangle family (its response decays
  // from the origin).
  double bandwidth() const { return band_; }
  // Frequency beyond which the response vanishes.
  double support_edge() const { return support_; }
  // Bandwidth expansion factor; valid for trapezoid only.
  double extension() const;
  // Triangle index n when the kernel was built as triangle(n), else 0.
  int triangle_index() const { return tri_n_; }
  const LayeredFilter& layers() const;

  double eval_time(double t) const;
  double eval_freq(double omega) const;

  // g(0), the peak of the time-domain form.
  double peak() const;
  // c such that |g(t)| <= c / t^2 for all t != 0. Throws for sinc, which has
  // no summable envelope.
  double envelope_coefficient() const;
  // Bound on sup |g'|. The spectrum of every family is nonnegative, so
  // |g'(t)| <= support_edge * g(0).
  double slope_bound() const;

  // Closed-form decomposition; empty for sinc.
  std::vector<ProductForm> product_form() const;

 private:
  KernelSpec() = default;

  KernelFamily family_ = KernelFamily::sinc;
  double band_ = 0;     // flat edge
  double support_ = 0;  // outer edge
  double ext_ = 0;      // trapezoid extension factor
  int tri_n_ = 0;
  LayeredFilter layers_;
};

// Dirichlet kernel D_n(theta) = sum_{k=-n}^{n} e^{i k theta}, real-valued.
// Evaluated as sin((n+1/2)theta)/sin(theta/2) away from the zeros of the
// denominator and as the cosine sum next to them.
double dirichlet(int n, double theta);

struct MembershipReport {
  bool in_set;
  double max_violation;
};

// Checks the kernel's frequency response against the reproducing-kernel mask
// with flat edge B and support edge extension*B: response 1 on [0, B], 0
// beyond extension*B, values in [0, 1], and nonincreasing on the transition
// band. Violations are reported, never thrown.
MembershipReport membership_check(const KernelSpec& kernel, double B, double extension,
                                  int grid_points = 4096, double tol = 1e-9);

struct NyquistReport {
  double C_N;     // mean of the folded spectrum over one period
  double defect;  // max deviation of the folded spectrum from C_N
};

// Folds the frequency response at period 2*LB over one period on a midpoint
// grid. A defect near zero identifies a Nyquist filter for symbol rate LB.
// Requires (bandwidth + support_edge)/2 <= LB <= support_edge.
NyquistReport nyquist_isi_defect(const KernelSpec& kernel, double LB, int grid_points = 4096);

struct TailSum {
  double value;       // truncated sum
  double tail_bound;  // certified bound on the discarded part
};

// Sum over |l| <= M of K_n(t - l*a*n) where K_n is triangle(n). For
// 0 < a <= 2 the replicated spectra do not overlap and the full sum equals
// 1/(a n) independently of t; value + tail_bound brackets that constant.
TailSum lemma1_sum(int n, double a, double t, std::int64_t M = 20000);

// |S(t) - K_n(t) * D_n(pi t / n)| where S is trapezoid(pi, (n+1)/n). The
// difference of the two closed forms is identically zero; the residual is
// pure rounding and serves as a structural self-test.
double trapezoid_decomposition_check(int n, double t);

}  // namespace overshoot
