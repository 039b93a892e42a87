#include "overshoot/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace overshoot {

namespace {

constexpr double kPi = std::numbers::pi;

// One product-form term coeff * sin(a t) * sin(b t) / t^2 with the removable
// singularity at t = 0 expanded to second order.
double eval_product(const ProductForm& p, double t) {
  double scale = std::max(p.a, p.b);
  if (std::abs(t) * scale < 1e-6) {
    double t2 = t * t;
    return p.coeff * p.a * p.b * (1.0 - (p.a * p.a + p.b * p.b) * t2 / 6.0);
  }
  return p.coeff * std::sin(p.a * t) * std::sin(p.b * t) / (t * t);
}

double trapezoid_freq(double B, double ext, double w) {
  double aw = std::abs(w);
  if (aw <= B) return 1.0;
  double edge = ext * B;
  if (aw >= edge) return 0.0;
  return (edge - aw) / (edge - B);
}

// 2 sin(a t) sin(b t) / (pi (ext-1) B t^2), a and b the mean and half width
// of the spectral edges.
ProductForm trapezoid_part(double B, double ext) {
  double a = (ext + 1.0) * B / 2.0;
  double b = (ext - 1.0) * B / 2.0;
  return {2.0 / (kPi * (ext - 1.0) * B), a, b};
}

// (W/2pi) sinc^2(W t / 2) == (2/(pi W)) sin^2(W t / 2) / t^2.
ProductForm triangle_part(double edge) {
  double h = edge / 2.0;
  return {2.0 / (kPi * edge), h, h};
}

}  // namespace

void LayeredFilter::validate() const {
  std::size_t n = breakpoints.size();
  if (n < 2) throw std::invalid_argument("layered filter needs at least two breakpoints");
  if (amplitudes.size() != n)
    throw std::invalid_argument("layered filter: amplitudes must match breakpoints");
  if (extension_factors.size() != n - 1)
    throw std::invalid_argument("layered filter: need one extension factor per layer");
  if (breakpoints.front() <= 0.0)
    throw std::invalid_argument("layered filter: breakpoints must be positive");
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(breakpoints[k] < breakpoints[k + 1]))
      throw std::invalid_argument("layered filter: breakpoints must be strictly increasing");
    if (!(amplitudes[k] >= amplitudes[k + 1]))
      throw std::invalid_argument("layered filter: amplitudes must be nonincreasing");
    if (!(extension_factors[k] > 1.0))
      throw std::invalid_argument("layered filter: extension factors must exceed 1");
  }
  if (amplitudes.back() != 0.0)
    throw std::invalid_argument("layered filter: final amplitude must be exactly zero");
  if (!(amplitudes.front() > 0.0))
    throw std::invalid_argument("layered filter: leading amplitude must be positive");
}

KernelSpec KernelSpec::sinc(double bandwidth) {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("sinc: bandwidth must be positive");
  KernelSpec k;
  k.family_ = KernelFamily::sinc;
  k.band_ = bandwidth;
  k.support_ = bandwidth;
  return k;
}

KernelSpec KernelSpec::trapezoid(double bandwidth, double extension) {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("trapezoid: bandwidth must be positive");
  if (!(extension > 1.0)) throw std::invalid_argument("trapezoid: extension factor must exceed 1");
  KernelSpec k;
  k.family_ = KernelFamily::trapezoid;
  k.band_ = bandwidth;
  k.ext_ = extension;
  k.support_ = extension * bandwidth;
  return k;
}

KernelSpec KernelSpec::triangle(int n) {
  if (n < 1) throw std::invalid_argument("triangle: index must be a positive integer");
  KernelSpec k = triangle_support(kPi / n);
  k.tri_n_ = n;
  return k;
}

KernelSpec KernelSpec::triangle_support(double edge) {
  if (!(edge > 0.0)) throw std::invalid_argument("triangle: support edge must be positive");
  KernelSpec k;
  k.family_ = KernelFamily::triangle;
  k.band_ = 0.0;
  k.support_ = edge;
  return k;
}

KernelSpec KernelSpec::layered(LayeredFilter filter) {
  filter.validate();
  KernelSpec k;
  k.family_ = KernelFamily::layered;
  k.layers_ = std::move(filter);
  k.band_ = k.layers_.breakpoints.front();
  double edge = 0.0;
  for (std::size_t i = 0; i < k.layers_.layer_count(); ++i)
    edge = std::max(edge, k.layers_.extension_factors[i] * k.layers_.breakpoints[i]);
  k.support_ = edge;
  return k;
}

double KernelSpec::extension() const {
  if (family_ != KernelFamily::trapezoid)
    throw std::invalid_argument("extension factor is defined for the trapezoid family only");
  return ext_;
}

const LayeredFilter& KernelSpec::layers() const {
  if (family_ != KernelFamily::layered)
    throw std::invalid_argument("layer data is defined for layered kernels only");
  return layers_;
}

std::vector<ProductForm> KernelSpec::product_form() const {
  switch (family_) {
    case KernelFamily::sinc:
      return {};
    case KernelFamily::trapezoid:
      return {trapezoid_part(band_, ext_)};
    case KernelFamily::triangle:
      return {triangle_part(support_)};
    case KernelFamily::layered: {
      std::vector<ProductForm> parts;
      double x0 = layers_.amplitudes.front();
      for (std::size_t k = 0; k < layers_.layer_count(); ++k) {
        double w = (layers_.amplitudes[k] - layers_.amplitudes[k + 1]) / x0;
        if (w == 0.0) continue;
        ProductForm p = trapezoid_part(layers_.breakpoints[k], layers_.extension_factors[k]);
        p.coeff *= w;
        parts.push_back(p);
      }
      return parts;
    }
  }
  return {};
}

double KernelSpec::eval_time(double t) const {
  // Per-family dispatch rather than product_form(): this is the innermost
  // call of the lattice and quadrature loops and must not allocate.
  switch (family_) {
    case KernelFamily::sinc: {
      double x = band_ * t;
      if (std::abs(x) < 1e-6) return band_ / kPi * (1.0 - x * x / 6.0);
      return std::sin(x) / (kPi * t);
    }
    case KernelFamily::trapezoid:
      return eval_product(trapezoid_part(band_, ext_), t);
    case KernelFamily::triangle:
      return eval_product(triangle_part(support_), t);
    case KernelFamily::layered: {
      double acc = 0.0;
      double x0 = layers_.amplitudes.front();
      for (std::size_t k = 0; k < layers_.layer_count(); ++k) {
        double w = (layers_.amplitudes[k] - layers_.amplitudes[k + 1]) / x0;
        if (w == 0.0) continue;
        ProductForm p = trapezoid_part(layers_.breakpoints[k], layers_.extension_factors[k]);
        p.coeff *= w;
        acc += eval_product(p, t);
      }
      return acc;
    }
  }
  return 0.0;
}

double KernelSpec::eval_freq(double omega) const {
  double aw = std::abs(omega);
  switch (family_) {
    case KernelFamily::sinc:
      return aw <= band_ ? 1.0 : 0.0;
    case KernelFamily::trapezoid:
      return trapezoid_freq(band_, ext_, aw);
    case KernelFamily::triangle:
      return std::max(0.0, 1.0 - aw / support_);
    case KernelFamily::layered: {
      double acc = 0.0;
      double x0 = layers_.amplitudes.front();
      for (std::size_t k = 0; k < layers_.layer_count(); ++k) {
        double w = (layers_.amplitudes[k] - layers_.amplitudes[k + 1]) / x0;
        double B = layers_.breakpoints[k];
        acc += w * trapezoid_freq(B, layers_.extension_factors[k], aw);
      }
      return acc;
    }
  }
  return 0.0;
}

double KernelSpec::peak() const {
  if (family_ == KernelFamily::sinc) return band_ / kPi;
  double acc = 0.0;
  for (const ProductForm& p : product_form()) acc += p.coeff * p.a * p.b;
  return acc;
}

double KernelSpec::envelope_coefficient() const {
  if (family_ == KernelFamily::sinc)
    throw std::invalid_argument("sinc decays like 1/t and has no summable envelope");
  double acc = 0.0;
  for (const ProductForm& p : product_form()) acc += std::abs(p.coeff);
  return acc;
}

double KernelSpec::slope_bound() const { return support_ * peak(); }

double dirichlet(int n, double theta) {
  if (n < 0) throw std::invalid_argument("dirichlet: order must be nonnegative");
  if (n == 0) return 1.0;
  double s = std::sin(theta / 2.0);
  if (std::abs(s) < 1e-9) {
    double acc = 1.0;
    for (int k = 1; k <= n; ++k) acc += 2.0 * std::cos(k * theta);
    return acc;
  }
  return std::sin((n + 0.5) * theta) / s;
}

MembershipReport membership_check(const KernelSpec& kernel, double B, double extension,
                                  int grid_points, double tol) {
  if (!(B > 0.0)) throw std::invalid_argument("membership_check: B must be positive");
  if (!(extension >= 1.0)) throw std::invalid_argument("membership_check: extension must be >= 1");
  if (grid_points < 2) throw std::invalid_argument("membership_check: need at least 2 grid points");

  double edge = extension * B;
  double hi = std::max(edge, kernel.support_edge()) * 1.25 + B;
  double viol = 0.0;
  double prev_transition = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= grid_points; ++j) {
    double w = hi * j / grid_points;
    double v = kernel.eval_freq(w);
    viol = std::max(viol, std::max(-v, v - 1.0));  // range [0, 1]
    if (w <= B) {
      viol = std::max(viol, std::abs(v - 1.0));  // flat in-band
    } else if (w >= edge) {
      viol = std::max(viol, std::abs(v));  // vanishing beyond the support
    } else {
      if (v > prev_transition) viol = std::max(viol, v - prev_transition);
      prev_transition = v;
    }
  }
  // The grid can straddle the corners; pin them exactly.
  viol = std::max(viol, std::abs(kernel.eval_freq(B) - 1.0));
  viol = std::max(viol, std::abs(kernel.eval_freq(edge)));
  return {viol <= tol, viol};
}

NyquistReport nyquist_isi_defect(const KernelSpec& kernel, double LB, int grid_points) {
  double lo = (kernel.bandwidth() + kernel.support_edge()) / 2.0;
  double hi = kernel.support_edge();
  double slack = 1e-12 * hi;
  if (!(LB >= lo - slack && LB <= hi + slack))
    throw std::domain_error("nyquist_isi_defect: symbol rate outside the admissible band");
  if (grid_points < 2) throw std::invalid_argument("nyquist_isi_defect: need at least 2 grid points");

  // Midpoint grid over one period keeps replica edges from being counted on
  // both sides of the fold.
  auto folded = [&](double w) {
    std::int64_t K = static_cast<std::int64_t>(std::ceil(kernel.support_edge() / (2.0 * LB))) + 1;
    double acc = 0.0;
    for (std::int64_t k = -K; k <= K; ++k) acc += kernel.eval_freq(w - 2.0 * LB * k);
    return acc;
  };
  double mean = 0.0;
  std::vector<double> vals(static_cast<std::size_t>(grid_points));
  for (int j = 0; j < grid_points; ++j) {
    double w = -LB + (j + 0.5) * (2.0 * LB / grid_points);
    vals[static_cast<std::size_t>(j)] = folded(w);
    mean += vals[static_cast<std::size_t>(j)];
  }
  mean /= grid_points;
  double defect = 0.0;
  for (double v : vals) defect = std::max(defect, std::abs(v - mean));
  return {mean, defect};
}

TailSum lemma1_sum(int n, double a, double t, std::int64_t M) {
  if (n < 1) throw std::invalid_argument("lemma1_sum: n must be a positive integer");
  if (!(a > 0.0) || a > 2.0)
    throw std::invalid_argument("lemma1_sum: shift scale must lie in (0, 2]");
  if (M < 1) throw std::invalid_argument("lemma1_sum: truncation must be >= 1");

  KernelSpec tri = KernelSpec::triangle(n);
  double spacing = a * n;
  // Recenter so the tail estimate does not degrade for large |t|.
  std::int64_t l0 = static_cast<std::int64_t>(std::llround(t / spacing));
  double acc = 0.0;
  for (std::int64_t j = M; j >= 1; --j) {
    acc += tri.eval_time(t - (l0 + j) * spacing);
    acc += tri.eval_time(t - (l0 - j) * spacing);
  }
  acc += tri.eval_time(t - l0 * spacing);
  // |K_n| <= c/t^2 and the remaining shifts sit at distance >= (M - 1/2) * spacing.
  double c = tri.envelope_coefficient();
  double tail = 2.0 * c / (spacing * spacing * (M - 0.5));
  return {acc, tail};
}

double trapezoid_decomposition_check(int n, double t) {
  if (n < 1) throw std::invalid_argument("decomposition check: n must be a positive integer");
  double lhs = KernelSpec::trapezoid(kPi, (n + 1.0) / n).eval_time(t);
  double rhs = KernelSpec::triangle(n).eval_time(t) * dirichlet(n, kPi * t / n);
  return std::abs(lhs - rhs);
}

}  // namespace overshoot
