#include "overshoot/l1norm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "overshoot/common.hpp"
#include "overshoot/opnorm.hpp"
#include "overshoot/rational.hpp"

namespace overshoot {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss 7 / Kronrod 15 on [-1, 1]. Positive nodes only; both rules are
// symmetric. Gauss nodes sit at the odd Kronrod positions.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct CellEstimate {
  double value;
  double error;
};

template <class F>
CellEstimate gk15(const F& f, double x0, double x1, std::int64_t& evals) {
  double c = 0.5 * (x0 + x1), r = 0.5 * (x1 - x0);
  double kron = 0, gauss = 0;
  for (int i = 0; i < 8; ++i) {
    double fv = (i == 7) ? f(c) : f(c - r * kXgk[i]) + f(c + r * kXgk[i]);
    kron += kWgk[i] * fv;
    if (i % 2 == 1) gauss += kWg[i / 2] * fv;
  }
  evals += 15;
  return {kron * r, std::abs(kron - gauss) * r};
}

struct Cell {
  double error;
  double value;
  double x0, x1;
  bool operator<(const Cell& other) const { return error < other.error; }
};

// Adaptive refinement until the summed Kronrod error estimates drop under
// budget. The caller supplies cells already split at the integrand's kinks.
template <class F>
CellEstimate integrate_adaptive(const F& f, std::vector<std::pair<double, double>> seeds,
                                double budget, int max_subdivisions,
                                std::int64_t& evals) {
  std::priority_queue<Cell> heap;
  double total_err = 0;
  for (const auto& [x0, x1] : seeds) {
    CellEstimate e = gk15(f, x0, x1, evals);
    heap.push({e.error, e.value, x0, x1});
    total_err += e.error;
  }
  int splits = 0;
  while (total_err > budget) {
    if (++splits > max_subdivisions)
      throw ToleranceFailure("quadrature: subdivision cap reached before the target error");
    Cell top = heap.top();
    heap.pop();
    double mid = 0.5 * (top.x0 + top.x1);
    CellEstimate lo = gk15(f, top.x0, mid, evals);
    CellEstimate hi = gk15(f, mid, top.x1, evals);
    total_err += lo.error + hi.error - top.error;
    heap.push({lo.error, lo.value, top.x0, mid});
    heap.push({hi.error, hi.value, mid, top.x1});
  }
  // Re-sum from the heap: the incremental total drifts over many updates.
  double value = 0, error = 0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error};
}

double sine_sum(const std::vector<ProductForm>& parts, double u) {
  double acc = 0;
  for (const ProductForm& p : parts) acc += p.coeff * std::sin(p.a * u) * std::sin(p.b * u);
  return acc;
}

// Breakpoints in (0, hi) where some factor sin(a u) or sin(b u) vanishes.
// For a single part these are exactly the zeros of the sum.
std::vector<double> lattice_breaks(const std::vector<ProductForm>& parts, double hi) {
  std::vector<double> pts;
  for (const ProductForm& p : parts) {
    for (double f : {p.a, p.b}) {
      if (f <= 0) continue;
      double step = kPi / f;
      for (double x = step; x < hi; x += step) pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  double tol = 1e-12 * std::max(1.0, hi);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [tol](double a, double b) { return b - a < tol; }),
            pts.end());
  return pts;
}

// Cells of [lo, hi] on which the sine sum keeps one sign. Starts from the
// factor lattices; with several parts the sum can cross between lattice
// points, so each candidate cell is probed and crossings bisected in.
std::vector<std::pair<double, double>> signed_cells(const std::vector<ProductForm>& parts,
                                                    double lo, double hi) {
  std::vector<double> edges{lo};
  for (double x : lattice_breaks(parts, hi))
    if (x > lo) edges.push_back(x);
  edges.push_back(hi);

  std::vector<double> cuts;
  if (parts.size() > 1) {
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      const int probes = 9;
      double a = edges[i], b = edges[i + 1];
      double prev_x = a + (b - a) / (probes + 1.0);
      double prev_s = sine_sum(parts, prev_x);
      for (int j = 2; j <= probes; ++j) {
        double x = a + (b - a) * j / (probes + 1.0);
        double s = sine_sum(parts, x);
        if ((prev_s < 0) != (s < 0) && prev_s != 0) {
          double p = prev_x, q = x;
          for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (p + q);
            if ((sine_sum(parts, mid) < 0) == (prev_s < 0)) p = mid;
            else q = mid;
          }
          cuts.push_back(0.5 * (p + q));
        }
        prev_x = x;
        prev_s = s;
      }
    }
  }
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<std::pair<double, double>> cells;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    if (edges[i + 1] > edges[i]) cells.emplace_back(edges[i], edges[i + 1]);
  return cells;
}

// Least common period of the oscillation, or nothing if the frequency ratios
// resist a small rational grid.
std::optional<double> common_period(const std::vector<ProductForm>& parts) {
  std::vector<double> freqs;
  for (const ProductForm& p : parts) {
    freqs.push_back(p.a + p.b);
    double d = std::abs(p.a - p.b);
    if (d > 1e-12 * (p.a + p.b)) freqs.push_back(d);
  }
  if (freqs.empty()) return std::nullopt;
  double base = freqs.front();
  std::int64_t lcm = 1;
  for (double f : freqs) {
    auto frac = to_fraction(f / base, 512, 1e-9);
    if (!frac) return std::nullopt;
    lcm = std::lcm(lcm, frac->den);
    if (lcm > 4096) return std::nullopt;
  }
  return 2.0 * kPi * static_cast<double>(lcm) / base;
}

}  // namespace

TrigammaResult trigamma_certified(double x) {
  if (!(x > 0)) throw std::invalid_argument("trigamma: argument must be positive");
  double shifted = 0;
  while (x < 24.0) {
    shifted += 1.0 / (x * x);
    x += 1.0;
  }
  double ix = 1.0 / x, ix2 = ix * ix;
  double series = ix + 0.5 * ix2 + ix * ix2 * (1.0 / 6.0 - ix2 * (1.0 / 30.0 - ix2 / 42.0));
  double remainder = ix * ix2 * ix2 * ix2 * ix2 / 30.0;  // first omitted term
  return {shifted + series, remainder};
}

L1Result kernel_l1(const KernelSpec& kernel, const QuadratureSpec& spec) {
  if (kernel.family() == KernelFamily::sinc)
    throw std::invalid_argument(
        "l1: the sinc integral diverges; use sinc_l1_divergence for the rate");
  if (!(spec.abs_tol > 0)) throw std::invalid_argument("l1: abs_tol must be positive");

  std::vector<ProductForm> parts = kernel.product_form();
  double envelope = kernel.envelope_coefficient();
  std::optional<double> period = common_period(parts);

  L1Result out;
  std::int64_t evals = 0;

  double T = spec.core_halfwidth;
  if (T <= 0) {
    if (period)
      T = std::max(2.0 * *period, std::sqrt(2.0 * envelope * *period / spec.abs_tol));
    else
      T = 4.0 * envelope / spec.abs_tol;
  }
  double edge_density = 0;
  for (const ProductForm& p : parts) edge_density += (p.a + p.b) / kPi;
  if (T * edge_density > 4e6)
    throw ToleranceFailure("l1: tolerance needs more core cells than the budget allows");

  auto abs_g = [&kernel](double u) { return std::abs(kernel.eval_time(u)); };
  CellEstimate core = integrate_adaptive(abs_g, signed_cells(parts, 0.0, T),
                                         spec.abs_tol / 4.0, spec.max_subdivisions, evals);

  double tail_mid = 0, tail_err = 0;
  if (period) {
    double P = *period;
    auto abs_h = [&parts](double u) { return std::abs(sine_sum(parts, u)); };
    CellEstimate cycle = integrate_adaptive(abs_h, signed_cells(parts, 0.0, P),
                                            spec.abs_tol / 8.0, spec.max_subdivisions, evals);
    double x = T / P;
    TrigammaResult hi = trigamma_certified(x);
    TrigammaResult lo = trigamma_certified(x + 1.0);
    double upper = (cycle.value + cycle.error) * (hi.value + hi.abs_error) / (P * P);
    double lower = std::max(0.0, cycle.value - cycle.error) *
                   (lo.value - lo.abs_error) / (P * P);
    tail_mid = 0.5 * (upper + lower);
    tail_err = 0.5 * (upper - lower);
    out.tail_bracketed = true;
  } else {
    double upper = envelope / T;  // |h| <= envelope, integral of 1/u^2 beyond T
    tail_mid = 0.5 * upper;
    tail_err = 0.5 * upper;
    out.tail_bracketed = false;
  }

  out.value = 2.0 * (core.value + tail_mid);
  out.cert_error = 2.0 * (core.error + tail_err);
  out.evaluations = evals;
  out.core_halfwidth = T;
  return out;
}

L1Floor l1_lower_floor(const KernelSpec& kernel, const QuadratureSpec& spec) {
  L1Result r = kernel_l1(kernel, spec);
  return {r.value, r.cert_error, r.value >= 1.0 - r.cert_error - 1e-12};
}

L1VsC2Report l1_vs_c2_check(const std::vector<double>& extensions, double L) {
  if (extensions.empty())
    throw std::invalid_argument("l1 comparison: need at least one extension factor");
  L1VsC2Report report;
  for (double ext : extensions) {
    KernelSpec kernel = KernelSpec::trapezoid(kPi, ext);
    L1Result l1 = kernel_l1(kernel);
    OperatorNormResult on = operator_norm(kernel, L, GridSpec{});
    L1VsC2Item item;
    item.extension = ext;
    item.l1 = l1.value;
    item.l1_cert = l1.cert_error;
    item.opnorm = on.value;
    item.opnorm_cert = on.cert_error;
    item.pointwise_ok = l1.value - l1.cert_error <= on.value + on.cert_error;
    report.items.push_back(item);
  }
  report.min_l1 = report.items.front().l1;
  report.min_opnorm = report.items.front().opnorm;
  for (const L1VsC2Item& item : report.items) {
    report.min_l1 = std::min(report.min_l1, item.l1);
    report.min_opnorm = std::min(report.min_opnorm, item.opnorm);
    report.combined_cert = std::max(report.combined_cert, item.l1_cert + item.opnorm_cert);
  }
  report.ok = report.min_l1 <= report.min_opnorm + report.combined_cert &&
              std::all_of(report.items.begin(), report.items.end(),
                          [](const L1VsC2Item& i) { return i.pointwise_ok; });
  return report;
}

SincL1Divergence sinc_l1_divergence(double bandwidth, double t0, int doublings) {
  if (!(bandwidth > 0)) throw std::invalid_argument("sinc divergence: bandwidth must be positive");
  if (doublings < 1) throw std::invalid_argument("sinc divergence: need at least one doubling");
  if (t0 <= 0) t0 = 64.0 * kPi / bandwidth;

  KernelSpec sinc = KernelSpec::sinc(bandwidth);
  auto abs_g = [&sinc](double u) { return std::abs(sinc.eval_time(u)); };
  std::int64_t evals = 0;
  auto partial = [&](double T) {
    // One Kronrod panel per half-lobe keeps every cell single-signed.
    std::vector<std::pair<double, double>> cells;
    double step = kPi / bandwidth;
    double x = 0;
    while (x < T) {
      double next = std::min(T, x + step);
      cells.emplace_back(x, 0.5 * (x + next));
      cells.emplace_back(0.5 * (x + next), next);
      x = next;
    }
    double acc = 0;
    for (const auto& [a, b] : cells) acc += gk15(abs_g, a, b, evals).value;
    return 2.0 * acc;
  };

  double prev = partial(t0);
  SincL1Divergence out;
  double T = t0;
  for (int k = 0; k < doublings; ++k) {
    T *= 2.0;
    double cur = partial(T);
    out.growth_rate = (cur - prev) / std::numbers::ln2;
    prev = cur;
  }
  out.last_partial = prev;
  out.diverges = out.growth_rate > 0.1;
  return out;
}

}  // namespace overshoot
