#include "overshoot/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "overshoot/gridmax.hpp"

namespace overshoot {

namespace {

constexpr double kPi = std::numbers::pi;

void require_oversampled(double L) {
  if (!(L > 1.0))
    throw std::domain_error("oversampling factor must exceed 1 (the peak constant blows up at 1)");
}

// Shared maximizer for the optimized bounds. The objective is even, so the
// scan covers [0, halfwidth]; halfwidth = order/(2(order+1)) in both uses.
BoundResult maximize_dirichlet_sum(int order, int terms, double step, BoundMethod method) {
  double lipschitz = kPi * (order + 1);
  if (step < 0.0) throw std::invalid_argument("grid step must be positive (or 0 for automatic)");
  if (step == 0.0) step = 2.0e-9 / lipschitz;
  double halfwidth = order / (2.0 * (order + 1.0));
  auto objective = [order, terms](double t) { return dirichlet_sum_objective(order, terms, t); };
  CertifiedMax mx = certified_grid_max(objective, 0.0, halfwidth, lipschitz, step);
  BoundResult r;
  r.value = mx.value;
  r.method = method;
  r.t_star = mx.arg;
  r.cert_error = mx.cert_error;
  return r;
}

}  // namespace

std::string_view method_name(BoundMethod m) {
  switch (m) {
    case BoundMethod::c1_cos: return "c1_cos";
    case BoundMethod::c1_sqrt: return "c1_sqrt";
    case BoundMethod::c2_sota: return "c2_sota";
    case BoundMethod::asymptotic: return "asymptotic";
    case BoundMethod::c2_new: return "c2_new";
    case BoundMethod::c1_corollary: return "c1_corollary";
    case BoundMethod::nyquist: return "nyquist";
    case BoundMethod::layered: return "layered";
  }
  return "unknown";
}

BoundResult c1_cos_bound(double L) {
  require_oversampled(L);
  BoundResult r;
  r.value = 1.0 / std::cos(kPi / (2.0 * L));
  r.method = BoundMethod::c1_cos;
  double nearest = std::round(L);
  if (nearest >= 2.0 && std::abs(L - nearest) < 1e-12) r.t_star = 1.0 / (2.0 * L);
  return r;
}

BoundResult c1_sqrt_bound(double L) {
  require_oversampled(L);
  BoundResult r;
  r.value = std::sqrt(L / (L - 1.0));
  r.method = BoundMethod::c1_sqrt;
  return r;
}

BoundResult c2_sota_bound(double extension) {
  if (!(extension > 1.0))
    throw std::domain_error("expansion factor must exceed 1");
  BoundResult r;
  r.value = std::sqrt((extension + 1.0) / (extension - 1.0));
  r.method = BoundMethod::c2_sota;
  return r;
}

BoundResult c2_asymptotic(double extension) {
  if (!(extension > 1.0))
    throw std::domain_error("expansion factor must exceed 1");
  BoundResult r;
  r.value = (2.0 / kPi) * std::log(2.0 * extension / (extension - 1.0));
  r.method = BoundMethod::asymptotic;
  return r;
}

double dirichlet_sum_objective(int order, int terms, double t) {
  if (order < 1 || terms < 1) throw std::invalid_argument("objective needs order >= 1, terms >= 1");
  double base = kPi * t / order;
  // Numerator and half-angle denominator both advance by a fixed step per
  // term, so two rotors replace per-term sine calls. Drift over <= 130 steps
  // stays ~1e-14; terms close to a denominator zero are recomputed directly
  // because the quotient amplifies that drift.
  double num0 = (order + 0.5) * base, dnum = -(2.0 * order + 1.0) * kPi / terms;
  double den0 = 0.5 * base, dden = -kPi / terms;
  double nc = std::cos(num0), ns = std::sin(num0);
  double ncs = std::cos(dnum), nss = std::sin(dnum);
  double dc = std::cos(den0), ds = std::sin(den0);
  double dcs = std::cos(dden), dss = std::sin(dden);
  double acc = 0.0;
  for (int l = 0; l < terms; ++l) {
    if (std::abs(ds) < 1e-3) {
      acc += std::abs(dirichlet(order, base - 2.0 * kPi * l / terms));
    } else {
      acc += std::abs(ns / ds);
    }
    double tmp = nc * ncs - ns * nss;
    ns = ns * ncs + nc * nss;
    nc = tmp;
    tmp = dc * dcs - ds * dss;
    ds = ds * dcs + dc * dss;
    dc = tmp;
  }
  return acc / terms;
}

BoundResult c2_new_bound(const RationalRate& rate, double step) {
  return maximize_dirichlet_sum(rate.n, rate.term_count(), step, BoundMethod::c2_new);
}

BoundResult c1_corollary_bound(int n, double step) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("corollary bound needs an even n >= 2");
  BoundResult r = maximize_dirichlet_sum(n / 2, n + 1, step, BoundMethod::c1_corollary);
  return r;
}

BoundResult nyquist_overshoot_bound(const RationalRate& rate, double step) {
  double carrier = std::sqrt(2.0 * rate.n + 1.0);
  BoundResult kernel = c2_new_bound(rate, step);
  BoundResult r;
  r.method = BoundMethod::nyquist;
  if (carrier <= kernel.value) {
    r.value = carrier;
    r.branch = "carrier_energy";
  } else {
    r.value = kernel.value;
    r.t_star = kernel.t_star;
    r.cert_error = kernel.cert_error;
    r.branch = "dirichlet_sum";
  }
  return r;
}

LayeredBoundReport layered_overshoot_report(const LayeredFilter& filter, double L,
                                            double step) {
  filter.validate();
  require_oversampled(L);
  LayeredBoundReport rep;
  rep.total.method = BoundMethod::layered;
  std::string branches;
  for (std::size_t k = 0; k < filter.layer_count(); ++k) {
    double weight = filter.amplitudes[k] - filter.amplitudes[k + 1];
    double ext = filter.extension_factors[k];
    BoundResult b;
    // The layer is the optimized case only if extension = (n+1)/n for an
    // admissible n and the shared L lands m = n(L-1) on the allowed set.
    std::optional<RationalRate> rate;
    double inv = 1.0 / (ext - 1.0);
    auto n_guess = static_cast<int>(std::llround(inv));
    if (n_guess >= 1 && n_guess <= 64 &&
        std::abs((n_guess + 1.0) / n_guess - ext) <= 1e-9) {
      std::int64_t tm = std::llround(2.0 * n_guess * (L - 1.0));
      if (tm >= 1 && (tm == 1 || tm % 2 == 0) &&
          std::abs(1.0 + tm / (2.0 * n_guess) - L) <= 1e-9)
        rate = RationalRate(n_guess, static_cast<int>(tm));
    }
    b = rate ? nyquist_overshoot_bound(*rate, step) : c2_sota_bound(ext);
    if (!branches.empty()) branches += '+';
    branches += method_name(b.method);
    rep.total.value += weight * b.value;
    rep.total.cert_error += weight * b.cert_error;
    rep.layers.push_back({weight, std::move(b)});
  }
  rep.total.branch = std::move(branches);
  return rep;
}

BoundResult layered_overshoot_bound(const LayeredFilter& filter, double L, double step) {
  return layered_overshoot_report(filter, L, step).total;
}

BoundResult best_upper_bound(double L, double step) {
  require_oversampled(L);
  BoundResult best = c1_cos_bound(L);
  BoundResult alt = c1_sqrt_bound(L);
  if (alt.value < best.value) best = alt;
  if (std::optional<RationalRate> rate = RationalRate::detect(L)) {
    BoundResult opt = c2_new_bound(*rate, step);
    if (opt.value < best.value) best = opt;
  }
  return best;
}

}  // namespace overshoot
