#include "overshoot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "overshoot/common.hpp"
#include "overshoot/simplex.hpp"

namespace overshoot {

namespace {

constexpr double kPi = std::numbers::pi;

// f(theta) via the Chebyshev-style recurrence on cos/sin(k theta): two trig
// calls per point regardless of degree. The hot path for sup-norm grids.
double eval_recurrence(const TrigPoly& f, double theta) {
  double acc = f.a[0] / 2.0;
  if (f.degree == 0) return acc;
  double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = c1, sk = s1;
  acc += f.a[1] * ck + f.b[1] * sk;
  for (int k = 2; k <= f.degree; ++k) {
    double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
    acc += f.a[static_cast<std::size_t>(k)] * ck + f.b[static_cast<std::size_t>(k)] * sk;
  }
  return acc;
}

// Coefficient layout used by the LP: x = (a0, a1..aN, b1..bN).
std::vector<double> feature_row(int N, double theta) {
  std::vector<double> row(static_cast<std::size_t>(2 * N + 1));
  row[0] = 0.5;
  for (int k = 1; k <= N; ++k) {
    row[static_cast<std::size_t>(k)] = std::cos(k * theta);
    row[static_cast<std::size_t>(N + k)] = std::sin(k * theta);
  }
  return row;
}

TrigPoly poly_from_coeffs(int N, const std::vector<double>& x) {
  TrigPoly f = TrigPoly::zero(N);
  f.a[0] = x[0];
  for (int k = 1; k <= N; ++k) {
    f.a[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)];
    f.b[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(N + k)];
  }
  return f;
}

}  // namespace

TrigPoly TrigPoly::zero(int degree) {
  if (degree < 0) throw std::invalid_argument("trig poly: degree must be nonnegative");
  TrigPoly f;
  f.degree = degree;
  f.a.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  f.b.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  return f;
}

void TrigPoly::validate() const {
  if (degree < 0) throw std::invalid_argument("trig poly: degree must be nonnegative");
  if (a.size() != static_cast<std::size_t>(degree) + 1 ||
      b.size() != static_cast<std::size_t>(degree) + 1)
    throw std::invalid_argument("trig poly: coefficient arrays must have degree+1 entries");
  if (b[0] != 0.0) throw std::invalid_argument("trig poly: b[0] must stay zero");
}

double TrigPoly::eval(double theta) const { return eval_recurrence(*this, theta); }

SupNorm sup_norm_certified(const TrigPoly& f, double step) {
  f.validate();
  if (!(step > 0.0)) throw std::invalid_argument("sup norm: step must be positive");
  if (f.degree == 0) return {std::abs(f.a[0]) / 2.0, 0.0, 0.0};
  auto npts = static_cast<std::int64_t>(std::ceil(2.0 * kPi / step));
  double h = 2.0 * kPi / static_cast<double>(npts);
  if (f.degree * h >= 1.0)
    throw std::invalid_argument("sup norm: step too coarse for the certificate");
  double best = 0.0, barg = 0.0;
  for (std::int64_t i = 0; i < npts; ++i) {
    double theta = h * static_cast<double>(i);
    double v = std::abs(eval_recurrence(f, theta));
    if (v > best) { best = v; barg = theta; }
  }
  double nh = f.degree * h;
  return {best, best * (nh + nh * nh / 2.0), barg};
}

double sampled_sup(const TrigPoly& f, int N1) {
  f.validate();
  if (N1 < 1) throw std::invalid_argument("sampled sup: need at least one sample");
  double best = 0.0;
  for (int l = 0; l < N1; ++l) {
    double v = std::abs(eval_recurrence(f, 2.0 * kPi * l / N1));
    if (v > best) best = v;
  }
  return best;
}

McResult monte_carlo_lower_bound(int N, int N1, int trials, std::uint64_t seed,
                                 double sup_step, int threads) {
  if (N < 0) throw std::invalid_argument("monte carlo: degree must be nonnegative");
  if (N1 <= 2 * N)
    throw std::invalid_argument("monte carlo: need N1 > 2N, the regime with a finite constant");
  if (trials < 1) throw std::invalid_argument("monte carlo: need at least one trial");
  if (sup_step == 0.0) sup_step = 2.0 * kPi / (4096.0 * std::max(1, N));

  struct Best {
    double ratio = -1.0;
    std::int64_t trial = -1;
    TrigPoly poly;
    double sup = 0.0, sampled = 0.0;
    int discarded = 0;
  };
  int nt = effective_threads(threads);
  std::vector<Best> chunk_best(static_cast<std::size_t>(std::min<std::int64_t>(nt, trials)) + 1);

  parallel_chunks(trials, threads, [&](std::int64_t b, std::int64_t e, int chunk) {
    Best local;
    for (std::int64_t trial = b; trial < e; ++trial) {
      // Independent stream per trial: no generator state crosses workers, and
      // the draw does not depend on how trials are chunked.
      std::mt19937_64 rng(mix64(seed + 0x51a3c0de * static_cast<std::uint64_t>(trial + 1)));
      std::normal_distribution<double> gauss(0.0, 1.0);
      TrigPoly f = TrigPoly::zero(N);
      for (int k = 0; k <= N; ++k) f.a[static_cast<std::size_t>(k)] = gauss(rng);
      for (int k = 1; k <= N; ++k) f.b[static_cast<std::size_t>(k)] = gauss(rng);
      double sampled = sampled_sup(f, N1);
      if (sampled < 1e-300) {
        ++local.discarded;
        continue;
      }
      double sup = sup_norm_certified(f, sup_step).value;  // grid value: safe lower bound
      double ratio = sup / sampled;
      if (ratio > local.ratio || (ratio == local.ratio && trial < local.trial)) {
        local.ratio = ratio;
        local.trial = trial;
        local.poly = f;
        local.sup = sup;
        local.sampled = sampled;
      }
    }
    chunk_best[static_cast<std::size_t>(chunk)] = std::move(local);
  });

  Best overall;
  for (const Best& cb : chunk_best) {
    overall.discarded += cb.discarded;
    if (cb.trial < 0) continue;
    // Keyed on the global trial index, so any chunking yields the same pick.
    if (cb.ratio > overall.ratio ||
        (cb.ratio == overall.ratio && cb.trial < overall.trial)) {
      overall.ratio = cb.ratio;
      overall.trial = cb.trial;
      overall.poly = cb.poly;
      overall.sup = cb.sup;
      overall.sampled = cb.sampled;
    }
  }
  if (overall.trial < 0)
    throw ToleranceFailure("monte carlo: every trial had a vanishing sampled sup");

  McResult out;
  out.ratio = overall.ratio;
  out.witness = std::move(overall.poly);
  out.witness_sup = overall.sup;
  out.witness_sampled = overall.sampled;
  out.discarded = overall.discarded;
  out.trials = trials;
  out.seed = seed;
  return out;
}

LpResult lp_c1_trig(int N, int N1, int tstar_points, int refine_rounds) {
  if (N < 0) throw std::invalid_argument("lp: degree must be nonnegative");
  if (N1 < 1) throw std::invalid_argument("lp: need at least one lattice point");
  if (tstar_points < 2) throw std::invalid_argument("lp: need at least two peak candidates");

  // Bounding |f| at the N1 lattice points: rows come in (+, -) pairs.
  std::vector<std::vector<double>> A;
  A.reserve(static_cast<std::size_t>(2 * N1));
  for (int l = 0; l < N1; ++l) {
    std::vector<double> row = feature_row(N, 2.0 * kPi * l / N1);
    A.push_back(row);
    for (double& v : row) v = -v;
    A.push_back(std::move(row));
  }
  std::vector<double> rhs(static_cast<std::size_t>(2 * N1), 1.0);

  LpResult out;
  auto solve_at = [&](double t) -> bool {
    detail::LpSolution sol = detail::simplex_max(A, rhs, feature_row(N, t));
    ++out.solves;
    if (sol.status == detail::LpStatus::unbounded) {
      out.unbounded = true;
      return false;
    }
    if (sol.objective > out.value) {
      out.value = sol.objective;
      out.t_star = t;
      out.witness = poly_from_coeffs(N, sol.x);
    }
    return true;
  };

  double R = kPi / N1;
  double h = R / (tstar_points - 1);
  for (int i = 0; i < tstar_points; ++i)
    if (!solve_at(h * i)) return out;
  for (int round = 0; round < refine_rounds; ++round) {
    double lo = std::max(0.0, out.t_star - h);
    double hi = std::min(R, out.t_star + h);
    const int pts = 33;
    double hh = (hi - lo) / (pts - 1);
    for (int i = 0; i < pts; ++i)
      if (!solve_at(lo + hh * i)) return out;
    h = hh;
  }
  // The LP optimum as a function of the peak location has slope at most
  // N * sup of the optimizing polynomial; doubled for margin.
  out.grid_slack = 2.0 * N * out.value * h;
  return out;
}

ExtremalReport extremal_check(int L) {
  if (L < 2) throw std::invalid_argument("extremal check: need an integer L >= 2");
  double phi = kPi / (2.0 * L);
  TrigPoly f = TrigPoly::zero(1);
  f.a[1] = 1.0;
  f.b[1] = std::tan(phi);
  double sampled = sampled_sup(f, 2 * L);
  double sup = std::hypot(1.0, f.b[1]);  // exact amplitude of a pure harmonic
  return {sampled, sup, sup / sampled};
}

}  // namespace overshoot
