#include "overshoot/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace overshoot {

std::optional<Fraction> to_fraction(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x) || max_den < 1) return std::nullopt;
  // Continued-fraction convergents p/q of x.
  double rem = x;
  std::int64_t p0 = 1, q0 = 0, p1 = 0, q1 = 1;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(rem);
    if (fl > 9.0e18 || fl < -9.0e18) break;
    std::int64_t a = static_cast<std::int64_t>(fl);
    std::int64_t p2 = a * p0 + p1;
    std::int64_t q2 = a * q0 + q1;
    if (q2 > max_den) break;
    p1 = p0; q1 = q0; p0 = p2; q0 = q2;
    double frac = rem - fl;
    if (frac < 1e-15) break;
    rem = 1.0 / frac;
  }
  if (q0 < 1) return std::nullopt;
  if (std::abs(x - static_cast<double>(p0) / static_cast<double>(q0)) > tol) return std::nullopt;
  std::int64_t g = std::gcd(std::abs(p0), q0);
  if (g > 1) { p0 /= g; q0 /= g; }
  return Fraction{p0, q0};
}

RationalRate::RationalRate(int n_, int twice_m_) : n(n_), twice_m(twice_m_) {
  if (n < 1 || n > 64)
    throw std::invalid_argument("rational rate: n must lie in [1, 64]");
  if (twice_m != 1 && (twice_m < 2 || twice_m % 2 != 0))
    throw std::invalid_argument("rational rate: m must be a positive integer or exactly 1/2");
}

RationalRate RationalRate::from_m(int n_, double m_) {
  double doubled = 2.0 * m_;
  auto rounded = static_cast<int>(std::llround(doubled));
  if (std::abs(doubled - rounded) > 1e-12)
    throw std::invalid_argument("rational rate: m must be a positive integer or exactly 1/2");
  return RationalRate(n_, rounded);
}

std::optional<RationalRate> RationalRate::detect(double L, int max_n, double tol) {
  if (!(L > 1.0)) return std::nullopt;
  for (int n = 1; n <= max_n; ++n) {
    double q = n * (L - 1.0);
    std::int64_t tm = std::llround(2.0 * q);
    if (tm < 1) continue;
    if (tm != 1 && tm % 2 != 0) continue;  // m would be a half-integer > 1/2
    if (tm > 2 * 64 * 64) continue;
    double implied = 1.0 + static_cast<double>(tm) / (2.0 * n);
    if (std::abs(implied - L) <= tol) return RationalRate(n, static_cast<int>(tm));
  }
  return std::nullopt;
}

}  // namespace overshoot
