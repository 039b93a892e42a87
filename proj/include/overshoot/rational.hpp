#pragma once

#include <cstdint>
#include <optional>

namespace overshoot {

struct Fraction {
  std::int64_t num;
  std::int64_t den;  // > 0, gcd(num, den) = 1
};

// Best rational approximation with den <= max_den via the continued-fraction
// expansion; accepted only if |x - num/den| <= tol.
std::optional<Fraction> to_fraction(double x, std::int64_t max_den, double tol = 1e-10);

// The (n, m) parametrization: L = (n+m)/n, extension (n+1)/n, with m a
// positive integer or exactly one half. m is stored doubled so the term count
// 2(n+m) = 2n + twice_m stays exact integer arithmetic.
struct RationalRate {
  int n;
  int twice_m;  // 1 for m = 1/2, else 2m for integer m >= 1

  RationalRate(int n_, int twice_m_);
  static RationalRate from_m(int n_, double m_);

  double m() const { return twice_m / 2.0; }
  double L() const { return (2.0 * n + twice_m) / (2.0 * n); }
  double extension() const { return (n + 1.0) / n; }
  int term_count() const { return 2 * n + twice_m; }

  // Smallest-n representation of L with n <= max_n, or nothing. m must land
  // on {1/2, 1, 2, 3, ...} within tol of the implied L.
  static std::optional<RationalRate> detect(double L, int max_n = 64, double tol = 1e-9);
};

}  // namespace overshoot
