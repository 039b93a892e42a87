#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "oracle_values.hpp"
#include "overshoot/common.hpp"
#include "overshoot/kernels.hpp"
#include "overshoot/l1norm.hpp"

using namespace overshoot;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("absolute integrals of trapezoid kernels hit the frozen values") {
  struct Row {
    double extension;
    double want;
  };
  const Row rows[] = {
      {3.0, oracle::kL1Trapezoid3},
      {2.0, oracle::kL1Trapezoid2},
      {2.5, oracle::kL1Trapezoid2_5},
      {1.5, oracle::kL1Trapezoid1_5},
  };
  for (const Row& row : rows) {
    L1Result r = kernel_l1(KernelSpec::trapezoid(kPi, row.extension));
    CAPTURE(row.extension);
    CHECK(r.value == doctest::Approx(row.want).epsilon(5e-9));
    CHECK(r.cert_error <= 1e-8);
    CHECK(r.tail_bracketed);
    CHECK(r.evaluations > 0);
    CHECK(r.core_halfwidth > 0.0);
  }
}

TEST_CASE("absolute integral does not depend on the band edge") {
  for (double B : {1.0, 10.0}) {
    L1Result r = kernel_l1(KernelSpec::trapezoid(B, 2.0));
    CHECK(r.value == doctest::Approx(oracle::kL1Trapezoid2).epsilon(5e-9));
  }
}

TEST_CASE("nonnegative kernels integrate to exactly their DC value") {
  for (int n : {1, 3}) {
    L1Result r = kernel_l1(KernelSpec::triangle(n));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
  }
  L1Result r = kernel_l1(KernelSpec::triangle_support(2.7));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("layered staircase integral") {
  LayeredFilter f{{kPi, 2 * kPi, 3 * kPi}, {1.0, 0.5, 0.0}, {2.0, 1.5}};
  L1Result r = kernel_l1(KernelSpec::layered(f));
  CHECK(r.value == doctest::Approx(oracle::kL1LayeredExample)
                       .epsilon(oracle::kL1LayeredExampleTol));
  CHECK(r.cert_error <= 1e-7);
}

TEST_CASE("unit response at zero frequency floors the integral at one") {
  L1Floor fl = l1_lower_floor(KernelSpec::trapezoid(kPi, 2.0));
  CHECK(fl.satisfied);
  CHECK(fl.value >= 1.0 - fl.cert_error - 1e-12);
  fl = l1_lower_floor(KernelSpec::triangle(2));
  CHECK(fl.satisfied);
}

TEST_CASE("integral never exceeds the lattice norm") {
  L1VsC2Report rep = l1_vs_c2_check({1.5, 2.0, 3.0}, 2.0);
  REQUIRE(rep.items.size() == 3);
  for (const L1VsC2Item& it : rep.items) {
    CAPTURE(it.extension);
    CHECK(it.pointwise_ok);
    CHECK(it.l1 <= it.opnorm + it.l1_cert + it.opnorm_cert);
  }
  CHECK(rep.ok);
  CHECK(rep.min_l1 <= rep.min_opnorm + rep.combined_cert);
}

TEST_CASE("incommensurate edges fall back to the envelope tail") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-4;
  L1Result r = kernel_l1(KernelSpec::trapezoid(kPi, std::sqrt(2.0)), spec);
  CHECK_FALSE(r.tail_bracketed);
  CHECK(r.value > 1.0);
  CHECK(r.value < 3.0);
  CHECK(r.cert_error <= 2e-4);
}

TEST_CASE("explicit core widths are honored") {
  QuadratureSpec spec;
  spec.core_halfwidth = 30.0;
  L1Result r = kernel_l1(KernelSpec::trapezoid(kPi, 2.0), spec);
  CHECK(r.core_halfwidth >= 30.0);
  // A short core leaves more mass in the bracketed tail, so the certificate
  // widens; the value must still agree with the reference inside it.
  CHECK(std::abs(r.value - oracle::kL1Trapezoid2) <= r.cert_error + 5e-9);
  CHECK(r.cert_error <= 1e-3);
}

TEST_CASE("impossible budgets are refused") {
  QuadratureSpec spec;
  spec.max_subdivisions = 3;
  spec.abs_tol = 1e-14;
  CHECK_THROWS_AS((void)kernel_l1(KernelSpec::trapezoid(kPi, 2.0), spec),
                  ToleranceFailure);
}

TEST_CASE("the sinc integral diverges and is rejected") {
  CHECK_THROWS_AS((void)kernel_l1(KernelSpec::sinc(kPi)), std::invalid_argument);
  SincL1Divergence d = sinc_l1_divergence(kPi);
  CHECK(d.diverges);
  CHECK(d.growth_rate == doctest::Approx(oracle::kSincL1Growth).epsilon(0.05));
  CHECK(d.last_partial > 1.0);
}

TEST_CASE("trigamma anchors and certificates") {
  TrigammaResult t = trigamma_certified(1.0);
  CHECK(std::abs(t.value - oracle::kTrigamma1) <= t.abs_error + 1e-13);
  CHECK(t.abs_error < 1e-10);
  t = trigamma_certified(0.5);
  CHECK(std::abs(t.value - oracle::kTrigammaHalf) <= t.abs_error + 1e-13);
  // The recurrence: psi1(x) - psi1(x+1) = 1/x^2.
  TrigammaResult a = trigamma_certified(2.0);
  CHECK(a.value == doctest::Approx(oracle::kTrigamma1 - 1.0).epsilon(1e-12));
}
