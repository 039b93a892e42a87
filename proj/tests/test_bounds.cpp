#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracle_values.hpp"
#include "overshoot/bounds.hpp"
#include "overshoot/rational.hpp"

using namespace overshoot;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("closed-form bounds at their exact anchors") {
  BoundResult r = c1_cos_bound(2.0);
  CHECK(r.value == doctest::Approx(oracle::kC1Cos2).epsilon(1e-15));
  CHECK(r.method == BoundMethod::c1_cos);
  CHECK(r.cert_error == 0.0);
  REQUIRE(r.t_star.has_value());
  CHECK(*r.t_star == doctest::Approx(0.25).epsilon(1e-15));

  // Non-integer L: the cosine extremal is not attained, so no maximizer.
  r = c1_cos_bound(4.0 / 3.0);
  CHECK(r.value == doctest::Approx(oracle::kC1Cos43).epsilon(1e-14));
  CHECK_FALSE(r.t_star.has_value());

  CHECK(c1_sqrt_bound(2.0).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(c1_sqrt_bound(1.25).value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(c2_sota_bound(3.0).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(c2_sota_bound(2.0).value == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(c2_asymptotic(3.0).value ==
        doctest::Approx(2.0 / kPi * std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("pushing the expansion factor to 2L-1 recovers the sqrt form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> draw(1.01, 8.0);
  for (int i = 0; i < 200; ++i) {
    double L = draw(rng);
    CHECK(c2_sota_bound(2.0 * L - 1.0).value ==
          doctest::Approx(c1_sqrt_bound(L).value).epsilon(1e-13));
  }
}

TEST_CASE("optimized bound reproduces the frozen maxima") {
  for (const auto& c : oracle::kDirichletSumCases) {
    BoundResult r = c2_new_bound(RationalRate(c.n, c.twice_m));
    CHECK(r.value == doctest::Approx(c.value).epsilon(5e-9));
    CHECK(r.cert_error > 0.0);
    CHECK(r.cert_error <= 2e-9);
    REQUIRE(r.t_star.has_value());
    // The reported location must attain the reported value.
    double at = dirichlet_sum_objective(c.n, 2 * c.n + c.twice_m, *r.t_star);
    CHECK(at >= r.value - 1e-8);
    bool near_frozen = std::abs(*r.t_star - c.t_star) <= 2e-6;
    // (n=2, m=1) has a two-point plateau: 0 and 1/3 share the maximum.
    bool plateau_alt =
        c.n == 2 && c.twice_m == 2 && std::abs(*r.t_star - 1.0 / 3.0) <= 2e-6;
    CHECK((near_frozen || plateau_alt));
  }
}

TEST_CASE("optimized objective is even in t") {
  std::mt19937_64 rng(23);
  for (auto [order, terms] : {std::pair{1, 3}, {2, 6}, {3, 8}, {5, 12}}) {
    double hw = order / (2.0 * (order + 1.0));
    std::uniform_real_distribution<double> draw(0.0, hw);
    for (int i = 0; i < 250; ++i) {
      double t = draw(rng);
      CHECK(dirichlet_sum_objective(order, terms, t) ==
            doctest::Approx(dirichlet_sum_objective(order, terms, -t)).epsilon(1e-10));
    }
  }
}

TEST_CASE("coarse grids trade accuracy for an honest certificate") {
  RationalRate rate(1, 2);
  BoundResult coarse = c2_new_bound(rate, 1e-5);
  CHECK(coarse.cert_error > 1e-6);
  CHECK(std::abs(coarse.value - 1.5) <= coarse.cert_error);
  CHECK(coarse.value <= 1.5 + 1e-12);  // grid maxima never overshoot the sup
  CHECK_THROWS_AS((void)c2_new_bound(rate, -1.0), std::invalid_argument);
}

TEST_CASE("half-rate specialization coincides with the optimized bound") {
  for (int k : {1, 2, 3, 4}) {
    BoundResult cor = c1_corollary_bound(2 * k);
    BoundResult opt = c2_new_bound(RationalRate(k, 1));
    CHECK(cor.value == doctest::Approx(opt.value).epsilon(1e-12));
    CHECK(cor.method == BoundMethod::c1_corollary);
  }
  CHECK_THROWS_AS((void)c1_corollary_bound(3), std::invalid_argument);
  CHECK_THROWS_AS((void)c1_corollary_bound(0), std::invalid_argument);
}

TEST_CASE("bounded-data bound takes the smaller branch") {
  BoundResult r = nyquist_overshoot_bound(RationalRate(1, 2));
  CHECK(r.value == doctest::Approx(1.5).epsilon(5e-9));
  CHECK(r.branch == "dirichlet_sum");
  CHECK(r.method == BoundMethod::nyquist);

  r = nyquist_overshoot_bound(RationalRate(12, 2));
  CHECK(r.value == doctest::Approx(2.595678180793403).epsilon(5e-9));
  CHECK(r.branch == "dirichlet_sum");
  // Either branch must stay below the energy bound sqrt(2n+1).
  CHECK(r.value <= std::sqrt(25.0) + 1e-12);
}

TEST_CASE("layered bound is the weighted mix of per-layer bounds") {
  LayeredFilter f{{kPi, 2 * kPi, 3 * kPi}, {1.0, 0.5, 0.0}, {2.0, 1.5}};
  LayeredBoundReport rep = layered_overshoot_report(f, 2.0);
  CHECK(rep.total.value ==
        doctest::Approx(oracle::kLayeredBoundExample).epsilon(1e-9));
  CHECK(rep.total.branch == "nyquist+nyquist");
  REQUIRE(rep.layers.size() == 2);
  CHECK(rep.layers[0].weight == doctest::Approx(0.5));
  CHECK(rep.layers[1].weight == doctest::Approx(0.5));
  CHECK(rep.layers[0].bound.value == doctest::Approx(1.5).epsilon(5e-9));
  CHECK(rep.layers[1].bound.value ==
        doctest::Approx((2.0 + std::sqrt(2.0)) / 2.0).epsilon(5e-9));
  CHECK(layered_overshoot_bound(f, 2.0).value ==
        doctest::Approx(rep.total.value).epsilon(1e-12));

  // An expansion factor off the (n+1)/n ladder falls back to the closed form.
  LayeredFilter odd{{kPi, 2 * kPi}, {1.0, 0.0}, {1.8}};
  rep = layered_overshoot_report(odd, 2.0);
  CHECK(rep.total.branch == "c2_sota");
  CHECK(rep.total.value == doctest::Approx(std::sqrt(2.8 / 0.8)).epsilon(1e-13));

  // So does a common L that lands no admissible m for the layer.
  rep = layered_overshoot_report(f, 1.77);
  CHECK(rep.total.branch == "c2_sota+c2_sota");
  CHECK_THROWS_AS((void)layered_overshoot_report(f, 1.0), std::domain_error);
}

TEST_CASE("best upper bound picks the smallest applicable candidate") {
  BoundResult r = best_upper_bound(3.0);
  CHECK(r.value == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r.method == BoundMethod::c1_cos);

  // At L = 2 the two closed forms tie; the tie keeps the first candidate.
  r = best_upper_bound(2.0);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(r.method == BoundMethod::c1_cos);

  r = best_upper_bound(1.25);
  CHECK(r.method == BoundMethod::c2_new);
  CHECK(r.value == doctest::Approx(1.957859518316015).epsilon(5e-9));
}

TEST_CASE("optimized bound strictly improves on the closed forms at low rates") {
  for (const auto& row : oracle::kImprovementRows) {
    RationalRate rate(row.n, row.twice_m);
    CHECK(rate.L() == doctest::Approx(row.L).epsilon(1e-15));
    BoundResult opt = c2_new_bound(rate);
    double closed = std::min(c1_cos_bound(row.L).value, c1_sqrt_bound(row.L).value);
    CHECK(closed == doctest::Approx(row.closed_min).epsilon(1e-13));
    CHECK(opt.value == doctest::Approx(row.optimized).epsilon(5e-9));
    CHECK(opt.value + opt.cert_error < closed);
  }
}

TEST_CASE("rate parametrization and detection") {
  RationalRate r(3, 2);
  CHECK(r.L() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(r.extension() == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(r.term_count() == 8);
  CHECK(r.m() == doctest::Approx(1.0));

  CHECK(RationalRate::from_m(2, 0.5).twice_m == 1);
  CHECK(RationalRate::from_m(2, 3.0).twice_m == 6);
  CHECK_THROWS_AS((void)RationalRate::from_m(2, 1.5), std::invalid_argument);
  CHECK_THROWS_AS((void)RationalRate(0, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)RationalRate(65, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)RationalRate(2, 3), std::invalid_argument);

  auto d = RationalRate::detect(1.5);
  REQUIRE(d.has_value());
  CHECK(d->n == 1);
  CHECK(d->twice_m == 1);
  d = RationalRate::detect(2.0);
  REQUIRE(d.has_value());
  CHECK(d->n == 1);
  CHECK(d->twice_m == 2);
  d = RationalRate::detect(1.25);
  REQUIRE(d.has_value());
  CHECK(d->n == 2);
  CHECK(d->twice_m == 1);
  CHECK_FALSE(RationalRate::detect(1.37).has_value());
  CHECK_FALSE(RationalRate::detect(0.9).has_value());
  // 1.333 is not 4/3 at the default tolerance.
  CHECK_FALSE(RationalRate::detect(1.333).has_value());
  CHECK(RationalRate::detect(4.0 / 3.0).has_value());
}

TEST_CASE("fraction recovery via continued fractions") {
  auto f = to_fraction(0.4, 10);
  REQUIRE(f.has_value());
  CHECK(f->num == 2);
  CHECK(f->den == 5);
  f = to_fraction(-1.75, 16);
  REQUIRE(f.has_value());
  CHECK(f->num == -7);
  CHECK(f->den == 4);
  CHECK_FALSE(to_fraction(kPi, 64, 1e-9).has_value());
  CHECK_FALSE(to_fraction(std::nan(""), 64).has_value());
}

TEST_CASE("critically sampled inputs are rejected") {
  CHECK_THROWS_AS((void)c1_cos_bound(1.0), std::domain_error);
  CHECK_THROWS_AS((void)c1_sqrt_bound(0.5), std::domain_error);
  CHECK_THROWS_AS((void)c2_sota_bound(1.0), std::domain_error);
  CHECK_THROWS_AS((void)c2_asymptotic(0.99), std::domain_error);
  CHECK_THROWS_AS((void)best_upper_bound(1.0), std::domain_error);
}

TEST_CASE("method names round-trip") {
  CHECK(method_name(BoundMethod::c1_cos) == "c1_cos");
  CHECK(method_name(BoundMethod::c1_sqrt) == "c1_sqrt");
  CHECK(method_name(BoundMethod::c2_sota) == "c2_sota");
  CHECK(method_name(BoundMethod::asymptotic) == "asymptotic");
  CHECK(method_name(BoundMethod::c2_new) == "c2_new");
  CHECK(method_name(BoundMethod::c1_corollary) == "c1_corollary");
  CHECK(method_name(BoundMethod::nyquist) == "nyquist");
  CHECK(method_name(BoundMethod::layered) == "layered");
}
