#include <cmath>
#include <random>

#include "doctest.h"
#include "vixbond/diagnostics.hpp"
#include "vixbond/errors.hpp"
#include "vixbond/variance_gamma.hpp"

using namespace vixbond;

TEST_CASE("vg_moments closed forms") {
  const VarianceGammaParams p{0.1, 0.5, 0.2, 0.3};
  const auto m = vg_moments(p);
  CHECK(m.mean == doctest::Approx(0.3));
  CHECK(m.variance == doctest::Approx(0.25 + 0.04 * 0.3));
  const double var = m.variance;
  CHECK(m.skewness ==
        doctest::Approx((2 * std::pow(0.2, 3) * 0.09 + 3 * 0.25 * 0.2 * 0.3) / std::pow(var, 1.5)));
  CHECK(m.excess_kurtosis ==
        doctest::Approx(3 * (std::pow(0.5, 4) * 0.3 + 2 * std::pow(0.2, 4) * 0.027 +
                             4 * 0.25 * 0.04 * 0.09) /
                        (var * var)));
}

TEST_CASE("fit reproduces feasible target moments") {
  for (const auto& p : {VarianceGammaParams{0.0, 1.0, 0.3, 0.5}, VarianceGammaParams{-0.2, 0.1, 0.05, 1.2},
                        VarianceGammaParams{1.0, 2.0, -0.7, 0.2}}) {
    const auto target = vg_moments(p);
    const auto fit = fit_variance_gamma_moments(target, 100000);
    CHECK(fit.boundary == VgBoundary::none);
    CHECK(fit.achieved.mean == doctest::Approx(target.mean).epsilon(1e-12));
    CHECK(fit.achieved.variance == doctest::Approx(target.variance).epsilon(1e-12));
    CHECK(std::fabs(fit.achieved.skewness - target.skewness) < 1e-8);
    CHECK(std::fabs(fit.achieved.excess_kurtosis - target.excess_kurtosis) < 1e-8);
    CHECK(fit.params.scale == doctest::Approx(p.scale).epsilon(1e-6));
    CHECK(fit.params.asymmetry == doctest::Approx(p.asymmetry).epsilon(1e-6));
    CHECK(fit.params.shape == doctest::Approx(p.shape).epsilon(1e-6));
  }
}

TEST_CASE("symmetric target gives zero asymmetry") {
  const auto fit = fit_variance_gamma_moments({0.0, 1.0, 0.0, 2.0}, 10000);
  CHECK(std::fabs(fit.params.asymmetry) < 1e-12);
  CHECK(fit.params.shape == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("gaussian input hits the gaussian limit") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(20000);
  for (auto& v : x) v = g(rng);
  const auto fit = fit_variance_gamma(x);
  CHECK(fit.boundary == VgBoundary::gaussian_limit);
  CHECK(fit.params.shape == 0.0);
}

TEST_CASE("infeasible moments carry the nearest fit") {
  try {
    fit_variance_gamma_moments({0.0, 1.0, 2.0, 3.0}, 1000);
    FAIL("expected InfeasibleMomentsError");
  } catch (const InfeasibleMomentsError& e) {
    CHECK(e.nearest().boundary == VgBoundary::gamma_limit);
    CHECK(e.nearest().achieved.variance == doctest::Approx(1.0));
    CHECK(e.nearest().achieved.skewness == doctest::Approx(2.0));
  }
}

TEST_CASE("simulate-then-fit recovers parameters") {
  const VarianceGammaParams truth{0.02, 0.15, 0.08, 0.6};
  std::mt19937_64 rng(99);
  std::vector<double> w(50000);
  for (auto& v : w) v = sample_variance_gamma(truth, rng);
  const auto fit = fit_variance_gamma(w);
  CHECK(fit.params.scale == doctest::Approx(truth.scale).epsilon(0.10));
  CHECK(fit.params.asymmetry == doctest::Approx(truth.asymmetry).epsilon(0.10));
  CHECK(fit.params.shape == doctest::Approx(truth.shape).epsilon(0.10));
  CHECK(fit.params.location == doctest::Approx(truth.location).epsilon(0.10));
}

TEST_CASE("fit_variance_gamma needs 100 observations") {
  CHECK_THROWS_AS(fit_variance_gamma(std::vector<double>(99, 1.0)), SampleSizeError);
}
