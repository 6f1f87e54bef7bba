#ifndef VIXBOND_DIAGNOSTICS_HPP_
#define VIXBOND_DIAGNOSTICS_HPP_

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vixbond {

/// Mean, standard deviation, skewness and excess kurtosis, all from
/// central moments normalised by 1/N.
struct MomentSummary {
  double mean = 0.0;
  double std = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  std::size_t n = 0;
};

struct AcfResult {
  std::vector<double> values;  // values[lag], lag = 0..max_lag
  double bartlett_band = 0.0;  // 1.96 / sqrt(n)
  std::size_t n = 0;
};

struct TestResult {
  std::string test_name;
  double statistic = 0.0;
  double p_value = 1.0;
  long lags = 0;  // lags used, where meaningful
  std::size_t nobs = 0;
};

struct QqPoint {
  double theoretical = 0.0;
  double sample = 0.0;
};

MomentSummary moments(std::span<const double> x);

AcfResult acf(std::span<const double> x, std::size_t max_lag);

/// JB = n/6 (S^2 + K^2/4), chi-squared(2) p-value.
TestResult jarque_bera(std::span<const double> x);

/// Q = n(n+2) sum_{l=1..L} rho(l)^2 / (n-l), chi-squared(L) p-value.
TestResult ljung_box(std::span<const double> x, std::size_t lags);

/// Augmented Dickey-Fuller test with a constant and no trend:
///   dx_t = mu + gamma x_{t-1} + sum_{i=1..lags} phi_i dx_{t-i} + e_t.
/// The statistic is the t-ratio of gamma; its p-value comes from
/// MacKinnon's approximate response surface for the constant-only case.
TestResult adf_test(std::span<const double> x, std::size_t lags);

/// MacKinnon (1994) approximate asymptotic p-value for the Dickey-Fuller
/// tau statistic, constant-only regression, one variable.
double adf_pvalue_constant(double tau);

/// Sorted standardized sample vs standard-normal quantiles at (i-0.5)/n.
std::vector<QqPoint> qq_points(std::span<const double> x);

/// Pearson correlation.
double correlation(std::span<const double> x, std::span<const double> y);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// CSV exports for external plotting.
void write_acf_csv(std::ostream& out, const AcfResult& r);
void write_qq_csv(std::ostream& out, const std::vector<QqPoint>& points);

}  // namespace vixbond

#endif  // VIXBOND_DIAGNOSTICS_HPP_
