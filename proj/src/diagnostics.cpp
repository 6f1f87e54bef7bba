#include "vixbond/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "vixbond/errors.hpp"
#include "vixbond/regression.hpp"

namespace vixbond {

namespace {

double mean_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Treats a spread smaller than this fraction of the magnitude as constant.
bool is_constant(double mean, double m2) {
  const double scale = std::max(1.0, std::fabs(mean));
  return !(m2 > 0.0) || std::sqrt(m2) <= 1e-14 * scale;
}

}  // namespace

MomentSummary moments(std::span<const double> x) {
  if (x.size() < 4) throw SampleSizeError("moments: need at least 4 observations");
  const double n = static_cast<double>(x.size());
  const double mu = mean_of(x);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mu;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (is_constant(mu, m2)) throw ZeroVarianceError("moments: input is constant");
  MomentSummary out;
  out.n = x.size();
  out.mean = mu;
  out.std = std::sqrt(m2);
  out.skewness = m3 / (m2 * out.std);
  out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  return out;
}

AcfResult acf(std::span<const double> x, std::size_t max_lag) {
  const auto n = x.size();
  if (n < 2 || 2 * max_lag >= n) {
    throw SampleSizeError("acf: max_lag must be below n/2");
  }
  const double mu = mean_of(x);
  double denom = 0.0;
  for (double v : x) denom += (v - mu) * (v - mu);
  if (is_constant(mu, denom / static_cast<double>(n))) {
    throw ZeroVarianceError("acf: input is constant");
  }
  AcfResult out;
  out.n = n;
  out.bartlett_band = 1.96 / std::sqrt(static_cast<double>(n));
  out.values.resize(max_lag + 1);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    double num = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) num += (x[t] - mu) * (x[t + lag] - mu);
    out.values[lag] = num / denom;
  }
  out.values[0] = 1.0;
  return out;
}

TestResult jarque_bera(std::span<const double> x) {
  if (x.size() < 8) throw SampleSizeError("jarque_bera: need at least 8 observations");
  const auto m = moments(x);
  const double n = static_cast<double>(x.size());
  TestResult r;
  r.test_name = "jarque_bera";
  r.nobs = x.size();
  r.statistic = n / 6.0 *
                (m.skewness * m.skewness + m.excess_kurtosis * m.excess_kurtosis / 4.0);
  r.p_value = chi_squared_sf(r.statistic, 2.0);
  return r;
}

TestResult ljung_box(std::span<const double> x, std::size_t lags) {
  if (lags == 0 || 4 * lags >= x.size()) {
    throw SampleSizeError("ljung_box: lags must be in [1, n/4)");
  }
  const auto rho = acf(x, lags);
  const double n = static_cast<double>(x.size());
  double q = 0.0;
  for (std::size_t l = 1; l <= lags; ++l) {
    q += rho.values[l] * rho.values[l] / (n - static_cast<double>(l));
  }
  TestResult r;
  r.test_name = "ljung_box";
  r.nobs = x.size();
  r.lags = static_cast<long>(lags);
  r.statistic = n * (n + 2.0) * q;
  r.p_value = chi_squared_sf(r.statistic, static_cast<double>(lags));
  return r;
}

double adf_pvalue_constant(double tau) {
  // Response-surface coefficients for the constant-only case, N = 1.
  constexpr double kTauMax = 2.74;
  constexpr double kTauMin = -18.83;
  constexpr double kTauStar = -1.61;
  constexpr double kSmallP[] = {2.1659, 1.4412, 0.038269};
  constexpr double kLargeP[] = {1.7339, 0.93202, -0.12745, -0.010368};
  if (tau > kTauMax) return 1.0;
  if (tau < kTauMin) return 0.0;
  double z = 0.0;
  if (tau <= kTauStar) {
    z = kSmallP[0] + tau * (kSmallP[1] + tau * kSmallP[2]);
  } else {
    z = kLargeP[0] + tau * (kLargeP[1] + tau * (kLargeP[2] + tau * kLargeP[3]));
  }
  return normal_cdf(z);
}

TestResult adf_test(std::span<const double> x, std::size_t lags) {
  const auto n = x.size();
  if (n <= lags + 10) throw SampleSizeError("adf_test: need n > lags + 10");
  std::vector<double> dx(n - 1);
  for (std::size_t t = 1; t < n; ++t) dx[t - 1] = x[t] - x[t - 1];

  // Usable rows: t = lags+1 .. n-1 in level indexing.
  const std::size_t rows = n - 1 - lags;
  std::vector<std::vector<double>> cols(2 + lags, std::vector<double>(rows));
  std::vector<std::string> names{"const", "x_lag"};
  for (std::size_t i = 1; i <= lags; ++i) names.push_back("dx_lag" + std::to_string(i));
  std::vector<double> y(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = r + lags + 1;
    y[r] = dx[t - 1];
    cols[0][r] = 1.0;
    cols[1][r] = x[t - 1];
    for (std::size_t i = 1; i <= lags; ++i) cols[1 + i][r] = dx[t - 1 - i];
  }
  const auto fit = ols(DesignMatrix::from_columns(cols, names), y);
  TestResult res;
  res.test_name = "adf_constant";
  res.nobs = rows;
  res.lags = static_cast<long>(lags);
  res.statistic = fit.t_stats[1];
  res.p_value = adf_pvalue_constant(res.statistic);
  return res;
}

std::vector<QqPoint> qq_points(std::span<const double> x) {
  if (x.size() < 3) throw SampleSizeError("qq_points: need at least 3 observations");
  const double n = static_cast<double>(x.size());
  const double mu = mean_of(x);
  double m2 = 0.0;
  for (double v : x) m2 += (v - mu) * (v - mu);
  m2 /= n;
  if (is_constant(mu, m2)) throw ZeroVarianceError("qq_points: input is constant");
  const double sd = std::sqrt(m2);
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<QqPoint> out(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out[i].theoretical = normal_quantile((static_cast<double>(i) + 0.5) / n);
    out[i].sample = (sorted[i] - mu) / sd;
  }
  return out;
}

double correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw AlignmentError("correlation: length mismatch");
  if (x.size() < 3) throw SampleSizeError("correlation: need at least 3 observations");
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double n = static_cast<double>(x.size());
  if (is_constant(mx, sxx / n) || is_constant(my, syy / n)) {
    throw ZeroVarianceError("correlation: constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw SampleSizeError("ks_statistic: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

void write_acf_csv(std::ostream& out, const AcfResult& r) {
  out << "lag,value\n" << std::setprecision(17);
  for (std::size_t l = 0; l < r.values.size(); ++l) out << l << ',' << r.values[l] << '\n';
}

void write_qq_csv(std::ostream& out, const std::vector<QqPoint>& points) {
  out << "theoretical,sample\n" << std::setprecision(17);
  for (const auto& p : points) out << p.theoretical << ',' << p.sample << '\n';
}

}  // namespace vixbond
