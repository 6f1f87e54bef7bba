#ifndef VIXBOND_TESTS_SUPPORT_HPP_
#define VIXBOND_TESTS_SUPPORT_HPP_

#include <array>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "vixbond/ingest.hpp"

namespace testing {

inline vixbond::MonthlySeries make_series(std::string name, vixbond::YearMonth first,
                                          std::vector<double> values) {
  vixbond::MonthlySeries s;
  s.name = std::move(name);
  auto m = first;
  for (std::size_t i = 0; i < values.size(); ++i, m = m.next()) s.months.push_back(m);
  s.values = std::move(values);
  return s;
}

/// Simulated monthly VIX from a log-AR(1) with Gaussian shocks.
inline std::vector<double> simulate_vix(std::size_t n, double alpha, double beta,
                                        double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, sigma);
  std::vector<double> v(n);
  double lv = alpha / (1.0 - beta);
  for (auto& x : v) {
    lv = alpha + beta * lv + z(rng);
    x = std::exp(lv);
  }
  return v;
}

/// R_t = a + b R_{t-1} + c V_t + V_t Z_t.
inline std::vector<double> simulate_rate(const std::vector<double>& v, double a, double b,
                                         double c, double sigma_z, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, sigma_z);
  std::vector<double> r(v.size());
  double prev = (a + c * 20.0) / (1.0 - b);
  for (std::size_t t = 0; t < v.size(); ++t) {
    r[t] = a + b * prev + c * v[t] + v[t] * z(rng);
    prev = r[t];
  }
  return r;
}

/// Solves A x = b by Gauss-Jordan elimination with partial pivoting.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) b[c] /= a[c][c];
  return b;
}

/// Inverse of a small dense matrix, column by column.
inline std::vector<std::vector<double>> gauss_inverse(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> e(n, 0.0);
    e[c] = 1.0;
    const auto col = gauss_solve(a, e);
    for (std::size_t r = 0; r < n; ++r) inv[r][c] = col[r];
  }
  return inv;
}

struct NormalEquationsFit {
  std::vector<double> beta;
  std::vector<double> se;
  double rss = 0.0;
};

/// (X'X)^{-1} X'y with classical standard errors; X given as columns.
inline NormalEquationsFit normal_equations(const std::vector<std::vector<double>>& cols,
                                           const std::vector<double>& y) {
  const std::size_t k = cols.size(), n = y.size();
  std::vector<std::vector<double>> xtx(k, std::vector<double>(k, 0.0));
  std::vector<double> xty(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t t = 0; t < n; ++t) xty[i] += cols[i][t] * y[t];
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t t = 0; t < n; ++t) xtx[i][j] += cols[i][t] * cols[j][t];
  }
  NormalEquationsFit out;
  const auto inv = gauss_inverse(xtx);
  out.beta.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.beta[i] += inv[i][j] * xty[j];
  for (std::size_t t = 0; t < n; ++t) {
    double fit = 0.0;
    for (std::size_t i = 0; i < k; ++i) fit += cols[i][t] * out.beta[i];
    out.rss += (y[t] - fit) * (y[t] - fit);
  }
  const double s2 = out.rss / static_cast<double>(n - k);
  for (std::size_t i = 0; i < k; ++i) out.se.push_back(std::sqrt(s2 * inv[i][i]));
  return out;
}

/// Two-sided Student-t tail by composite Simpson integration of the density
/// over [0, |t|].
inline double t_pvalue_quadrature(double t, double dof, int intervals = 20000) {
  const double c = std::exp(std::lgamma((dof + 1) / 2) - std::lgamma(dof / 2)) /
                   std::sqrt(dof * 3.14159265358979323846);
  auto f = [&](double x) { return c * std::pow(1.0 + x * x / dof, -(dof + 1) / 2); };
  const double a = std::fabs(t), h = a / intervals;
  double s = f(0.0) + f(a);
  for (int i = 1; i < intervals; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return 1.0 - 2.0 * s * h / 3.0;
}

/// Direct-sum central moments with 1/N normalisation.
inline std::array<double, 4> direct_moments(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double mu = 0.0;
  for (double v : x) mu += v;
  mu /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    m2 += std::pow(v - mu, 2);
    m3 += std::pow(v - mu, 3);
    m4 += std::pow(v - mu, 4);
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  return {mu, std::sqrt(m2), m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

/// Double-loop autocorrelation.
inline std::vector<double> direct_acf(const std::vector<double>& x, std::size_t max_lag) {
  const std::size_t n = x.size();
  double mu = 0.0;
  for (double v : x) mu += v;
  mu /= static_cast<double>(n);
  double den = 0.0;
  for (double v : x) den += (v - mu) * (v - mu);
  std::vector<double> out;
  for (std::size_t l = 0; l <= max_lag; ++l) {
    double num = 0.0;
    for (std::size_t t = 0; t + l < n; ++t) num += (x[t] - mu) * (x[t + l] - mu);
    out.push_back(num / den);
  }
  return out;
}

inline double direct_ljung_box(const std::vector<double>& x, std::size_t lags) {
  const auto r = direct_acf(x, lags);
  const double n = static_cast<double>(x.size());
  double q = 0.0;
  for (std::size_t l = 1; l <= lags; ++l) q += r[l] * r[l] / (n - static_cast<double>(l));
  return n * (n + 2.0) * q;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("vixbond_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testing

#endif  // VIXBOND_TESTS_SUPPORT_HPP_
