#ifndef VIXBOND_REGRESSION_HPP_
#define VIXBOND_REGRESSION_HPP_

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace vixbond {

/// Regressor matrix with named columns. Construction rejects duplicate
/// names, all-zero columns, shape mismatches and n <= k.
class DesignMatrix {
 public:
  DesignMatrix(Eigen::MatrixXd values, std::vector<std::string> names);

  /// Builds from columns; each column must have the same length.
  static DesignMatrix from_columns(const std::vector<std::vector<double>>& columns,
                                   std::vector<std::string> names);

  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }
  /// True when some column is identically 1.
  bool has_intercept() const { return intercept_column_ >= 0; }
  /// Index of the column called `name`; throws if absent.
  std::size_t index_of(const std::string& name) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> names_;
  int intercept_column_ = -1;
};

struct OlsFit {
  std::vector<std::string> names;
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  std::vector<double> t_stats;
  std::vector<double> p_values;  // two-sided, Student t with n - k dof
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  std::vector<double> residuals;
  double residual_variance = 0.0;  // RSS / (n - k)
  double rss = 0.0;
  std::size_t n = 0;
  std::size_t dof = 0;
  bool has_intercept = false;

  std::size_t index_of(const std::string& name) const;
  double coefficient(const std::string& name) const;
  double p_value(const std::string& name) const;
};

/// Relative singular-value cutoff below which a design counts as rank
/// deficient.
inline constexpr double kRankTolerance = 1e-10;

/// Ordinary least squares with classical homoscedastic inference.
/// R^2 is centred when the design has an intercept, uncentred otherwise.
OlsFit ols(const DesignMatrix& x, std::span<const double> y);

/// Two-sided tail probability P(|T| >= |t|) for Student t with `dof`.
double t_test_pvalue(double t, long dof);

/// Upper tail of chi-squared with `dof` degrees of freedom.
double chi_squared_sf(double x, double dof);

double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace vixbond

#endif  // VIXBOND_REGRESSION_HPP_
