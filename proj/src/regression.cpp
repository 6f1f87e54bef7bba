#include "vixbond/regression.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <set>

#include "vixbond/errors.hpp"

namespace vixbond {

DesignMatrix::DesignMatrix(Eigen::MatrixXd values, std::vector<std::string> names)
    : values_(std::move(values)), names_(std::move(names)) {
  if (static_cast<Eigen::Index>(names_.size()) != values_.cols()) {
    throw SingularDesignError("design: " + std::to_string(names_.size()) +
                              " names for " + std::to_string(values_.cols()) +
                              " columns");
  }
  if (values_.cols() == 0) throw SingularDesignError("design: no columns");
  if (values_.rows() <= values_.cols()) {
    throw SampleSizeError("design: need more rows (" + std::to_string(values_.rows()) +
                          ") than columns (" + std::to_string(values_.cols()) + ")");
  }
  std::set<std::string> seen;
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    const auto& name = names_[static_cast<std::size_t>(j)];
    if (!seen.insert(name).second) {
      throw SingularDesignError("design: duplicate column name '" + name + "'");
    }
    if (!values_.col(j).allFinite()) {
      throw DomainError("design: column '" + name + "' has non-finite values");
    }
    if ((values_.col(j).array() == 0.0).all()) {
      throw SingularDesignError("design: column '" + name + "' is all zero");
    }
    if (intercept_column_ < 0 && (values_.col(j).array() == 1.0).all()) {
      intercept_column_ = static_cast<int>(j);
    }
  }
}

DesignMatrix DesignMatrix::from_columns(const std::vector<std::vector<double>>& columns,
                                        std::vector<std::string> names) {
  if (columns.empty()) throw SingularDesignError("design: no columns");
  const auto n = columns.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n),
                    static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != n) {
      throw SingularDesignError("design: column lengths differ");
    }
    for (std::size_t i = 0; i < n; ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = columns[j][i];
    }
  }
  return DesignMatrix(std::move(m), std::move(names));
}

std::size_t DesignMatrix::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw SingularDesignError("design: no column '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t OlsFit::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error("fit has no coefficient '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

double OlsFit::coefficient(const std::string& name) const {
  return coefficients[index_of(name)];
}

double OlsFit::p_value(const std::string& name) const {
  return p_values[index_of(name)];
}

OlsFit ols(const DesignMatrix& x, std::span<const double> y) {
  const auto& a = x.values();
  const auto n = a.rows();
  const auto k = a.cols();
  if (static_cast<Eigen::Index>(y.size()) != n) {
    throw SingularDesignError("ols: response has " + std::to_string(y.size()) +
                              " rows, design has " + std::to_string(n));
  }
  Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  if (!yv.allFinite()) throw DomainError("ols: response has non-finite values");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double cutoff = kRankTolerance * sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }

  if (rank < k) {
    // Walk the columns in order; a column that adds no rank is dependent on earlier ones.
    std::string offenders;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index j = 0; j < k; ++j) {
      kept.push_back(j);
      Eigen::MatrixXd sub(n, static_cast<Eigen::Index>(kept.size()));
      for (std::size_t i = 0; i < kept.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = a.col(kept[i]);
      const auto s = Eigen::JacobiSVD<Eigen::MatrixXd>(sub).singularValues();
      if (s(s.size() - 1) <= cutoff) {
        kept.pop_back();
        if (!offenders.empty()) offenders += ", ";
        offenders += x.names()[static_cast<std::size_t>(j)];
      }
    }
    throw SingularDesignError("ols: design is rank deficient (rank " +
                              std::to_string(rank) + " of " + std::to_string(k) +
                              "); dependent column(s): " + offenders);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::VectorXd beta = qr.solve(yv);
  Eigen::VectorXd resid = yv - a * beta;

  // (X'X)^{-1} = P R^{-1} R^{-T} P^T from the pivoted factorisation.
  Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  Eigen::MatrixXd rinv = r.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXd::Identity(k, k));
  Eigen::MatrixXd cov_unscaled_perm = rinv * rinv.transpose();
  Eigen::MatrixXd cov_unscaled =
      qr.colsPermutation() * cov_unscaled_perm * qr.colsPermutation().transpose();

  OlsFit fit;
  fit.names = x.names();
  fit.n = static_cast<std::size_t>(n);
  fit.dof = static_cast<std::size_t>(n - k);
  fit.has_intercept = x.has_intercept();
  fit.rss = resid.squaredNorm();
  fit.residual_variance = fit.rss / static_cast<double>(fit.dof);
  fit.residuals.assign(resid.data(), resid.data() + n);

  const double tss = fit.has_intercept ? (yv.array() - yv.mean()).square().sum()
                                       : yv.squaredNorm();
  fit.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : 1.0;
  const double adj_den = fit.has_intercept ? static_cast<double>(n - 1)
                                           : static_cast<double>(n);
  fit.adj_r_squared =
      1.0 - (1.0 - fit.r_squared) * adj_den / static_cast<double>(fit.dof);

  for (Eigen::Index j = 0; j < k; ++j) {
    const double b = beta(j);
    const double se = std::sqrt(fit.residual_variance * cov_unscaled(j, j));
    const double t = se > 0.0 ? b / se : std::copysign(INFINITY, b);
    fit.coefficients.push_back(b);
    fit.standard_errors.push_back(se);
    fit.t_stats.push_back(t);
    fit.p_values.push_back(se > 0.0 ? t_test_pvalue(t, static_cast<long>(fit.dof))
                                    : 0.0);
  }
  return fit;
}

double t_test_pvalue(double t, long dof) {
  if (dof < 1) throw DomainError("t_test_pvalue: dof must be >= 1");
  if (std::isnan(t)) throw DomainError("t_test_pvalue: t is NaN");
  if (std::isinf(t)) return 0.0;
  boost::math::students_t dist(static_cast<double>(dof));
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  return std::clamp(p, 0.0, 1.0);
}

double chi_squared_sf(double x, double dof) {
  if (!(dof > 0.0)) throw DomainError("chi_squared_sf: dof must be positive");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, x));
}

double normal_cdf(double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return boost::math::cdf(boost::math::normal(), x);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must be in (0,1)");
  return boost::math::quantile(boost::math::normal(), p);
}

}  // namespace vixbond
