#include "vixbond/models.hpp"

#include <cmath>

#include "vixbond/errors.hpp"

namespace vixbond {

namespace {

void require_length(const MonthlySeries& s, const char* what) {
  if (s.size() < kMinFitObservations) {
    throw SampleSizeError(std::string(what) + ": series '" + s.name + "' has " +
                          std::to_string(s.size()) + " points, need at least " +
                          std::to_string(kMinFitObservations));
  }
  if (!s.consecutive()) {
    throw AlignmentError(std::string(what) + ": series '" + s.name + "' has gaps");
  }
}

void require_aligned(const MonthlySeries& a, const MonthlySeries& b, const char* what) {
  if (a.months != b.months) {
    throw AlignmentError(std::string(what) + ": '" + a.name + "' and '" + b.name +
                         "' are not aligned");
  }
}

void require_positive(const MonthlySeries& s, const char* what) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s.values[i] > 0.0)) {
      throw DomainError(std::string(what) + ": '" + s.name + "' is not positive at " +
                        s.months[i].to_string());
    }
  }
}

FitMetadata lagged_metadata(std::vector<std::string> names, const MonthlySeries& s) {
  return {std::move(names), {s.months[1], s.months.back()}, {}};
}

}  // namespace

const char* to_string(ReturnsVariant v) {
  return v == ReturnsVariant::single ? "single" : "with_lagged_rate";
}

ReturnsVariant returns_variant_from_string(const std::string& s) {
  if (s == "single") return ReturnsVariant::single;
  if (s == "with_lagged_rate") return ReturnsVariant::with_lagged_rate;
  throw Error("unknown returns variant '" + s + "'");
}

std::vector<double> lagged_window(const MonthlySeries& s) {
  if (s.empty()) return {};
  return {s.values.begin() + 1, s.values.end()};
}

RawArFit fit_raw_ar(const MonthlySeries& rate) {
  require_length(rate, "fit_raw_ar");
  const auto n = rate.size() - 1;
  std::vector<double> dy(n), ones(n, 1.0), lag(n);
  for (std::size_t t = 1; t <= n; ++t) {
    dy[t - 1] = rate.values[t] - rate.values[t - 1];
    lag[t - 1] = rate.values[t - 1];
  }
  RawArFit out;
  out.fit = ols(DesignMatrix::from_columns({ones, lag}, {"a", "b_minus_1"}), dy);
  out.a = out.fit.coefficients[0];
  out.b = 1.0 + out.fit.coefficients[1];
  out.residuals = out.fit.residuals;
  out.metadata = lagged_metadata({rate.name}, rate);
  return out;
}

SpreadModelParams fit_spread_model(const MonthlySeries& rate, const MonthlySeries& vix) {
  require_length(rate, "fit_spread_model");
  require_aligned(rate, vix, "fit_spread_model");
  require_positive(vix, "fit_spread_model");
  const auto n = rate.size() - 1;
  std::vector<double> y(n), inv_v(n), lag_over_v(n), ones(n, 1.0);
  for (std::size_t t = 1; t <= n; ++t) {
    const double v = vix.values[t];
    y[t - 1] = (rate.values[t] - rate.values[t - 1]) / v;
    inv_v[t - 1] = 1.0 / v;
    lag_over_v[t - 1] = rate.values[t - 1] / v;
  }
  SpreadModelParams out;
  out.fit = ols(DesignMatrix::from_columns({inv_v, lag_over_v, ones},
                                           {"a", "b_minus_1", "c"}),
                y);
  out.a = out.fit.coefficients[0];
  out.b = 1.0 + out.fit.coefficients[1];
  out.c = out.fit.coefficients[2];
  out.residuals = out.fit.residuals;
  out.metadata = lagged_metadata({rate.name, vix.name}, rate);
  return out;
}

VixModelParams fit_vix_ar(const MonthlySeries& vix, bool fit_vg) {
  require_length(vix, "fit_vix_ar");
  require_positive(vix, "fit_vix_ar");
  const auto n = vix.size() - 1;
  std::vector<double> y(n), lag(n), ones(n, 1.0);
  for (std::size_t t = 1; t <= n; ++t) {
    y[t - 1] = std::log(vix.values[t]);
    lag[t - 1] = std::log(vix.values[t - 1]);
  }
  VixModelParams out;
  out.fit = ols(DesignMatrix::from_columns({ones, lag}, {"alpha", "beta"}), y);
  out.alpha = out.fit.coefficients[0];
  out.beta = out.fit.coefficients[1];
  out.innovations = out.fit.residuals;
  out.metadata = lagged_metadata({vix.name}, vix);
  if (fit_vg && out.innovations.size() >= 100) {
    try {
      out.vg = fit_variance_gamma(out.innovations);
    } catch (const InfeasibleMomentsError& e) {
      out.vg = e.nearest();
    }
  }
  return out;
}

namespace {

struct ReturnsRows {
  std::vector<double> lhs;     // Q_t - r_{t-1}/12
  std::vector<double> r_lag;   // r_{t-1}
  std::vector<double> dr;      // r_t - r_{t-1}
  std::vector<double> v;       // V_t
};

ReturnsRows returns_rows(const MonthlySeries& returns, const MonthlySeries& rate,
                         const MonthlySeries* vix) {
  const auto n = rate.size() - 1;
  ReturnsRows rows;
  rows.lhs.resize(n);
  rows.r_lag.resize(n);
  rows.dr.resize(n);
  if (vix) rows.v.resize(n);
  for (std::size_t t = 1; t <= n; ++t) {
    const double r_prev = rate.values[t - 1] / 100.0;
    const double r_now = rate.values[t] / 100.0;
    rows.lhs[t - 1] = returns.values[t] - r_prev / 12.0;
    rows.r_lag[t - 1] = r_prev;
    rows.dr[t - 1] = r_now - r_prev;
    if (vix) rows.v[t - 1] = vix->values[t];
  }
  return rows;
}

void assign_returns(ReturnsModelParams& out) {
  const auto& f = out.fit;
  out.k = out.variant == ReturnsVariant::with_lagged_rate ? f.coefficient("k") : 0.0;
  out.duration = -f.coefficient("minus_D");
  out.h = f.coefficient("h");
  out.l = out.normalized ? f.coefficient("l") : 0.0;
  out.residuals = f.residuals;
}

}  // namespace

ReturnsModelParams fit_returns_model(const MonthlySeries& returns,
                                     const MonthlySeries& rate,
                                     const MonthlySeries& vix,
                                     ReturnsVariant variant) {
  require_length(rate, "fit_returns_model");
  require_aligned(returns, rate, "fit_returns_model");
  require_aligned(rate, vix, "fit_returns_model");
  require_positive(vix, "fit_returns_model");
  auto rows = returns_rows(returns, rate, &vix);
  const auto n = rows.lhs.size();
  std::vector<double> y(n), k_col(n), d_col(n), ones(n, 1.0), l_col(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = rows.v[i];
    y[i] = rows.lhs[i] / v;
    k_col[i] = rows.r_lag[i] / v;
    d_col[i] = rows.dr[i] / v;
    l_col[i] = 1.0 / v;
  }
  std::vector<std::vector<double>> cols;
  std::vector<std::string> names;
  if (variant == ReturnsVariant::with_lagged_rate) {
    cols.push_back(std::move(k_col));
    names.push_back("k");
  }
  cols.push_back(std::move(d_col));
  names.push_back("minus_D");
  cols.push_back(std::move(ones));
  names.push_back("h");
  cols.push_back(std::move(l_col));
  names.push_back("l");

  ReturnsModelParams out;
  out.variant = variant;
  out.normalized = true;
  out.fit = ols(DesignMatrix::from_columns(cols, names), y);
  assign_returns(out);
  out.metadata = lagged_metadata({returns.name, rate.name, vix.name}, rate);
  return out;
}

ReturnsModelParams fit_unnormalized_returns_model(const MonthlySeries& returns,
                                                  const MonthlySeries& rate,
                                                  ReturnsVariant variant) {
  require_length(rate, "fit_unnormalized_returns_model");
  require_aligned(returns, rate, "fit_unnormalized_returns_model");
  auto rows = returns_rows(returns, rate, nullptr);
  const auto n = rows.lhs.size();
  std::vector<std::vector<double>> cols;
  std::vector<std::string> names;
  if (variant == ReturnsVariant::with_lagged_rate) {
    cols.push_back(rows.r_lag);
    names.push_back("k");
  }
  cols.push_back(rows.dr);
  names.push_back("minus_D");
  cols.push_back(std::vector<double>(n, 1.0));
  names.push_back("h");

  ReturnsModelParams out;
  out.variant = variant;
  out.normalized = false;
  out.fit = ols(DesignMatrix::from_columns(cols, names), rows.lhs);
  assign_returns(out);
  out.metadata = lagged_metadata({returns.name, rate.name}, rate);
  return out;
}

ResidualComparison compare_residuals(std::span<const double> original,
                                     std::span<const double> vix,
                                     std::span<const double> refit) {
  if (original.size() != vix.size() || original.size() != refit.size()) {
    throw AlignmentError("compare_residuals: streams have different lengths");
  }
  std::vector<double> scaled(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (!(vix[i] > 0.0)) throw DomainError("compare_residuals: nonpositive VIX");
    scaled[i] = original[i] / vix[i];
  }
  return {moments(original), moments(scaled), moments(refit)};
}

}  // namespace vixbond
