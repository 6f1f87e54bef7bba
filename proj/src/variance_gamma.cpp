#include "vixbond/variance_gamma.hpp"

#include <cmath>

#include "vixbond/diagnostics.hpp"

namespace vixbond {

namespace {

// With unit variance and u = theta^2 nu, skewness S = nu theta (3 - u) and
// excess kurtosis K = 3 nu (1 + 2u - u^2). Eliminating nu gives
// K / S^2 = ratio(u), strictly decreasing on (0, 1] down to 3/2.
double ratio(double u) {
  return 3.0 * (1.0 + 2.0 * u - u * u) / (u * (3.0 - u) * (3.0 - u));
}

double solve_u(double target_ratio) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (ratio(mid) > target_ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

VarianceGammaFit assemble(const DistributionMoments& target, double u, double nu,
                          double theta_unit, VgBoundary boundary) {
  const double sd = std::sqrt(target.variance);
  VarianceGammaFit fit;
  fit.target = target;
  fit.boundary = boundary;
  fit.params.shape = nu;
  fit.params.asymmetry = theta_unit * sd;
  fit.params.scale = std::sqrt(std::max(0.0, 1.0 - u)) * sd;
  fit.params.location = target.mean - fit.params.asymmetry;
  fit.achieved = vg_moments(fit.params);
  return fit;
}

}  // namespace

const char* to_string(VgBoundary b) {
  switch (b) {
    case VgBoundary::none: return "none";
    case VgBoundary::gaussian_limit: return "gaussian_limit";
    case VgBoundary::gamma_limit: return "gamma_limit";
  }
  return "unknown";
}

DistributionMoments vg_moments(const VarianceGammaParams& p) {
  const double s2 = p.scale * p.scale;
  const double th = p.asymmetry;
  const double nu = p.shape;
  DistributionMoments m;
  m.mean = p.location + th;
  m.variance = s2 + nu * th * th;
  if (m.variance <= 0.0) return m;
  const double k3 = 3.0 * s2 * th * nu + 2.0 * th * th * th * nu * nu;
  const double k4 = 3.0 * s2 * s2 * nu + 12.0 * s2 * th * th * nu * nu +
                    6.0 * th * th * th * th * nu * nu * nu;
  m.skewness = k3 / std::pow(m.variance, 1.5);
  m.excess_kurtosis = k4 / (m.variance * m.variance);
  return m;
}

VarianceGammaFit fit_variance_gamma_moments(const DistributionMoments& target,
                                            std::size_t n) {
  if (!(target.variance > 0.0)) throw ZeroVarianceError("variance gamma: zero variance");
  const double s = target.skewness;
  const double k = target.excess_kurtosis;
  // Two standard errors of the sample excess kurtosis under normality.
  const double kurt_noise = 2.0 * std::sqrt(24.0 / static_cast<double>(std::max<std::size_t>(n, 1)));

  if (k <= 0.0 || (k <= 1.5 * s * s && k <= kurt_noise)) {
    return assemble(target, 0.0, 0.0, 0.0, VgBoundary::gaussian_limit);
  }
  const auto flag = k <= kurt_noise ? VgBoundary::gaussian_limit : VgBoundary::none;
  if (s == 0.0) return assemble(target, 0.0, k / 3.0, 0.0, flag);

  if (k <= 1.5 * s * s) {
    const double nu = s * s / 4.0;
    const double theta = std::copysign(std::sqrt(1.0 / nu), s);
    throw InfeasibleMomentsError(
        "variance gamma: excess kurtosis " + std::to_string(k) +
            " is below the attainable floor 1.5*skewness^2 = " +
            std::to_string(1.5 * s * s),
        assemble(target, 1.0, nu, theta, VgBoundary::gamma_limit));
  }

  const double u = solve_u(k / (s * s));
  const double nu = s * s / (u * (3.0 - u) * (3.0 - u));
  const double theta = std::copysign(std::sqrt(u / nu), s);
  return assemble(target, u, nu, theta, flag);
}

VarianceGammaFit fit_variance_gamma(std::span<const double> w) {
  if (w.size() < 100) throw SampleSizeError("variance gamma: need at least 100 observations");
  const auto m = moments(w);
  DistributionMoments target{m.mean, m.std * m.std, m.skewness, m.excess_kurtosis};
  return fit_variance_gamma_moments(target, w.size());
}

}  // namespace vixbond
