#ifndef VIXBOND_VARIANCE_GAMMA_HPP_
#define VIXBOND_VARIANCE_GAMMA_HPP_

#include <random>
#include <span>
#include <vector>

#include "vixbond/errors.hpp"

namespace vixbond {

/// Variance-gamma law X = location + asymmetry*G + scale*sqrt(G)*N with
/// G ~ Gamma(shape 1/nu, scale nu) (unit mean, variance nu) and N ~ N(0,1).
/// `shape` is nu; nu -> 0 is the Gaussian limit.
struct VarianceGammaParams {
  double location = 0.0;
  double scale = 1.0;      // sigma
  double asymmetry = 0.0;  // theta
  double shape = 0.0;      // nu

  friend bool operator==(const VarianceGammaParams&,
                         const VarianceGammaParams&) = default;
};

struct DistributionMoments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

enum class VgBoundary {
  none,
  gaussian_limit,  // excess kurtosis indistinguishable from 0; nu at or near 0
  gamma_limit,     // sigma -> 0; kurtosis at the 1.5*skew^2 floor
};

const char* to_string(VgBoundary b);

struct VarianceGammaFit {
  VarianceGammaParams params;
  DistributionMoments target;
  DistributionMoments achieved;
  VgBoundary boundary = VgBoundary::none;
};

/// Thrown when no VG law matches the sample moments; carries the closest
/// feasible fit (the gamma limit with the sample skewness).
class InfeasibleMomentsError : public Error {
 public:
  InfeasibleMomentsError(const std::string& msg, VarianceGammaFit nearest)
      : Error(msg), nearest_(nearest) {}
  const VarianceGammaFit& nearest() const { return nearest_; }

 private:
  VarianceGammaFit nearest_;
};

DistributionMoments vg_moments(const VarianceGammaParams& p);

/// Method-of-moments fit from target moments. `n` sets the sampling-noise
/// scale used to decide whether kurtosis is consistent with zero.
VarianceGammaFit fit_variance_gamma_moments(const DistributionMoments& target,
                                            std::size_t n);

/// Method-of-moments fit to a sample (n >= 100).
VarianceGammaFit fit_variance_gamma(std::span<const double> w);

template <class Rng>
double sample_variance_gamma(const VarianceGammaParams& p, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  if (p.shape <= 0.0) return p.location + p.asymmetry + p.scale * normal(rng);
  std::gamma_distribution<double> gamma(1.0 / p.shape, p.shape);
  const double g = gamma(rng);
  return p.location + p.asymmetry * g + p.scale * std::sqrt(g) * normal(rng);
}

}  // namespace vixbond

#endif  // VIXBOND_VARIANCE_GAMMA_HPP_
