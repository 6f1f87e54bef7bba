#ifndef VIXBOND_MODELS_HPP_
#define VIXBOND_MODELS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vixbond/diagnostics.hpp"
#include "vixbond/ingest.hpp"
#include "vixbond/regression.hpp"
#include "vixbond/variance_gamma.hpp"

namespace vixbond {

/// Which series fed a fit and over which months its residuals live.
struct FitMetadata {
  std::vector<std::string> series_names;
  MonthRange window;
  std::string fitted_at;  // free-form; empty when not recorded

  friend bool operator==(const FitMetadata&, const FitMetadata&) = default;
};

/// dR_t = a + (b - 1) R_{t-1} + eps_t.
struct RawArFit {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> residuals;  // eps_t, t = 1..n-1
  OlsFit fit;                     // coefficients "a", "b_minus_1"
  FitMetadata metadata;
};

/// ln V_t = alpha + beta ln V_{t-1} + W_t.
struct VixModelParams {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> innovations;  // W_t
  std::optional<VarianceGammaFit> vg;
  OlsFit fit;  // coefficients "alpha", "beta"
  FitMetadata metadata;
};

/// R_t = a + b R_{t-1} + c V_t + V_t Z_t, fitted in the differenced,
/// VIX-normalized form dR_t/V_t = a/V_t + (b-1) R_{t-1}/V_t + c + Z_t.
struct SpreadModelParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  std::vector<double> residuals;  // Z_t
  OlsFit fit;                     // coefficients "a", "b_minus_1", "c"
  FitMetadata metadata;
};

enum class ReturnsVariant { single, with_lagged_rate };
const char* to_string(ReturnsVariant v);
ReturnsVariant returns_variant_from_string(const std::string& s);

/// Q_t - r_{t-1}/12 = k r_{t-1} - D dr_t + h [+ l/V_t, normalized form] + delta_t
/// with r = R/100 (decimal annual rate). In the normalized form every term is
/// divided by V_t. k == 0 for the single variant; l == 0 when unnormalized.
struct ReturnsModelParams {
  double k = 0.0;
  double duration = 0.0;  // D
  double h = 0.0;
  double l = 0.0;
  ReturnsVariant variant = ReturnsVariant::single;
  bool normalized = true;
  std::vector<double> residuals;  // delta'_t (normalized) or delta_t
  OlsFit fit;                     // coefficients "k", "minus_D", "h", "l"
  FitMetadata metadata;
};

struct ResidualComparison {
  MomentSummary original;
  MomentSummary normalized;
  MomentSummary refit;
};

/// Minimum observation count for every autoregressive fit.
inline constexpr std::size_t kMinFitObservations = 30;

RawArFit fit_raw_ar(const MonthlySeries& rate);

SpreadModelParams fit_spread_model(const MonthlySeries& rate,
                                   const MonthlySeries& vix);

/// Fits the log-VIX autoregression. With `fit_vg`, also fits a
/// variance-gamma law to the innovations; an infeasible moment system stores
/// the nearest feasible fit.
VixModelParams fit_vix_ar(const MonthlySeries& vix, bool fit_vg = true);

ReturnsModelParams fit_returns_model(const MonthlySeries& returns,
                                     const MonthlySeries& rate,
                                     const MonthlySeries& vix,
                                     ReturnsVariant variant);

ReturnsModelParams fit_unnormalized_returns_model(const MonthlySeries& returns,
                                                  const MonthlySeries& rate,
                                                  ReturnsVariant variant);

/// Moments of `original`, `original / vix` and `refit`.
ResidualComparison compare_residuals(std::span<const double> original,
                                     std::span<const double> vix,
                                     std::span<const double> refit);

/// VIX values aligned with residuals of a one-lag fit (drops the first month).
std::vector<double> lagged_window(const MonthlySeries& s);

}  // namespace vixbond

#endif  // VIXBOND_MODELS_HPP_
