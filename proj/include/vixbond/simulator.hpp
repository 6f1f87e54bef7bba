#ifndef VIXBOND_SIMULATOR_HPP_
#define VIXBOND_SIMULATOR_HPP_

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "vixbond/models.hpp"
#include "vixbond/variance_gamma.hpp"

namespace vixbond {

struct VixDynamics {
  double alpha = 0.0;
  double beta = 0.0;
};

struct SpreadDynamics {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Q_t = k R_{t-1} - m dR_t + h V_t + l + V_t U_t, with R in the units of
/// the spread model and Q a log return.
struct ReturnsDynamics {
  double k = 0.0;
  double m = 0.0;
  double h = 0.0;
  double l = 0.0;
};

/// One innovation triple (U, Z, W).
struct Innovation {
  double u = 0.0;
  double z = 0.0;
  double w = 0.0;
  friend bool operator==(const Innovation&, const Innovation&) = default;
};

/// Joint Gaussian (U, Z, W) with the given covariance, in that order.
struct GaussianInnovations {
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();
};

/// W from a variance-gamma law (recentred to mean zero); Z and U Gaussian,
/// each correlated with W only through its W loading.
struct VgInnovations {
  VarianceGammaParams w;
  double sigma_z = 0.0;
  double rho_zw = 0.0;
  double sigma_u = 0.0;
  double rho_uw = 0.0;
};

/// Time-aligned fitted residual triples, resampled jointly by whole rows.
struct BootstrapInnovations {
  std::vector<Innovation> rows;
};

using InnovationSource =
    std::variant<GaussianInnovations, VgInnovations, BootstrapInnovations>;

struct JointModelSpec {
  VixDynamics vix;
  SpreadDynamics spread;
  std::optional<ReturnsDynamics> returns;
  InnovationSource innovations = GaussianInnovations{};
};

struct InitialState {
  double v0 = 1.0;
  double r0 = 0.0;
  double q0 = 0.0;
};

struct SimulationPath {
  std::uint64_t seed = 0;
  InitialState initial;
  std::vector<double> v;  // V_1..V_T
  std::vector<double> r;
  std::vector<double> q;  // empty without a returns model
  std::vector<Innovation> innovations;

  std::size_t length() const { return v.size(); }
};

/// Deterministic generator for (master seed, stream index).
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Draws innovation triples from a source. Construction validates the
/// source (positive semidefinite covariance, non-empty bootstrap matrix).
class InnovationSampler {
 public:
  explicit InnovationSampler(const InnovationSource& source);
  Innovation operator()(std::mt19937_64& rng) const;
  /// Standard deviation of W under the source.
  double w_std() const { return w_std_; }

 private:
  InnovationSource source_;
  Eigen::Matrix3d factor_ = Eigen::Matrix3d::Zero();
  double w_std_ = 0.0;
};

/// Runs T steps from `initial`. Throws DivergenceError when |ln V_t| > 700
/// or R_t / Q_t stop being finite.
SimulationPath simulate(const JointModelSpec& spec, std::size_t steps,
                        std::uint64_t seed, const InitialState& initial);

/// Runs the recursions on supplied innovations (replay / forced shocks).
SimulationPath simulate_with_innovations(const JointModelSpec& spec,
                                         const std::vector<Innovation>& innovations,
                                         const InitialState& initial);

/// Zero-noise fixed points V* = exp(alpha/(1-beta)), R* = (a + c V*)/(1-b),
/// and the matching Q*.
struct FixedPoint {
  double v = 0.0;
  double r = 0.0;
  double q = 0.0;
};
FixedPoint fixed_point(const JointModelSpec& spec);

/// ceil(10 / (1 - max(b, beta))), floored at 1 step.
std::size_t default_burn_in(const JointModelSpec& spec);

// -- assumption validation ---------------------------------------------------

enum class Severity { info, warning, violation };
const char* to_string(Severity s);

struct Finding {
  Severity severity = Severity::info;
  std::string assumption;  // e.g. "Assumption 2"
  std::string message;
};

/// Never throws; problems with the spec itself come back as findings.
std::vector<Finding> validate_assumptions(const JointModelSpec& spec);
bool has_violation(const std::vector<Finding>& findings);

// -- convergence diagnostics ---------------------------------------------------

struct CoordinateKs {
  std::string coordinate;  // "V", "R", "Q"
  double ks = 0.0;
};

struct MomentEstimate {
  double mean = 0.0;
  double mean_se = 0.0;
  double variance = 0.0;
  double variance_se = 0.0;
};

struct StationaryMoments {
  MomentEstimate v;
  MomentEstimate log_v;
  MomentEstimate r;
  std::optional<MomentEstimate> q;
  std::size_t samples = 0;
  std::size_t batches = 0;
};

struct ConvergenceReport {
  std::vector<CoordinateKs> ks_distance_by_block;
  double max_ks = 0.0;
  double threshold = 0.05;
  bool pass = false;
  std::size_t burn_in = 0;
  std::size_t steps = 0;
  std::size_t pairs = 0;
  FixedPoint fixed_point;
  InitialState high_start;
  InitialState low_start;
  StationaryMoments stationary;  // pooled over all chains past burn-in
};

/// Per-coordinate two-sample KS between two chains' post-burn-in samples.
std::vector<CoordinateKs> compare_chains(const JointModelSpec& spec, std::size_t steps,
                                         std::size_t burn_in,
                                         const InitialState& start_a,
                                         std::uint64_t seed_a,
                                         const InitialState& start_b,
                                         std::uint64_t seed_b);

/// Runs `pairs` chain pairs from (V* e^{+3 sd_W}, R* + 10) and
/// (V* e^{-3 sd_W}, R* - 10) with independent streams, pools each side's
/// post-burn-in samples, and compares the pooled marginals by KS. Passes
/// when every coordinate's KS is below `threshold`.
ConvergenceReport ergodicity_diagnostic(const JointModelSpec& spec, std::size_t steps,
                                        std::size_t burn_in, std::size_t pairs,
                                        std::uint64_t seed, double threshold = 0.05);

/// Time averages past burn-in with batch-means standard errors.
StationaryMoments stationary_moments(const JointModelSpec& spec, std::size_t steps,
                                     std::size_t burn_in, std::uint64_t seed,
                                     std::size_t batches = 32);

/// Batch-means summary of an already simulated sample.
MomentEstimate batch_means(const std::vector<double>& x, std::size_t batches);

// -- construction from fitted models -------------------------------------------

/// Eq.-form returns dynamics from a normalized returns fit whose rates were
/// in percent: k = (k_fit + 1/12)/100, m = D/100, h and l unchanged.
ReturnsDynamics returns_dynamics_from_fit(const ReturnsModelParams& fit);

/// Bootstrap rows from residual streams of equal length (U may be empty).
BootstrapInnovations bootstrap_from_residuals(const std::vector<double>& u,
                                              const std::vector<double>& z,
                                              const std::vector<double>& w);

JointModelSpec joint_spec_from_fits(const VixModelParams& vix,
                                    const SpreadModelParams& spread,
                                    const ReturnsModelParams* returns,
                                    InnovationSource source);

// -- export -----------------------------------------------------------------

/// `t,V,R,Q` rows for t = 0..T; Q is blank without a returns model.
void write_path_csv(std::ostream& out, const SimulationPath& path);
std::string convergence_report_json(const ConvergenceReport& report);
std::string findings_json(const std::vector<Finding>& findings);

}  // namespace vixbond

#endif  // VIXBOND_SIMULATOR_HPP_
