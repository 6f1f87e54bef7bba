#include "vixbond/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "vixbond/diagnostics.hpp"
#include "vixbond/errors.hpp"

namespace vixbond {

namespace {

constexpr double kLogVLimit = 700.0;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Eigen::Matrix3d psd_factor(const Eigen::Matrix3d& cov) {
  if (!cov.allFinite()) throw DomainError("innovation covariance is not finite");
  const double scale = std::max(1e-300, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("innovation covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const auto& lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -1e-12 * scale) {
    throw DomainError("innovation covariance is not positive semidefinite");
  }
  Eigen::Vector3d root = lambda.cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal();
}

VarianceGammaParams centred(VarianceGammaParams p) {
  p.location = -p.asymmetry;
  return p;
}

void check_step(double log_v, double r, double q, std::size_t t) {
  if (!(std::fabs(log_v) <= kLogVLimit)) {
    throw DivergenceError("simulation diverged at step " + std::to_string(t) +
                              ": |ln V| exceeds " + std::to_string(kLogVLimit),
                          t);
  }
  if (!std::isfinite(r) || !std::isfinite(q)) {
    throw DivergenceError("simulation diverged at step " + std::to_string(t) +
                              ": rate or return is not finite",
                          t);
  }
}

// Advances one step of the joint recursion; returns (ln V_t, R_t, Q_t).
struct StepResult {
  double log_v;
  double v;
  double r;
  double q;
};

StepResult step(const JointModelSpec& spec, double log_v_prev, double r_prev,
                const Innovation& e) {
  StepResult s;
  s.log_v = spec.vix.alpha + spec.vix.beta * log_v_prev + e.w;
  s.v = std::exp(s.log_v);
  s.r = spec.spread.a + spec.spread.b * r_prev + spec.spread.c * s.v + s.v * e.z;
  s.q = 0.0;
  if (spec.returns) {
    const auto& rt = *spec.returns;
    s.q = rt.k * r_prev - rt.m * (s.r - r_prev) + rt.h * s.v + rt.l + s.v * e.u;
  }
  return s;
}

void check_initial(const InitialState& init) {
  if (!(init.v0 > 0.0) || !std::isfinite(init.v0)) {
    throw DomainError("initial V0 must be positive and finite");
  }
  if (!std::isfinite(init.r0)) throw DomainError("initial R0 must be finite");
}

double mean_of(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

}  // namespace

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

InnovationSampler::InnovationSampler(const InnovationSource& source) : source_(source) {
  std::visit(Overloaded{
                 [&](const GaussianInnovations& g) {
                   factor_ = psd_factor(g.covariance);
                   w_std_ = std::sqrt(std::max(0.0, g.covariance(2, 2)));
                 },
                 [&](const VgInnovations& vg) {
                   if (vg.w.scale < 0.0 || vg.w.shape < 0.0 || vg.sigma_z < 0.0 ||
                       vg.sigma_u < 0.0 || std::fabs(vg.rho_zw) > 1.0 ||
                       std::fabs(vg.rho_uw) > 1.0) {
                     throw DomainError("invalid variance-gamma innovation source");
                   }
                   w_std_ = std::sqrt(vg_moments(vg.w).variance);
                 },
                 [&](const BootstrapInnovations& b) {
                   if (b.rows.empty()) throw DomainError("bootstrap matrix is empty");
                   std::vector<double> w;
                   w.reserve(b.rows.size());
                   for (const auto& row : b.rows) w.push_back(row.w);
                   const double m = mean_of(w);
                   double ss = 0.0;
                   for (double x : w) ss += (x - m) * (x - m);
                   w_std_ = std::sqrt(ss / static_cast<double>(w.size()));
                 },
             },
             source_);
}

Innovation InnovationSampler::operator()(std::mt19937_64& rng) const {
  return std::visit(
      Overloaded{
          [&](const GaussianInnovations&) {
            std::normal_distribution<double> normal(0.0, 1.0);
            Eigen::Vector3d eps;
            eps << normal(rng), normal(rng), normal(rng);
            Eigen::Vector3d x = factor_ * eps;
            return Innovation{x(0), x(1), x(2)};
          },
          [&](const VgInnovations& vg) {
            std::normal_distribution<double> normal(0.0, 1.0);
            const double w = sample_variance_gamma(centred(vg.w), rng);
            const double ws = w_std_ > 0.0 ? w / w_std_ : 0.0;
            const double e1 = normal(rng);
            const double e2 = normal(rng);
            Innovation out;
            out.w = w;
            out.z = vg.sigma_z * (vg.rho_zw * ws + std::sqrt(1.0 - vg.rho_zw * vg.rho_zw) * e1);
            out.u = vg.sigma_u * (vg.rho_uw * ws + std::sqrt(1.0 - vg.rho_uw * vg.rho_uw) * e2);
            return out;
          },
          [&](const BootstrapInnovations& b) {
            std::uniform_int_distribution<std::size_t> pick(0, b.rows.size() - 1);
            return b.rows[pick(rng)];
          },
      },
      source_);
}

SimulationPath simulate_with_innovations(const JointModelSpec& spec,
                                         const std::vector<Innovation>& innovations,
                                         const InitialState& initial) {
  check_initial(initial);
  SimulationPath path;
  path.initial = initial;
  path.innovations = innovations;
  const auto n = innovations.size();
  path.v.resize(n);
  path.r.resize(n);
  if (spec.returns) path.q.resize(n);
  double log_v = std::log(initial.v0);
  double r = initial.r0;
  for (std::size_t t = 0; t < n; ++t) {
    const auto s = step(spec, log_v, r, innovations[t]);
    check_step(s.log_v, s.r, s.q, t + 1);
    path.v[t] = s.v;
    path.r[t] = s.r;
    if (spec.returns) path.q[t] = s.q;
    log_v = s.log_v;
    r = s.r;
  }
  return path;
}

SimulationPath simulate(const JointModelSpec& spec, std::size_t steps,
                        std::uint64_t seed, const InitialState& initial) {
  if (steps < 1) throw DomainError("simulate: need at least one step");
  check_initial(initial);
  InnovationSampler sampler(spec.innovations);
  auto rng = make_rng(seed);
  std::vector<Innovation> shocks(steps);
  for (auto& e : shocks) e = sampler(rng);
  auto path = simulate_with_innovations(spec, shocks, initial);
  path.seed = seed;
  return path;
}

FixedPoint fixed_point(const JointModelSpec& spec) {
  FixedPoint fp;
  fp.v = std::exp(spec.vix.alpha / (1.0 - spec.vix.beta));
  fp.r = (spec.spread.a + spec.spread.c * fp.v) / (1.0 - spec.spread.b);
  if (spec.returns) {
    const auto& rt = *spec.returns;
    fp.q = rt.k * fp.r + rt.h * fp.v + rt.l;
  }
  return fp;
}

std::size_t default_burn_in(const JointModelSpec& spec) {
  const double rho = std::max(spec.spread.b, spec.vix.beta);
  if (!(rho < 1.0)) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(10.0 / (1.0 - rho))));
}

// -- assumption validation ---------------------------------------------------

const char* to_string(Severity s) {
  switch (s) {
    case Severity::info: return "info";
    case Severity::warning: return "warning";
    case Severity::violation: return "violation";
  }
  return "unknown";
}

bool has_violation(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::violation; });
}

namespace {

void probe_mgf(const std::vector<double>& w, std::vector<Finding>& out) {
  const std::size_t half = w.size() / 2;
  for (double u : {0.1, 0.25, 0.5}) {
    double first = 0.0, second = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      (i < half ? first : second) += std::exp(u * w[i]);
    }
    const double m1 = first / static_cast<double>(half);
    const double m2 = second / static_cast<double>(w.size() - half);
    const double all = (first + second) / static_cast<double>(w.size());
    std::ostringstream msg;
    msg << std::setprecision(6) << "E[exp(" << u << " W)] ~ " << all << " (halves " << m1
        << ", " << m2 << ")";
    if (!std::isfinite(all)) {
      out.push_back({Severity::violation, "Assumption 3",
                     "MGF probe diverged: " + msg.str()});
    } else if (std::fabs(m1 - m2) > 0.25 * all) {
      out.push_back({Severity::warning, "Assumption 3",
                     "MGF probe unstable across sample halves: " + msg.str()});
    } else {
      out.push_back({Severity::info, "Assumption 3", "MGF probe stable: " + msg.str()});
    }
  }
}

void check_mean_zero(const std::vector<double>& x, const char* label,
                     std::vector<Finding>& out) {
  if (x.size() < 2) return;
  const double m = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  const double se = std::sqrt(ss / static_cast<double>(x.size() - 1)) /
                    std::sqrt(static_cast<double>(x.size()));
  std::ostringstream msg;
  msg << std::setprecision(6) << label << " sample mean " << m << " (SE " << se << ")";
  if (std::fabs(m) >= 3.0 * se && std::fabs(m) > 0.0) {
    out.push_back({Severity::violation, "Assumption 1/5",
                   "mean-zero innovations violated: " + msg.str()});
  } else {
    out.push_back({Severity::info, "Assumption 1/5", "mean-zero check passed: " + msg.str()});
  }
}

}  // namespace

std::vector<Finding> validate_assumptions(const JointModelSpec& spec) {
  std::vector<Finding> out;
  const auto& b = spec.spread.b;
  const auto& beta = spec.vix.beta;
  if (!(b > 0.0 && b < 1.0)) {
    out.push_back({Severity::violation, "Assumption 2",
                   "Assumption 2 violated: b not in (0,1) (b = " + std::to_string(b) + ")"});
  } else {
    out.push_back({Severity::info, "Assumption 2", "b in (0,1)"});
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    out.push_back({Severity::violation, "Assumption 3",
                   "Assumption 3 violated: beta not in (0,1) (beta = " +
                       std::to_string(beta) + ")"});
  } else {
    out.push_back({Severity::info, "Assumption 3", "beta in (0,1)"});
  }

  std::optional<InnovationSampler> sampler;
  try {
    sampler.emplace(spec.innovations);
  } catch (const Error& e) {
    out.push_back({Severity::violation, "Assumption 1/5",
                   std::string("invalid innovation source: ") + e.what()});
    return out;
  }

  std::visit(
      Overloaded{
          [&](const GaussianInnovations& g) {
            out.push_back({Severity::info, "Assumption 1/5",
                           "Gaussian source has mean zero by construction"});
            out.push_back({Severity::info, "Assumption 3",
                           "Gaussian W has a finite MGF everywhere"});
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(g.covariance);
            Eigen::Matrix2d zw;
            zw << g.covariance(1, 1), g.covariance(1, 2), g.covariance(2, 1),
                g.covariance(2, 2);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig2(zw);
            const bool zw_ok = eig2.eigenvalues().minCoeff() >
                               1e-12 * std::max(1e-300, eig2.eigenvalues().maxCoeff());
            const bool all_ok = eig.eigenvalues().minCoeff() >
                                1e-12 * std::max(1e-300, eig.eigenvalues().maxCoeff());
            if (!zw_ok) {
              out.push_back({Severity::warning, "Assumption 4",
                             "(Z, W) covariance is singular: no positive density on R^2"});
            }
            if (spec.returns && !all_ok) {
              out.push_back({Severity::warning, "Assumption 6",
                             "(U, Z, W) covariance is singular: no positive density on R^3"});
            }
          },
          [&](const VgInnovations& vg) {
            const double mean = vg.w.location + vg.w.asymmetry;
            out.push_back({Severity::info, "Assumption 1/5",
                           "variance-gamma W is recentred to mean zero (fitted mean " +
                               std::to_string(mean) + ")"});
            auto rng = make_rng(0x5eedULL, 99);
            std::vector<double> w(200000);
            for (auto& x : w) x = (*sampler)(rng).w;
            probe_mgf(w, out);
            if (vg.sigma_z <= 0.0 || vg.w.scale <= 0.0 || std::fabs(vg.rho_zw) >= 1.0) {
              out.push_back({Severity::warning, "Assumption 4",
                             "degenerate (Z, W) law: no positive density on R^2"});
            }
            if (spec.returns && (vg.sigma_u <= 0.0 || std::fabs(vg.rho_uw) >= 1.0)) {
              out.push_back({Severity::warning, "Assumption 6",
                             "degenerate U: no positive density on R^3"});
            }
          },
          [&](const BootstrapInnovations& boot) {
            std::vector<double> u, z, w;
            for (const auto& row : boot.rows) {
              u.push_back(row.u);
              z.push_back(row.z);
              w.push_back(row.w);
            }
            check_mean_zero(w, "W", out);
            check_mean_zero(z, "Z", out);
            if (spec.returns) check_mean_zero(u, "U", out);
            probe_mgf(w, out);
            out.push_back({Severity::warning, "Assumption 4/6",
                           "positive innovation density is NOT verifiable for an "
                           "empirical bootstrap source (finite support)"});
            if (z.size() >= 8) {
              try {
                const auto jb = jarque_bera(z);
                if (jb.p_value < 0.01) {
                  out.push_back({Severity::warning, "Assumption 2",
                                 "Z normality rejected by Jarque-Bera (p = " +
                                     std::to_string(jb.p_value) + ")"});
                }
              } catch (const Error&) {
              }
            }
            if (spec.returns && u.size() >= 8) {
              try {
                const auto m = moments(u);
                if (m.excess_kurtosis > 3.0) {
                  out.push_back({Severity::warning, "Assumption 5",
                                 "U has heavy tails (excess kurtosis " +
                                     std::to_string(m.excess_kurtosis) +
                                     "); only finite variance is required"});
                }
              } catch (const Error&) {
              }
            }
          },
      },
      spec.innovations);
  return out;
}

// -- convergence diagnostics ---------------------------------------------------

MomentEstimate batch_means(const std::vector<double>& x, std::size_t batches) {
  if (batches < 2 || x.size() < 2 * batches) {
    throw SampleSizeError("batch_means: need at least two observations per batch");
  }
  const std::size_t size = x.size() / batches;
  const std::size_t used = size * batches;
  double total = 0.0;
  for (std::size_t i = 0; i < used; ++i) total += x[i];
  const double mean = total / static_cast<double>(used);
  std::vector<double> bm(batches), bv(batches);
  for (std::size_t k = 0; k < batches; ++k) {
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = k * size; i < (k + 1) * size; ++i) {
      s += x[i];
      s2 += (x[i] - mean) * (x[i] - mean);
    }
    bm[k] = s / static_cast<double>(size);
    bv[k] = s2 / static_cast<double>(size);
  }
  auto se = [batches](const std::vector<double>& v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double y : v) ss += (y - m) * (y - m);
    return std::sqrt(ss / static_cast<double>(batches - 1) / static_cast<double>(batches));
  };
  MomentEstimate out;
  out.mean = mean;
  out.mean_se = se(bm);
  out.variance = mean_of(bv);
  out.variance_se = se(bv);
  return out;
}

namespace {

struct Samples {
  std::vector<double> v, log_v, r, q;

  void append(const SimulationPath& p, std::size_t burn_in) {
    for (std::size_t t = burn_in; t < p.length(); ++t) {
      v.push_back(p.v[t]);
      log_v.push_back(std::log(p.v[t]));
      r.push_back(p.r[t]);
      if (!p.q.empty()) q.push_back(p.q[t]);
    }
  }
};

std::vector<CoordinateKs> ks_by_coordinate(const Samples& a, const Samples& b) {
  std::vector<CoordinateKs> out{{"V", ks_statistic(a.v, b.v)}, {"R", ks_statistic(a.r, b.r)}};
  if (!a.q.empty() && !b.q.empty()) out.push_back({"Q", ks_statistic(a.q, b.q)});
  return out;
}

StationaryMoments summarize(const Samples& s, std::size_t batches) {
  StationaryMoments m;
  m.samples = s.v.size();
  m.batches = batches;
  m.v = batch_means(s.v, batches);
  m.log_v = batch_means(s.log_v, batches);
  m.r = batch_means(s.r, batches);
  if (!s.q.empty()) m.q = batch_means(s.q, batches);
  return m;
}

}  // namespace

std::vector<CoordinateKs> compare_chains(const JointModelSpec& spec, std::size_t steps,
                                         std::size_t burn_in,
                                         const InitialState& start_a,
                                         std::uint64_t seed_a,
                                         const InitialState& start_b,
                                         std::uint64_t seed_b) {
  if (steps <= burn_in) throw SampleSizeError("compare_chains: steps must exceed burn_in");
  Samples a, b;
  a.append(simulate(spec, steps, seed_a, start_a), burn_in);
  b.append(simulate(spec, steps, seed_b, start_b), burn_in);
  return ks_by_coordinate(a, b);
}

ConvergenceReport ergodicity_diagnostic(const JointModelSpec& spec, std::size_t steps,
                                        std::size_t burn_in, std::size_t pairs,
                                        std::uint64_t seed, double threshold) {
  if (steps <= 2 * burn_in) {
    throw SampleSizeError("ergodicity_diagnostic: need steps > 2 * burn_in");
  }
  if (pairs < 1) throw SampleSizeError("ergodicity_diagnostic: need at least one pair");
  InnovationSampler sampler(spec.innovations);
  ConvergenceReport rep;
  rep.threshold = threshold;
  rep.burn_in = burn_in;
  rep.steps = steps;
  rep.pairs = pairs;
  rep.fixed_point = fixed_point(spec);
  const double spread_v = std::exp(3.0 * sampler.w_std());
  rep.high_start = {rep.fixed_point.v * spread_v, rep.fixed_point.r + 10.0, 0.0};
  rep.low_start = {rep.fixed_point.v / spread_v, rep.fixed_point.r - 10.0, 0.0};
  if (!std::isfinite(rep.high_start.r0) || !std::isfinite(rep.high_start.v0)) {
    throw DivergenceError("ergodicity_diagnostic: fixed point is not finite", 0);
  }

  Samples high, low;
  for (std::size_t i = 0; i < pairs; ++i) {
    // Stream ids keep every chain's generator distinct and reproducible.
    const auto seed_hi = make_rng(seed, 2 * i)();
    const auto seed_lo = make_rng(seed, 2 * i + 1)();
    high.append(simulate(spec, steps, seed_hi, rep.high_start), burn_in);
    low.append(simulate(spec, steps, seed_lo, rep.low_start), burn_in);
  }
  rep.ks_distance_by_block = ks_by_coordinate(high, low);
  rep.max_ks = 0.0;
  for (const auto& c : rep.ks_distance_by_block) rep.max_ks = std::max(rep.max_ks, c.ks);
  rep.pass = rep.max_ks < threshold;

  Samples pooled = high;
  pooled.v.insert(pooled.v.end(), low.v.begin(), low.v.end());
  pooled.log_v.insert(pooled.log_v.end(), low.log_v.begin(), low.log_v.end());
  pooled.r.insert(pooled.r.end(), low.r.begin(), low.r.end());
  pooled.q.insert(pooled.q.end(), low.q.begin(), low.q.end());
  // One batch per chain keeps batches from straddling chain boundaries.
  rep.stationary = summarize(pooled, 2 * pairs >= 2 ? 2 * pairs : 2);
  return rep;
}

StationaryMoments stationary_moments(const JointModelSpec& spec, std::size_t steps,
                                     std::size_t burn_in, std::uint64_t seed,
                                     std::size_t batches) {
  if (steps <= burn_in + 1000) {
    throw SampleSizeError("stationary_moments: need steps > burn_in + 1000");
  }
  const auto fp = fixed_point(spec);
  InitialState start{std::isfinite(fp.v) ? fp.v : 1.0,
                     std::isfinite(fp.r) ? fp.r : 0.0, 0.0};
  Samples s;
  s.append(simulate(spec, steps, seed, start), burn_in);
  return summarize(s, batches);
}

// -- construction from fitted models -------------------------------------------

ReturnsDynamics returns_dynamics_from_fit(const ReturnsModelParams& fit) {
  if (!fit.normalized) {
    throw Error("returns dynamics need the VIX-normalized returns fit");
  }
  return {(fit.k + 1.0 / 12.0) / 100.0, fit.duration / 100.0, fit.h, fit.l};
}

BootstrapInnovations bootstrap_from_residuals(const std::vector<double>& u,
                                              const std::vector<double>& z,
                                              const std::vector<double>& w) {
  if (z.size() != w.size() || (!u.empty() && u.size() != w.size())) {
    throw AlignmentError("bootstrap: residual streams have different lengths");
  }
  if (w.empty()) throw SampleSizeError("bootstrap: no residuals");
  BootstrapInnovations b;
  b.rows.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    b.rows[i] = {u.empty() ? 0.0 : u[i], z[i], w[i]};
  }
  return b;
}

JointModelSpec joint_spec_from_fits(const VixModelParams& vix,
                                    const SpreadModelParams& spread,
                                    const ReturnsModelParams* returns,
                                    InnovationSource source) {
  JointModelSpec spec;
  spec.vix = {vix.alpha, vix.beta};
  spec.spread = {spread.a, spread.b, spread.c};
  if (returns) spec.returns = returns_dynamics_from_fit(*returns);
  spec.innovations = std::move(source);
  return spec;
}

// -- export -----------------------------------------------------------------

void write_path_csv(std::ostream& out, const SimulationPath& path) {
  const bool has_q = !path.q.empty();
  out << "t,V,R,Q\n" << std::setprecision(17);
  out << 0 << ',' << path.initial.v0 << ',' << path.initial.r0 << ',';
  if (has_q) out << path.initial.q0;
  out << '\n';
  for (std::size_t t = 0; t < path.length(); ++t) {
    out << t + 1 << ',' << path.v[t] << ',' << path.r[t] << ',';
    if (has_q) out << path.q[t];
    out << '\n';
  }
}

namespace {

nlohmann::json estimate_json(const MomentEstimate& e) {
  return {{"mean", e.mean},
          {"mean_se", e.mean_se},
          {"variance", e.variance},
          {"variance_se", e.variance_se}};
}

}  // namespace

std::string convergence_report_json(const ConvergenceReport& r) {
  nlohmann::json j;
  j["ks_distance_by_block"] = nlohmann::json::object();
  for (const auto& c : r.ks_distance_by_block) j["ks_distance_by_block"][c.coordinate] = c.ks;
  j["max_ks"] = r.max_ks;
  j["threshold"] = r.threshold;
  j["pass"] = r.pass;
  j["burn_in_estimate"] = r.burn_in;
  j["steps"] = r.steps;
  j["pairs"] = r.pairs;
  j["fixed_point"] = {{"V", r.fixed_point.v}, {"R", r.fixed_point.r}, {"Q", r.fixed_point.q}};
  j["high_start"] = {{"V", r.high_start.v0}, {"R", r.high_start.r0}};
  j["low_start"] = {{"V", r.low_start.v0}, {"R", r.low_start.r0}};
  auto& s = j["stationary_moment_estimates"];
  s["samples"] = r.stationary.samples;
  s["batches"] = r.stationary.batches;
  s["V"] = estimate_json(r.stationary.v);
  s["lnV"] = estimate_json(r.stationary.log_v);
  s["R"] = estimate_json(r.stationary.r);
  if (r.stationary.q) s["Q"] = estimate_json(*r.stationary.q);
  return j.dump(2) + "\n";
}

std::string findings_json(const std::vector<Finding>& findings) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : findings) {
    arr.push_back({{"severity", to_string(f.severity)},
                   {"assumption", f.assumption},
                   {"message", f.message}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace vixbond
