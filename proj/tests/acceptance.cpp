// Acceptance suite: one line per criterion, PASS / FAIL / BLOCKED.
//
// Criteria that compare against published numbers need the FRED series as
// <SERIES>.csv files in $VIXBOND_DATA_DIR (default: <source>/data). When
// they are absent those criteria report BLOCKED and the binary exits 77,
// which ctest records as skipped.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "support.hpp"
#include "vixbond/cli.hpp"
#include "vixbond/diagnostics.hpp"
#include "vixbond/errors.hpp"
#include "vixbond/models.hpp"
#include "vixbond/regression.hpp"
#include "vixbond/simulator.hpp"

using namespace vixbond;

namespace {

enum class Status { pass, fail, blocked, excluded };

struct Outcome {
  Status status = Status::pass;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) status = Status::fail;
  }
  void note(const std::string& what) { details.push_back("     " + what); }
  void block(const std::string& why) {
    details.push_back("BLOCKED " + why);
    if (status == Status::pass) status = Status::blocked;
  }
};

std::string num(double v, int p = 4) {
  std::ostringstream s;
  s << std::setprecision(p) << v;
  return s.str();
}

std::string data_dir() {
  if (const char* env = std::getenv("VIXBOND_DATA_DIR")) return env;
  return std::string(VIXBOND_SOURCE_DIR) + "/data";
}

bool have(const std::vector<std::string>& names) {
  for (const auto& n : names) {
    if (!std::filesystem::exists(std::filesystem::path(data_dir()) / (n + ".csv"))) return false;
  }
  return true;
}

std::string missing(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!std::filesystem::exists(std::filesystem::path(data_dir()) / (n + ".csv"))) {
      out += (out.empty() ? "" : ", ") + n;
    }
  }
  return "missing " + out + " in " + data_dir();
}

cli::RunConfig config(cli::Dataset d, cli::Case c) {
  cli::RunConfig cfg;
  cfg.data_dir = data_dir();
  cfg.dataset = d;
  cfg.rate_case = c;
  return cfg;
}

bool within_rel(double x, double target, double rel) {
  return std::fabs(x - target) <= rel * std::fabs(target);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

using Clock = std::chrono::steady_clock;

const std::vector<std::pair<cli::Dataset, cli::Case>> kBofaCells = {
    {cli::Dataset::bofa_quality, cli::Case::yield}, {cli::Dataset::bofa_quality, cli::Case::spread},
    {cli::Dataset::bofa_quality, cli::Case::excess}, {cli::Dataset::bofa_junk, cli::Case::yield},
    {cli::Dataset::bofa_junk, cli::Case::spread},   {cli::Dataset::bofa_junk, cli::Case::excess}};

std::vector<std::string> bofa_series() {
  std::vector<std::string> all;
  for (const auto& [d, c] : kBofaCells) {
    for (const auto& s : cli::required_series(d, c)) {
      if (std::find(all.begin(), all.end(), s) == all.end()) all.push_back(s);
    }
  }
  return all;
}

// -- 1 ----------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  if (!have({cli::series::kVix})) {
    o.block(missing({cli::series::kVix}));
    return o;
  }
  const auto t0 = Clock::now();
  const auto vix = restrict_to(cli::load_series(data_dir(), cli::series::kVix),
                               cli::default_window(cli::Dataset::moodys_aaa));
  const auto fit = fit_vix_ar(vix);
  const double secs = seconds_since(t0);
  const auto m = moments(fit.innovations);
  o.check(std::fabs(fit.alpha - 0.347) <= 0.03, "alpha = " + num(fit.alpha) + " (0.347 +- 0.03)");
  o.check(std::fabs(fit.beta - 0.881) <= 0.02, "beta = " + num(fit.beta) + " (0.881 +- 0.02)");
  o.check(m.skewness >= 1.5 && m.skewness <= 2.5, "W skewness = " + num(m.skewness) + " in [1.5, 2.5]");
  o.check(m.excess_kurtosis >= 7 && m.excess_kurtosis <= 11,
          "W excess kurtosis = " + num(m.excess_kurtosis) + " in [7, 11]");
  o.check(secs < 1.0, "runtime " + num(secs, 3) + " s < 1 s");
  return o;
}

// -- 2 ----------------------------------------------------------------------

Outcome criterion2() {
  Outcome o;
  struct Target {
    cli::Dataset d;
    const char* name;
    double a, bm1, c, corr;
  };
  for (const auto& t : {Target{cli::Dataset::moodys_aaa, "AAA", 0.0258, -0.0654, 0.003, 0.22},
                        Target{cli::Dataset::moodys_baa, "BAA", 0.0487, -0.0822, 0.0069, 0.32}}) {
    const auto need = cli::required_series(t.d, cli::Case::spread);
    if (!have(need)) {
      o.block(std::string(t.name) + ": " + missing(need));
      continue;
    }
    const auto a = cli::analyze(config(t.d, cli::Case::spread));
    o.check(within_rel(a.spread.a, t.a, 0.2), std::string(t.name) + " a = " + num(a.spread.a) + " (" + num(t.a) + " +-20%)");
    o.check(within_rel(a.spread.b - 1, t.bm1, 0.2),
            std::string(t.name) + " b-1 = " + num(a.spread.b - 1) + " (" + num(t.bm1) + " +-20%)");
    o.check(within_rel(a.spread.c, t.c, 0.2), std::string(t.name) + " c = " + num(a.spread.c) + " (" + num(t.c) + " +-20%)");
    o.check(std::fabs(a.z_w_correlation - t.corr) <= 0.06,
            std::string(t.name) + " corr(Z, W) = " + num(a.z_w_correlation) + " (" + num(t.corr) + " +- 0.06)");
  }
  return o;
}

// -- 3 ----------------------------------------------------------------------

Outcome criterion3() {
  Outcome o;
  struct Cell {
    cli::Dataset d;
    cli::Case c;
    const char* name;
    double norm_skew, norm_kurt;
  };
  const std::vector<Cell> cells = {
      {cli::Dataset::moodys_aaa, cli::Case::spread, "AAA spread", -0.151, 1.079},
      {cli::Dataset::moodys_baa, cli::Case::spread, "BAA spread", 0.051, 0.541},
      {cli::Dataset::bofa_quality, cli::Case::yield, "Quality yield", 0.27, 1.23},
      {cli::Dataset::bofa_quality, cli::Case::spread, "Quality spread", 0.43, 4.49},
      {cli::Dataset::bofa_quality, cli::Case::excess, "Quality excess", 0.53, 2.53},
      {cli::Dataset::bofa_junk, cli::Case::yield, "Junk yield", 0.25, 0.84},
      {cli::Dataset::bofa_junk, cli::Case::spread, "Junk spread", 0.43, 0.70},
      {cli::Dataset::bofa_junk, cli::Case::excess, "Junk excess", 0.57, 1.71}};
  for (const auto& c : cells) {
    const auto need = cli::required_series(c.d, c.c);
    if (!have(need)) {
      o.block(std::string(c.name) + ": " + missing(need));
      continue;
    }
    const auto r = cli::analyze(config(c.d, c.c)).spread_residuals;
    o.check(std::fabs(r.normalized.skewness) < std::fabs(r.original.skewness) &&
                r.normalized.excess_kurtosis < r.original.excess_kurtosis,
            std::string(c.name) + ": |skew| " + num(r.original.skewness) + " -> " + num(r.normalized.skewness) +
                ", kurt " + num(r.original.excess_kurtosis) + " -> " + num(r.normalized.excess_kurtosis));
    o.check(std::fabs(r.normalized.skewness - c.norm_skew) <= 0.3 &&
                std::fabs(r.normalized.excess_kurtosis - c.norm_kurt) <= 0.3,
            std::string(c.name) + ": normalized (" + num(r.normalized.skewness) + ", " +
                num(r.normalized.excess_kurtosis) + ") vs (" + num(c.norm_skew) + ", " + num(c.norm_kurt) + ") +- 0.3");
  }
  return o;
}

// -- 4 ----------------------------------------------------------------------

Outcome criterion4() {
  Outcome o;
  const auto need = bofa_series();
  if (!have(need)) {
    o.block(missing(need));
    return o;
  }
  const double target[6] = {50.6, 14.6, 25.8, 94.4, 75.1, 83.8};
  for (std::size_t i = 0; i < kBofaCells.size(); ++i) {
    const auto [d, c] = kBofaCells[i];
    const auto a = cli::analyze(config(d, c));
    const double r2 = 100.0 * a.returns_single->fit.adj_r_squared;
    const double p = a.returns_lagged->fit.p_value("k");
    const std::string label = a.panel.label;
    o.check(std::fabs(r2 - target[i]) <= 3.0, label + ": adj R2 = " + num(r2, 3) + "% (" + num(target[i], 3) + " +- 3)");
    const bool junk_a = d == cli::Dataset::bofa_junk && c == cli::Case::yield;
    o.check(junk_a ? p < 0.01 : p >= 0.01, label + ": p(k=0) = " + num(p, 3) + (junk_a ? " < 0.01" : " >= 0.01"));
  }
  return o;
}

// -- 5 ----------------------------------------------------------------------

Outcome criterion5() {
  Outcome o;
  struct Cell {
    cli::Case c;
    const char* name;
    double lo, hi;
  };
  for (const auto& cell : {Cell{cli::Case::spread, "Quality spread", 0.001, 0.03},
                           Cell{cli::Case::yield, "Quality yield", 0.05, 0.25}}) {
    const auto need = cli::required_series(cli::Dataset::bofa_quality, cell.c);
    if (!have(need)) {
      o.block(std::string(cell.name) + " ADF: " + missing(need));
      continue;
    }
    const auto p = cli::load_dataset(config(cli::Dataset::bofa_quality, cell.c));
    const auto r = adf_test(p.rate.values, 15);
    o.check(r.p_value >= cell.lo && r.p_value <= cell.hi,
            std::string(cell.name) + " ADF(15) p = " + num(r.p_value, 3) + " in [" + num(cell.lo) + ", " +
                num(cell.hi) + "]");
  }

  // Size: random walks, n = 500, 15 lags, 500 seeds.
  int rejections = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    std::mt19937_64 rng(10000 + s);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> x(500);
    double w = 0.0;
    for (auto& v : x) v = w += g(rng);
    if (adf_test(x, 15).p_value < 0.05) ++rejections;
  }
  o.check(rejections / 500.0 <= 0.08, "size: random-walk rejection rate at 5% = " + num(rejections / 5.0, 3) + "% <= 8%");

  // Power: AR(1) with b = 0.2, n = 2000.
  int power = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(20000 + s);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> x(2000);
    double a = 0.0;
    for (auto& v : x) v = a = 0.2 * a + g(rng);
    if (adf_test(x, 15).p_value < 0.01) ++power;
  }
  o.check(power >= 0.9 * seeds, "power: AR(0.2) p < 0.01 in " + num(100.0 * power / seeds, 3) + "% of seeds >= 90%");
  return o;
}

// -- 6 ----------------------------------------------------------------------

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(606);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> kdist(1, 5);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t k = kdist(rng);
    const std::size_t n = k + 3 + static_cast<std::size_t>(rep % 25);
    std::vector<std::vector<double>> cols(k, std::vector<double>(n));
    std::vector<std::string> names;
    for (std::size_t j = 0; j < k; ++j) {
      names.push_back("x" + std::to_string(j));
      for (auto& v : cols[j]) v = (j == 0 && rep % 2 == 0) ? 1.0 : g(rng);
    }
    std::vector<double> y(n);
    for (auto& v : y) v = g(rng) + (k > 1 ? 0.5 * cols[1][&v - y.data()] : 0.0);
    const auto f = ols(DesignMatrix::from_columns(cols, names), y);
    const auto ne = testing::normal_equations(cols, y);
    for (std::size_t j = 0; j < k; ++j) {
      worst = std::max(worst, std::fabs(f.coefficients[j] - ne.beta[j]));
      worst = std::max(worst, std::fabs(f.standard_errors[j] - ne.se[j]));
    }
  }
  o.check(worst < 1e-8, "OLS vs normal equations, 100 random designs: max |diff| = " + num(worst, 3));

  double acf_err = 0.0, lb_err = 0.0, mom_err = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(40 + rep * 7);
    double prev = 0.0;
    for (auto& v : x) v = prev = 0.5 * prev + std::exp(0.3 * g(rng));
    const auto a = acf(x, 8);
    const auto oa = testing::direct_acf(x, 8);
    for (std::size_t l = 0; l <= 8; ++l) acf_err = std::max(acf_err, std::fabs(a.values[l] - oa[l]));
    const double q = testing::direct_ljung_box(x, 8);
    lb_err = std::max(lb_err, std::fabs(ljung_box(x, 8).statistic - q) / std::max(1.0, q));
    const auto m = moments(x);
    const auto om = testing::direct_moments(x);
    mom_err = std::max({mom_err, std::fabs(m.mean - om[0]), std::fabs(m.std - om[1]),
                        std::fabs(m.skewness - om[2]), std::fabs(m.excess_kurtosis - om[3])});
  }
  o.check(acf_err < 1e-10, "ACF vs double loop: max |diff| = " + num(acf_err, 3));
  o.check(lb_err < 1e-10, "Ljung-Box vs direct sum: max rel diff = " + num(lb_err, 3));
  o.check(mom_err < 1e-10, "moments vs direct sums: max |diff| = " + num(mom_err, 3));

  double t_err = 0.0;
  for (double t : {0.1, 0.5, 1.0, 1.7, 2.5, 3.3, 5.0}) {
    for (long dof : {1L, 2L, 5L, 10L, 30L, 100L, 400L}) {
      t_err = std::max(t_err, std::fabs(t_test_pvalue(t, dof) - testing::t_pvalue_quadrature(t, dof, 200000)));
    }
  }
  o.check(t_err < 1e-6, "Student-t p-values vs Simpson quadrature: max |diff| = " + num(t_err, 3));
  return o;
}

// -- 7 ----------------------------------------------------------------------

JointModelSpec reference_spec() {
  // Published Moody's AAA coefficients; innovation scales are assumptions.
  JointModelSpec s;
  s.vix = {0.347, 0.881};
  s.spread = {0.0258, 1 - 0.0654, 0.003};
  GaussianInnovations g;
  const double sz = 0.0065, sw = 0.18, rho = 0.22;
  g.covariance << 0, 0, 0, 0, sz * sz, rho * sz * sw, 0, rho * sz * sw, sw * sw;
  s.innovations = g;
  return s;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  auto spec = reference_spec();
  auto quiet = spec;
  quiet.innovations = GaussianInnovations{};
  const auto fp = fixed_point(quiet);
  const auto path = simulate(quiet, 3000, 1, {3.0, -5.0, 0.0});
  double lv = std::log(3.0), r = -5.0;
  for (int i = 0; i < 200000; ++i) lv = spec.vix.alpha + spec.vix.beta * lv;
  const double v_star = std::exp(lv);
  for (int i = 0; i < 200000; ++i) r = spec.spread.a + spec.spread.b * r + spec.spread.c * v_star;
  o.check(std::fabs(fp.v - v_star) < 1e-8 && std::fabs(path.v.back() - v_star) < 1e-8,
          "V* = " + num(fp.v, 10) + ", iterated " + num(v_star, 10) + ", simulated " + num(path.v.back(), 10));
  o.check(std::fabs(fp.r - r) < 1e-8 && std::fabs(path.r.back() - r) < 1e-8,
          "R* = " + num(fp.r, 10) + ", iterated " + num(r, 10) + ", simulated " + num(path.r.back(), 10));

  const auto m = stationary_moments(spec, 100000, 1000, 7);
  const double mu = spec.vix.alpha / (1 - spec.vix.beta);
  const double s2 = 0.18 * 0.18 / (1 - spec.vix.beta * spec.vix.beta);
  o.check(std::fabs(m.log_v.mean - mu) < 3 * m.log_v.mean_se,
          "E[ln V] = " + num(m.log_v.mean) + " vs " + num(mu) + " (SE " + num(m.log_v.mean_se, 2) + ")");
  o.check(std::fabs(m.log_v.variance - s2) < 3 * m.log_v.variance_se,
          "Var[ln V] = " + num(m.log_v.variance) + " vs " + num(s2) + " (SE " + num(m.log_v.variance_se, 2) + ")");
  const double ev = std::exp(mu + s2 / 2);
  o.check(std::fabs(m.v.mean - ev) < 3 * m.v.mean_se,
          "E[V] = " + num(m.v.mean) + " vs lognormal " + num(ev) + " (SE " + num(m.v.mean_se, 2) + ")");
  const double secs = seconds_since(t0);
  o.check(secs < 30.0, "runtime " + num(secs, 3) + " s < 30 s");
  return o;
}

// -- 8 ----------------------------------------------------------------------

Outcome criterion8() {
  Outcome o;
  const auto need = cli::required_series(cli::Dataset::moodys_aaa, cli::Case::spread);
  if (have(need)) {
    const auto a = cli::analyze(config(cli::Dataset::moodys_aaa, cli::Case::spread));
    const auto spec = joint_spec_from_fits(a.vix, a.spread, nullptr,
                                           bootstrap_from_residuals({}, a.spread.residuals, a.vix.innovations));
    const auto rep = ergodicity_diagnostic(spec, 20000, 2000, 5, 1);
    o.check(rep.pass, "fitted AAA spec (bootstrap innovations): max KS = " + num(rep.max_ks, 3) + " < 0.05");
  } else {
    o.block("fitted AAA spec: " + missing(need));
    const auto rep = ergodicity_diagnostic(reference_spec(), 20000, 2000, 5, 1);
    o.note("reference spec from published AAA coefficients with assumed Gaussian innovation scales: max KS = " +
           num(rep.max_ks, 3) + (rep.pass ? " (passes)" : " (fails)"));
  }

  auto explosive = reference_spec();
  explosive.spread.b = 1.001;
  std::string how;
  bool failed = false;
  try {
    const auto rep = ergodicity_diagnostic(explosive, 20000, 2000, 5, 1);
    failed = !rep.pass;
    how = "max KS = " + num(rep.max_ks, 3);
  } catch (const DivergenceError& e) {
    failed = true;
    how = std::string("divergence: ") + e.what();
  }
  o.check(failed, "explosive spec (b = 1.001) fails: " + how);

  auto spec = reference_spec();
  spec.returns = ReturnsDynamics{0.001, 0.05, 0.0001, 0.0};
  const InitialState start{20.0, 1.0, 0.0};
  const auto p1 = simulate(spec, 20000, 123, start);
  const auto p2 = simulate(spec, 20000, 123, start);
  const bool same = std::memcmp(p1.v.data(), p2.v.data(), p1.v.size() * sizeof(double)) == 0 &&
                    std::memcmp(p1.r.data(), p2.r.data(), p1.r.size() * sizeof(double)) == 0 &&
                    std::memcmp(p1.q.data(), p2.q.data(), p1.q.size() * sizeof(double)) == 0;
  o.check(same, "bitwise-identical replay for identical seeds");
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "VIX log-AR(1) fit and innovation moments", criterion1},
      {2, "Moody's normalized spread models and Z-W correlation", criterion2},
      {3, "normalization improves residual skewness and kurtosis on 8 datasets", criterion3},
      {4, "returns regression adjusted R^2 and k = 0 tests", criterion4},
      {5, "ADF p-values on data, size and power by simulation", criterion5},
      {6, "oracle equivalence for OLS, ACF, Ljung-Box, moments and t p-values", criterion6},
      {7, "simulator fixed points and stationary moments", criterion7},
      {8, "ergodicity diagnostic and deterministic replay", criterion8},
      {9, "theorems, total-variation rates and Shapiro-Wilk", nullptr},
  };
  int failed = 0, blocked = 0;
  for (const auto& e : entries) {
    Outcome o;
    if (!e.run) {
      o.status = Status::excluded;
      o.note("excluded: not reproducible as a computation; covered only through criteria 7 and 8");
    } else {
      try {
        o = e.run();
      } catch (const std::exception& ex) {
        o.status = Status::fail;
        o.details.push_back(std::string("FAIL exception: ") + ex.what());
      }
    }
    const char* tag = o.status == Status::pass      ? "PASS"
                      : o.status == Status::fail    ? "FAIL"
                      : o.status == Status::blocked ? "BLOCKED"
                                                    : "N/A";
    std::cout << "[" << tag << "] criterion " << e.id << ": " << e.title << "\n";
    for (const auto& d : o.details) std::cout << "    " << d << "\n";
    std::cout.flush();
    failed += o.status == Status::fail;
    blocked += o.status == Status::blocked;
  }
  std::cout << "summary: " << failed << " failed, " << blocked << " blocked\n";
  if (failed) return 1;
  return blocked ? 77 : 0;
}
