#ifndef VIXBOND_CLI_HPP_
#define VIXBOND_CLI_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vixbond/diagnostics.hpp"
#include "vixbond/ingest.hpp"
#include "vixbond/models.hpp"
#include "vixbond/simulator.hpp"

namespace vixbond::cli {

enum class Dataset { moodys_aaa, moodys_baa, bofa_quality, bofa_junk };
enum class Case { yield, spread, excess };

Dataset dataset_from_string(const std::string& s);
Case case_from_string(const std::string& s);
const char* to_string(Dataset d);
const char* to_string(Case c);
bool is_bofa(Dataset d);

/// FRED series names used for ingestion.
namespace series {
inline constexpr const char* kVix = "VIXCLS";
inline constexpr const char* kBill = "TB3MS";
inline constexpr const char* kAaa = "AAA10Y";
inline constexpr const char* kBaa = "BAA10Y";
inline constexpr const char* kQualityYield = "BAMLC0A0CMEY";
inline constexpr const char* kQualitySpread = "BAMLC0A0CM";
inline constexpr const char* kQualityIndex = "BAMLCC0A0CMTRIV";
inline constexpr const char* kJunkYield = "BAMLH0A0HYM2EY";
inline constexpr const char* kJunkSpread = "BAMLH0A0HYM2";
inline constexpr const char* kJunkIndex = "BAMLHYH0A0HYM2TRIV";
}  // namespace series

/// Series files (`<SERIES>.csv`) a dataset/case needs.
std::vector<std::string> required_series(Dataset d, Case c);

/// Default sample windows: Jan 1986 - Aug 2024 (Moody's) and
/// Dec 1996 - Mar 2024 (BofA).
MonthRange default_window(Dataset d);

struct RunConfig {
  std::string data_dir = "data";
  Dataset dataset = Dataset::moodys_aaa;
  Case rate_case = Case::spread;
  std::optional<MonthRange> window;
  std::string output = "out";
  std::uint64_t seed = 1;
  bool force = false;
  std::size_t adf_lags = 15;
};

/// "YYYY-MM:YYYY-MM" or "YYYY-MM..YYYY-MM".
MonthRange parse_window(const std::string& text);

/// Rate and VIX over the window, plus (BofA only) the returns panel:
/// Q (returns for the yield case, premia otherwise), R and V aligned.
struct DatasetPanel {
  std::string label;  // e.g. "bofa_junk_spread"
  MonthlySeries rate;
  MonthlySeries vix;
  std::optional<MonthlySeries> returns;
  std::optional<MonthlySeries> returns_rate;
  std::optional<MonthlySeries> returns_vix;
};

DatasetPanel load_dataset(const RunConfig& config);

/// Loads one FRED file by series name with its monthly rule.
MonthlySeries load_series(const std::string& data_dir, const std::string& name);

/// Everything the paper-style tables read from one dataset/case.
struct DatasetAnalysis {
  DatasetPanel panel;
  VixModelParams vix;
  RawArFit raw;
  SpreadModelParams spread;
  ResidualComparison spread_residuals;
  TestResult adf;
  double z_w_correlation = 0.0;
  // BofA only.
  std::optional<ReturnsModelParams> returns_single;
  std::optional<ReturnsModelParams> returns_lagged;
  std::optional<ReturnsModelParams> unnormalized_single;
  std::optional<ResidualComparison> returns_residuals;
};

DatasetAnalysis analyze(const RunConfig& config);

/// Renders a double for tables; "nan" for non-finite values.
std::string fixed(double v, int decimals);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_string() const;
};

/// Tables mirroring the BofA autoregression, normalized regression,
/// returns R^2 and returns residual tables, keyed by dataset/case.
CsvTable table1(const std::vector<DatasetAnalysis>& cells);
CsvTable table2(const std::vector<DatasetAnalysis>& cells);
CsvTable table3(const std::vector<DatasetAnalysis>& cells);
CsvTable table4(const std::vector<DatasetAnalysis>& cells);

struct FitSummary {
  DatasetAnalysis analysis;
  std::vector<std::string> files;
  CsvTable summary;
};

FitSummary cmd_fit(const RunConfig& config);

struct DiagnoseResult {
  DatasetAnalysis analysis;
  std::vector<TestResult> tests;
  CsvTable moments_table;
  std::vector<std::string> files;
};

DiagnoseResult cmd_diagnose(const RunConfig& config);

enum class InnovationKind { bootstrap, gaussian, variance_gamma };
InnovationKind innovation_kind_from_string(const std::string& s);

struct SimulateOptions {
  std::size_t steps = 5000;
  std::size_t paths = 1;
  std::optional<std::size_t> burn_in;
  std::size_t pairs = 5;
  std::optional<std::string> spec_file;             // inline spec instead of fitting
  std::map<std::string, double> overrides;         // alpha, beta, a, b, c, k, m, h, l
  InnovationKind innovations = InnovationKind::bootstrap;
  bool with_returns = true;                         // BofA datasets only
};

/// Thrown when validation finds a violation and --force is absent.
class AssumptionViolation : public Error {
 public:
  AssumptionViolation(const std::string& msg, std::vector<Finding> findings)
      : Error(msg), findings_(std::move(findings)) {}
  const std::vector<Finding>& findings() const { return findings_; }

 private:
  std::vector<Finding> findings_;
};

struct SimulateResult {
  JointModelSpec spec;
  std::vector<Finding> findings;
  std::vector<SimulationPath> paths;
  ConvergenceReport report;
  std::vector<std::string> files;
};

SimulateResult cmd_simulate(const RunConfig& config, const SimulateOptions& options);

/// Parses an inline joint-model spec (see README for the schema).
JointModelSpec spec_from_json(const std::string& text);
std::string spec_to_json(const JointModelSpec& spec);
void apply_overrides(JointModelSpec& spec, const std::map<std::string, double>& overrides);

struct ReportResult {
  std::vector<DatasetAnalysis> cells;
  std::vector<std::string> files;
};

/// Fits all six BofA dataset/case cells and writes table1.csv..table4.csv.
ReportResult cmd_report(const RunConfig& config);

/// Entry point used by the executable; returns the process exit code.
int run(int argc, char** argv);

}  // namespace vixbond::cli

#endif  // VIXBOND_CLI_HPP_
