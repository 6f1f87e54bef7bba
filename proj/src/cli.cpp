#include "vixbond/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vixbond/errors.hpp"
#include "vixbond/model_io.hpp"

namespace vixbond::cli {

namespace fs = std::filesystem;

Dataset dataset_from_string(const std::string& s) {
  if (s == "moodys_aaa") return Dataset::moodys_aaa;
  if (s == "moodys_baa") return Dataset::moodys_baa;
  if (s == "bofa_quality") return Dataset::bofa_quality;
  if (s == "bofa_junk") return Dataset::bofa_junk;
  throw Error("unknown dataset '" + s +
              "' (expected moodys_aaa, moodys_baa, bofa_quality, bofa_junk)");
}

Case case_from_string(const std::string& s) {
  if (s == "yield") return Case::yield;
  if (s == "spread") return Case::spread;
  if (s == "excess") return Case::excess;
  throw Error("unknown case '" + s + "' (expected yield, spread, excess)");
}

const char* to_string(Dataset d) {
  switch (d) {
    case Dataset::moodys_aaa: return "moodys_aaa";
    case Dataset::moodys_baa: return "moodys_baa";
    case Dataset::bofa_quality: return "bofa_quality";
    case Dataset::bofa_junk: return "bofa_junk";
  }
  return "unknown";
}

const char* to_string(Case c) {
  switch (c) {
    case Case::yield: return "yield";
    case Case::spread: return "spread";
    case Case::excess: return "excess";
  }
  return "unknown";
}

bool is_bofa(Dataset d) { return d == Dataset::bofa_quality || d == Dataset::bofa_junk; }

namespace {

struct BofaNames {
  const char* yield;
  const char* spread;
  const char* index;
};

BofaNames bofa_names(Dataset d) {
  if (d == Dataset::bofa_quality) {
    return {series::kQualityYield, series::kQualitySpread, series::kQualityIndex};
  }
  return {series::kJunkYield, series::kJunkSpread, series::kJunkIndex};
}

std::string label_of(const RunConfig& c) {
  std::string label = to_string(c.dataset);
  if (is_bofa(c.dataset)) label += std::string("_") + to_string(c.rate_case);
  return label;
}

std::string write_text(const std::string& dir, const std::string& name,
                       const std::string& text) {
  fs::create_directories(dir);
  const auto path = (fs::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  return path;
}

void log_run(const std::string& dir, const std::string& what) {
  fs::create_directories(dir);
  std::ofstream log((fs::path(dir) / "run.log").string(), std::ios::app);
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  log << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << ' ' << what << '\n';
}

MonthlySeries window_cut(const MonthlySeries& s, const MonthRange& w) {
  return restrict_to(s, w);
}

}  // namespace

std::vector<std::string> required_series(Dataset d, Case c) {
  switch (d) {
    case Dataset::moodys_aaa: return {series::kAaa, series::kVix};
    case Dataset::moodys_baa: return {series::kBaa, series::kVix};
    default: break;
  }
  const auto names = bofa_names(d);
  std::vector<std::string> out{series::kVix, names.index};
  if (c == Case::yield) {
    out.push_back(names.yield);
  } else if (c == Case::spread) {
    out.push_back(names.spread);
    out.push_back(series::kBill);
  } else {
    out.push_back(names.yield);
    out.push_back(series::kBill);
  }
  return out;
}

MonthRange default_window(Dataset d) {
  if (is_bofa(d)) return {{1996, 12}, {2024, 3}};
  return {{1986, 1}, {2024, 8}};
}

MonthRange parse_window(const std::string& text) {
  auto sep = text.find(':');
  std::size_t skip = 1;
  if (sep == std::string::npos) {
    sep = text.find("..");
    skip = 2;
  }
  if (sep == std::string::npos) {
    throw ParseError("window must be YYYY-MM:YYYY-MM, got '" + text + "'", 0);
  }
  MonthRange r{YearMonth::parse(text.substr(0, sep)),
               YearMonth::parse(text.substr(sep + skip))};
  if (r.last < r.first) throw ParseError("window end precedes start: '" + text + "'", 0);
  return r;
}

MonthlySeries load_series(const std::string& data_dir, const std::string& name) {
  const auto path = (fs::path(data_dir) / (name + ".csv")).string();
  auto [header_name, records] = read_fred_file(path);
  const auto rule = name == series::kVix ? MonthlyRule::monthly_average
                                         : MonthlyRule::end_of_month;
  return to_monthly(records, rule, name);
}

DatasetPanel load_dataset(const RunConfig& config) {
  if (!is_bofa(config.dataset) && config.rate_case != Case::spread) {
    throw Error(std::string("dataset ") + to_string(config.dataset) +
                " only has the spread case");
  }
  std::vector<std::string> missing;
  for (const auto& name : required_series(config.dataset, config.rate_case)) {
    if (!fs::exists(fs::path(config.data_dir) / (name + ".csv"))) missing.push_back(name);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw IoError("missing series in '" + config.data_dir + "': " + list +
                  " (expected <SERIES>.csv files)");
  }

  const auto window = config.window.value_or(default_window(config.dataset));
  auto load = [&](const std::string& name) {
    return window_cut(load_series(config.data_dir, name), window);
  };

  DatasetPanel panel;
  panel.label = label_of(config);
  auto vix = load(series::kVix);

  if (!is_bofa(config.dataset)) {
    auto rate = load(config.dataset == Dataset::moodys_aaa ? series::kAaa : series::kBaa);
    auto aligned = align({rate, vix});
    panel.rate = aligned.at(rate.name);
    panel.vix = aligned.at(vix.name);
    return panel;
  }

  const auto names = bofa_names(config.dataset);
  std::optional<MonthlySeries> bill;
  if (config.rate_case != Case::yield) bill = load(series::kBill);

  MonthlySeries rate;
  if (config.rate_case == Case::yield) {
    rate = load(names.yield);
  } else if (config.rate_case == Case::spread) {
    rate = load(names.spread);
  } else {
    auto yld = load(names.yield);
    auto p = align({yld, *bill});
    rate = derive_difference(p.at(yld.name), p.at(bill->name),
                             std::string(names.yield) + "-" + series::kBill);
  }
  auto aligned = align({rate, vix});
  panel.rate = aligned.at(rate.name);
  panel.vix = aligned.at(vix.name);

  auto index = load(names.index);
  auto q = derive_log_returns(index, std::string(names.index) + "_logret");
  if (bill) {
    auto accrual = derive_monthly_accrual(*bill, std::string(series::kBill) + "_accrual");
    auto p = align({q, accrual});
    q = derive_difference(p.at(q.name), p.at(accrual.name),
                          std::string(names.index) + "_premia");
  }
  auto rp = align({q, panel.rate, panel.vix});
  panel.returns = rp.at(q.name);
  panel.returns_rate = rp.at(panel.rate.name);
  panel.returns_vix = rp.at(panel.vix.name);
  return panel;
}

DatasetAnalysis analyze(const RunConfig& config) {
  DatasetAnalysis out;
  out.panel = load_dataset(config);
  const auto& p = out.panel;
  out.vix = fit_vix_ar(p.vix);
  out.raw = fit_raw_ar(p.rate);
  out.spread = fit_spread_model(p.rate, p.vix);
  const auto v_lagged = lagged_window(p.vix);
  out.spread_residuals =
      compare_residuals(out.raw.residuals, v_lagged, out.spread.residuals);
  out.adf = adf_test(p.rate.values, config.adf_lags);
  out.z_w_correlation = correlation(out.spread.residuals, out.vix.innovations);
  if (p.returns) {
    out.returns_single =
        fit_returns_model(*p.returns, *p.returns_rate, *p.returns_vix, ReturnsVariant::single);
    out.returns_lagged = fit_returns_model(*p.returns, *p.returns_rate, *p.returns_vix,
                                           ReturnsVariant::with_lagged_rate);
    out.unnormalized_single =
        fit_unnormalized_returns_model(*p.returns, *p.returns_rate, ReturnsVariant::single);
    out.returns_residuals =
        compare_residuals(out.unnormalized_single->residuals,
                          lagged_window(*p.returns_vix), out.returns_single->residuals);
  }
  return out;
}

std::string fixed(double v, int decimals) {
  if (!std::isfinite(v)) return "nan";
  std::ostringstream s;
  s << std::fixed << std::setprecision(decimals) << v;
  auto text = s.str();
  // Avoid "-0.000".
  if (text.find_first_not_of("-0.") == std::string::npos && text[0] == '-') {
    text.erase(0, 1);
  }
  return text;
}

std::string CsvTable::to_string() const {
  auto quote = [](const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string q = "\"";
    for (char ch : cell) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << quote(cells[i]);
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

namespace {

std::string column_name(const DatasetAnalysis& a) {
  const auto& l = a.panel.label;
  std::string rating = l.rfind("bofa_quality", 0) == 0 ? "Quality"
                       : l.rfind("bofa_junk", 0) == 0  ? "Junk"
                       : l == "moodys_aaa"              ? "AAA"
                                                        : "BAA";
  const auto us = l.rfind('_');
  if (rating == "Quality" || rating == "Junk") {
    auto c = l.substr(us + 1);
    c[0] = static_cast<char>(std::toupper(c[0]));
    return rating + " " + c;
  }
  return rating + " Spread";
}

std::string case_row_name(const DatasetAnalysis& a) {
  const auto& l = a.panel.label;
  const std::string rating = l.rfind("bofa_quality", 0) == 0 ? "Quality" : "Junk";
  const auto c = l.substr(l.rfind('_') + 1);
  const char* letter = c == "yield" ? "(a)" : c == "spread" ? "(b)" : "(c)";
  return rating + " " + letter;
}

using Getter = std::function<double(const DatasetAnalysis&)>;

std::vector<std::string> row(const std::string& name, const std::vector<DatasetAnalysis>& cells,
                             const Getter& get, int decimals, const std::string& provenance) {
  std::vector<std::string> r{name};
  for (const auto& c : cells) r.push_back(fixed(get(c), decimals));
  r.push_back(provenance);
  return r;
}

std::vector<std::string> header_for(const std::vector<DatasetAnalysis>& cells) {
  std::vector<std::string> h{"statistic"};
  for (const auto& c : cells) h.push_back(column_name(c));
  h.push_back("provenance");
  return h;
}

const ReturnsModelParams& need(const std::optional<ReturnsModelParams>& m,
                               const DatasetAnalysis& a) {
  if (!m) throw Error("dataset '" + a.panel.label + "' has no returns model");
  return *m;
}

}  // namespace

CsvTable table1(const std::vector<DatasetAnalysis>& cells) {
  CsvTable t;
  t.header = header_for(cells);
  t.rows.push_back(row("Regression slope b-1", cells,
                       [](const auto& a) { return a.raw.b - 1.0; }, 3,
                       "fit_raw_ar:b_minus_1"));
  t.rows.push_back(row("Regression intercept a", cells,
                       [](const auto& a) { return a.raw.a; }, 3, "fit_raw_ar:a"));
  t.rows.push_back(row("Student t-test p-value", cells,
                       [](const auto& a) { return a.raw.fit.p_value("b_minus_1"); }, 3,
                       "fit_raw_ar:p_value(b_minus_1)"));
  t.rows.push_back(row("ADF test p-value", cells,
                       [](const auto& a) { return a.adf.p_value; }, 3,
                       "adf_test:p_value"));
  t.rows.push_back(row("Original residuals skewness", cells,
                       [](const auto& a) { return a.spread_residuals.original.skewness; }, 2,
                       "moments(eps):skewness"));
  t.rows.push_back(row("Normalized residuals skewness", cells,
                       [](const auto& a) { return a.spread_residuals.normalized.skewness; },
                       2, "moments(eps/V):skewness"));
  t.rows.push_back(row("Original residuals kurtosis", cells,
                       [](const auto& a) {
                         return a.spread_residuals.original.excess_kurtosis;
                       },
                       2, "moments(eps):excess_kurtosis"));
  t.rows.push_back(row("Normalized residuals kurtosis", cells,
                       [](const auto& a) {
                         return a.spread_residuals.normalized.excess_kurtosis;
                       },
                       2, "moments(eps/V):excess_kurtosis"));
  return t;
}

CsvTable table2(const std::vector<DatasetAnalysis>& cells) {
  CsvTable t;
  t.header = header_for(cells);
  t.rows.push_back(row("Regression intercept a", cells,
                       [](const auto& a) { return a.spread.a; }, 4, "fit_spread_model:a"));
  t.rows.push_back(row("Regression slope b-1", cells,
                       [](const auto& a) { return a.spread.b - 1.0; }, 4,
                       "fit_spread_model:b_minus_1"));
  t.rows.push_back(row("Volatility coefficient c", cells,
                       [](const auto& a) { return a.spread.c; }, 4, "fit_spread_model:c"));
  for (const char* name : {"a", "b_minus_1", "c"}) {
    const std::string label = std::string("Value p for ") +
                              (std::string(name) == "b_minus_1" ? "b - 1" : name);
    t.rows.push_back(row(label, cells,
                         [name](const auto& a) { return a.spread.fit.p_value(name); }, 3,
                         std::string("fit_spread_model:p_value(") + name + ")"));
  }
  t.rows.push_back(row("Value R^2", cells,
                       [](const auto& a) { return a.spread.fit.r_squared; }, 3,
                       "fit_spread_model:r_squared"));
  t.rows.push_back(row("Residuals skewness", cells,
                       [](const auto& a) { return a.spread_residuals.refit.skewness; }, 3,
                       "moments(Z):skewness"));
  t.rows.push_back(row("Residuals kurtosis", cells,
                       [](const auto& a) { return a.spread_residuals.refit.excess_kurtosis; },
                       3, "moments(Z):excess_kurtosis"));
  return t;
}

CsvTable table3(const std::vector<DatasetAnalysis>& cells) {
  CsvTable t;
  t.header = {"case",
              "Quality R2 single (%)",
              "Quality R2 with_lagged_rate (%)",
              "Quality p for k=0 (%)",
              "Junk R2 single (%)",
              "Junk R2 with_lagged_rate (%)",
              "Junk p for k=0 (%)",
              "provenance"};
  for (const char* c : {"yield", "spread", "excess"}) {
    const char* letter = std::string(c) == "yield" ? "Case (a)"
                         : std::string(c) == "spread" ? "Case (b)"
                                                      : "Case (c)";
    std::vector<std::string> r{letter};
    for (const char* rating : {"bofa_quality_", "bofa_junk_"}) {
      const auto label = std::string(rating) + c;
      auto it = std::find_if(cells.begin(), cells.end(),
                             [&](const auto& a) { return a.panel.label == label; });
      if (it == cells.end()) {
        r.insert(r.end(), {"", "", ""});
        continue;
      }
      const auto& single = need(it->returns_single, *it);
      const auto& lagged = need(it->returns_lagged, *it);
      r.push_back(fixed(100.0 * single.fit.adj_r_squared, 1));
      r.push_back(fixed(100.0 * lagged.fit.adj_r_squared, 1));
      r.push_back(fixed(100.0 * lagged.fit.p_value("k"), 1));
    }
    r.push_back("fit_returns_model:adj_r_squared,p_value(k)");
    t.rows.push_back(r);
  }
  return t;
}

CsvTable table4(const std::vector<DatasetAnalysis>& cells) {
  CsvTable t;
  t.header = {"case",           "skewness delta", "skewness delta/V", "skewness delta'",
              "kurtosis delta", "kurtosis delta/V", "kurtosis delta'", "provenance"};
  for (const auto& a : cells) {
    if (!a.returns_residuals) continue;
    const auto& rc = *a.returns_residuals;
    t.rows.push_back({case_row_name(a), fixed(rc.original.skewness, 3),
                      fixed(rc.normalized.skewness, 3), fixed(rc.refit.skewness, 3),
                      fixed(rc.original.excess_kurtosis, 2),
                      fixed(rc.normalized.excess_kurtosis, 2),
                      fixed(rc.refit.excess_kurtosis, 2),
                      "compare_residuals(unnormalized single, V, normalized single)"});
  }
  return t;
}

namespace {

void add_fit_rows(CsvTable& t, const std::string& model, const OlsFit& f) {
  for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
    t.rows.push_back({model, f.names[i], fixed(f.coefficients[i], 6),
                      fixed(f.standard_errors[i], 6), fixed(f.t_stats[i], 3),
                      fixed(f.p_values[i], 3)});
  }
  t.rows.push_back({model, "r_squared", fixed(f.r_squared, 4), "", "", ""});
  t.rows.push_back({model, "adj_r_squared", fixed(f.adj_r_squared, 4), "", "", ""});
  t.rows.push_back({model, "nobs", std::to_string(f.n), "", "", ""});
}

void add_moment_rows(CsvTable& t, const std::string& model, const MomentSummary& m) {
  t.rows.push_back({model, "residual_skewness", fixed(m.skewness, 4), "", "", ""});
  t.rows.push_back({model, "residual_excess_kurtosis", fixed(m.excess_kurtosis, 4), "", "",
                    ""});
}

template <class M>
std::string save_with_window(const std::string& dir, const std::string& name, M model) {
  fs::create_directories(dir);
  const auto path = (fs::path(dir) / name).string();
  save_model(AnyModel(std::move(model)), path);
  return path;
}

}  // namespace

FitSummary cmd_fit(const RunConfig& config) {
  FitSummary out;
  out.analysis = analyze(config);
  const auto& a = out.analysis;
  const auto& label = a.panel.label;
  const auto& dir = config.output;

  out.files.push_back(save_with_window(dir, label + "_vix.json", a.vix));
  out.files.push_back(save_with_window(dir, label + "_spread.json", a.spread));
  if (a.returns_single) {
    out.files.push_back(
        save_with_window(dir, label + "_returns_single.json", *a.returns_single));
    out.files.push_back(save_with_window(dir, label + "_returns_with_lagged_rate.json",
                                         *a.returns_lagged));
  }

  auto& t = out.summary;
  t.header = {"model", "parameter", "estimate", "std_error", "t_stat", "p_value"};
  add_fit_rows(t, "vix_ar", a.vix.fit);
  add_moment_rows(t, "vix_ar", moments(a.vix.innovations));
  add_fit_rows(t, "raw_ar", a.raw.fit);
  add_moment_rows(t, "raw_ar", a.spread_residuals.original);
  add_fit_rows(t, "spread", a.spread.fit);
  t.rows.push_back({"spread", "b", fixed(a.spread.b, 6), "", "", ""});
  add_moment_rows(t, "spread", a.spread_residuals.refit);
  t.rows.push_back({"spread", "corr_Z_W", fixed(a.z_w_correlation, 4), "", "", ""});
  if (a.returns_single) {
    add_fit_rows(t, "returns_single", a.returns_single->fit);
    add_fit_rows(t, "returns_with_lagged_rate", a.returns_lagged->fit);
  }
  out.files.push_back(write_text(dir, label + "_fit_summary.csv", t.to_string()));
  log_run(dir, "fit " + label);
  return out;
}

DiagnoseResult cmd_diagnose(const RunConfig& config) {
  DiagnoseResult out;
  out.analysis = analyze(config);
  const auto& a = out.analysis;
  const auto& label = a.panel.label;
  const auto& dir = config.output;

  auto& mt = out.moments_table;
  mt.header = {"model", "stream", "mean", "std", "skewness", "excess_kurtosis"};
  auto add = [&](const std::string& model, const std::string& stream, const MomentSummary& m) {
    mt.rows.push_back({model, stream, fixed(m.mean, 6), fixed(m.std, 6), fixed(m.skewness, 3),
                       fixed(m.excess_kurtosis, 3)});
  };
  add("spread", "original (eps)", a.spread_residuals.original);
  add("spread", "normalized (eps/V)", a.spread_residuals.normalized);
  add("spread", "refit (Z)", a.spread_residuals.refit);
  add("vix_ar", "innovations (W)", moments(a.vix.innovations));
  if (a.returns_residuals) {
    add("returns_single", "original (delta)", a.returns_residuals->original);
    add("returns_single", "normalized (delta/V)", a.returns_residuals->normalized);
    add("returns_single", "refit (delta')", a.returns_residuals->refit);
  }
  out.files.push_back(write_text(dir, label + "_residual_moments.csv", mt.to_string()));

  std::vector<double> eps_over_v(a.raw.residuals.size());
  const auto v = lagged_window(a.panel.vix);
  for (std::size_t i = 0; i < eps_over_v.size(); ++i) eps_over_v[i] = a.raw.residuals[i] / v[i];
  std::vector<double> abs_z(a.spread.residuals.size());
  for (std::size_t i = 0; i < abs_z.size(); ++i) abs_z[i] = std::fabs(a.spread.residuals[i]);

  CsvTable tests;
  tests.header = {"test", "series", "statistic", "p_value", "lags", "nobs"};
  auto add_test = [&](const std::string& series_name, TestResult r) {
    tests.rows.push_back({r.test_name, series_name, fixed(r.statistic, 4),
                          fixed(r.p_value, 4), std::to_string(r.lags),
                          std::to_string(r.nobs)});
    out.tests.push_back(std::move(r));
  };
  add_test(a.panel.rate.name, a.adf);
  add_test("eps", jarque_bera(a.raw.residuals));
  add_test("eps/V", jarque_bera(eps_over_v));
  add_test("Z", jarque_bera(a.spread.residuals));
  add_test("W", jarque_bera(a.vix.innovations));
  const std::size_t lb_lags = std::min<std::size_t>(10, a.spread.residuals.size() / 4 - 1);
  add_test("Z", ljung_box(a.spread.residuals, lb_lags));
  add_test("|Z|", ljung_box(abs_z, lb_lags));
  add_test("W", ljung_box(a.vix.innovations, lb_lags));
  tests.rows.push_back({"correlation", "Z,W", fixed(a.z_w_correlation, 4), "", "",
                        std::to_string(a.spread.residuals.size())});
  out.files.push_back(write_text(dir, label + "_tests.csv", tests.to_string()));

  const std::size_t max_lag = std::min<std::size_t>(24, a.spread.residuals.size() / 2 - 1);
  std::ostringstream acf_z, acf_abs, qq;
  write_acf_csv(acf_z, acf(a.spread.residuals, max_lag));
  write_acf_csv(acf_abs, acf(abs_z, max_lag));
  write_qq_csv(qq, qq_points(a.spread.residuals));
  out.files.push_back(write_text(dir, label + "_acf_z.csv", acf_z.str()));
  out.files.push_back(write_text(dir, label + "_acf_abs_z.csv", acf_abs.str()));
  out.files.push_back(write_text(dir, label + "_qq_z.csv", qq.str()));
  log_run(dir, "diagnose " + label);
  return out;
}

InnovationKind innovation_kind_from_string(const std::string& s) {
  if (s == "bootstrap") return InnovationKind::bootstrap;
  if (s == "gaussian") return InnovationKind::gaussian;
  if (s == "variance_gamma" || s == "vg") return InnovationKind::variance_gamma;
  throw Error("unknown innovation source '" + s +
              "' (expected bootstrap, gaussian, variance_gamma)");
}

// -- inline spec JSON ---------------------------------------------------------

JointModelSpec spec_from_json(const std::string& text) {
  using nlohmann::json;
  try {
    const auto j = json::parse(text);
    JointModelSpec spec;
    spec.vix = {j.at("vix").at("alpha").get<double>(), j.at("vix").at("beta").get<double>()};
    const auto& s = j.at("spread");
    spec.spread = {s.at("a").get<double>(), s.at("b").get<double>(), s.at("c").get<double>()};
    if (j.contains("returns") && !j.at("returns").is_null()) {
      const auto& r = j.at("returns");
      spec.returns = ReturnsDynamics{r.at("k").get<double>(), r.at("m").get<double>(),
                                     r.at("h").get<double>(), r.at("l").get<double>()};
    }
    const auto& inn = j.at("innovations");
    const auto kind = inn.at("kind").get<std::string>();
    if (kind == "gaussian") {
      GaussianInnovations g;
      const auto& c = inn.at("covariance");
      if (c.size() != 3) throw ParseError("spec: covariance must be 3x3", 0);
      for (int r = 0; r < 3; ++r) {
        if (c.at(r).size() != 3) throw ParseError("spec: covariance must be 3x3", 0);
        for (int k = 0; k < 3; ++k) g.covariance(r, k) = c.at(r).at(k).get<double>();
      }
      spec.innovations = g;
    } else if (kind == "variance_gamma") {
      VgInnovations vg;
      const auto& w = inn.at("w");
      vg.w = {w.at("location").get<double>(), w.at("scale").get<double>(),
              w.at("asymmetry").get<double>(), w.at("shape").get<double>()};
      vg.sigma_z = inn.at("sigma_z").get<double>();
      vg.rho_zw = inn.at("rho_zw").get<double>();
      vg.sigma_u = inn.value("sigma_u", 0.0);
      vg.rho_uw = inn.value("rho_uw", 0.0);
      spec.innovations = vg;
    } else if (kind == "bootstrap") {
      BootstrapInnovations b;
      for (const auto& row : inn.at("rows")) {
        if (row.size() != 3) throw ParseError("spec: bootstrap rows must be [u, z, w]", 0);
        b.rows.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                          row.at(2).get<double>()});
      }
      spec.innovations = b;
    } else {
      throw ParseError("spec: unknown innovations kind '" + kind + "'", 0);
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("spec: ") + e.what(), 0);
  }
}

std::string spec_to_json(const JointModelSpec& spec) {
  using nlohmann::json;
  json j;
  j["vix"] = {{"alpha", spec.vix.alpha}, {"beta", spec.vix.beta}};
  j["spread"] = {{"a", spec.spread.a}, {"b", spec.spread.b}, {"c", spec.spread.c}};
  if (spec.returns) {
    j["returns"] = {{"k", spec.returns->k},
                    {"m", spec.returns->m},
                    {"h", spec.returns->h},
                    {"l", spec.returns->l}};
  }
  std::visit(
      [&](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, GaussianInnovations>) {
          json c = json::array();
          for (int r = 0; r < 3; ++r) {
            c.push_back({src.covariance(r, 0), src.covariance(r, 1), src.covariance(r, 2)});
          }
          j["innovations"] = {{"kind", "gaussian"}, {"covariance", c}};
        } else if constexpr (std::is_same_v<T, VgInnovations>) {
          j["innovations"] = {{"kind", "variance_gamma"},
                              {"w",
                               {{"location", src.w.location},
                                {"scale", src.w.scale},
                                {"asymmetry", src.w.asymmetry},
                                {"shape", src.w.shape}}},
                              {"sigma_z", src.sigma_z},
                              {"rho_zw", src.rho_zw},
                              {"sigma_u", src.sigma_u},
                              {"rho_uw", src.rho_uw}};
        } else {
          json rows = json::array();
          for (const auto& r : src.rows) rows.push_back({r.u, r.z, r.w});
          j["innovations"] = {{"kind", "bootstrap"}, {"rows", rows}};
        }
      },
      spec.innovations);
  return j.dump(2) + "\n";
}

void apply_overrides(JointModelSpec& spec, const std::map<std::string, double>& overrides) {
  for (const auto& [key, value] : overrides) {
    if (key == "alpha") {
      spec.vix.alpha = value;
    } else if (key == "beta") {
      spec.vix.beta = value;
    } else if (key == "a") {
      spec.spread.a = value;
    } else if (key == "b") {
      spec.spread.b = value;
    } else if (key == "c") {
      spec.spread.c = value;
    } else if (key == "k" || key == "m" || key == "h" || key == "l") {
      if (!spec.returns) throw Error("override '" + key + "' needs a returns model");
      auto& r = *spec.returns;
      (key == "k" ? r.k : key == "m" ? r.m : key == "h" ? r.h : r.l) = value;
    } else {
      throw Error("unknown spec override '" + key + "'");
    }
  }
}

namespace {

double sample_mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

double sample_cov(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = sample_mean(x), my = sample_mean(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - mx) * (y[i] - my);
  return s / static_cast<double>(x.size());
}

JointModelSpec spec_from_analysis(const DatasetAnalysis& a, const SimulateOptions& opt) {
  const ReturnsModelParams* returns =
      opt.with_returns && a.returns_single ? &*a.returns_single : nullptr;

  // Time-align (U, Z, W): Z and W share the rate panel's months; U starts at
  // the returns panel's second month.
  std::vector<double> z = a.spread.residuals;
  std::vector<double> w = a.vix.innovations;
  std::vector<double> u;
  if (returns) {
    const auto& um = returns->metadata.window;
    const auto& zm = a.spread.metadata.window;
    const int offset = um.first.ordinal() - zm.first.ordinal();
    const std::size_t count = std::min<std::size_t>(
        returns->residuals.size(), z.size() - static_cast<std::size_t>(std::max(0, offset)));
    if (offset < 0) throw AlignmentError("returns residuals start before spread residuals");
    z = {z.begin() + offset, z.begin() + offset + static_cast<std::ptrdiff_t>(count)};
    w = {w.begin() + offset, w.begin() + offset + static_cast<std::ptrdiff_t>(count)};
    u = {returns->residuals.begin(),
         returns->residuals.begin() + static_cast<std::ptrdiff_t>(count)};
  }

  InnovationSource source;
  switch (opt.innovations) {
    case InnovationKind::bootstrap:
      source = bootstrap_from_residuals(u, z, w);
      break;
    case InnovationKind::gaussian: {
      GaussianInnovations g;
      const std::vector<double>* cols[3] = {&u, &z, &w};
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          g.covariance(r, c) = cols[r]->empty() || cols[c]->empty()
                                   ? 0.0
                                   : sample_cov(*cols[r], *cols[c]);
        }
      }
      source = g;
      break;
    }
    case InnovationKind::variance_gamma: {
      if (!a.vix.vg) throw Error("no variance-gamma fit for W (too few observations)");
      VgInnovations vg;
      vg.w = a.vix.vg->params;
      vg.sigma_z = std::sqrt(sample_cov(z, z));
      vg.rho_zw = correlation(z, w);
      if (!u.empty()) {
        vg.sigma_u = std::sqrt(sample_cov(u, u));
        vg.rho_uw = correlation(u, w);
      }
      source = vg;
      break;
    }
  }
  return joint_spec_from_fits(a.vix, a.spread, returns, std::move(source));
}

}  // namespace

SimulateResult cmd_simulate(const RunConfig& config, const SimulateOptions& options) {
  if (options.steps < 1) throw Error("simulate: --steps must be at least 1");
  SimulateResult out;
  std::string label;
  if (options.spec_file) {
    std::ifstream in(*options.spec_file, std::ios::binary);
    if (!in) throw IoError("cannot open spec file '" + *options.spec_file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    out.spec = spec_from_json(buf.str());
    label = fs::path(*options.spec_file).stem().string();
  } else {
    const auto analysis = analyze(config);
    out.spec = spec_from_analysis(analysis, options);
    label = analysis.panel.label;
  }
  apply_overrides(out.spec, options.overrides);

  const auto& dir = config.output;
  out.findings = validate_assumptions(out.spec);
  out.files.push_back(write_text(dir, label + "_findings.json", findings_json(out.findings)));
  if (has_violation(out.findings) && !config.force) {
    std::string msg = "simulation refused (use --force to override):";
    for (const auto& f : out.findings) {
      if (f.severity == Severity::violation) msg += "\n  " + f.message;
    }
    throw AssumptionViolation(msg, out.findings);
  }
  out.files.push_back(write_text(dir, label + "_spec.json", spec_to_json(out.spec)));

  const auto fp = fixed_point(out.spec);
  InitialState start{std::isfinite(fp.v) && fp.v > 0.0 ? fp.v : 1.0,
                     std::isfinite(fp.r) ? fp.r : 0.0, std::isfinite(fp.q) ? fp.q : 0.0};
  for (std::size_t i = 0; i < options.paths; ++i) {
    const auto seed = make_rng(config.seed, 1000 + i)();
    out.paths.push_back(simulate(out.spec, options.steps, seed, start));
    std::ostringstream csv;
    write_path_csv(csv, out.paths.back());
    out.files.push_back(
        write_text(dir, label + "_path_" + std::to_string(i) + ".csv", csv.str()));
  }

  const auto burn_in = options.burn_in.value_or(default_burn_in(out.spec));
  if (options.steps > 2 * burn_in) {
    out.report = ergodicity_diagnostic(out.spec, options.steps, burn_in, options.pairs,
                                       config.seed);
    out.files.push_back(write_text(dir, label + "_convergence.json",
                                   convergence_report_json(out.report)));
  }
  log_run(dir, "simulate " + label);
  return out;
}

ReportResult cmd_report(const RunConfig& config) {
  ReportResult out;
  for (auto d : {Dataset::bofa_quality, Dataset::bofa_junk}) {
    for (auto c : {Case::yield, Case::spread, Case::excess}) {
      auto cfg = config;
      cfg.dataset = d;
      cfg.rate_case = c;
      out.cells.push_back(analyze(cfg));
    }
  }
  const auto& dir = config.output;
  out.files.push_back(write_text(dir, "table1.csv", table1(out.cells).to_string()));
  out.files.push_back(write_text(dir, "table2.csv", table2(out.cells).to_string()));
  out.files.push_back(write_text(dir, "table3.csv", table3(out.cells).to_string()));
  out.files.push_back(write_text(dir, "table4.csv", table4(out.cells).to_string()));
  log_run(dir, "report");
  return out;
}

// -- executable entry point ---------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"VIX-normalized autoregressive models for corporate bond rates, spreads "
               "and returns"};
  app.require_subcommand(1);

  RunConfig config;
  std::string dataset = "moodys_aaa";
  std::string rate_case;
  std::string window;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--data-dir", config.data_dir, "Directory of <SERIES>.csv FRED exports")
        ->capture_default_str();
    sub->add_option("--dataset", dataset,
                    "moodys_aaa | moodys_baa | bofa_quality | bofa_junk")
        ->capture_default_str();
    sub->add_option("--case", rate_case, "yield | spread | excess (BofA only)");
    sub->add_option("--window", window, "Month range YYYY-MM:YYYY-MM");
    sub->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    sub->add_option("--out", config.output, "Output directory")->capture_default_str();
    sub->add_flag("--force", config.force, "Simulate despite assumption violations");
    sub->add_option("--lags", config.adf_lags, "ADF lag count")->capture_default_str();
  };

  auto* fit = app.add_subcommand("fit", "Fit the models and write model JSON + summary");
  auto* diagnose =
      app.add_subcommand("diagnose", "Residual moments, ADF/JB/Ljung-Box, ACF and QQ data");
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Simulate the joint chain and check convergence");
  auto* report = app.add_subcommand("report", "Write table1.csv..table4.csv for BofA data");
  for (auto* sub : {fit, diagnose, simulate_cmd, report}) add_common(sub);

  SimulateOptions sim;
  std::string spec_file;
  std::string innovations = "bootstrap";
  std::vector<std::string> sets;
  std::size_t burn_in = 0;
  bool no_returns = false;
  simulate_cmd->add_option("--steps", sim.steps, "Steps per path")->capture_default_str();
  simulate_cmd->add_option("--paths", sim.paths, "Number of exported paths")
      ->capture_default_str();
  simulate_cmd->add_option("--burn-in", burn_in, "Burn-in steps (default 10/(1-max(b,beta)))");
  simulate_cmd->add_option("--pairs", sim.pairs, "Chain pairs for the ergodicity check")
      ->capture_default_str();
  simulate_cmd->add_option("--spec", spec_file, "Joint-model spec JSON file (skips fitting)");
  simulate_cmd->add_option("--innovations", innovations,
                           "bootstrap | gaussian | variance_gamma")
      ->capture_default_str();
  simulate_cmd->add_option("--set", sets, "Parameter override key=value (alpha..l)");
  simulate_cmd->add_flag("--no-returns", no_returns, "Drop the returns equation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    config.dataset = dataset_from_string(dataset);
    config.rate_case = rate_case.empty() ? (is_bofa(config.dataset) ? Case::yield : Case::spread)
                                         : case_from_string(rate_case);
    if (!window.empty()) config.window = parse_window(window);

    if (fit->parsed()) {
      const auto r = cmd_fit(config);
      std::cout << r.summary.to_string();
    } else if (diagnose->parsed()) {
      const auto r = cmd_diagnose(config);
      std::cout << r.moments_table.to_string();
    } else if (simulate_cmd->parsed()) {
      if (!spec_file.empty()) sim.spec_file = spec_file;
      if (burn_in > 0) sim.burn_in = burn_in;
      sim.innovations = innovation_kind_from_string(innovations);
      sim.with_returns = !no_returns;
      for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw Error("--set expects key=value, got '" + s + "'");
        sim.overrides[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
      }
      const auto r = cmd_simulate(config, sim);
      for (const auto& f : r.findings) {
        if (f.severity != Severity::info) {
          std::cerr << to_string(f.severity) << ": " << f.message << '\n';
        }
      }
      if (r.report.steps > 0) std::cout << convergence_report_json(r.report);
    } else if (report->parsed()) {
      const auto r = cmd_report(config);
      for (const auto& f : r.files) std::cout << f << '\n';
    }
  } catch (const AssumptionViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace vixbond::cli
