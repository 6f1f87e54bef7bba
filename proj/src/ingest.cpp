#include "vixbond/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vixbond/errors.hpp"

namespace vixbond {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

std::optional<Date> parse_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  Date d;
  if (!parse_int(s.substr(0, 4), d.year) || !parse_int(s.substr(5, 2), d.month) ||
      !parse_int(s.substr(8, 2), d.day)) {
    return std::nullopt;
  }
  if (d.month < 1 || d.month > 12) return std::nullopt;
  if (d.day < 1 || d.day > days_in_month(d.year, d.month)) return std::nullopt;
  return d;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::string parse_header(std::string_view line) {
  line = trim(line);
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) {
    line.remove_prefix(3);  // UTF-8 BOM
  }
  auto comma = line.find(',');
  if (comma == std::string_view::npos) {
    throw ParseError("header must be DATE,<NAME>", 0);
  }
  auto key = trim(line.substr(0, comma));
  auto name = trim(line.substr(comma + 1));
  if ((key != "DATE" && key != "observation_date") || name.empty() ||
      name.find(',') != std::string_view::npos) {
    throw ParseError("header must be DATE,<NAME>, got '" + std::string(line) + "'", 0);
  }
  return std::string(name);
}

std::vector<RawCsvRecord> parse_body(std::istream& in, std::string* name_out) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input: missing header", 0);
  std::string name = parse_header(line);
  if (name_out) *name_out = name;

  std::vector<RawCsvRecord> out;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    auto view = trim(line);
    if (view.empty()) continue;
    ++row;
    auto comma = view.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("row " + std::to_string(row) + ": expected two fields", row);
    }
    auto date_text = trim(view.substr(0, comma));
    auto value_text = trim(view.substr(comma + 1));
    auto date = parse_iso_date(date_text);
    if (!date) {
      throw ParseError("row " + std::to_string(row) + ": malformed date '" +
                           std::string(date_text) + "'",
                       row);
    }
    RawCsvRecord rec{*date, std::nullopt};
    if (!value_text.empty() && value_text != ".") {
      rec.value = parse_double(value_text);
      if (!rec.value) {
        throw ParseError("row " + std::to_string(row) + ": non-numeric value '" +
                             std::string(value_text) + "'",
                         row);
      }
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace

YearMonth YearMonth::from_ordinal(int ord) {
  int year = ord >= 0 ? ord / 12 : -((-ord + 11) / 12);
  return {year, ord - year * 12 + 1};
}

std::string YearMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

YearMonth YearMonth::parse(std::string_view text) {
  text = trim(text);
  YearMonth ym;
  if (text.size() != 7 || text[4] != '-' || !parse_int(text.substr(0, 4), ym.year) ||
      !parse_int(text.substr(5, 2), ym.month) || ym.month < 1 || ym.month > 12) {
    throw ParseError("expected YYYY-MM, got '" + std::string(text) + "'", 0);
  }
  return ym;
}

std::string MonthRange::to_string() const {
  return first.to_string() + ".." + last.to_string();
}

bool MonthlySeries::consecutive() const {
  for (std::size_t i = 1; i < months.size(); ++i) {
    if (months[i].ordinal() != months[i - 1].ordinal() + 1) return false;
  }
  return true;
}

const MonthlySeries& AlignedPanel::at(const std::string& name) const {
  auto it = columns.find(name);
  if (it == columns.end()) throw AlignmentError("panel has no column '" + name + "'");
  return it->second;
}

std::vector<MonthlySeries> AlignedPanel::series() const {
  std::vector<MonthlySeries> out;
  out.reserve(columns.size());
  for (const auto& [_, s] : columns) out.push_back(s);
  return out;
}

std::vector<RawCsvRecord> parse_fred_csv(std::istream& in) {
  return parse_body(in, nullptr);
}

std::vector<RawCsvRecord> parse_fred_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_body(in, nullptr);
}

std::pair<std::string, std::vector<RawCsvRecord>> read_fred_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string name;
  try {
    auto records = parse_body(in, &name);
    return {name, std::move(records)};
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.row());
  }
}

MonthlySeries to_monthly(const std::vector<RawCsvRecord>& records,
                         MonthlyRule rule, std::string name) {
  struct Bucket {
    double sum = 0.0;
    std::size_t count = 0;
    Date last_date{};
    double last_value = 0.0;
  };
  std::map<int, Bucket> buckets;
  for (const auto& rec : records) {
    if (!rec.value) continue;
    auto& b = buckets[rec.date.year_month().ordinal()];
    b.sum += *rec.value;
    if (b.count == 0 || rec.date.day >= b.last_date.day) {
      b.last_date = rec.date;
      b.last_value = *rec.value;
    }
    ++b.count;
  }
  if (buckets.empty()) {
    throw EmptySeriesError("series '" + name + "' has no non-missing observations");
  }

  MonthlySeries out;
  out.name = std::move(name);
  out.months.reserve(buckets.size());
  out.values.reserve(buckets.size());
  for (const auto& [ord, b] : buckets) {
    out.months.push_back(YearMonth::from_ordinal(ord));
    out.values.push_back(rule == MonthlyRule::monthly_average
                             ? b.sum / static_cast<double>(b.count)
                             : b.last_value);
  }
  return out;
}

MonthlySeries restrict_to(const MonthlySeries& s, const MonthRange& range) {
  MonthlySeries out;
  out.name = s.name;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.months[i] >= range.first && s.months[i] <= range.last) {
      out.months.push_back(s.months[i]);
      out.values.push_back(s.values[i]);
    }
  }
  return out;
}

AlignedPanel align(const std::vector<MonthlySeries>& series) {
  if (series.empty()) throw AlignmentError("align: no series given");

  std::string ranges;
  for (const auto& s : series) {
    if (s.empty()) throw AlignmentError("align: series '" + s.name + "' is empty");
    if (!ranges.empty()) ranges += ", ";
    ranges += s.name + " " + MonthRange{s.first(), s.last()}.to_string();
  }

  YearMonth lo = series.front().first();
  YearMonth hi = series.front().last();
  for (const auto& s : series) {
    lo = std::max(lo, s.first());
    hi = std::min(hi, s.last());
  }
  if (hi < lo) throw AlignmentError("align: empty month intersection (" + ranges + ")");

  AlignedPanel panel;
  panel.range = {lo, hi};
  for (const auto& s : series) {
    auto cut = restrict_to(s, panel.range);
    if (static_cast<int>(cut.size()) != panel.range.length()) {
      throw AlignmentError("align: series '" + s.name + "' has missing months inside " +
                           panel.range.to_string());
    }
    if (!panel.columns.emplace(s.name, std::move(cut)).second) {
      throw AlignmentError("align: duplicate series name '" + s.name + "'");
    }
  }
  return panel;
}

MonthlySeries derive_log_returns(const MonthlySeries& index, std::string name) {
  if (!index.consecutive()) {
    throw AlignmentError("log returns: '" + index.name + "' has gaps");
  }
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (!(index.values[i] > 0.0)) {
      throw DomainError("log returns: nonpositive index value in '" + index.name +
                        "' at " + index.months[i].to_string());
    }
  }
  MonthlySeries out;
  out.name = name.empty() ? index.name + "_logret" : std::move(name);
  for (std::size_t i = 1; i < index.size(); ++i) {
    out.months.push_back(index.months[i]);
    out.values.push_back(std::log(index.values[i]) - std::log(index.values[i - 1]));
  }
  return out;
}

MonthlySeries derive_difference(const MonthlySeries& a, const MonthlySeries& b,
                                std::string name) {
  if (a.months != b.months) {
    throw AlignmentError("difference: '" + a.name + "' and '" + b.name +
                         "' are not aligned");
  }
  MonthlySeries out;
  out.name = name.empty() ? a.name + "-" + b.name : std::move(name);
  out.months = a.months;
  out.values.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = a.values[i] - b.values[i];
  return out;
}

MonthlySeries derive_monthly_accrual(const MonthlySeries& rate_percent,
                                     std::string name) {
  if (!rate_percent.consecutive()) {
    throw AlignmentError("accrual: '" + rate_percent.name + "' has gaps");
  }
  MonthlySeries out;
  out.name = name.empty() ? rate_percent.name + "_accrual" : std::move(name);
  for (std::size_t i = 1; i < rate_percent.size(); ++i) {
    out.months.push_back(rate_percent.months[i]);
    out.values.push_back(rate_percent.values[i - 1] / 1200.0);
  }
  return out;
}

}  // namespace vixbond
