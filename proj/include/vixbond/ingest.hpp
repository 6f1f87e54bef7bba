#ifndef VIXBOND_INGEST_HPP_
#define VIXBOND_INGEST_HPP_

#include <compare>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vixbond {

/// Calendar month key. Ordered chronologically.
struct YearMonth {
  int year = 0;
  int month = 1;  // 1..12

  /// Months since year 0; consecutive months differ by exactly one.
  int ordinal() const { return year * 12 + (month - 1); }
  static YearMonth from_ordinal(int ord);
  YearMonth next() const { return from_ordinal(ordinal() + 1); }
  std::string to_string() const;  // "YYYY-MM"
  static YearMonth parse(std::string_view text);  // "YYYY-MM"

  friend bool operator==(const YearMonth&, const YearMonth&) = default;
  friend auto operator<=>(const YearMonth& a, const YearMonth& b) {
    return a.ordinal() <=> b.ordinal();
  }
};

struct Date {
  int year = 0;
  int month = 1;
  int day = 1;
  YearMonth year_month() const { return {year, month}; }
  friend bool operator==(const Date&, const Date&) = default;
};

struct RawCsvRecord {
  Date date;
  std::optional<double> value;
};

/// One named, month-indexed series. Units follow the source: percentage
/// points for rates and spreads, index points for VIX and total-return
/// indices, natural-log decimals for returns.
struct MonthlySeries {
  std::string name;
  std::vector<YearMonth> months;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  bool consecutive() const;
  YearMonth first() const { return months.front(); }
  YearMonth last() const { return months.back(); }

  friend bool operator==(const MonthlySeries&, const MonthlySeries&) = default;
};

struct MonthRange {
  YearMonth first;
  YearMonth last;
  int length() const { return last.ordinal() - first.ordinal() + 1; }
  std::string to_string() const;
  friend bool operator==(const MonthRange&, const MonthRange&) = default;
};

/// Column-aligned series over one common, gap-free month range.
struct AlignedPanel {
  std::map<std::string, MonthlySeries> columns;
  MonthRange range;

  const MonthlySeries& at(const std::string& name) const;
  std::size_t rows() const { return static_cast<std::size_t>(range.length()); }
  std::vector<MonthlySeries> series() const;

  friend bool operator==(const AlignedPanel&, const AlignedPanel&) = default;
};

enum class MonthlyRule { end_of_month, monthly_average };

/// Parses a FRED CSV export: header `DATE,<NAME>` (FRED's newer
/// `observation_date` header is accepted too), rows `YYYY-MM-DD,<value>`,
/// with `.` or an empty cell marking a missing observation.
std::vector<RawCsvRecord> parse_fred_csv(std::istream& in);
std::vector<RawCsvRecord> parse_fred_csv(std::string_view text);

/// Reads `path` and returns the parsed records plus the header's series name.
std::pair<std::string, std::vector<RawCsvRecord>> read_fred_file(
    const std::string& path);

MonthlySeries to_monthly(const std::vector<RawCsvRecord>& records,
                         MonthlyRule rule, std::string name = {});

/// Restricts every series to the intersection of their month ranges.
/// Throws AlignmentError on an empty intersection or an interior gap.
AlignedPanel align(const std::vector<MonthlySeries>& series);

/// Restricts a consecutive series to [range.first, range.last].
MonthlySeries restrict_to(const MonthlySeries& s, const MonthRange& range);

/// Q_t = ln Y_t - ln Y_{t-1}; output starts one month later than the input.
MonthlySeries derive_log_returns(const MonthlySeries& index,
                                 std::string name = {});

/// Pointwise a - b over identical month keys.
MonthlySeries derive_difference(const MonthlySeries& a, const MonthlySeries& b,
                                std::string name = {});

/// Monthly simple accrual of an annualized percentage rate: value at month t
/// is rate_{t-1} / 1200. Output starts one month later than the input.
MonthlySeries derive_monthly_accrual(const MonthlySeries& rate_percent,
                                     std::string name = {});

}  // namespace vixbond

#endif  // VIXBOND_INGEST_HPP_
