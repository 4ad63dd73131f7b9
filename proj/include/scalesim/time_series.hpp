#pragma once

#include <string>
#include <vector>

namespace scalesim {

/// Ordered real-valued observations at a fixed sampling period.
struct TimeSeries {
  std::vector<double> values;
  double period_seconds = 3600.0;

  TimeSeries() = default;
  explicit TimeSeries(std::vector<double> v, double period = 3600.0)
      : values(std::move(v)), period_seconds(period) {}

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
  double operator[](std::size_t i) const { return values[i]; }

  /// Throws std::invalid_argument if empty or any value is non-finite.
  void validate() const;
};

double mean(const std::vector<double>& v);

/// Population variance (divide by n).
double variance(const std::vector<double>& v);

/// Reads a single-column CSV with header `value`.
TimeSeries read_series_csv(const std::string& path);

/// Writes a single-column CSV with header `value`.
void write_series_csv(const std::string& path, const TimeSeries& series);

}  // namespace scalesim
