#include "scalesim/time_series.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "scalesim/csv.hpp"

namespace scalesim {

void TimeSeries::validate() const {
  if (values.empty()) throw std::invalid_argument("time series is empty");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("time series contains a non-finite value");
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

TimeSeries read_series_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != "value")
    throw std::runtime_error("expected header 'value' in " + path);
  TimeSeries out;
  out.values.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i)
    out.values.push_back(parse_double(lines[i]));
  out.validate();
  return out;
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
  std::ostringstream os;
  os << "value\n";
  for (double v : series.values) os << format_double(v) << "\n";
  write_file(path, os.str());
}

}  // namespace scalesim
