#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scalesim/time_series.hpp"

namespace scalesim {

constexpr int kHoursPerDay = 24;

/// Parameters of the synthetic hourly request-rate generator.
struct WorkloadSpec {
  int days = 10;
  double base_rate = 2.0;   // requests/sec at the trough
  double peak_rate = 56.0;  // requests/sec at the peak
  int peak_hour = 12;       // 0..23
  double noise_fraction = 0.1;  // uniform +/- multiplicative noise on the bump
  std::uint64_t seed = 42;

  void validate() const;
};

/// Hourly average request rates (requests/sec), 24 per day.
struct WorkloadTrace {
  std::vector<double> hourly;

  std::size_t hours() const { return hourly.size(); }
  int days() const { return static_cast<int>(hourly.size()) / kHoursPerDay; }

  /// Requires length to be a positive multiple of 24 with all rates >= 0.
  void validate() const;

  TimeSeries to_series() const { return TimeSeries(hourly, 3600.0); }

  /// Hours [first_day*24, last_day*24).
  WorkloadTrace slice_days(int first_day, int last_day) const;
};

/// Per-tick request arrival counts for the simulator.
struct ArrivalStream {
  std::vector<long> per_tick;
  double tick_length = 1.0;  // seconds

  std::size_t ticks() const { return per_tick.size(); }
  long total() const;
};

enum class ArrivalMode { Deterministic, Poisson };

/// Smooth diurnal bump, 1 at peak_hour and 0 twelve hours away.
double diurnal_shape(int hour, int peak_hour);

/// Deterministic for a given seed: rate(h) = base + (peak-base)*shape(h)*(1+eps),
/// eps uniform in +/-noise_fraction, clamped at zero.
WorkloadTrace generate_trace(const WorkloadSpec& spec);

/// Expands hourly averages into per-tick arrival counts. Deterministic mode
/// floors with a running fractional carry so hourly volumes are exact;
/// Poisson mode draws seeded counts with mean rate*tick. tick_length must
/// divide 3600 evenly.
ArrivalStream expand_arrivals(const WorkloadTrace& trace, double tick_length,
                              ArrivalMode mode, std::uint64_t seed);

/// CSV with header `hour,rate`.
WorkloadTrace read_trace_csv(const std::string& path);
void write_trace_csv(const std::string& path, const WorkloadTrace& trace);

/// Accepts either the `hour,rate` trace format or a single-column `value`
/// series of hourly rates; length must still be a multiple of 24.
WorkloadTrace read_trace_any(const std::string& path);

ArrivalMode parse_arrival_mode(const std::string& name);

}  // namespace scalesim
