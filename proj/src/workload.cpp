#include "scalesim/workload.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "scalesim/csv.hpp"

namespace scalesim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Uniform in [0,1) from the top 53 bits; keeps trace generation identical
// across standard library implementations.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

long poisson_draw(std::mt19937_64& rng, double lambda) {
  if (lambda <= 0.0) return 0;
  if (lambda > 30.0)
    return poisson_draw(rng, lambda / 2) + poisson_draw(rng, lambda - lambda / 2);
  const double limit = std::exp(-lambda);
  long k = 0;
  double p = 1.0;
  do {
    ++k;
    p *= next_uniform(rng);
  } while (p > limit);
  return k - 1;
}

}  // namespace

void WorkloadSpec::validate() const {
  if (days < 1) throw std::invalid_argument("workload.days must be >= 1");
  if (base_rate < 0) throw std::invalid_argument("workload.base_rate must be >= 0");
  if (!(peak_rate > base_rate))
    throw std::invalid_argument("workload.peak_rate must exceed base_rate");
  if (peak_hour < 0 || peak_hour >= kHoursPerDay)
    throw std::invalid_argument("workload.peak_hour must be in 0..23");
  if (noise_fraction < 0 || noise_fraction >= 1)
    throw std::invalid_argument("workload.noise_fraction must be in [0,1)");
}

void WorkloadTrace::validate() const {
  if (hourly.empty() || hourly.size() % kHoursPerDay != 0)
    throw std::invalid_argument("trace length must be a positive multiple of 24");
  for (double r : hourly)
    if (!(r >= 0) || !std::isfinite(r))
      throw std::invalid_argument("trace rates must be finite and >= 0");
}

WorkloadTrace WorkloadTrace::slice_days(int first_day, int last_day) const {
  if (first_day < 0 || last_day > days() || first_day >= last_day)
    throw std::invalid_argument("invalid day slice");
  WorkloadTrace out;
  out.hourly.assign(hourly.begin() + first_day * kHoursPerDay,
                    hourly.begin() + last_day * kHoursPerDay);
  return out;
}

long ArrivalStream::total() const {
  long s = 0;
  for (long c : per_tick) s += c;
  return s;
}

double diurnal_shape(int hour, int peak_hour) {
  return 0.5 * (1.0 + std::cos(2.0 * kPi * (hour - peak_hour) / kHoursPerDay));
}

WorkloadTrace generate_trace(const WorkloadSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  WorkloadTrace trace;
  trace.hourly.reserve(static_cast<std::size_t>(spec.days) * kHoursPerDay);
  for (int day = 0; day < spec.days; ++day) {
    for (int hour = 0; hour < kHoursPerDay; ++hour) {
      const double eps =
          spec.noise_fraction * (2.0 * next_uniform(rng) - 1.0);
      const double rate =
          spec.base_rate + (spec.peak_rate - spec.base_rate) *
                               diurnal_shape(hour, spec.peak_hour) * (1.0 + eps);
      trace.hourly.push_back(std::max(0.0, rate));
    }
  }
  return trace;
}

ArrivalStream expand_arrivals(const WorkloadTrace& trace, double tick_length,
                              ArrivalMode mode, std::uint64_t seed) {
  trace.validate();
  if (!(tick_length > 0))
    throw std::invalid_argument("tick_length must be positive");
  const double ratio = 3600.0 / tick_length;
  const long ticks_per_hour = std::lround(ratio);
  if (ticks_per_hour < 1 || std::abs(ratio - ticks_per_hour) > 1e-9)
    throw std::invalid_argument("tick_length must divide 3600 evenly");

  ArrivalStream out;
  out.tick_length = tick_length;
  out.per_tick.reserve(trace.hours() * ticks_per_hour);
  if (mode == ArrivalMode::Deterministic) {
    double carry = 0.0;
    for (double rate : trace.hourly) {
      const double per_tick_mean = rate * tick_length;
      for (long t = 0; t < ticks_per_hour; ++t) {
        carry += per_tick_mean;
        const long emit = static_cast<long>(std::floor(carry + 1e-9));
        out.per_tick.push_back(emit);
        carry -= emit;
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    for (double rate : trace.hourly) {
      const double lambda = rate * tick_length;
      for (long t = 0; t < ticks_per_hour; ++t)
        out.per_tick.push_back(poisson_draw(rng, lambda));
    }
  }
  return out;
}

WorkloadTrace read_trace_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != "hour,rate")
    throw std::runtime_error("expected header 'hour,rate' in " + path);
  WorkloadTrace trace;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    if (f.size() != 2) throw std::runtime_error("bad trace row: " + lines[i]);
    trace.hourly.push_back(parse_double(f[1]));
  }
  trace.validate();
  return trace;
}

void write_trace_csv(const std::string& path, const WorkloadTrace& trace) {
  std::ostringstream os;
  os << "hour,rate\n";
  for (std::size_t h = 0; h < trace.hourly.size(); ++h)
    os << h << "," << format_double(trace.hourly[h]) << "\n";
  write_file(path, os.str());
}

WorkloadTrace read_trace_any(const std::string& path) {
  const auto lines = read_lines(path);
  if (!lines.empty() && lines[0] == "value") {
    WorkloadTrace trace;
    trace.hourly = read_series_csv(path).values;
    trace.validate();
    return trace;
  }
  return read_trace_csv(path);
}

ArrivalMode parse_arrival_mode(const std::string& name) {
  if (name == "deterministic") return ArrivalMode::Deterministic;
  if (name == "poisson") return ArrivalMode::Poisson;
  throw std::invalid_argument("arrival mode must be deterministic or poisson");
}

}  // namespace scalesim
