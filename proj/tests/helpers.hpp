#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "scalesim/sarima.hpp"
#include "scalesim/time_series.hpp"

namespace testutil {

// Overparameterized orders can exhaust the evaluation budget; rank whatever
// the convergence error carries, as a caller would.
inline scalesim::SarimaFit fit_or_best(const scalesim::TimeSeries& s,
                                       const scalesim::SarimaOrder& o) {
  try {
    return scalesim::fit(s, o);
  } catch (const scalesim::ConvergenceError& e) {
    return e.best_fit;
  }
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; consumes exactly two draws per sample.
inline double gaussian(std::mt19937_64& rng) {
  const double u1 = std::max(uniform01(rng), 1e-300);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

inline scalesim::TimeSeries white_noise(int n, std::uint64_t seed,
                                        double mu = 0.0, double sd = 1.0) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = mu + sd * gaussian(rng);
  return scalesim::TimeSeries(std::move(v));
}

// x_t = phi * x_{t-lag} + eps_t, with a burn-in to forget the origin.
inline scalesim::TimeSeries ar_process(int n, double phi, int lag,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int burn = 10 * lag + 200;
  std::vector<double> v(n + burn, 0.0);
  for (int t = lag; t < n + burn; ++t)
    v[t] = phi * v[t - lag] + gaussian(rng);
  return scalesim::TimeSeries(
      std::vector<double>(v.begin() + burn, v.end()));
}

inline scalesim::TimeSeries random_series(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = 10.0 * uniform01(rng) - 5.0;
  return scalesim::TimeSeries(std::move(v));
}

}  // namespace testutil
