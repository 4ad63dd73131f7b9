#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "scalesim/time_series.hpp"

namespace scalesim {

/// Model orders (p,d,q)(P,D,Q)m.
struct SarimaOrder {
  int p = 0;  // non-seasonal AR
  int d = 0;  // non-seasonal differencing
  int q = 0;  // non-seasonal MA
  int P = 0;  // seasonal AR
  int D = 0;  // seasonal differencing
  int Q = 0;  // seasonal MA
  int m = 1;  // observations per seasonal cycle

  int free_params() const { return p + q + P + Q; }

  /// Throws std::invalid_argument on negative orders, m < 1, or a
  /// seasonal component with m < 2.
  void validate() const;

  std::string to_string() const;  // "(p,d,q)(P,D,Q)m"
  bool operator==(const SarimaOrder&) const = default;
};

/// Estimated model: coefficients, innovation variance and the achieved
/// conditional sum of squares.
struct SarimaFit {
  SarimaOrder order;
  std::vector<double> ar;           // phi_1..phi_p
  std::vector<double> ma;           // theta_1..theta_q
  std::vector<double> seasonal_ar;  // Phi_1..Phi_P
  std::vector<double> seasonal_ma;  // Theta_1..Theta_Q
  double intercept = 0.0;           // mean of the differenced series; 0 when d+D>0
  double sigma2 = 0.0;              // css / effective sample count
  int n_obs = 0;                    // length of the differenced series
  double css = 0.0;
  bool nonstationary_warning = false;  // AR polynomial root on/inside unit circle
};

struct ForecastResult {
  std::vector<double> point;  // forecasts for steps t+1..t+horizon
  int horizon = 0;
};

/// Raised when the optimizer exhausts its evaluation budget before the
/// relative improvement criterion is met. Carries the best fit found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::string msg, SarimaFit best)
      : std::runtime_error(std::move(msg)), best_fit(std::move(best)) {}
  SarimaFit best_fit;
};

/// Applies the lag-difference operator `times` times. times=0 returns the
/// input unchanged. Throws std::invalid_argument when the series is too
/// short (length must exceed lag*times).
TimeSeries difference(const TimeSeries& series, int lag, int times);

/// Inverse of one differencing pass: given the differenced values and the
/// `lag` seed values that preceded them, rebuilds the original scale.
/// Output length is lag + diffed length.
TimeSeries undifference(const TimeSeries& diffed,
                        const std::vector<double>& initial, int lag);

/// Sample autocorrelation for lags 0..max_lag, biased estimator
/// (autocovariances divided by n). Element 0 is 1. Throws
/// std::invalid_argument for a constant series or max_lag >= length.
std::vector<double> acf(const TimeSeries& series, int max_lag);

/// Partial autocorrelation for lags 1..max_lag via the Durbin-Levinson
/// recursion on the sample ACF. Throws std::runtime_error if the
/// recursion becomes singular.
std::vector<double> pacf(const TimeSeries& series, int max_lag);

/// Box-Jenkins style order suggestion: d and D from variance reduction
/// under differencing, p/q from the last PACF/ACF lag (up to 5) outside
/// the 1.96/sqrt(n) band, P/Q from the band test at lags m, 2m, 3m.
/// Deterministic for a given series. Requires length >= 3m.
SarimaOrder suggest_order(const TimeSeries& series, int m);

/// Estimates coefficients by conditional sum of squares: Hannan-Rissanen
/// initialization refined with a Nelder-Mead simplex search. Pre-sample
/// residuals are zero. Throws std::invalid_argument when the differenced
/// length is below 10*(p+q+P+Q+1); throws ConvergenceError (carrying the
/// best fit) if the evaluation budget runs out.
SarimaFit fit(const TimeSeries& series, const SarimaOrder& order);

/// Iterates the model recursion with future innovations set to zero and
/// undifferences back to the original scale. `series` must be the series
/// the model was fit on or a continuation with the same period.
ForecastResult forecast(const SarimaFit& fit, const TimeSeries& series,
                        int horizon, bool clamp_nonnegative = false);

/// n*ln(sigma2) + 2k with k = p+q+P+Q+1. Lower is better.
double aic(const SarimaFit& fit);

/// Flat key=value text block (order, coefficients, sigma2, css).
std::string serialize_fit(const SarimaFit& fit);
SarimaFit parse_fit(const std::string& text);

/// Parses "(p,d,q)(P,D,Q)m" or "p,d,q,P,D,Q,m".
SarimaOrder parse_order(const std::string& text);

}  // namespace scalesim
