#include "scalesim/sarima.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "scalesim/csv.hpp"

namespace scalesim {

namespace {

constexpr double kSigmaFloor = 1e-30;
constexpr double kRelTol = 1e-8;          // optimizer convergence threshold
constexpr double kVarianceReduction = 0.25;  // differencing must cut variance 4x

// Sample autocorrelation of raw data, biased estimator.
std::vector<double> autocorr(const std::vector<double>& x, int max_lag) {
  const int n = static_cast<int>(x.size());
  const double m = mean(x);
  double c0 = 0.0;
  for (double v : x) c0 += (v - m) * (v - m);
  c0 /= n;
  if (c0 <= 1e-20 * (1.0 + m * m))
    throw std::invalid_argument("constant series: autocorrelation undefined");
  std::vector<double> r(max_lag + 1, 0.0);
  r[0] = 1.0;
  for (int k = 1; k <= max_lag; ++k) {
    double c = 0.0;
    for (int t = k; t < n; ++t) c += (x[t] - m) * (x[t - k] - m);
    r[k] = (c / n) / c0;
  }
  return r;
}

// Durbin-Levinson on an ACF sequence. Returns the partial autocorrelations
// phi_kk for k=1..K; if ar_out is given it receives the final AR(K)
// coefficients.
std::vector<double> durbin_levinson(const std::vector<double>& r, int K,
                                    std::vector<double>* ar_out) {
  std::vector<double> partial;
  partial.reserve(K);
  std::vector<double> phi_prev, phi_cur;
  for (int k = 1; k <= K; ++k) {
    double num = r[k];
    double den = 1.0;
    for (int j = 1; j < k; ++j) {
      num -= phi_prev[j - 1] * r[k - j];
      den -= phi_prev[j - 1] * r[j];
    }
    if (!(den > 1e-12) || !std::isfinite(num))
      throw std::runtime_error("pacf recursion singular at lag " +
                               std::to_string(k));
    const double a = num / den;
    if (!(std::abs(a) < 1.0 + 1e-9))
      throw std::runtime_error("pacf value outside unit interval at lag " +
                               std::to_string(k));
    phi_cur.assign(k, 0.0);
    for (int j = 1; j < k; ++j)
      phi_cur[j - 1] = phi_prev[j - 1] - a * phi_prev[k - j - 1];
    phi_cur[k - 1] = a;
    partial.push_back(a);
    phi_prev = phi_cur;
  }
  if (ar_out) *ar_out = phi_prev;
  return partial;
}

// One-step projection of the multiplicative model at index t.
// x holds the centered differenced series (plus forecasts, when extending);
// residual indices outside [0, res.size()) contribute zero.
double projection_at(const std::vector<double>& x,
                     const std::vector<double>& res, std::size_t t,
                     const SarimaOrder& o, const double* ar, const double* ma,
                     const double* sar, const double* sma) {
  const long T = static_cast<long>(t);
  const long n_res = static_cast<long>(res.size());
  auto x_at = [&](long i) -> double { return i >= 0 ? x[i] : 0.0; };
  auto r_at = [&](long i) -> double {
    return (i >= 0 && i < n_res) ? res[i] : 0.0;
  };
  double pred = 0.0;
  for (int i = 0; i < o.p; ++i) pred += ar[i] * x_at(T - (i + 1));
  for (int J = 0; J < o.P; ++J)
    pred += sar[J] * x_at(T - static_cast<long>(J + 1) * o.m);
  for (int i = 0; i < o.p; ++i)
    for (int J = 0; J < o.P; ++J)
      pred -= ar[i] * sar[J] * x_at(T - (i + 1) - static_cast<long>(J + 1) * o.m);
  for (int i = 0; i < o.q; ++i) pred += ma[i] * r_at(T - (i + 1));
  for (int J = 0; J < o.Q; ++J)
    pred += sma[J] * r_at(T - static_cast<long>(J + 1) * o.m);
  for (int i = 0; i < o.q; ++i)
    for (int J = 0; J < o.Q; ++J)
      pred += ma[i] * sma[J] * r_at(T - (i + 1) - static_cast<long>(J + 1) * o.m);
  return pred;
}

// Conditional sum of squares of one-step residuals. The first p + m*P
// observations are conditioned on; pre-sample residuals are zero.
double compute_css(const std::vector<double>& x, const SarimaOrder& o,
                   const double* ar, const double* ma, const double* sar,
                   const double* sma, std::vector<double>* res_out) {
  const std::size_t n = x.size();
  const std::size_t start =
      static_cast<std::size_t>(o.p) + static_cast<std::size_t>(o.P) * o.m;
  std::vector<double> res(n, 0.0);
  double css = 0.0;
  for (std::size_t t = start; t < n && t < res.size(); ++t) {
    const double e = x[t] - projection_at(x, res, t, o, ar, ma, sar, sma);
    res[t] = e;
    css += e * e;
  }
  if (res_out) *res_out = std::move(res);
  return css;
}

struct ParamView {
  const double* ar;
  const double* ma;
  const double* sar;
  const double* sma;
};

ParamView view_params(const std::vector<double>& params, const SarimaOrder& o) {
  const double* base = params.data();
  return {base, base + o.p, base + o.p + o.q, base + o.p + o.q + o.P};
}

// Solves A x = b in place, Gaussian elimination with partial pivoting.
// Returns false when the system is effectively singular.
bool solve_linear(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    double s = b[col];
    for (int c = col + 1; c < n; ++c) s -= a[col][c] * b[c];
    b[col] = s / a[col][col];
  }
  return true;
}

// Hannan-Rissanen two-stage start: residuals from a long AR fit, then a
// least-squares regression on lagged values and lagged residuals. Seasonal
// and non-seasonal lags enter additively here; the cross terms are left to
// the simplex refinement. Falls back to zeros on any numerical trouble.
std::vector<double> hannan_rissanen_init(const std::vector<double>& x,
                                         const SarimaOrder& o) {
  const int kf = o.free_params();
  std::vector<double> init(kf, 0.0);
  const int n = static_cast<int>(x.size());
  try {
    int L = std::max(20, o.p + o.q + o.m * (o.P + o.Q) + 1);
    L = std::min(L, n / 3);
    if (L < 1) return init;
    std::vector<double> long_ar;
    durbin_levinson(autocorr(x, L), L, &long_ar);
    std::vector<double> eps(n, 0.0);
    for (int t = L; t < n; ++t) {
      double pred = 0.0;
      for (int j = 0; j < L; ++j) pred += long_ar[j] * x[t - 1 - j];
      eps[t] = x[t] - pred;
    }
    const int t0 = std::max(
        {L, o.p, o.m * o.P, o.q, o.m * o.Q, o.q + 1, o.m * o.Q + (o.Q ? 1 : 0)});
    if (n - t0 < 4 * std::max(kf, 1)) return init;
    auto column = [&](int j, int t) -> double {
      if (j < o.p) return x[t - 1 - j];
      j -= o.p;
      if (j < o.q) return eps[t - 1 - j];
      j -= o.q;
      if (j < o.P) return x[t - o.m * (j + 1)];
      j -= o.P;
      return eps[t - o.m * (j + 1)];
    };
    std::vector<std::vector<double>> xtx(kf, std::vector<double>(kf, 0.0));
    std::vector<double> xty(kf, 0.0);
    for (int t = t0; t < n; ++t) {
      for (int a = 0; a < kf; ++a) {
        const double ca = column(a, t);
        xty[a] += ca * x[t];
        for (int b = a; b < kf; ++b) xtx[a][b] += ca * column(b, t);
      }
    }
    double trace = 0.0;
    for (int a = 0; a < kf; ++a) trace += xtx[a][a];
    const double ridge = 1e-8 * (trace / kf + 1.0);
    for (int a = 0; a < kf; ++a) {
      xtx[a][a] += ridge;
      for (int b = 0; b < a; ++b) xtx[a][b] = xtx[b][a];
    }
    if (!solve_linear(xtx, xty)) return std::vector<double>(kf, 0.0);
    // regression column order is [ar, ma, sar, sma] already
    for (int a = 0; a < kf; ++a) {
      if (!std::isfinite(xty[a])) return std::vector<double>(kf, 0.0);
      init[a] = std::clamp(xty[a], -0.98, 0.98);
    }
  } catch (const std::exception&) {
    return std::vector<double>(kf, 0.0);
  }
  return init;
}

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  bool converged = false;
};

// Nelder-Mead with the standard coefficients. Counts every objective
// evaluation against the budget.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, int budget) {
  const int n = static_cast<int>(x0.size());
  int evals = 0;
  auto eval = [&](const std::vector<double>& p) {
    ++evals;
    const double v = f(p);
    return std::isfinite(v) ? v : std::numeric_limits<double>::max();
  };
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1][i] += 0.1;
  for (int i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

  SimplexResult res;
  double last_best = std::numeric_limits<double>::max();
  int stagnant = 0;
  while (true) {
    std::vector<int> idx(n + 1);
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = idx[0], worst = idx[n], second = idx[n - 1];
    // Converged when the objective stops improving in relative terms: either
    // the simplex has collapsed or a full round of iterations gained nothing.
    if (last_best - fv[best] <= kRelTol * (std::abs(fv[best]) + 1e-30))
      ++stagnant;
    else
      stagnant = 0;
    last_best = fv[best];
    if (fv[worst] - fv[best] <= kRelTol * (std::abs(fv[best]) + 1e-30) ||
        stagnant > n + 1) {
      res.x = pts[best];
      res.f = fv[best];
      res.converged = true;
      return res;
    }
    if (evals >= budget) {
      res.x = pts[best];
      res.f = fv[best];
      res.converged = false;
      return res;
    }
    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i <= n; ++i)
      if (i != worst)
        for (int j = 0; j < n; ++j) centroid[j] += pts[i][j] / n;
    auto blend = [&](double coef) {
      std::vector<double> p(n);
      for (int j = 0; j < n; ++j)
        p[j] = centroid[j] + coef * (pts[worst][j] - centroid[j]);
      return p;
    };
    const auto reflected = blend(-1.0);
    const double fr = eval(reflected);
    if (fr < fv[best]) {
      const auto expanded = blend(-2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        fv[worst] = fe;
      } else {
        pts[worst] = reflected;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      pts[worst] = reflected;
      fv[worst] = fr;
    } else {
      const auto contracted = blend(fr < fv[worst] ? -0.5 : 0.5);
      const double fc = eval(contracted);
      if (fc < std::min(fr, fv[worst])) {
        pts[worst] = contracted;
        fv[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (int j = 0; j < n; ++j)
            pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
          fv[i] = eval(pts[i]);
        }
      }
    }
  }
}

// All roots of 1 - a1 z - ... - ap z^p outside the unit circle iff every
// reflection coefficient of the step-down recursion has modulus < 1.
// Returns how far the worst reflection coefficient sits past the boundary;
// 0 means strictly stable.
double stability_excess(std::vector<double> a) {
  constexpr double kBoundary = 0.9999;
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  double excess = 0.0;
  for (int k = static_cast<int>(a.size()); k >= 1; --k) {
    const double kk = a[k - 1];
    if (!std::isfinite(kk)) return 1.0 + excess;
    excess += std::max(0.0, std::abs(kk) - kBoundary);
    if (!(std::abs(kk) < 1.0)) break;  // step-down undefined past the circle
    if (k == 1) break;
    std::vector<double> b(k - 1);
    const double den = 1.0 - kk * kk;
    for (int j = 1; j < k; ++j) b[j - 1] = (a[j - 1] + kk * a[k - j - 1]) / den;
    a = std::move(b);
  }
  return excess;
}

bool ar_stationary(const std::vector<double>& a) {
  return stability_excess(a) == 0.0;
}

// Moving-average polynomial 1 + t1 z + ... shares the stability test with
// the sign of the coefficients flipped.
std::vector<double> negated(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

void append_coeffs(std::ostringstream& os, const std::string& key,
                   const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    os << key << "_" << (i + 1) << "=" << format_double(v[i]) << "\n";
}

}  // namespace

void SarimaOrder::validate() const {
  if (p < 0 || d < 0 || q < 0 || P < 0 || D < 0 || Q < 0)
    throw std::invalid_argument("model orders must be non-negative");
  if (m < 1) throw std::invalid_argument("seasonal period m must be >= 1");
  if ((P > 0 || D > 0 || Q > 0) && m < 2)
    throw std::invalid_argument("seasonal components require m >= 2");
}

std::string SarimaOrder::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%d,%d,%d)(%d,%d,%d)%d", p, d, q, P, D, Q, m);
  return buf;
}

TimeSeries difference(const TimeSeries& series, int lag, int times) {
  series.validate();
  if (lag < 1) throw std::invalid_argument("difference lag must be >= 1");
  if (times < 0) throw std::invalid_argument("difference count must be >= 0");
  if (times == 0) return series;
  if (series.size() <= static_cast<std::size_t>(lag) * times)
    throw std::invalid_argument("series too short to difference " +
                                std::to_string(times) + " time(s) at lag " +
                                std::to_string(lag));
  TimeSeries out = series;
  for (int pass = 0; pass < times; ++pass) {
    std::vector<double> next(out.size() - lag);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = out.values[i + lag] - out.values[i];
    out.values = std::move(next);
  }
  return out;
}

TimeSeries undifference(const TimeSeries& diffed,
                        const std::vector<double>& initial, int lag) {
  if (lag < 1) throw std::invalid_argument("undifference lag must be >= 1");
  if (initial.size() != static_cast<std::size_t>(lag))
    throw std::invalid_argument("undifference needs exactly " +
                                std::to_string(lag) + " seed value(s), got " +
                                std::to_string(initial.size()));
  TimeSeries out;
  out.period_seconds = diffed.period_seconds;
  out.values = initial;
  out.values.reserve(initial.size() + diffed.size());
  for (double v : diffed.values)
    out.values.push_back(v + out.values[out.values.size() - lag]);
  return out;
}

std::vector<double> acf(const TimeSeries& series, int max_lag) {
  series.validate();
  if (max_lag < 0) throw std::invalid_argument("max_lag must be >= 0");
  if (static_cast<std::size_t>(max_lag) >= series.size())
    throw std::invalid_argument("max_lag must be below the series length");
  return autocorr(series.values, max_lag);
}

std::vector<double> pacf(const TimeSeries& series, int max_lag) {
  if (max_lag < 1) throw std::invalid_argument("max_lag must be >= 1");
  const auto r = acf(series, max_lag);
  return durbin_levinson(r, max_lag, nullptr);
}

SarimaOrder suggest_order(const TimeSeries& series, int m) {
  series.validate();
  if (m < 1) throw std::invalid_argument("seasonal period m must be >= 1");
  if (series.size() < 3 * static_cast<std::size_t>(m))
    throw std::invalid_argument("order suggestion needs at least 3 seasonal cycles");

  SarimaOrder o;
  o.m = m;
  TimeSeries w = series;
  if (m >= 2 && w.size() > static_cast<std::size_t>(m)) {
    TimeSeries sd = difference(w, m, 1);
    if (variance(sd.values) < kVarianceReduction * variance(w.values)) {
      o.D = 1;
      w = std::move(sd);
    }
  }
  if (w.size() > 1) {
    TimeSeries fd = difference(w, 1, 1);
    if (variance(fd.values) < kVarianceReduction * variance(w.values)) {
      o.d = 1;
      w = std::move(fd);
    }
  }

  const int nw = static_cast<int>(w.size());
  const double mw = mean(w.values);
  if (variance(w.values) <= 1e-12 * (1.0 + mw * mw)) return o;  // fully regular

  const double band = 1.96 / std::sqrt(static_cast<double>(nw));
  int max_lag = std::min(3 * m, nw - 2);
  max_lag = std::max(max_lag, std::min(5, nw - 2));
  if (max_lag < 1) return o;

  const auto r = acf(w, max_lag);
  std::vector<double> pv;
  for (int lag = max_lag; lag >= 1; lag = lag / 2) {
    try {
      pv = pacf(w, lag);
      break;
    } catch (const std::runtime_error&) {
      if (lag == 1) break;  // leave pv empty
    }
  }

  const int plim = static_cast<int>(std::min<std::size_t>(5, pv.size()));
  for (int k = 1; k <= plim; ++k)
    if (std::abs(pv[k - 1]) > band) o.p = k;
  for (int k = 1; k <= std::min(5, max_lag); ++k)
    if (std::abs(r[k]) > band) o.q = k;
  if (m >= 2) {
    for (int j = 1; j <= 3; ++j) {
      const std::size_t lag = static_cast<std::size_t>(j) * m;
      if (lag <= pv.size() && std::abs(pv[lag - 1]) > band) o.P = j;
      if (lag <= static_cast<std::size_t>(max_lag) && std::abs(r[lag]) > band)
        o.Q = j;
    }
  }
  return o;
}

SarimaFit fit(const TimeSeries& series, const SarimaOrder& order) {
  series.validate();
  order.validate();

  const long diff_loss = order.d + static_cast<long>(order.D) * order.m;
  if (static_cast<long>(series.size()) <= diff_loss)
    throw std::invalid_argument("series too short for differencing " +
                                order.to_string());
  TimeSeries w = series;
  if (order.D > 0) w = difference(w, order.m, order.D);
  if (order.d > 0) w = difference(w, 1, order.d);

  const int nw = static_cast<int>(w.size());
  const int kf = order.free_params();
  if (nw < 10 * (kf + 1))
    throw std::invalid_argument(
        "series too short to fit " + order.to_string() + ": need at least " +
        std::to_string(10 * (kf + 1)) + " differenced observations, have " +
        std::to_string(nw));

  // No constant when any differencing is applied, so an integrated model
  // forecasts level repeats rather than drifting.
  const double mu = (order.d + order.D == 0) ? mean(w.values) : 0.0;
  std::vector<double> x = w.values;
  for (double& v : x) v -= mu;

  std::vector<double> params(std::max(kf, 1), 0.0);  // data() stays valid at kf=0
  bool converged = true;
  if (kf > 0) {
    // Soft invertibility barrier on the MA polynomials only. Outside that
    // region the residual recursion feeds back explosively and conditional
    // least squares can cancel noise it has no business explaining; interior
    // candidates are untouched. AR coefficients stay unconstrained — a fit
    // past the unit circle raises the warning flag instead.
    auto objective = [&](const std::vector<double>& cand) {
      const ParamView pv = view_params(cand, order);
      const double css =
          compute_css(x, order, pv.ar, pv.ma, pv.sar, pv.sma, nullptr);
      const double excess =
          stability_excess(negated({pv.ma, pv.ma + order.q})) +
          stability_excess(negated({pv.sma, pv.sma + order.Q}));
      return css * (1.0 + 1e4 * excess);
    };
    const int budget = 500 * (kf + 2);
    const auto init = hannan_rissanen_init(x, order);
    SimplexResult best = nelder_mead(objective, init, budget);
    const double zero_css = objective(std::vector<double>(kf, 0.0));
    if (zero_css < best.f) {
      best.x.assign(kf, 0.0);
      best.f = zero_css;
    }
    params = best.x;
    converged = best.converged || zero_css <= best.f;
  }

  const ParamView pv = view_params(params, order);
  const double css = compute_css(x, order, pv.ar, pv.ma, pv.sar, pv.sma, nullptr);
  const int start = order.p + order.m * order.P;
  const int n_eff = std::max(1, nw - start);

  SarimaFit result;
  result.order = order;
  result.ar.assign(pv.ar, pv.ar + order.p);
  result.ma.assign(pv.ma, pv.ma + order.q);
  result.seasonal_ar.assign(pv.sar, pv.sar + order.P);
  result.seasonal_ma.assign(pv.sma, pv.sma + order.Q);
  result.intercept = mu;
  result.css = css;
  result.sigma2 = std::max(css / n_eff, kSigmaFloor);
  result.n_obs = nw;
  result.nonstationary_warning =
      !ar_stationary(result.ar) || !ar_stationary(result.seasonal_ar);

  if (!converged)
    throw ConvergenceError("sarima fit " + order.to_string() +
                               " did not converge within budget",
                           result);
  return result;
}

ForecastResult forecast(const SarimaFit& fit, const TimeSeries& series,
                        int horizon, bool clamp_nonnegative) {
  if (horizon < 1) throw std::invalid_argument("forecast horizon must be >= 1");
  series.validate();
  const SarimaOrder& o = fit.order;
  if (static_cast<int>(fit.ar.size()) != o.p ||
      static_cast<int>(fit.ma.size()) != o.q ||
      static_cast<int>(fit.seasonal_ar.size()) != o.P ||
      static_cast<int>(fit.seasonal_ma.size()) != o.Q)
    throw std::invalid_argument("fit coefficient lengths do not match order");

  struct Stage {
    int lag;
    std::vector<double> tail;  // last `lag` values before the pass
  };
  std::vector<Stage> stages;
  TimeSeries w = series;
  for (int pass = 0; pass < o.D; ++pass) {
    stages.push_back({o.m, {w.values.end() - o.m, w.values.end()}});
    w = difference(w, o.m, 1);
  }
  for (int pass = 0; pass < o.d; ++pass) {
    stages.push_back({1, {w.values.back()}});
    w = difference(w, 1, 1);
  }

  std::vector<double> x = w.values;
  for (double& v : x) v -= fit.intercept;

  const double* ar = fit.ar.data();
  const double* ma = fit.ma.data();
  const double* sar = fit.seasonal_ar.data();
  const double* sma = fit.seasonal_ma.data();
  std::vector<double> res;
  compute_css(x, o, ar, ma, sar, sma, &res);

  const std::size_t n = x.size();
  x.reserve(n + horizon);
  for (int h = 0; h < horizon; ++h)
    x.push_back(projection_at(x, res, n + h, o, ar, ma, sar, sma));

  std::vector<double> fc(x.begin() + n, x.end());
  for (double& v : fc) v += fit.intercept;

  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    TimeSeries rebuilt =
        undifference(TimeSeries(fc, series.period_seconds), it->tail, it->lag);
    fc.assign(rebuilt.values.begin() + it->lag, rebuilt.values.end());
  }
  if (clamp_nonnegative)
    for (double& v : fc) v = std::max(0.0, v);

  ForecastResult out;
  out.point = std::move(fc);
  out.horizon = horizon;
  return out;
}

double aic(const SarimaFit& fit) {
  const int k = fit.order.free_params() + 1;
  return fit.n_obs * std::log(fit.sigma2) + 2.0 * k;
}

std::string serialize_fit(const SarimaFit& fit) {
  std::ostringstream os;
  const SarimaOrder& o = fit.order;
  os << "p=" << o.p << "\nd=" << o.d << "\nq=" << o.q << "\nP=" << o.P
     << "\nD=" << o.D << "\nQ=" << o.Q << "\nm=" << o.m << "\n";
  os << "intercept=" << format_double(fit.intercept) << "\n";
  os << "sigma2=" << format_double(fit.sigma2) << "\n";
  os << "css=" << format_double(fit.css) << "\n";
  os << "n_obs=" << fit.n_obs << "\n";
  os << "nonstationary_warning=" << (fit.nonstationary_warning ? 1 : 0) << "\n";
  append_coeffs(os, "ar", fit.ar);
  append_coeffs(os, "ma", fit.ma);
  append_coeffs(os, "sar", fit.seasonal_ar);
  append_coeffs(os, "sma", fit.seasonal_ma);
  return os.str();
}

SarimaFit parse_fit(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad fit line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto geti = [&](const std::string& k) {
    return static_cast<int>(parse_long(kv.at(k)));
  };
  auto getd = [&](const std::string& k) { return parse_double(kv.at(k)); };
  SarimaFit f;
  f.order = {geti("p"), geti("d"), geti("q"),
             geti("P"), geti("D"), geti("Q"), geti("m")};
  f.intercept = getd("intercept");
  f.sigma2 = getd("sigma2");
  f.css = getd("css");
  f.n_obs = geti("n_obs");
  f.nonstationary_warning = geti("nonstationary_warning") != 0;
  auto coeffs = [&](const std::string& key, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
      v[i] = getd(key + "_" + std::to_string(i + 1));
    return v;
  };
  f.ar = coeffs("ar", f.order.p);
  f.ma = coeffs("ma", f.order.q);
  f.seasonal_ar = coeffs("sar", f.order.P);
  f.seasonal_ma = coeffs("sma", f.order.Q);
  return f;
}

SarimaOrder parse_order(const std::string& text) {
  std::vector<int> nums;
  std::string cur;
  for (char c : text + " ") {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      nums.push_back(std::stoi(cur));
      cur.clear();
    }
  }
  SarimaOrder o;
  if (nums.size() == 7) {
    o = {nums[0], nums[1], nums[2], nums[3], nums[4], nums[5], nums[6]};
  } else if (nums.size() == 3) {
    o = {nums[0], nums[1], nums[2], 0, 0, 0, 1};
  } else {
    throw std::invalid_argument("order must have 3 or 7 components: " + text);
  }
  o.validate();
  return o;
}

}  // namespace scalesim
