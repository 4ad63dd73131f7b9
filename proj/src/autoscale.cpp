#include "scalesim/autoscale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scalesim {

std::string to_string(ScalerKind k) {
  return k == ScalerKind::HPA ? "HPA" : "PBA";
}

void HpaConfig::validate() const {
  if (!(target_utilization > 0) || target_utilization > 1)
    throw std::invalid_argument("hpa.target_utilization must be in (0,1]");
  if (!(sync_period > 0)) throw std::invalid_argument("hpa.sync_period must be > 0");
  if (tolerance < 0) throw std::invalid_argument("hpa.tolerance must be >= 0");
  if (scale_down_stabilization < 0)
    throw std::invalid_argument("hpa.scale_down_stabilization must be >= 0");
  if (min_replicas < 0) throw std::invalid_argument("hpa.min_replicas must be >= 0");
  if (max_replicas < 1 || max_replicas < min_replicas)
    throw std::invalid_argument("hpa.max_replicas must be >= max(1, min_replicas)");
}

void PbaConfig::validate() const {
  if (req_per_pod < 1) throw std::invalid_argument("pba.req_per_pod must be >= 1");
  if (!(interval > 0)) throw std::invalid_argument("pba.interval must be > 0");
  if (lead_time < 0) throw std::invalid_argument("pba.lead_time must be >= 0");
  if (lead_time >= interval)
    throw std::invalid_argument("pba.lead_time must be below the interval");
  if (initial_delay < 0)
    throw std::invalid_argument("pba.initial_delay must be >= 0");
  if (max_replicas < 1) throw std::invalid_argument("pba.max_replicas must be >= 1");
}

HpaController::HpaController(HpaConfig config) : config_(config) {
  config_.validate();
}

ScalingDecision HpaController::decide(int current_replicas, double utilization,
                                      double now) {
  int rec;
  if (current_replicas == 0) {
    rec = utilization > 0 ? 1 : 0;  // bootstrap from zero
  } else {
    const double ratio = utilization / config_.target_utilization;
    if (std::abs(ratio - 1.0) <= config_.tolerance)
      rec = current_replicas;
    else
      rec = static_cast<int>(std::ceil(current_replicas * ratio - 1e-9));
  }

  recommendations_.emplace_back(now, rec);
  const double cutoff = now - config_.scale_down_stabilization;
  while (!recommendations_.empty() && recommendations_.front().first < cutoff)
    recommendations_.pop_front();

  // Scale-ups apply immediately; a scale-down only wins once every
  // recommendation in the window is below the current count.
  int desired = rec;
  for (const auto& [t, r] : recommendations_) desired = std::max(desired, r);
  desired = std::clamp(desired, config_.min_replicas, config_.max_replicas);

  ScalingDecision d;
  d.at = now;
  d.desired_replicas = desired;
  d.source = ScalerKind::HPA;
  return d;
}

ScalingDecision pba_decide(std::span<const double> predictions,
                           int interval_index, const PbaConfig& config) {
  config.validate();
  if (interval_index < 0 ||
      static_cast<std::size_t>(interval_index) >= predictions.size())
    throw std::invalid_argument("interval_index out of range");

  auto pods_for = [&](double rate) {
    return static_cast<int>(std::ceil(std::max(0.0, rate) / config.req_per_pod));
  };
  const double current = predictions[interval_index];
  const int ct = pods_for(current);
  const int ft =
      static_cast<std::size_t>(interval_index + 1) < predictions.size()
          ? pods_for(predictions[interval_index + 1])
          : ct;

  ScalingDecision d;
  d.source = ScalerKind::PBA;
  d.ct = ct;
  d.ft = ft;
  d.prediction = current;
  d.desired_replicas = std::clamp(std::max(ft, ct), 0, config.max_replicas);
  return d;
}

PipelineResult pba_pipeline(const TimeSeries& history, int horizon,
                            std::optional<SarimaOrder> pinned_order,
                            int seasonal_period) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  history.validate();

  PipelineResult out;
  try {
    const SarimaOrder order =
        pinned_order ? *pinned_order : suggest_order(history, seasonal_period);
    SarimaFit model = fit(history, order);
    out.predictions = forecast(model, history, horizon, true).point;
    out.order = order;
    out.fitted = std::move(model);
    return out;
  } catch (const ConvergenceError& e) {
    // Best-effort fit is still usable; prefer it over the naive fallback.
    try {
      out.predictions = forecast(e.best_fit, history, horizon, true).point;
      out.order = e.best_fit.order;
      out.fitted = e.best_fit;
      out.used_fallback = false;
      return out;
    } catch (const std::exception&) {
      // fall through to seasonal-naive
    }
  } catch (const std::exception&) {
    // fall through to seasonal-naive
  }

  out.used_fallback = true;
  out.fitted.reset();
  out.order = SarimaOrder{};
  out.order.m = seasonal_period;
  out.predictions.resize(horizon);
  const std::size_t n = history.size();
  const std::size_t m = static_cast<std::size_t>(seasonal_period);
  for (int h = 0; h < horizon; ++h) {
    double v = 0.0;
    if (n >= m)
      v = history.values[n - m + (static_cast<std::size_t>(h) % m)];
    else if (n > 0)
      v = history.values[n - 1];
    out.predictions[h] = std::max(0.0, v);
  }
  return out;
}

}  // namespace scalesim
