#pragma once

#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scalesim/sarima.hpp"
#include "scalesim/time_series.hpp"

namespace scalesim {

enum class ScalerKind { HPA, PBA };

std::string to_string(ScalerKind k);

/// One autoscaler output. ft/ct/prediction are meaningful for PBA only.
struct ScalingDecision {
  double at = 0.0;  // simulation seconds
  int desired_replicas = 0;
  ScalerKind source = ScalerKind::HPA;
  int ft = 0;               // pods for the next interval's predicted rate
  int ct = 0;               // pods for the current interval's predicted rate
  double prediction = 0.0;  // current interval's predicted rate
};

struct HpaConfig {
  double target_utilization = 0.5;       // in (0,1]
  double sync_period = 15.0;             // seconds
  double tolerance = 0.1;                // dead band around target ratio
  double scale_down_stabilization = 300.0;  // seconds
  int min_replicas = 0;
  int max_replicas = 50;

  void validate() const;
};

struct PbaConfig {
  int req_per_pod = 40;
  double initial_delay = 30.0;  // shortens the wait before the first boundary
  double interval = 3600.0;     // seconds between decisions
  double lead_time = 30.0;      // act this early so pods are Ready on time
  int max_replicas = 50;

  void validate() const;
};

/// Kubernetes-style reactive control law: desired = ceil(current * ratio)
/// with a tolerance dead band; scale-downs are held to the maximum
/// recommendation seen within the stabilization window; bootstrap to 1
/// from zero replicas under load. Stateful because of the window.
class HpaController {
 public:
  explicit HpaController(HpaConfig config);

  ScalingDecision decide(int current_replicas, double utilization, double now);

  const HpaConfig& config() const { return config_; }

 private:
  HpaConfig config_;
  std::deque<std::pair<double, int>> recommendations_;  // (time, replicas)
};

/// Sizes replicas as ceil(prediction/req_per_pod), taking the max of the
/// current and next interval's needs. At the end of the horizon the next
/// interval falls back to the current one.
ScalingDecision pba_decide(std::span<const double> predictions,
                           int interval_index, const PbaConfig& config);

struct PipelineResult {
  std::vector<double> predictions;  // requests/sec per interval, clamped >= 0
  bool used_fallback = false;       // seasonal-naive fallback engaged
  SarimaOrder order;                // order actually used (when fitted)
  std::optional<SarimaFit> fitted;  // absent when fallback engaged
};

/// Fits on the history (suggest_order unless pinned) and forecasts
/// `horizon` intervals with non-negative clamping. A fit or forecast
/// failure falls back to repeating the last seasonal period.
PipelineResult pba_pipeline(const TimeSeries& history, int horizon,
                            std::optional<SarimaOrder> pinned_order,
                            int seasonal_period = 24);

}  // namespace scalesim
