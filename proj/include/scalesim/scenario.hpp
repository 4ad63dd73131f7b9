#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalesim/autoscale.hpp"
#include "scalesim/cluster.hpp"
#include "scalesim/workload.hpp"

namespace scalesim {

/// Everything one comparison run needs. Every field has a default, so an
/// empty config file runs the reference scenario.
struct ScenarioConfig {
  WorkloadSpec workload;
  std::string trace_file;  // when set, load instead of generating
  FunctionSpec function;
  HpaConfig hpa;
  PbaConfig pba;
  double tick_length = 1.0;
  int train_days = 9;
  int eval_days = 1;
  ArrivalMode arrival_mode = ArrivalMode::Deterministic;
  std::optional<SarimaOrder> pinned_order;  // otherwise suggest_order
  std::string output_dir = "out";
  std::uint64_t seed = 42;  // arrival expansion; workload keeps its own seed

  void validate() const;
};

/// Parses the flat key=value config format ('#' comments, dotted keys).
/// Unknown keys are an error. Missing keys keep their defaults.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Summary statistics of one metrics stream.
struct ScalerSummary {
  double mean_response = 0.0;  // seconds, weighted by served requests
  double p95_response = 0.0;   // nearest-rank p95 of per-tick averages
  long cold_hits = 0;
  double pod_seconds = 0.0;  // time integral of total pod count
  double mean_cpu_utilization = 0.0;
  double peak_memory = 0.0;
  long served = 0;
  long arrivals = 0;
};

struct ComparisonReport {
  ScalerSummary hpa;
  ScalerSummary pba;
  std::optional<double> pod_seconds_savings_pct;  // absent when HPA used none
  std::optional<double> forecast_mape_pct;        // absent outside run_scenario
  bool forecast_fallback = false;

  std::string to_text() const;
  std::string to_csv() const;
};

/// One autoscaled simulation: applies due decisions before each tick.
struct RunOutput {
  std::vector<MetricsRecord> metrics;
  std::vector<ScalingDecision> decisions;
};

RunOutput run_hpa_simulation(const ArrivalStream& arrivals,
                             const FunctionSpec& fn, const HpaConfig& cfg);

/// per_day_predictions holds, for each simulated day, 24+1 hourly rates
/// (the extra hour feeds the last interval's next-need lookup).
RunOutput run_pba_simulation(const ArrivalStream& arrivals,
                             const FunctionSpec& fn, const PbaConfig& cfg,
                             const std::vector<std::vector<double>>& per_day_predictions);

/// Full pipeline: trace, per-day forecasts, one shared arrival stream, both
/// autoscalers, CSV outputs, report and plot data under config.output_dir.
ComparisonReport run_scenario(const ScenarioConfig& config);

/// Recomputes a report from two recorded metrics CSVs covering the same
/// time range. The first stream takes the HPA slot of the savings formula.
ComparisonReport compare(const std::string& metrics_a_csv,
                         const std::string& metrics_b_csv);

/// Writes the per-figure plot CSVs from a completed run directory.
void emit_plot_data(const std::string& run_dir);

/// Metrics CSV schema shared by the simulator outputs.
extern const char* kMetricsHeader;

void write_metrics_csv(const std::string& path,
                       const std::vector<MetricsRecord>& metrics,
                       double tick_length);
void write_decisions_csv(const std::string& path,
                         const std::vector<ScalingDecision>& decisions);

}  // namespace scalesim
