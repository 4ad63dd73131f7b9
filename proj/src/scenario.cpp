#include "scalesim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "scalesim/csv.hpp"

namespace scalesim {

const char* kMetricsHeader =
    "time,arrivals,served,avg_response,pods_ready,pods_starting,cpu_util,"
    "mem_used,cold_hits";

namespace {

std::string fmt(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

struct MetricsFile {
  std::vector<MetricsRecord> rows;
  double dt = 1.0;
};

MetricsFile read_metrics_csv(const std::string& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != kMetricsHeader)
    throw std::invalid_argument("metrics schema mismatch in " + path);
  MetricsFile out;
  out.rows.reserve(lines.size() - 1);
  std::vector<double> times;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    if (f.size() != 9)
      throw std::invalid_argument("bad metrics row in " + path + ": " + lines[i]);
    MetricsRecord r;
    times.push_back(parse_double(f[0]));
    r.arrivals = parse_long(f[1]);
    r.served = parse_long(f[2]);
    r.avg_response = parse_double(f[3]);
    r.pods_ready = static_cast<int>(parse_long(f[4]));
    r.pods_starting = static_cast<int>(parse_long(f[5]));
    r.cpu_utilization = parse_double(f[6]);
    r.memory_used = parse_double(f[7]);
    r.cold_hits = parse_long(f[8]);
    out.rows.push_back(r);
  }
  if (out.rows.empty())
    throw std::invalid_argument("metrics file has no rows: " + path);
  if (times.size() >= 2) out.dt = times[1] - times[0];
  if (!(out.dt > 0))
    throw std::invalid_argument("non-increasing time column in " + path);
  return out;
}

ScalerSummary summarize(const MetricsFile& mf) {
  ScalerSummary s;
  double response_weighted = 0.0;
  double cpu_sum = 0.0;
  std::vector<double> responses;
  for (const MetricsRecord& r : mf.rows) {
    s.arrivals += r.arrivals;
    s.served += r.served;
    s.cold_hits += r.cold_hits;
    s.pod_seconds += (r.pods_ready + r.pods_starting) * mf.dt;
    cpu_sum += r.cpu_utilization;
    s.peak_memory = std::max(s.peak_memory, r.memory_used);
    if (r.served > 0) {
      response_weighted += r.avg_response * r.served;
      responses.push_back(r.avg_response);
    }
  }
  s.mean_response = s.served > 0 ? response_weighted / s.served : 0.0;
  s.mean_cpu_utilization =
      mf.rows.empty() ? 0.0 : cpu_sum / static_cast<double>(mf.rows.size());
  if (!responses.empty()) {
    std::sort(responses.begin(), responses.end());
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(responses.size())));
    s.p95_response = responses[std::max<std::size_t>(rank, 1) - 1];
  }
  return s;
}

void append_summary_csv(std::ostringstream& os, const std::string& prefix,
                        const ScalerSummary& s) {
  os << prefix << ".mean_response_s," << format_double(s.mean_response) << "\n";
  os << prefix << ".p95_response_s," << format_double(s.p95_response) << "\n";
  os << prefix << ".cold_hits," << s.cold_hits << "\n";
  os << prefix << ".pod_seconds," << format_double(s.pod_seconds) << "\n";
  os << prefix << ".mean_cpu_utilization,"
     << format_double(s.mean_cpu_utilization) << "\n";
  os << prefix << ".peak_memory," << format_double(s.peak_memory) << "\n";
  os << prefix << ".served," << s.served << "\n";
  os << prefix << ".arrivals," << s.arrivals << "\n";
}

}  // namespace

void ScenarioConfig::validate() const {
  workload.validate();
  function.validate();
  hpa.validate();
  pba.validate();
  if (!(tick_length > 0))
    throw std::invalid_argument("sim.tick_length must be > 0");
  const double ratio = 3600.0 / tick_length;
  if (std::abs(ratio - std::lround(ratio)) > 1e-9)
    throw std::invalid_argument("sim.tick_length must divide 3600 evenly");
  if (train_days < 2) throw std::invalid_argument("sim.train_days must be >= 2");
  if (eval_days < 1) throw std::invalid_argument("sim.eval_days must be >= 1");
  if (output_dir.empty())
    throw std::invalid_argument("sim.output_dir must not be empty");
  if (pinned_order) pinned_order->validate();
}

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg;
  bool pba_rpp_set = false;

  std::map<std::string, std::function<void(const std::string&)>> setters;
  auto d = [](double& ref) {
    return [&ref](const std::string& v) { ref = parse_double(v); };
  };
  auto i = [](int& ref) {
    return [&ref](const std::string& v) { ref = static_cast<int>(parse_long(v)); };
  };
  auto u64 = [](std::uint64_t& ref) {
    return [&ref](const std::string& v) { ref = std::stoull(v); };
  };
  auto str = [](std::string& ref) {
    return [&ref](const std::string& v) { ref = v; };
  };

  setters["workload.days"] = i(cfg.workload.days);
  setters["workload.base_rate"] = d(cfg.workload.base_rate);
  setters["workload.peak_rate"] = d(cfg.workload.peak_rate);
  setters["workload.peak_hour"] = i(cfg.workload.peak_hour);
  setters["workload.noise_fraction"] = d(cfg.workload.noise_fraction);
  setters["workload.seed"] = u64(cfg.workload.seed);
  setters["workload.trace_file"] = str(cfg.trace_file);
  setters["function.exec_time"] = d(cfg.function.exec_time);
  setters["function.cold_penalty"] = d(cfg.function.cold_penalty);
  setters["function.req_per_pod"] = i(cfg.function.req_per_pod);
  setters["function.pod_startup"] = d(cfg.function.pod_startup);
  setters["function.idle_timeout"] = d(cfg.function.idle_timeout);
  setters["function.cpu_per_req"] = d(cfg.function.cpu_per_req);
  setters["function.mem_per_pod"] = d(cfg.function.mem_per_pod);
  setters["hpa.target_utilization"] = d(cfg.hpa.target_utilization);
  setters["hpa.sync_period"] = d(cfg.hpa.sync_period);
  setters["hpa.tolerance"] = d(cfg.hpa.tolerance);
  setters["hpa.scale_down_stabilization"] = d(cfg.hpa.scale_down_stabilization);
  setters["hpa.min_replicas"] = i(cfg.hpa.min_replicas);
  setters["hpa.max_replicas"] = i(cfg.hpa.max_replicas);
  setters["pba.req_per_pod"] = [&](const std::string& v) {
    cfg.pba.req_per_pod = static_cast<int>(parse_long(v));
    pba_rpp_set = true;
  };
  setters["pba.initial_delay"] = d(cfg.pba.initial_delay);
  setters["pba.interval"] = d(cfg.pba.interval);
  setters["pba.lead_time"] = d(cfg.pba.lead_time);
  setters["pba.max_replicas"] = i(cfg.pba.max_replicas);
  setters["sim.tick_length"] = d(cfg.tick_length);
  setters["sim.train_days"] = i(cfg.train_days);
  setters["sim.eval_days"] = i(cfg.eval_days);
  setters["sim.arrival_mode"] = [&](const std::string& v) {
    cfg.arrival_mode = parse_arrival_mode(v);
  };
  setters["sim.seed"] = u64(cfg.seed);
  setters["sim.output_dir"] = str(cfg.output_dir);
  setters["forecast.order"] = [&](const std::string& v) {
    cfg.pinned_order = parse_order(v);
  };

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    auto strip = [](std::string& s) {
      const auto sb = s.find_first_not_of(" \t");
      const auto se = s.find_last_not_of(" \t");
      s = sb == std::string::npos ? "" : s.substr(sb, se - sb + 1);
    };
    strip(key);
    strip(val);
    const auto it = setters.find(key);
    if (it == setters.end())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    try {
      it->second(val);
    } catch (const std::exception& ex) {
      throw std::invalid_argument("config key '" + key + "': " + ex.what());
    }
  }
  if (!pba_rpp_set) cfg.pba.req_per_pod = cfg.function.req_per_pod;
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ostringstream os;
  for (const auto& l : read_lines(path)) os << l << "\n";
  return parse_config_text(os.str());
}

RunOutput run_hpa_simulation(const ArrivalStream& arrivals,
                             const FunctionSpec& fn, const HpaConfig& cfg) {
  cfg.validate();
  Cluster cluster(fn, arrivals.tick_length);
  HpaController controller(cfg);
  const long sync_ticks =
      std::max(1L, std::lround(cfg.sync_period / arrivals.tick_length));

  RunOutput out;
  out.metrics.reserve(arrivals.ticks());
  long window_count = 0;
  for (std::size_t t = 0; t < arrivals.ticks(); ++t) {
    if (static_cast<long>(t) % sync_ticks == 0) {
      const double rate = static_cast<double>(window_count) / cfg.sync_period;
      const double util = cluster.utilization(rate);
      ScalingDecision d = controller.decide(cluster.pod_count(), util,
                                            t * arrivals.tick_length);
      cluster.apply_decision(d.desired_replicas);
      out.decisions.push_back(d);
      window_count = 0;
    }
    out.metrics.push_back(cluster.step(arrivals.per_tick[t]));
    window_count += arrivals.per_tick[t];
  }
  return out;
}

RunOutput run_pba_simulation(
    const ArrivalStream& arrivals, const FunctionSpec& fn, const PbaConfig& cfg,
    const std::vector<std::vector<double>>& per_day_predictions) {
  cfg.validate();
  Cluster cluster(fn, arrivals.tick_length);
  const long interval_ticks =
      std::max(1L, std::lround(cfg.interval / arrivals.tick_length));
  const long lead_ticks = std::lround(cfg.lead_time / arrivals.tick_length);
  const long total_ticks = static_cast<long>(arrivals.ticks());
  const long total_intervals =
      (total_ticks + interval_ticks - 1) / interval_ticks;
  const int days = static_cast<int>(per_day_predictions.size());
  if (days == 0) throw std::invalid_argument("no predictions provided");
  for (const auto& day : per_day_predictions)
    if (day.size() != kHoursPerDay + 1)
      throw std::invalid_argument("each day needs 24+1 hourly predictions");

  // Hourly predictions flattened per interval; one extra entry feeds the
  // last interval's next-need lookup.
  std::vector<double> per_interval(total_intervals + 1);
  for (long i = 0; i <= total_intervals; ++i) {
    const long hour =
        static_cast<long>(std::floor(i * cfg.interval / 3600.0 + 1e-9));
    const int day = std::min(static_cast<int>(hour / kHoursPerDay), days - 1);
    const long idx = hour - static_cast<long>(day) * kHoursPerDay;
    per_interval[i] =
        per_day_predictions[day][std::min<std::size_t>(idx, kHoursPerDay)];
  }

  RunOutput out;
  out.metrics.reserve(arrivals.ticks());
  long next_decision = 0;
  for (long t = 0; t < total_ticks; ++t) {
    if (next_decision < total_intervals) {
      const long due = next_decision == 0
                           ? 0
                           : next_decision * interval_ticks - lead_ticks;
      if (t == std::max(0L, due)) {
        // The decision lands inside the interval in progress: ct keeps the
        // remainder of this interval covered while ft pre-warms the next.
        const int in_progress = static_cast<int>(t / interval_ticks);
        ScalingDecision d = pba_decide(per_interval, in_progress, cfg);
        d.at = t * arrivals.tick_length;
        cluster.apply_decision(d.desired_replicas);
        out.decisions.push_back(d);
        ++next_decision;
      }
    }
    out.metrics.push_back(cluster.step(arrivals.per_tick[t]));
  }
  return out;
}

void write_metrics_csv(const std::string& path,
                       const std::vector<MetricsRecord>& metrics,
                       double tick_length) {
  std::ostringstream os;
  os << kMetricsHeader << "\n";
  for (const MetricsRecord& r : metrics) {
    os << format_double(r.time * tick_length) << "," << r.arrivals << ","
       << r.served << "," << format_double(r.avg_response) << ","
       << r.pods_ready << "," << r.pods_starting << ","
       << format_double(r.cpu_utilization) << ","
       << format_double(r.memory_used) << "," << r.cold_hits << "\n";
  }
  write_file(path, os.str());
}

void write_decisions_csv(const std::string& path,
                         const std::vector<ScalingDecision>& decisions) {
  std::ostringstream os;
  os << "time,source,desired,ft,ct,prediction\n";
  for (const ScalingDecision& d : decisions) {
    os << format_double(d.at) << "," << to_string(d.source) << ","
       << d.desired_replicas << ",";
    if (d.source == ScalerKind::PBA)
      os << d.ft << "," << d.ct << "," << format_double(d.prediction);
    else
      os << ",,";
    os << "\n";
  }
  write_file(path, os.str());
}

std::string ComparisonReport::to_text() const {
  std::ostringstream os;
  auto row = [&](const std::string& label, const std::string& a,
                 const std::string& b) {
    os << "  ";
    os << label;
    for (std::size_t i = label.size(); i < 28; ++i) os << ' ';
    os << a;
    for (std::size_t i = a.size(); i < 16; ++i) os << ' ';
    os << b << "\n";
  };
  os << "autoscaler comparison (same arrival stream)\n";
  row("metric", "HPA", "PBA");
  row("mean response (s)", fmt(hpa.mean_response, 4), fmt(pba.mean_response, 4));
  row("p95 response (s)", fmt(hpa.p95_response, 4), fmt(pba.p95_response, 4));
  row("cold hits", std::to_string(hpa.cold_hits), std::to_string(pba.cold_hits));
  row("pod seconds", fmt(hpa.pod_seconds, 1), fmt(pba.pod_seconds, 1));
  row("mean cpu utilization", fmt(hpa.mean_cpu_utilization, 4),
      fmt(pba.mean_cpu_utilization, 4));
  row("peak memory", fmt(hpa.peak_memory, 1), fmt(pba.peak_memory, 1));
  row("served", std::to_string(hpa.served), std::to_string(pba.served));
  row("arrivals", std::to_string(hpa.arrivals), std::to_string(pba.arrivals));
  os << "  pod-seconds savings (PBA vs HPA): "
     << (pod_seconds_savings_pct ? fmt(*pod_seconds_savings_pct, 2) + "%"
                                 : std::string("n/a"))
     << "\n";
  if (forecast_mape_pct)
    os << "  forecast MAPE: " << fmt(*forecast_mape_pct, 2) << "%\n";
  os << "  forecast fallback: " << (forecast_fallback ? "yes" : "no") << "\n";
  return os.str();
}

std::string ComparisonReport::to_csv() const {
  std::ostringstream os;
  os << "key,value\n";
  append_summary_csv(os, "hpa", hpa);
  append_summary_csv(os, "pba", pba);
  os << "derived.pod_seconds_savings_pct,"
     << (pod_seconds_savings_pct ? format_double(*pod_seconds_savings_pct)
                                 : std::string("n/a"))
     << "\n";
  os << "derived.forecast_mape_pct,"
     << (forecast_mape_pct ? format_double(*forecast_mape_pct)
                           : std::string("n/a"))
     << "\n";
  os << "derived.forecast_fallback," << (forecast_fallback ? 1 : 0) << "\n";
  return os.str();
}

ComparisonReport compare(const std::string& metrics_a_csv,
                         const std::string& metrics_b_csv) {
  const MetricsFile a = read_metrics_csv(metrics_a_csv);
  const MetricsFile b = read_metrics_csv(metrics_b_csv);
  if (a.rows.size() != b.rows.size() || a.dt != b.dt)
    throw std::invalid_argument("metrics streams cover different time ranges");

  ComparisonReport rep;
  rep.hpa = summarize(a);
  rep.pba = summarize(b);
  if (rep.hpa.pod_seconds > 0)
    rep.pod_seconds_savings_pct = (rep.hpa.pod_seconds - rep.pba.pod_seconds) /
                                  rep.hpa.pod_seconds * 100.0;
  return rep;
}

void emit_plot_data(const std::string& run_dir) {
  namespace fs = std::filesystem;
  const std::string hpa_path = run_dir + "/metrics_hpa.csv";
  const std::string pba_path = run_dir + "/metrics_pba.csv";
  const std::string pva_path = run_dir + "/predicted_vs_actual.csv";
  for (const std::string& p : {hpa_path, pba_path, pva_path})
    if (!fs::exists(p))
      throw std::invalid_argument("missing run output: " + p);

  const auto hpa_lines = read_lines(hpa_path);
  const auto pba_lines = read_lines(pba_path);
  if (hpa_lines.size() != pba_lines.size())
    throw std::invalid_argument("metrics streams cover different time ranges");
  if (hpa_lines.empty() || hpa_lines[0] != kMetricsHeader ||
      pba_lines[0] != kMetricsHeader)
    throw std::invalid_argument("metrics schema mismatch");

  std::ostringstream resp, pods, cpu, mem;
  resp << "time,hpa,pba\n";
  pods << "time,hpa,pba\n";
  cpu << "time,hpa,pba\n";
  mem << "time,hpa,pba\n";
  for (std::size_t i = 1; i < hpa_lines.size(); ++i) {
    const auto h = split_csv_line(hpa_lines[i]);
    const auto p = split_csv_line(pba_lines[i]);
    if (h.size() != 9 || p.size() != 9 || h[0] != p[0])
      throw std::invalid_argument("metrics rows misaligned at line " +
                                  std::to_string(i + 1));
    const long h_pods = parse_long(h[4]) + parse_long(h[5]);
    const long p_pods = parse_long(p[4]) + parse_long(p[5]);
    resp << h[0] << "," << h[3] << "," << p[3] << "\n";
    pods << h[0] << "," << h_pods << "," << p_pods << "\n";
    cpu << h[0] << "," << h[6] << "," << p[6] << "\n";
    mem << h[0] << "," << h[7] << "," << p[7] << "\n";
  }
  write_file(run_dir + "/plot_response_time.csv", resp.str());
  write_file(run_dir + "/plot_pod_count.csv", pods.str());
  write_file(run_dir + "/plot_cpu.csv", cpu.str());
  write_file(run_dir + "/plot_memory.csv", mem.str());

  // Predicted-vs-actual is already tidy; republish under the plot prefix.
  const auto pva_lines = read_lines(pva_path);
  std::ostringstream pva;
  for (const auto& l : pva_lines) pva << l << "\n";
  write_file(run_dir + "/plot_predicted_vs_actual.csv", pva.str());
}

ComparisonReport run_scenario(const ScenarioConfig& config) {
  config.validate();
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);
  const std::string out = config.output_dir;

  WorkloadTrace trace = config.trace_file.empty()
                            ? generate_trace(config.workload)
                            : read_trace_any(config.trace_file);
  trace.validate();
  const int total_days = trace.days();
  if (total_days < config.train_days + config.eval_days)
    throw std::invalid_argument(
        "trace has " + std::to_string(total_days) + " day(s); need train+eval = " +
        std::to_string(config.train_days + config.eval_days));
  write_trace_csv(out + "/trace.csv", trace);

  // One forecast refresh per simulated day, refit on all history so far.
  std::vector<std::vector<double>> per_day_predictions;
  bool any_fallback = false;
  std::string first_fit_text;
  std::ostringstream pva;
  pva << "hour,actual,predicted\n";
  double abs_pct_sum = 0.0;
  long mape_terms = 0;
  for (int day = 0; day < config.eval_days; ++day) {
    const int history_days = config.train_days + day;
    const TimeSeries history = trace.slice_days(0, history_days).to_series();
    const PipelineResult pr =
        pba_pipeline(history, kHoursPerDay + 1, config.pinned_order);
    any_fallback = any_fallback || pr.used_fallback;
    if (day == 0 && pr.fitted) first_fit_text = serialize_fit(*pr.fitted);
    per_day_predictions.push_back(pr.predictions);
    for (int h = 0; h < kHoursPerDay; ++h) {
      const long hour = static_cast<long>(history_days) * kHoursPerDay + h;
      const double actual = trace.hourly[hour];
      const double predicted = pr.predictions[h];
      pva << hour << "," << format_double(actual) << ","
          << format_double(predicted) << "\n";
      if (actual > 0) {
        abs_pct_sum += std::abs(predicted - actual) / actual;
        ++mape_terms;
      }
    }
  }
  write_file(out + "/predicted_vs_actual.csv", pva.str());
  if (!first_fit_text.empty()) write_file(out + "/sarima_fit.txt", first_fit_text);

  // Both autoscalers consume the identical arrival stream.
  const WorkloadTrace eval_trace = trace.slice_days(
      config.train_days, config.train_days + config.eval_days);
  const ArrivalStream arrivals = expand_arrivals(
      eval_trace, config.tick_length, config.arrival_mode, config.seed);

  const RunOutput hpa_run =
      run_hpa_simulation(arrivals, config.function, config.hpa);
  const RunOutput pba_run = run_pba_simulation(arrivals, config.function,
                                               config.pba, per_day_predictions);

  write_metrics_csv(out + "/metrics_hpa.csv", hpa_run.metrics,
                    config.tick_length);
  write_metrics_csv(out + "/metrics_pba.csv", pba_run.metrics,
                    config.tick_length);
  write_decisions_csv(out + "/decisions_hpa.csv", hpa_run.decisions);
  write_decisions_csv(out + "/decisions_pba.csv", pba_run.decisions);

  ComparisonReport report =
      compare(out + "/metrics_hpa.csv", out + "/metrics_pba.csv");
  if (mape_terms > 0)
    report.forecast_mape_pct = abs_pct_sum / mape_terms * 100.0;
  report.forecast_fallback = any_fallback;
  write_file(out + "/report.txt", report.to_text());
  write_file(out + "/report.csv", report.to_csv());

  emit_plot_data(out);
  return report;
}

}  // namespace scalesim
