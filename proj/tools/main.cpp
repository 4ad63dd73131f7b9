// Command-line front end: generate traces, fit-and-forecast, run the
// HPA-vs-PBA comparison scenario, or compare two recorded metrics files.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "scalesim/csv.hpp"
#include "scalesim/scenario.hpp"

namespace {

using namespace scalesim;

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

ScenarioConfig make_config(const CommonOpts& opts) {
  ScenarioConfig cfg;
  if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
  if (opts.seed) {
    cfg.seed = *opts.seed;
    cfg.workload.seed = *opts.seed;
  }
  if (opts.out_dir) cfg.output_dir = *opts.out_dir;
  return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "scenario config file");
  cmd->add_option("--seed", opts.seed, "override workload and arrival seed");
  cmd->add_option("--out", opts.out_dir, "output directory");
}

int cmd_generate(const CommonOpts& opts) {
  ScenarioConfig cfg = make_config(opts);
  cfg.workload.validate();
  const WorkloadTrace trace = generate_trace(cfg.workload);
  std::filesystem::create_directories(cfg.output_dir);
  const std::string path = cfg.output_dir + "/trace.csv";
  write_trace_csv(path, trace);
  std::cout << "wrote " << path << " (" << trace.days() << " days)\n";
  return 0;
}

int cmd_forecast(const CommonOpts& opts) {
  ScenarioConfig cfg = make_config(opts);
  cfg.validate();
  const WorkloadTrace trace = cfg.trace_file.empty()
                                  ? generate_trace(cfg.workload)
                                  : read_trace_any(cfg.trace_file);
  if (trace.days() < cfg.train_days + cfg.eval_days)
    throw std::invalid_argument("trace too short for the train/eval split");

  const TimeSeries history = trace.slice_days(0, cfg.train_days).to_series();
  const PipelineResult pr = pba_pipeline(
      history, cfg.eval_days * kHoursPerDay, cfg.pinned_order);

  std::filesystem::create_directories(cfg.output_dir);
  std::ostringstream pva;
  pva << "hour,actual,predicted\n";
  double abs_pct_sum = 0.0;
  long terms = 0;
  for (int h = 0; h < cfg.eval_days * kHoursPerDay; ++h) {
    const long hour = static_cast<long>(cfg.train_days) * kHoursPerDay + h;
    const double actual = trace.hourly[hour];
    pva << hour << "," << format_double(actual) << ","
        << format_double(pr.predictions[h]) << "\n";
    if (actual > 0) {
      abs_pct_sum += std::abs(pr.predictions[h] - actual) / actual;
      ++terms;
    }
  }
  const std::string path = cfg.output_dir + "/predicted_vs_actual.csv";
  write_file(path, pva.str());
  if (pr.fitted)
    write_file(cfg.output_dir + "/sarima_fit.txt", serialize_fit(*pr.fitted));

  std::cout << "order " << pr.order.to_string()
            << (pr.used_fallback ? " (seasonal-naive fallback)" : "") << "\n";
  if (terms > 0)
    std::cout << "MAPE " << abs_pct_sum / terms * 100.0 << "%\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_run(const CommonOpts& opts, const std::vector<std::string>& pba_args) {
  ScenarioConfig cfg = make_config(opts);
  // Positional overrides, in the order req_per_pod, initial_delay, interval.
  if (pba_args.size() > 3)
    throw std::invalid_argument("at most 3 positional PBA values accepted");
  if (pba_args.size() >= 1)
    cfg.pba.req_per_pod = static_cast<int>(parse_long(pba_args[0]));
  if (pba_args.size() >= 2) {
    cfg.pba.initial_delay = parse_double(pba_args[1]);
    cfg.pba.lead_time = cfg.pba.initial_delay;  // same clock offset
  }
  if (pba_args.size() >= 3) cfg.pba.interval = parse_double(pba_args[2]);

  const ComparisonReport report = run_scenario(cfg);
  std::cout << report.to_text();
  std::cout << "outputs in " << cfg.output_dir << "\n";
  return 0;
}

int cmd_compare(const std::string& a, const std::string& b,
                const std::optional<std::string>& out_dir) {
  const ComparisonReport report = compare(a, b);
  std::cout << report.to_text();
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    write_file(*out_dir + "/report.txt", report.to_text());
    write_file(*out_dir + "/report.csv", report.to_csv());
    std::cout << "outputs in " << *out_dir << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serverless autoscaling simulation lab"};
  app.require_subcommand(1);

  CommonOpts gen_opts, fc_opts, run_opts;
  std::vector<std::string> pba_args;
  std::string cmp_a, cmp_b;
  std::optional<std::string> cmp_out;

  CLI::App* generate = app.add_subcommand("generate", "generate a workload trace");
  add_common(generate, gen_opts);

  CLI::App* forecast = app.add_subcommand(
      "forecast", "fit and predict, writing predicted-vs-actual data");
  add_common(forecast, fc_opts);

  CLI::App* run = app.add_subcommand("run", "run the HPA-vs-PBA comparison");
  add_common(run, run_opts);
  run->add_option("pba", pba_args,
                  "positional PBA overrides: req_per_pod initial_delay interval");

  CLI::App* cmp = app.add_subcommand("compare", "compare two metrics CSVs");
  cmp->add_option("a", cmp_a, "first metrics CSV (HPA slot)")->required();
  cmp->add_option("b", cmp_b, "second metrics CSV (PBA slot)")->required();
  cmp->add_option("--out", cmp_out, "also write report files here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(gen_opts);
    if (forecast->parsed()) return cmd_forecast(fc_opts);
    if (run->parsed()) return cmd_run(run_opts, pba_args);
    if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
