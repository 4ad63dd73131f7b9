#include "scalesim/scenario.hpp"

#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scalesim/csv.hpp"

using namespace scalesim;
namespace fs = std::filesystem;

namespace {

fs::path test_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "scalesim_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Small, fast scenario: 4 noiseless days, minute ticks.
ScenarioConfig small_config(const fs::path& out) {
  ScenarioConfig cfg;
  cfg.workload.days = 4;
  cfg.workload.base_rate = 2.0;
  cfg.workload.peak_rate = 60.0;
  cfg.workload.noise_fraction = 0.0;
  cfg.train_days = 3;
  cfg.eval_days = 1;
  cfg.tick_length = 60.0;
  cfg.output_dir = out.string();
  return cfg;
}

}  // namespace

TEST_CASE("config text parsing: defaults, overrides, diagnostics") {
  const ScenarioConfig empty = parse_config_text("");
  CHECK(empty.workload.days == 10);
  CHECK(empty.train_days == 9);
  CHECK(empty.hpa.target_utilization == 0.5);
  CHECK(empty.pba.req_per_pod == empty.function.req_per_pod);

  const ScenarioConfig cfg = parse_config_text(
      "# comment\n"
      "workload.days = 12\n"
      "function.req_per_pod = 25\n"
      "hpa.tolerance = 0.2   # trailing comment\n"
      "pba.interval = 1800\n"
      "sim.seed = 7\n"
      "forecast.order = (1,0,0)(0,1,1)24\n");
  CHECK(cfg.workload.days == 12);
  CHECK(cfg.function.req_per_pod == 25);
  CHECK(cfg.pba.req_per_pod == 25);  // follows the function unless pinned
  CHECK(cfg.hpa.tolerance == 0.2);
  CHECK(cfg.pba.interval == 1800.0);
  CHECK(cfg.seed == 7);
  REQUIRE(cfg.pinned_order.has_value());
  CHECK(*cfg.pinned_order == SarimaOrder{1, 0, 0, 0, 1, 1, 24});

  CHECK_THROWS_WITH_AS(parse_config_text("nope.key = 1\n"),
                       "config line 1: unknown key 'nope.key'",
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("workload.days\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("workload.days = abc\n"),
                  std::invalid_argument);
}

TEST_CASE("config validation reports the failing field") {
  ScenarioConfig cfg;
  cfg.train_days = 1;
  CHECK_THROWS_WITH_AS(cfg.validate(), "sim.train_days must be >= 2",
                       std::invalid_argument);
  cfg = ScenarioConfig{};
  cfg.tick_length = 7.0;
  CHECK_THROWS_WITH_AS(cfg.validate(), "sim.tick_length must divide 3600 evenly",
                       std::invalid_argument);
}

TEST_CASE("run_scenario produces the full output set and a sane report") {
  const fs::path out = test_dir("run_small");
  const ComparisonReport rep = run_scenario(small_config(out));

  for (const char* name :
       {"trace.csv", "predicted_vs_actual.csv", "metrics_hpa.csv",
        "metrics_pba.csv", "decisions_hpa.csv", "decisions_pba.csv",
        "report.txt", "report.csv", "plot_response_time.csv",
        "plot_pod_count.csv", "plot_cpu.csv", "plot_memory.csv",
        "plot_predicted_vs_actual.csv", "sarima_fit.txt"})
    CHECK_MESSAGE(fs::exists(out / name), name);

  CHECK(rep.hpa.arrivals == rep.pba.arrivals);  // shared stream
  CHECK(rep.hpa.served == rep.hpa.arrivals);
  CHECK(rep.pba.served == rep.pba.arrivals);
  CHECK(rep.pba.pod_seconds > 0);
  REQUIRE(rep.forecast_mape_pct.has_value());
  CHECK(*rep.forecast_mape_pct == doctest::Approx(0.0).epsilon(1e-9));
  CHECK_FALSE(rep.forecast_fallback);
}

TEST_CASE("re-running compare on recorded outputs reproduces the report") {
  const fs::path out = test_dir("run_recompare");
  const ComparisonReport rep = run_scenario(small_config(out));
  const ComparisonReport again = compare((out / "metrics_hpa.csv").string(),
                                         (out / "metrics_pba.csv").string());
  CHECK(again.hpa.mean_response == rep.hpa.mean_response);
  CHECK(again.pba.mean_response == rep.pba.mean_response);
  CHECK(again.hpa.pod_seconds == rep.hpa.pod_seconds);
  CHECK(again.pba.pod_seconds == rep.pba.pod_seconds);
  CHECK(again.hpa.p95_response == rep.hpa.p95_response);
  REQUIRE(again.pod_seconds_savings_pct.has_value());
  REQUIRE(rep.pod_seconds_savings_pct.has_value());
  CHECK(*again.pod_seconds_savings_pct == *rep.pod_seconds_savings_pct);
}

TEST_CASE("identical configs produce byte-identical outputs") {
  const fs::path a = test_dir("det_a");
  const fs::path b = test_dir("det_b");
  ScenarioConfig cfg_a = small_config(a);
  cfg_a.workload.noise_fraction = 0.1;  // exercise the stochastic paths
  cfg_a.arrival_mode = ArrivalMode::Poisson;
  ScenarioConfig cfg_b = cfg_a;
  cfg_b.output_dir = b.string();
  run_scenario(cfg_a);
  run_scenario(cfg_b);
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    CHECK_MESSAGE(slurp(entry.path()) == slurp(b / name), name.string());
  }
}

TEST_CASE("compare of a file with itself yields zero savings") {
  const fs::path out = test_dir("self_compare");
  run_scenario(small_config(out));
  const std::string f = (out / "metrics_hpa.csv").string();
  const ComparisonReport rep = compare(f, f);
  REQUIRE(rep.pod_seconds_savings_pct.has_value());
  CHECK(*rep.pod_seconds_savings_pct == 0.0);
  CHECK(rep.hpa.mean_response == rep.pba.mean_response);
  CHECK(rep.hpa.cold_hits == rep.pba.cold_hits);
}

TEST_CASE("doubled pod counts halve the pod seconds") {
  const fs::path out = test_dir("double_pods");
  std::ostringstream a, b;
  a << kMetricsHeader << "\n";
  b << kMetricsHeader << "\n";
  for (int t = 0; t < 100; ++t) {
    a << t << ",5,5,0.1,4,0,0.5,1024,0\n";
    b << t << ",5,5,0.1,2,0,0.5,512,0\n";
  }
  write_file((out / "a.csv").string(), a.str());
  write_file((out / "b.csv").string(), b.str());
  const ComparisonReport rep =
      compare((out / "a.csv").string(), (out / "b.csv").string());
  REQUIRE(rep.pod_seconds_savings_pct.has_value());
  CHECK(*rep.pod_seconds_savings_pct == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("compare rejects schema and range mismatches") {
  const fs::path out = test_dir("bad_compare");
  std::ostringstream good, short_file;
  good << kMetricsHeader << "\n0,1,1,0.1,1,0,0.5,256,0\n1,1,1,0.1,1,0,0.5,256,0\n";
  short_file << kMetricsHeader << "\n0,1,1,0.1,1,0,0.5,256,0\n";
  write_file((out / "good.csv").string(), good.str());
  write_file((out / "short.csv").string(), short_file.str());
  write_file((out / "alien.csv").string(), "time,other\n0,1\n");
  CHECK_THROWS_AS(
      compare((out / "good.csv").string(), (out / "short.csv").string()),
      std::invalid_argument);
  CHECK_THROWS_AS(
      compare((out / "good.csv").string(), (out / "alien.csv").string()),
      std::invalid_argument);
}

TEST_CASE("zero traffic settles both autoscalers at zero pods") {
  const fs::path out = test_dir("zero_traffic");
  std::ostringstream trace;
  trace << "hour,rate\n";
  for (int h = 0; h < 96; ++h) trace << h << ",0\n";
  const std::string trace_path = (out / "zero.csv").string();
  write_file(trace_path, trace.str());

  ScenarioConfig cfg = small_config(out / "run");
  cfg.trace_file = trace_path;
  const ComparisonReport rep = run_scenario(cfg);
  CHECK(rep.hpa.pod_seconds == 0.0);
  CHECK(rep.pba.pod_seconds == 0.0);
  CHECK_FALSE(rep.pod_seconds_savings_pct.has_value());
  CHECK_FALSE(rep.forecast_mape_pct.has_value());
  CHECK(rep.to_text().find("n/a") != std::string::npos);
  CHECK(rep.to_csv().find("derived.pod_seconds_savings_pct,n/a") !=
        std::string::npos);
}

TEST_CASE("multi-day evaluation refits once per day and spans the window") {
  const fs::path out = test_dir("two_eval_days");
  ScenarioConfig cfg = small_config(out);
  cfg.workload.days = 5;
  cfg.train_days = 3;
  cfg.eval_days = 2;
  const ComparisonReport rep = run_scenario(cfg);
  CHECK(rep.hpa.served == rep.hpa.arrivals);

  const auto metrics = read_lines((out / "metrics_pba.csv").string());
  CHECK(metrics.size() == 2 * 24 * 60 + 1);
  const auto pva = read_lines((out / "predicted_vs_actual.csv").string());
  CHECK(pva.size() == 2 * 24 + 1);

  // One decision per hour across both days, plus the hour-zero bootstrap.
  const auto decisions = read_lines((out / "decisions_pba.csv").string());
  CHECK(decisions.size() == 2 * 24 + 1);
}

TEST_CASE("plot data matches the simulated duration") {
  const fs::path out = test_dir("plots");
  run_scenario(small_config(out));
  const long ticks = 24 * 60;  // one eval day at minute ticks
  for (const char* name : {"plot_response_time.csv", "plot_pod_count.csv",
                           "plot_cpu.csv", "plot_memory.csv"}) {
    const auto lines = read_lines((out / name).string());
    CHECK_MESSAGE(static_cast<long>(lines.size()) == ticks + 1, name);
    CHECK(lines[0] == "time,hpa,pba");
  }
  const auto pva = read_lines((out / "plot_predicted_vs_actual.csv").string());
  CHECK(pva.size() == 24 + 1);
}

TEST_CASE("emit_plot_data demands a completed run directory") {
  const fs::path out = test_dir("plots_missing");
  CHECK_THROWS_AS(emit_plot_data(out.string()), std::invalid_argument);
}
