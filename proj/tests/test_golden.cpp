// Golden checks for the checked-in reference scenario. The simulation is
// deterministic, so the shipped files are exact for the shipped defaults;
// the numeric tolerances only leave room for intentional config changes.

#include <cmath>
#include <doctest.h>
#include <filesystem>
#include <map>

#include "scalesim/csv.hpp"
#include "scalesim/scenario.hpp"

using namespace scalesim;
namespace fs = std::filesystem;

namespace {

const std::string kDataDir = SCALESIM_DATA_DIR;

std::map<std::string, std::string> read_kv_csv(const std::string& path) {
  std::map<std::string, std::string> kv;
  const auto lines = read_lines(path);
  REQUIRE(!lines.empty());
  CHECK(lines[0] == "key,value");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    REQUIRE(f.size() == 2);
    kv[f[0]] = f[1];
  }
  return kv;
}

}  // namespace

TEST_CASE("shipped reference trace matches the default generator") {
  const WorkloadTrace shipped = read_trace_csv(kDataDir + "/reference_trace.csv");
  const WorkloadTrace fresh = generate_trace(WorkloadSpec{});
  REQUIRE(shipped.hours() == fresh.hours());
  for (std::size_t h = 0; h < fresh.hours(); ++h)
    CHECK(shipped.hourly[h] == fresh.hourly[h]);
}

TEST_CASE("reference scenario reproduces the golden report") {
  const fs::path out = fs::temp_directory_path() / "scalesim_tests" / "golden";
  fs::remove_all(out);
  ScenarioConfig cfg;  // defaults are the reference scenario
  cfg.output_dir = out.string();
  const ComparisonReport rep = run_scenario(cfg);

  const auto golden = read_kv_csv(kDataDir + "/reference_report.csv");
  auto close = [&](const std::string& key, double actual, double rel) {
    const double expect = parse_double(golden.at(key));
    CHECK_MESSAGE(std::abs(actual - expect) <=
                      rel * (std::abs(expect) + 1e-12),
                  key);
  };
  close("hpa.pod_seconds", rep.hpa.pod_seconds, 0.10);
  close("pba.pod_seconds", rep.pba.pod_seconds, 0.10);
  close("hpa.mean_response_s", rep.hpa.mean_response, 0.10);
  close("pba.mean_response_s", rep.pba.mean_response, 0.10);
  REQUIRE(rep.pod_seconds_savings_pct.has_value());
  const double golden_savings =
      parse_double(golden.at("derived.pod_seconds_savings_pct"));
  CHECK(std::abs(*rep.pod_seconds_savings_pct - golden_savings) <= 3.0);
  CHECK(golden.at("derived.forecast_fallback") == "0");
  CHECK_FALSE(rep.forecast_fallback);

  // Full-resolution plot data: one row per simulated second plus a header.
  const auto resp = read_lines((out / "plot_response_time.csv").string());
  CHECK(resp.size() == 86400 + 1);
  const auto pva = read_lines((out / "plot_predicted_vs_actual.csv").string());
  CHECK(pva.size() == 24 + 1);
}

TEST_CASE("fit on the reference trace matches the golden coefficients") {
  const WorkloadTrace trace = read_trace_csv(kDataDir + "/reference_trace.csv");
  const TimeSeries train = trace.slice_days(0, 9).to_series();
  const SarimaOrder order = suggest_order(train, 24);
  const SarimaFit fresh = fit(train, order);
  const SarimaFit golden =
      parse_fit([] {
        std::string text;
        for (const auto& l : read_lines(kDataDir + "/reference_fit.txt"))
          text += l + "\n";
        return text;
      }());
  CHECK(fresh.order == golden.order);
  CHECK(fresh.n_obs == golden.n_obs);
  CHECK(fresh.sigma2 == doctest::Approx(golden.sigma2).epsilon(1e-9));
  CHECK(fresh.css == doctest::Approx(golden.css).epsilon(1e-9));
  auto check_vec = [](const std::vector<double>& a,
                      const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
  };
  check_vec(fresh.ar, golden.ar);
  check_vec(fresh.ma, golden.ma);
  check_vec(fresh.seasonal_ar, golden.seasonal_ar);
  check_vec(fresh.seasonal_ma, golden.seasonal_ma);
}
