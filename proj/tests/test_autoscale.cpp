#include "scalesim/autoscale.hpp"

#include <cmath>
#include <doctest.h>

#include "helpers.hpp"
#include "scalesim/workload.hpp"

using namespace scalesim;

TEST_CASE("hpa holds the count inside the dead band") {
  HpaController ctl(HpaConfig{});
  const ScalingDecision d = ctl.decide(4, 0.5, 0.0);
  CHECK(d.desired_replicas == 4);
  CHECK(d.source == ScalerKind::HPA);
}

TEST_CASE("hpa fixed point at the target for any current count") {
  for (int current : {1, 2, 7, 23}) {
    HpaController ctl(HpaConfig{});
    CHECK(ctl.decide(current, 0.5, 0.0).desired_replicas == current);
  }
}

TEST_CASE("hpa doubles when utilization doubles the target") {
  HpaController ctl(HpaConfig{});
  CHECK(ctl.decide(4, 1.0, 0.0).desired_replicas == 8);
}

TEST_CASE("hpa scale-down waits out the stabilization window") {
  HpaConfig cfg;
  cfg.scale_down_stabilization = 300.0;
  HpaController ctl(cfg);
  CHECK(ctl.decide(8, 0.5, 0.0).desired_replicas == 8);    // rec 8
  CHECK(ctl.decide(8, 0.25, 150.0).desired_replicas == 8);  // rec 4, window max 8
  CHECK(ctl.decide(8, 0.25, 290.0).desired_replicas == 8);  // rec 4, window max 8
  // First recommendation ages out of the window: the maximum drops to 4.
  CHECK(ctl.decide(8, 0.25, 330.0).desired_replicas == 4);
}

TEST_CASE("hpa bootstraps from zero under load and stays down when idle") {
  HpaController ctl(HpaConfig{});
  CHECK(ctl.decide(0, 0.0, 0.0).desired_replicas == 0);
  CHECK(ctl.decide(0, 1.0, 400.0).desired_replicas == 1);
}

TEST_CASE("hpa respects replica clamps") {
  HpaConfig cfg;
  cfg.min_replicas = 2;
  cfg.max_replicas = 6;
  HpaController ctl(cfg);
  CHECK(ctl.decide(4, 1.0, 0.0).desired_replicas == 6);
  HpaController ctl2(cfg);
  CHECK(ctl2.decide(2, 0.0, 1000.0).desired_replicas == 2);
}

TEST_CASE("pba ceiling arithmetic") {
  PbaConfig cfg;
  cfg.req_per_pod = 40;
  const std::vector<double> preds = {100.0};
  const ScalingDecision d = pba_decide(preds, 0, cfg);
  CHECK(d.ct == 3);
  CHECK(d.ft == 3);  // end of horizon falls back to ct
  CHECK(d.desired_replicas == 3);
  CHECK(d.source == ScalerKind::PBA);
}

TEST_CASE("pba takes the max of current and next interval needs") {
  PbaConfig cfg;
  cfg.req_per_pod = 40;
  const std::vector<double> preds = {100.0, 200.0};
  const ScalingDecision d = pba_decide(preds, 0, cfg);
  CHECK(d.ct == 3);
  CHECK(d.ft == 5);
  CHECK(d.desired_replicas == 5);
}

TEST_CASE("pba scales to zero when no traffic is forecast") {
  PbaConfig cfg;
  const std::vector<double> preds = {0.0, 0.0};
  CHECK(pba_decide(preds, 0, cfg).desired_replicas == 0);
}

TEST_CASE("pba desired count is monotone in the predictions") {
  PbaConfig cfg;
  cfg.req_per_pod = 17;
  cfg.max_replicas = 1000;
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(6), b(6);
    for (int i = 0; i < 6; ++i) {
      a[i] = 300.0 * testutil::uniform01(rng);
      b[i] = a[i] + 50.0 * testutil::uniform01(rng);
    }
    const int idx = static_cast<int>(rng() % 5);
    CHECK(pba_decide(b, idx, cfg).desired_replicas >=
          pba_decide(a, idx, cfg).desired_replicas);
  }
}

TEST_CASE("pba sizes within one pod of the predicted need") {
  PbaConfig cfg;
  cfg.req_per_pod = 23;
  cfg.max_replicas = 1000;
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> preds(4);
    for (double& p : preds) p = 500.0 * testutil::uniform01(rng);
    const int idx = static_cast<int>(rng() % 3);
    const ScalingDecision d = pba_decide(preds, idx, cfg);
    const double need = std::max(preds[idx], preds[idx + 1]);
    CHECK(static_cast<double>(d.desired_replicas) * cfg.req_per_pod >= need);
    if (d.desired_replicas > 0)
      CHECK(static_cast<double>(d.desired_replicas - 1) * cfg.req_per_pod <
            need);
  }
}

TEST_CASE("pba clamps at max_replicas") {
  PbaConfig cfg;
  cfg.req_per_pod = 1;
  cfg.max_replicas = 5;
  const std::vector<double> preds = {1000.0, 1000.0};
  CHECK(pba_decide(preds, 0, cfg).desired_replicas == 5);
}

TEST_CASE("pba rejects an out-of-range interval index") {
  PbaConfig cfg;
  const std::vector<double> preds = {1.0};
  CHECK_THROWS_AS(pba_decide(preds, 1, cfg), std::invalid_argument);
  CHECK_THROWS_AS(pba_decide(preds, -1, cfg), std::invalid_argument);
}

TEST_CASE("pipeline reproduces an exactly periodic history") {
  WorkloadSpec spec;
  spec.days = 9;
  spec.noise_fraction = 0.0;
  const TimeSeries history = generate_trace(spec).to_series();
  const PipelineResult pr = pba_pipeline(history, 24, std::nullopt);
  CHECK_FALSE(pr.used_fallback);
  REQUIRE(pr.predictions.size() == 24);
  for (int h = 0; h < 24; ++h)
    CHECK(pr.predictions[h] ==
          doctest::Approx(history.values[h]).epsilon(1e-12));
}

TEST_CASE("pipeline forecasts the held-out day within 15 percent") {
  WorkloadSpec spec;
  spec.days = 10;
  spec.noise_fraction = 0.1;
  spec.seed = 42;
  const WorkloadTrace trace = generate_trace(spec);
  const PipelineResult pr =
      pba_pipeline(trace.slice_days(0, 9).to_series(), 24, std::nullopt);
  double mape = 0;
  int terms = 0;
  for (int h = 0; h < 24; ++h) {
    const double actual = trace.hourly[9 * 24 + h];
    if (actual > 0) {
      mape += std::abs(pr.predictions[h] - actual) / actual;
      ++terms;
    }
  }
  REQUIRE(terms > 0);
  CHECK(mape / terms <= 0.15);
}

TEST_CASE("pipeline on an all-zero history predicts zero pods") {
  const TimeSeries history(std::vector<double>(240, 0.0));
  const PipelineResult pr = pba_pipeline(history, 24, std::nullopt);
  PbaConfig cfg;
  for (int h = 0; h < 24; ++h) CHECK(pr.predictions[h] == 0.0);
  CHECK(pba_decide(pr.predictions, 0, cfg).desired_replicas == 0);
}

TEST_CASE("pipeline falls back to seasonal naive when fitting is impossible") {
  // Too short for any fit once an order is pinned, but a full period exists.
  std::vector<double> v;
  for (int i = 0; i < 48; ++i) v.push_back(5.0 + (i % 24));
  const TimeSeries history(v);
  SarimaOrder pinned{3, 0, 3, 1, 0, 1, 24};  // needs far more data
  const PipelineResult pr = pba_pipeline(history, 24, pinned);
  CHECK(pr.used_fallback);
  for (int h = 0; h < 24; ++h)
    CHECK(pr.predictions[h] == history.values[24 + h]);
}

TEST_CASE("config validation messages name the field") {
  HpaConfig h;
  h.target_utilization = 0.0;
  CHECK_THROWS_WITH_AS(h.validate(),
                       "hpa.target_utilization must be in (0,1]",
                       std::invalid_argument);
  PbaConfig p;
  p.lead_time = 4000.0;
  CHECK_THROWS_WITH_AS(p.validate(), "pba.lead_time must be below the interval",
                       std::invalid_argument);
}
