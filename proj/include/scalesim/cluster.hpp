#pragma once

#include <deque>
#include <string>
#include <vector>

namespace scalesim {

/// Static properties of the simulated function deployment.
struct FunctionSpec {
  double exec_time = 0.1;      // warm per-request service time, seconds
  double cold_penalty = 0.5;   // added latency when served cold, seconds
  int req_per_pod = 40;        // requests/sec one ready pod serves
  double pod_startup = 30.0;   // Starting -> Ready delay, seconds
  double idle_timeout = 300.0; // no-traffic window before scale-to-zero
  double cpu_per_req = 0.025;  // CPU-units per in-flight request
  double mem_per_pod = 256.0;  // memory-units per pod

  void validate() const;
};

enum class PodState { Starting, Ready };

struct Pod {
  int id = 0;
  PodState state = PodState::Starting;
  long ready_at = 0;  // tick at which a Starting pod becomes Ready
};

/// One tick of observability output.
struct MetricsRecord {
  long time = 0;  // tick index; CSV emits seconds
  long arrivals = 0;
  long served = 0;
  double avg_response = 0.0;  // seconds, over requests served this tick
  int pods_ready = 0;
  int pods_starting = 0;
  double cpu_utilization = 0.0;  // min(1, demand/capacity)
  double memory_used = 0.0;
  long cold_hits = 0;  // cold-flagged requests served this tick

  // In-memory detail, not part of the CSV schema.
  double sum_response = 0.0;
  double sum_wait = 0.0;
};

/// Discrete-time cluster: pod lifecycle with startup delay, FIFO request
/// queue served at ready-pod capacity, additive cold-start latency, and
/// scale-to-zero after an idle window. Fixed timestep; fully deterministic.
class Cluster {
 public:
  Cluster(FunctionSpec spec, double tick_length);

  /// Sets the replica count: scale-ups add Starting pods that become Ready
  /// pod_startup later; scale-downs remove Starting pods first, then Ready,
  /// instantaneously. No-op when desired equals the current count.
  void apply_decision(int desired_replicas);

  /// Advances one tick with the given arrivals and returns its metrics.
  MetricsRecord step(long arrivals);

  /// min(1, demand/capacity) with demand = arrivals_rate + queue/tick and
  /// capacity = pods_ready * req_per_pod; 1 when starved, 0 when idle.
  double utilization(double arrivals_rate) const;

  long now() const { return now_; }
  int pod_count() const { return static_cast<int>(pods_.size()); }
  int pods_ready() const;
  int pods_starting() const { return pod_count() - pods_ready(); }
  long queue_size() const;
  double tick_length() const { return tick_length_; }
  const FunctionSpec& spec() const { return spec_; }

  double pod_seconds() const { return pod_seconds_; }
  long total_arrivals() const { return total_arrivals_; }
  long total_served() const { return total_served_; }
  long total_cold_served() const { return total_cold_served_; }

  /// When set, every served request appends its response time (seconds)
  /// in FIFO order. Intended for tests.
  std::vector<double>* response_log = nullptr;

 private:
  struct Batch {
    long arrival_tick;
    long count;
    bool cold;
  };

  FunctionSpec spec_;
  double tick_length_;
  long idle_ticks_;
  long now_ = 0;
  int next_pod_id_ = 0;
  std::vector<Pod> pods_;
  std::deque<Batch> queue_;
  long last_traffic_at_ = -1;  // most recent tick with arrivals > 0
  double pod_seconds_ = 0.0;
  long total_arrivals_ = 0;
  long total_served_ = 0;
  long total_cold_served_ = 0;
};

}  // namespace scalesim
