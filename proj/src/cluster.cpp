#include "scalesim/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scalesim {

void FunctionSpec::validate() const {
  if (!(exec_time > 0)) throw std::invalid_argument("function.exec_time must be > 0");
  if (cold_penalty < 0) throw std::invalid_argument("function.cold_penalty must be >= 0");
  if (req_per_pod < 1) throw std::invalid_argument("function.req_per_pod must be >= 1");
  if (pod_startup < 0) throw std::invalid_argument("function.pod_startup must be >= 0");
  if (!(idle_timeout > 0)) throw std::invalid_argument("function.idle_timeout must be > 0");
  if (cpu_per_req < 0) throw std::invalid_argument("function.cpu_per_req must be >= 0");
  if (mem_per_pod < 0) throw std::invalid_argument("function.mem_per_pod must be >= 0");
}

Cluster::Cluster(FunctionSpec spec, double tick_length)
    : spec_(spec), tick_length_(tick_length) {
  spec_.validate();
  if (!(tick_length > 0))
    throw std::invalid_argument("tick_length must be positive");
  idle_ticks_ = std::max(1L, std::lround(spec_.idle_timeout / tick_length_));
}

int Cluster::pods_ready() const {
  // A Starting pod counts as Ready exactly from its ready_at tick, matching
  // the promotion step() performs.
  int n = 0;
  for (const Pod& p : pods_)
    if (p.state == PodState::Ready || p.ready_at <= now_) ++n;
  return n;
}

long Cluster::queue_size() const {
  long n = 0;
  for (const Batch& b : queue_) n += b.count;
  return n;
}

void Cluster::apply_decision(int desired_replicas) {
  if (desired_replicas < 0)
    throw std::invalid_argument("desired replica count must be >= 0");
  const long startup_ticks = std::lround(spec_.pod_startup / tick_length_);
  while (pod_count() < desired_replicas) {
    Pod p;
    p.id = next_pod_id_++;
    p.ready_at = now_ + startup_ticks;
    p.state = startup_ticks <= 0 ? PodState::Ready : PodState::Starting;
    pods_.push_back(p);
  }
  while (pod_count() > desired_replicas) {
    auto starting = std::find_if(pods_.begin(), pods_.end(), [](const Pod& p) {
      return p.state == PodState::Starting;
    });
    if (starting != pods_.end())
      pods_.erase(starting);
    else
      pods_.pop_back();
  }
}

MetricsRecord Cluster::step(long arrivals) {
  if (arrivals < 0) throw std::invalid_argument("arrivals must be >= 0");

  for (Pod& p : pods_)
    if (p.state == PodState::Starting && p.ready_at <= now_)
      p.state = PodState::Ready;

  const int ready = pods_ready();
  long capacity = static_cast<long>(
      std::floor(static_cast<double>(ready) * spec_.req_per_pod * tick_length_ +
                 1e-9));

  MetricsRecord rec;
  rec.time = now_;
  rec.arrivals = arrivals;
  rec.pods_ready = ready;
  rec.pods_starting = pods_starting();
  total_arrivals_ += arrivals;

  const double queued_before = static_cast<double>(queue_size());

  auto serve = [&](long count, long arrival_tick, bool cold) {
    const double wait = (now_ - arrival_tick) * tick_length_;
    const double response =
        spec_.exec_time + wait + (cold ? spec_.cold_penalty : 0.0);
    rec.served += count;
    rec.sum_response += count * response;
    rec.sum_wait += count * wait;
    if (cold) rec.cold_hits += count;
    if (response_log)
      response_log->insert(response_log->end(), count, response);
  };

  while (capacity > 0 && !queue_.empty()) {
    Batch& b = queue_.front();
    const long take = std::min(capacity, b.count);
    serve(take, b.arrival_tick, b.cold);
    capacity -= take;
    b.count -= take;
    if (b.count == 0) queue_.pop_front();
  }
  if (arrivals > 0) {
    const long warm = std::min(capacity, arrivals);
    if (warm > 0) serve(warm, now_, false);
    capacity -= warm;
    if (arrivals > warm) queue_.push_back({now_, arrivals - warm, true});
  }

  total_served_ += rec.served;
  total_cold_served_ += rec.cold_hits;
  rec.avg_response = rec.served > 0 ? rec.sum_response / rec.served : 0.0;

  const double demand_rate =
      (static_cast<double>(arrivals) + queued_before) / tick_length_;
  const double cap_rate = static_cast<double>(ready) * spec_.req_per_pod;
  if (demand_rate <= 0)
    rec.cpu_utilization = 0.0;
  else if (cap_rate <= 0)
    rec.cpu_utilization = 1.0;
  else
    rec.cpu_utilization = std::min(1.0, demand_rate / cap_rate);
  rec.memory_used = static_cast<double>(pod_count()) * spec_.mem_per_pod;

  pod_seconds_ += static_cast<double>(pod_count()) * tick_length_;

  if (arrivals > 0) {
    last_traffic_at_ = now_;
  } else if (now_ - last_traffic_at_ == idle_ticks_) {
    // Idle window crossed: scale to zero. Triggered once per idle stretch,
    // so a later autoscaler decision can pre-warm pods through a longer lull.
    pods_.clear();
  }

  ++now_;
  return rec;
}

double Cluster::utilization(double arrivals_rate) const {
  const double demand =
      arrivals_rate + static_cast<double>(queue_size()) / tick_length_;
  if (demand <= 0) return 0.0;
  const double capacity = static_cast<double>(pods_ready()) * spec_.req_per_pod;
  if (capacity <= 0) return 1.0;
  return std::min(1.0, demand / capacity);
}

}  // namespace scalesim
