#include "lpsched/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace lpsched {

BeliefRefiner::BeliefRefiner(Bins bins, ObservationModel model, std::uint64_t seed)
    : bins_(std::move(bins)), transition_(build_transition(bins_)), model_(model), seed_(seed) {}

void BeliefRefiner::observe(Job& job, std::uint64_t step) const {
  Rng rng(splitmix64(seed_ ^ splitmix64(job.id)) + splitmix64(step));
  const double remaining = std::clamp(job.size - job.age, bins_.lower(), bins_.upper());
  Observation p = synth_observation(remaining, bins_, model_, rng);
  if (job.prediction.belief && job.prediction.belief->size() == p.size())
    job.prediction.belief = bayes_update_or_reset(*job.prediction.belief, p, transition_);
  else
    job.prediction.belief = std::move(p);
}

namespace {

void order_by_arrival(std::vector<Job>& jobs) {
  std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return a.arrival_time != b.arrival_time ? a.arrival_time < b.arrival_time : a.id < b.id;
  });
}

JobRecord make_record(const Job& j) {
  return JobRecord{j.id,
                   j.arrival_time,
                   j.size,
                   j.prediction.initial,
                   j.first_service_time.value_or(j.arrival_time),
                   j.completion_time.value_or(j.arrival_time),
                   j.preemption_count};
}

void finish_stats(SimStats& stats, std::size_t warmup) {
  summarize(stats, warmup);
  stats.completed = static_cast<std::int64_t>(stats.per_job.size());
  stats.preemptions = 0;
  for (std::size_t i = static_cast<std::size_t>(stats.warmup); i < stats.per_job.size(); ++i)
    stats.preemptions += stats.per_job[i].preemptions;
}

bool ranks_move_during_service(const RankPolicy& policy) {
  return policy.source != RankPolicy::Source::static_prediction &&
         (policy.kind == RankPolicy::Kind::sprpt || policy.kind == RankPolicy::Kind::sprpt_lp);
}

struct Waiting {
  RankValue rank;
  std::size_t index;
};

struct LaterRank {
  bool operator()(const Waiting& a, const Waiting& b) const { return b.rank < a.rank; }
};

}  // namespace

SimResult simulate_continuous(std::vector<Job> jobs, const EngineOptions& options) {
  const RankPolicy& policy = options.policy;
  policy.validate();
  order_by_arrival(jobs);

  const std::size_t n = jobs.size();
  const auto warmup = static_cast<std::size_t>(std::floor(options.warmup_fraction * static_cast<double>(n)));
  const bool unit_events = ranks_move_during_service(policy);

  SimResult result;
  SimStats& stats = result.stats;
  stats.per_job.reserve(n);

  std::priority_queue<Waiting, std::vector<Waiting>, LaterRank> waiting;
  std::optional<std::size_t> running;
  double now = 0.0;
  double held = 0.0;  // ages of started jobs that are not in service
  std::size_t next = 0;
  std::size_t done = 0;

  auto start = [&](std::size_t i) {
    Job& j = jobs[i];
    if (!j.started()) j.first_service_time = now;
    held -= j.age;
    running = i;
  };

  auto schedule = [&] {
    if (!running) {
      if (waiting.empty()) return;
      const std::size_t i = waiting.top().index;
      waiting.pop();
      start(i);
      return;
    }
    if (waiting.empty()) return;
    Job& current = jobs[*running];
    if (!preemptable(policy, current)) return;
    if (!(waiting.top().rank.value < rank(policy, current, now).value)) return;
    const std::size_t challenger = waiting.top().index;
    waiting.pop();
    ++current.preemption_count;
    held += current.age;
    waiting.push({rank(policy, current, now), *running});
    running.reset();
    start(challenger);
  };

  while (done < n) {
    const double t_arrival = next < n ? jobs[next].arrival_time : kInf;
    double t_complete = kInf;
    double t_unit = kInf;
    if (running) {
      const Job& j = jobs[*running];
      t_complete = now + (j.size - j.age);
      if (unit_events) t_unit = now + (std::floor(j.age) + 1.0 - j.age);
    }
    const double t_next = std::min({t_arrival, t_complete, t_unit});
    const bool completes = running && t_complete <= t_next;
    const bool unit_boundary = running && !completes && t_unit <= t_next;

    if (running) {
      Job& j = jobs[*running];
      stats.busy_time += t_next - now;
      if (completes) j.age = j.size;
      else if (unit_boundary) j.age = std::floor(j.age) + 1.0;
      else j.age += t_next - now;
    }
    now = t_next;

    const double memory = held + (running ? jobs[*running].age : 0.0);
    if (done >= warmup) stats.peak_memory = std::max(stats.peak_memory, memory);
    if (options.record_memory_trace) result.memory_trace.push_back({now, memory});

    if (completes) {
      Job& j = jobs[*running];
      j.completion_time = now;
      stats.per_job.push_back(make_record(j));
      ++done;
      running.reset();
    } else if (unit_boundary && options.refiner && policy.source == RankPolicy::Source::belief) {
      Job& j = jobs[*running];
      options.refiner->observe(j, static_cast<std::uint64_t>(j.age));
    }

    while (next < n && jobs[next].arrival_time <= now) {
      waiting.push({rank(policy, jobs[next], now), next});
      ++next;
    }
    schedule();
  }

  stats.end_time = now;
  finish_stats(stats, warmup);
  return result;
}

SimResult simulate_batch(std::vector<Job> jobs, const EngineOptions& options) {
  RankPolicy policy = options.policy;
  policy.discrete_threshold = true;
  policy.validate();
  if (!(options.memory_budget > 0.0)) throw std::invalid_argument("memory budget must be positive");
  if (!(options.recompute_rate > 0.0)) throw std::invalid_argument("recompute rate must be positive");
  for (const Job& j : jobs) {
    if (!(j.size >= 1.0) || j.size != std::floor(j.size))
      throw std::invalid_argument("batch mode needs positive integer sizes");
  }
  order_by_arrival(jobs);

  const std::size_t n = jobs.size();
  const auto warmup = static_cast<std::size_t>(std::floor(options.warmup_fraction * static_cast<double>(n)));
  const bool hold = options.preemption == PreemptionCost::hold;
  const double budget = options.memory_budget;

  SimResult result;
  SimStats& stats = result.stats;
  stats.per_job.reserve(n);

  std::vector<double> resident(n, 0.0);  // KV state currently in memory
  std::vector<char> was_batched(n, 0);
  std::vector<char> batched(n, 0);
  std::vector<std::size_t> active;
  std::vector<std::pair<RankValue, std::size_t>> order;
  std::vector<std::size_t> selected;
  std::vector<std::size_t> done_now;
  std::size_t next = 0;
  std::size_t finished = 0;
  double now = 0.0;

  auto step_cost = [&](std::size_t i) {
    const double missing = jobs[i].age - resident[i];
    return missing > 0.0 ? std::min(options.recompute_rate, missing) : 1.0;
  };
  auto held_memory = [&] {
    double m = 0.0;
    for (std::size_t i : active) m += resident[i];
    return m;
  };
  auto drop_unschedulable = [&](std::size_t i) {
    resident[i] = 0.0;
    ++stats.unschedulable;
    ++finished;
    active.erase(std::find(active.begin(), active.end(), i));
    order.erase(std::find_if(order.begin(), order.end(), [i](const auto& e) { return e.second == i; }));
  };

  while (finished < n) {
    if (active.empty()) now = std::max(now, jobs[next].arrival_time);
    while (next < n && jobs[next].arrival_time <= now) active.push_back(next++);

    order.clear();
    for (std::size_t i : active) order.emplace_back(rank(policy, jobs[i], now), i);
    std::sort(order.begin(), order.end());

    double used = 0.0;
    for (;;) {
      selected.clear();
      used = hold ? held_memory() : 0.0;
      for (const auto& [rv, i] : order) {
        const double need = hold ? step_cost(i) : resident[i] + step_cost(i);
        if (used + need <= budget) {
          selected.push_back(i);
          used += need;
        }
      }
      if (!selected.empty() || order.empty()) break;

      // Memory is exhausted. In hold mode free paused state from the lowest
      // ranked jobs, preemptable ones first, until the top job can proceed.
      const std::size_t top = order.front().second;
      if (hold) {
        double total = held_memory();
        for (int pass = 0; pass < 2 && total + step_cost(top) > budget; ++pass) {
          for (auto it = order.rbegin(); it != order.rend() && total + step_cost(top) > budget; ++it) {
            const std::size_t v = it->second;
            if (v == top || resident[v] <= 0.0) continue;
            if ((pass == 0) != it->first.is_finite()) continue;
            total -= resident[v];
            resident[v] = 0.0;
            ++jobs[v].preemption_count;
            if (!it->first.is_finite()) ++stats.forced_evictions;
            was_batched[v] = 0;
          }
        }
        if (total + step_cost(top) <= budget) continue;
      }
      drop_unschedulable(top);
    }
    if (order.empty()) continue;

    for (std::size_t i : active) batched[i] = 0;
    for (std::size_t i : selected) batched[i] = 1;
    for (const auto& [rv, i] : order) {
      if (was_batched[i] && !batched[i]) {
        ++jobs[i].preemption_count;
        if (!rv.is_finite()) ++stats.forced_evictions;
        if (!hold) resident[i] = 0.0;
      }
    }

    stats.busy_time += 1.0;
    for (std::size_t i : selected) {
      Job& j = jobs[i];
      if (!j.started()) j.first_service_time = now;
      if (resident[i] < j.age) {
        resident[i] += std::min(options.recompute_rate, j.age - resident[i]);
        continue;
      }
      j.age += 1.0;
      resident[i] += 1.0;
      if (j.age >= j.size) {
        j.completion_time = now + 1.0;
        done_now.push_back(i);
        resident[i] = 0.0;
        ++finished;
      } else if (options.refiner && policy.source == RankPolicy::Source::belief) {
        options.refiner->observe(j, static_cast<std::uint64_t>(j.age));
      }
    }

    // jobs finishing in the same iteration are recorded in arrival order
    std::sort(done_now.begin(), done_now.end());
    for (std::size_t i : done_now) stats.per_job.push_back(make_record(jobs[i]));
    const bool any_completed = !done_now.empty();
    done_now.clear();

    if (stats.per_job.size() >= warmup) stats.peak_memory = std::max(stats.peak_memory, used);
    if (options.record_memory_trace) result.memory_trace.push_back({now, used});

    for (std::size_t i : active) was_batched[i] = batched[i];
    if (any_completed)
      std::erase_if(active, [&](std::size_t i) { return jobs[i].completed(); });
    now += 1.0;
  }

  stats.end_time = now;
  finish_stats(stats, warmup);
  return result;
}

void SimConfig::validate() const {
  arrival.validate();
  service.validate();
  policy.validate();
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) throw std::invalid_argument("warmup_fraction must lie in [0, 1)");
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (mode == SimMode::batch) {
    if (!(memory_budget > 0.0)) throw std::invalid_argument("memory_budget must be > 0 in batch mode");
    if (!(recompute_rate > 0.0)) throw std::invalid_argument("recompute_rate must be > 0");
  }
}

bool SimConfig::unstable() const {
  return arrival.steady_state() && arrival.rate * service.expected() >= 1.0;
}

WorkloadSpec SimConfig::workload() const {
  return WorkloadSpec{arrival, service, predictor, mode == SimMode::batch};
}

std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t r) {
  return r == 0 ? seed : SeedStreams(seed).seed_for("replication", r);
}

EngineOptions SimConfig::engine_options(std::uint64_t replication) const {
  EngineOptions opt;
  opt.policy = policy;
  opt.warmup_fraction = warmup_fraction;
  opt.record_memory_trace = record_memory_trace;
  opt.memory_budget = memory_budget;
  opt.preemption = preemption;
  opt.recompute_rate = recompute_rate;
  if (policy.source == RankPolicy::Source::belief) {
    const SeedStreams seeds(replication_seed(seed, replication));
    opt.refiner.emplace(policy.bins, observation, seeds.seed_for("observations"));
  }
  return opt;
}

std::vector<Job> generate_jobs(const SimConfig& config, std::uint64_t replication) {
  return generate_workload(config.workload(), SeedStreams(replication_seed(config.seed, replication)));
}

SimResult run_continuous(const SimConfig& config, std::uint64_t replication) {
  config.validate();
  if (config.mode != SimMode::continuous) throw std::invalid_argument("run_continuous needs continuous mode");
  SimResult r = simulate_continuous(generate_jobs(config, replication), config.engine_options(replication));
  r.stats.unstable = config.unstable();
  return r;
}

SimResult run_batch(const SimConfig& config, std::uint64_t replication) {
  config.validate();
  if (config.mode != SimMode::batch) throw std::invalid_argument("run_batch needs batch mode");
  SimResult r = simulate_batch(generate_jobs(config, replication), config.engine_options(replication));
  r.stats.unstable = config.unstable();
  return r;
}

SimResult run_simulation(const SimConfig& config, std::uint64_t replication) {
  return config.mode == SimMode::continuous ? run_continuous(config, replication) : run_batch(config, replication);
}

}  // namespace lpsched
