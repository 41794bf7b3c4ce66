#pragma once

// Discrete-event engines.
//
// Continuous mode is a single-server preemptive M/G/1 queue. Decisions happen
// at arrivals, completions and, when predictions are refined per unit of
// service, at integer-age boundaries of the running job. The running job is
// preempted only when it is preemptable and a waiting job has a strictly
// smaller rank value.
//
// Batch mode is iteration-level: every iteration the active jobs are ranked and
// the batch is filled greedily in rank order under a memory budget, where each
// started job holds memory proportional to its age. Each batched job either
// emits one token or, after a discard, recomputes its lost state.

#include <cstdint>
#include <optional>
#include <vector>

#include "lpsched/domain.hpp"
#include "lpsched/policy.hpp"
#include "lpsched/refine.hpp"
#include "lpsched/rng.hpp"
#include "lpsched/workload.hpp"

namespace lpsched {

enum class SimMode { continuous, batch };
enum class PreemptionCost { hold, discard };

// Refines each job's belief after every completed unit of service using
// synthetic observations of its true remaining length. Observations for job id
// at step s come from their own seed, so the result does not depend on the
// order in which jobs are served.
class BeliefRefiner {
 public:
  BeliefRefiner(Bins bins, ObservationModel model, std::uint64_t seed);

  void observe(Job& job, std::uint64_t step) const;

 private:
  Bins bins_;
  TransitionMatrix transition_;
  ObservationModel model_;
  std::uint64_t seed_;
};

struct MemorySample {
  double time = 0.0;
  double memory = 0.0;
};

struct SimResult {
  SimStats stats;
  std::vector<MemorySample> memory_trace;
};

struct EngineOptions {
  RankPolicy policy;
  double warmup_fraction = 0.2;
  bool record_memory_trace = false;
  std::optional<BeliefRefiner> refiner;
  // batch mode only
  double memory_budget = kInf;
  PreemptionCost preemption = PreemptionCost::hold;
  double recompute_rate = 8.0;
};

// Jobs may come in any order; they are processed by (arrival_time, id).
SimResult simulate_continuous(std::vector<Job> jobs, const EngineOptions& options);
// Sizes must be positive integers.
SimResult simulate_batch(std::vector<Job> jobs, const EngineOptions& options);

struct SimConfig {
  SimMode mode = SimMode::continuous;
  ArrivalSpec arrival = ArrivalSpec::poisson_count(0.5, 10000);
  ServiceDist service = ServiceDist::exponential(1.0);
  PredictorModel predictor = PredictorModel::perfect();
  RankPolicy policy = RankPolicy::sprpt();
  ObservationModel observation;
  double memory_budget = kInf;
  PreemptionCost preemption = PreemptionCost::hold;
  double recompute_rate = 8.0;
  double warmup_fraction = 0.2;
  std::uint64_t seed = 1;
  int replications = 1;
  bool record_memory_trace = false;

  void validate() const;
  // Poisson arrivals with rate * E[X] >= 1.
  bool unstable() const;
  WorkloadSpec workload() const;
  EngineOptions engine_options(std::uint64_t replication) const;
};

// Master seed of replication `r`.
std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t r);

std::vector<Job> generate_jobs(const SimConfig& config, std::uint64_t replication = 0);

SimResult run_continuous(const SimConfig& config, std::uint64_t replication = 0);
SimResult run_batch(const SimConfig& config, std::uint64_t replication = 0);
SimResult run_simulation(const SimConfig& config, std::uint64_t replication = 0);

}  // namespace lpsched
