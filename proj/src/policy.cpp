#include "lpsched/policy.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpsched/refine.hpp"

namespace lpsched {

RankPolicy RankPolicy::fcfs() {
  RankPolicy p;
  p.kind = Kind::fcfs;
  return p;
}

RankPolicy RankPolicy::spjf() {
  RankPolicy p;
  p.kind = Kind::spjf;
  return p;
}

RankPolicy RankPolicy::sprpt() {
  RankPolicy p;
  p.kind = Kind::sprpt;
  return p;
}

RankPolicy RankPolicy::sprpt_lp(double C) {
  RankPolicy p;
  p.kind = Kind::sprpt_lp;
  p.C = C;
  return p;
}

void RankPolicy::validate() const {
  if (kind == Kind::sprpt_lp && !(C >= 0.0 && C <= 1.0))
    throw std::invalid_argument(fmt::format("policy C must lie in [0, 1], got {}", C));
}

std::string RankPolicy::name() const {
  if (kind == Kind::sprpt_lp) return fmt::format("sprpt_lp(C={})", C);
  return std::string(to_string(kind));
}

std::string_view to_string(RankPolicy::Kind kind) {
  switch (kind) {
    case RankPolicy::Kind::fcfs: return "fcfs";
    case RankPolicy::Kind::spjf: return "spjf";
    case RankPolicy::Kind::sprpt: return "sprpt";
    case RankPolicy::Kind::sprpt_lp: return "sprpt_lp";
  }
  return "?";
}

RankPolicy::Kind parse_policy_kind(std::string_view name) {
  if (name == "fcfs") return RankPolicy::Kind::fcfs;
  if (name == "spjf") return RankPolicy::Kind::spjf;
  if (name == "sprpt") return RankPolicy::Kind::sprpt;
  if (name == "sprpt_lp") return RankPolicy::Kind::sprpt_lp;
  throw std::invalid_argument(fmt::format("unknown policy '{}'", name));
}

std::string_view to_string(RankPolicy::Source source) {
  switch (source) {
    case RankPolicy::Source::static_prediction: return "static";
    case RankPolicy::Source::trajectory: return "trajectory";
    case RankPolicy::Source::belief: return "belief";
  }
  return "?";
}

RankPolicy::Source parse_prediction_source(std::string_view name) {
  if (name == "static") return RankPolicy::Source::static_prediction;
  if (name == "trajectory") return RankPolicy::Source::trajectory;
  if (name == "belief") return RankPolicy::Source::belief;
  throw std::invalid_argument(fmt::format("unknown prediction source '{}'", name));
}

namespace {

double trajectory_at(const std::vector<double>& r, double age) {
  const auto idx = static_cast<std::size_t>(std::max(0.0, std::floor(age)));
  return r[std::min(idx, r.size() - 1)];
}

}  // namespace

double scheduling_prediction(const RankPolicy& policy, const Job& job) {
  switch (policy.source) {
    case RankPolicy::Source::static_prediction:
      return job.prediction.initial;
    case RankPolicy::Source::trajectory:
      if (!job.prediction.has_trajectory()) return job.prediction.initial;
      return trajectory_at(job.prediction.trajectory, job.age);
    case RankPolicy::Source::belief: {
      if (!job.prediction.belief) return job.prediction.initial;
      const BeliefState& q = *job.prediction.belief;
      if (policy.readout == RankPolicy::Readout::expectation) return expected_length(q, policy.bins);
      return policy.bins.midpoint(q.argmax());
    }
  }
  return job.prediction.initial;
}

double preemption_threshold(const RankPolicy& policy, const Job& job) {
  switch (policy.kind) {
    case RankPolicy::Kind::fcfs:
    case RankPolicy::Kind::spjf:
      return 0.0;
    case RankPolicy::Kind::sprpt:
      return kInf;
    case RankPolicy::Kind::sprpt_lp: {
      const double a0 = policy.C * job.prediction.initial;
      return policy.discrete_threshold ? std::floor(a0) : a0;
    }
  }
  return kInf;
}

RankValue rank(const RankPolicy& policy, const Job& job, double /*now*/) {
  RankValue rv{0.0, job.arrival_time, job.id};
  switch (policy.kind) {
    case RankPolicy::Kind::fcfs:
      rv.value = job.started() ? -kInf : job.arrival_time;
      break;
    case RankPolicy::Kind::spjf:
      rv.value = job.started() ? -kInf : scheduling_prediction(policy, job);
      break;
    case RankPolicy::Kind::sprpt:
      rv.value = scheduling_prediction(policy, job) - job.age;
      break;
    case RankPolicy::Kind::sprpt_lp:
      // The threshold only applies once service has begun, so with C = 0 a
      // waiting job still carries its predicted size.
      if (job.started() && job.age >= preemption_threshold(policy, job))
        rv.value = -kInf;
      else
        rv.value = scheduling_prediction(policy, job) - job.age;
      break;
  }
  return rv;
}

RankValue worst_future_rank(const RankPolicy& policy, const Job& job, double a) {
  Job at_age = job;
  at_age.age = a;
  if (a > 0.0 && !at_age.started()) at_age.first_service_time = job.arrival_time;
  const RankValue current = rank(policy, at_age);

  const bool dynamic = policy.source == RankPolicy::Source::trajectory && job.prediction.has_trajectory() &&
                       (policy.kind == RankPolicy::Kind::sprpt || policy.kind == RankPolicy::Kind::sprpt_lp);
  if (!dynamic) return current;

  // Within a unit the rank r[b] - a only falls, so later maxima sit on the
  // integer ages where a new refined prediction takes over.
  const std::vector<double>& r = job.prediction.trajectory;
  const double limit = std::min(job.size, policy.kind == RankPolicy::Kind::sprpt_lp
                                              ? preemption_threshold(policy, job)
                                              : kInf);
  RankValue worst = current;
  for (std::size_t b = static_cast<std::size_t>(std::floor(a)) + 1; b < r.size(); ++b) {
    const double age = static_cast<double>(b);
    if (age >= limit) break;
    worst.value = std::max(worst.value, r[b] - age);
  }
  return worst;
}

bool preemptable(const RankPolicy& policy, const Job& job) { return rank(policy, job).is_finite(); }

}  // namespace lpsched
