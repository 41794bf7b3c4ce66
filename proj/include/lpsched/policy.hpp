#pragma once

// Rank functions in SOAP form: the scheduler always serves the job with the
// lowest rank. Limited-preemption SPRPT ranks a job by its predicted remaining
// work r - a until its age reaches a0 = C * r, after which the rank is -inf
// and the job runs to completion.

#include <string>
#include <string_view>

#include "lpsched/domain.hpp"

namespace lpsched {

struct RankPolicy {
  enum class Kind { fcfs, spjf, sprpt, sprpt_lp };
  enum class Source { static_prediction, trajectory, belief };
  enum class Readout { argmax_midpoint, expectation };

  Kind kind = Kind::sprpt;
  double C = 1.0;
  Source source = Source::static_prediction;
  Readout readout = Readout::argmax_midpoint;
  // Batch mode counts whole iterations: a0 = floor(C * r).
  bool discrete_threshold = false;
  Bins bins = Bins::standard();

  static RankPolicy fcfs();
  static RankPolicy spjf();
  static RankPolicy sprpt();
  static RankPolicy sprpt_lp(double C);

  void validate() const;
  std::string name() const;
};

std::string_view to_string(RankPolicy::Kind kind);
RankPolicy::Kind parse_policy_kind(std::string_view name);
std::string_view to_string(RankPolicy::Source source);
RankPolicy::Source parse_prediction_source(std::string_view name);

// Current prediction of the job's size as seen by the scheduler.
double scheduling_prediction(const RankPolicy& policy, const Job& job);

// Age at which an SPRPT_LP job stops being preemptable.
double preemption_threshold(const RankPolicy& policy, const Job& job);

RankValue rank(const RankPolicy& policy, const Job& job, double now = 0.0);

// Largest rank the job attains at any age b >= a. Static predictions give
// r - a (or -inf past the threshold); trajectories give max over b of r[b] - b.
RankValue worst_future_rank(const RankPolicy& policy, const Job& job, double a);

bool preemptable(const RankPolicy& policy, const Job& job);

}  // namespace lpsched
