#pragma once

// Core value types shared by the workload generators, the simulators and the
// analytic evaluator.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <tuple>
#include <vector>

namespace lpsched {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Length bins b_1 < ... < b_{k+1}. Bin i (1-based) covers [b_i, b_{i+1});
// the last bin is closed on the right.
class Bins {
 public:
  explicit Bins(std::vector<double> boundaries);

  // k equal-width bins over [lower, upper].
  static Bins uniform(double lower, double upper, std::size_t k);
  // Ten equal-width bins over [0, 512] tokens.
  static Bins standard();

  std::size_t count() const { return boundaries_.size() - 1; }
  double lower() const { return boundaries_.front(); }
  double upper() const { return boundaries_.back(); }
  const std::vector<double>& boundaries() const { return boundaries_; }

  // 1-based. Throws std::domain_error outside [b_1, b_{k+1}].
  std::size_t index_of(double length) const;
  // 1-based. Throws std::out_of_range.
  double midpoint(std::size_t i) const;
  double width(std::size_t i) const;

  bool operator==(const Bins&) const = default;

 private:
  std::vector<double> boundaries_;
};

inline std::size_t bin_index(double length, const Bins& bins) { return bins.index_of(length); }
inline double bin_midpoint(std::size_t i, const Bins& bins) { return bins.midpoint(i); }

// Probability vector over bins.
struct BeliefState {
  std::vector<double> q;

  std::size_t size() const { return q.size(); }
  bool is_simplex(double tol = 1e-12) const;
  // 1-based index of the largest entry; ties go to the smaller index.
  std::size_t argmax() const;
};

struct PredictionSpec {
  double initial = 0.0;
  // One refined prediction per processed unit, r[0..ceil(size)-1].
  std::vector<double> trajectory;
  std::optional<BeliefState> belief;

  bool has_trajectory() const { return !trajectory.empty(); }
};

struct Job {
  std::uint64_t id = 0;
  double arrival_time = 0.0;
  double size = 0.0;
  PredictionSpec prediction;
  double age = 0.0;
  std::optional<double> first_service_time;
  std::optional<double> completion_time;
  int preemption_count = 0;

  bool started() const { return first_service_time.has_value(); }
  bool completed() const { return completion_time.has_value(); }
  double remaining() const { return size - age; }
};

// Smaller value is served first; ties go to the earlier arrival, then the
// smaller id. -inf marks a job that can no longer be preempted.
struct RankValue {
  double value = 0.0;
  double arrival_time = 0.0;
  std::uint64_t id = 0;

  bool is_finite() const { return value > -kInf; }

  friend bool operator<(const RankValue& a, const RankValue& b) {
    return std::tie(a.value, a.arrival_time, a.id) < std::tie(b.value, b.arrival_time, b.id);
  }
  friend bool operator==(const RankValue& a, const RankValue& b) {
    return std::tie(a.value, a.arrival_time, a.id) == std::tie(b.value, b.arrival_time, b.id);
  }
};

struct JobRecord {
  std::uint64_t id = 0;
  double arrival = 0.0;
  double size = 0.0;
  double prediction = 0.0;
  double first_service = 0.0;
  double completion = 0.0;
  int preemptions = 0;

  double latency() const { return completion - arrival; }
  double ttft() const { return first_service - arrival; }
  bool operator==(const JobRecord&) const = default;
};

struct SimStats {
  double mean_latency = 0.0;
  double median_latency = 0.0;
  double mean_ttft = 0.0;
  double median_ttft = 0.0;
  double peak_memory = 0.0;
  std::int64_t preemptions = 0;
  std::int64_t completed = 0;
  // Completions excluded as warmup.
  std::int64_t warmup = 0;
  // Jobs dropped because they could never fit the memory budget (batch mode).
  std::int64_t unschedulable = 0;
  // Evictions of non-preemptable jobs forced by memory exhaustion (batch mode).
  std::int64_t forced_evictions = 0;
  bool unstable = false;
  double busy_time = 0.0;
  double end_time = 0.0;
  // All completed jobs in completion order, warmup included.
  std::vector<JobRecord> per_job;
};

// Summary statistics over the records that remain after discarding the first
// `warmup` completions.
void summarize(SimStats& stats, std::size_t warmup);

}  // namespace lpsched
