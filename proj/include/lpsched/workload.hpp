#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lpsched/domain.hpp"
#include "lpsched/refine.hpp"
#include "lpsched/rng.hpp"

namespace lpsched {

struct ServiceDist {
  enum class Kind { exponential, deterministic, bounded_pareto };

  Kind kind = Kind::exponential;
  double mean = 1.0;   // exponential
  double value = 1.0;  // deterministic
  double shape = 1.5;  // bounded pareto
  double lo = 1.0;
  double hi = 100.0;

  static ServiceDist exponential(double mean);
  static ServiceDist deterministic(double value);
  static ServiceDist bounded_pareto(double shape, double lo, double hi);

  void validate() const;
  double expected() const;
  double second_moment() const;
  double sample(Rng& rng) const;
  // Density and survival function; deterministic has no density.
  double pdf(double x) const;
  double survival(double x) const;
  // Smallest u with survival(u) <= tail.
  double upper_quantile(double tail) const;
};

struct PredictorModel {
  enum class Kind { perfect, exponential_noise, binned_synthetic, markov_trajectory };

  Kind kind = Kind::perfect;
  // binned_synthetic
  ObservationModel observation;
  Bins bins = Bins::standard();
  // markov_trajectory: deviation d(b) = persistence * d(b-1) + step_noise * Z,
  // r[b] = (x - b) + d(b).
  double step_noise = 0.0;
  double persistence = 0.8;

  static PredictorModel perfect();
  static PredictorModel exponential_noise();
  static PredictorModel binned(ObservationModel obs, Bins bins);
  static PredictorModel markov(double step_noise, double persistence = 0.8);
};

struct ArrivalSpec {
  enum class Kind { poisson, burst };

  Kind kind = Kind::poisson;
  double rate = 0.5;
  // poisson: exactly one of count / horizon
  std::optional<std::uint64_t> count;
  std::optional<double> horizon;
  // burst
  std::uint64_t n = 0;
  double at = 0.0;

  static ArrivalSpec poisson_count(double rate, std::uint64_t count);
  static ArrivalSpec poisson_horizon(double rate, double horizon);
  static ArrivalSpec burst(std::uint64_t n, double at = 0.0);

  void validate() const;
  bool steady_state() const { return kind == Kind::poisson; }
};

std::vector<double> gen_arrivals(const ArrivalSpec& spec, Rng& rng);
std::vector<double> gen_arrivals(const ArrivalSpec& spec, std::uint64_t seed);

// In integral mode sizes are ceil(x) with a minimum of one token.
double sample_service(const ServiceDist& dist, Rng& rng, bool integral = false);

PredictionSpec sample_prediction(const PredictorModel& model, double x, Rng& rng);

struct WorkloadSpec {
  ArrivalSpec arrival;
  ServiceDist service;
  PredictorModel predictor;
  bool integral_sizes = false;
};

// Draws arrivals, sizes and predictions from the "arrivals", "sizes" and
// "predictions" streams of `seeds`; ids are 0..n-1 in arrival order.
std::vector<Job> generate_workload(const WorkloadSpec& spec, const SeedStreams& seeds);

// Columns: id,arrival,size,prediction,trajectory,belief. Vector-valued cells
// are ';'-separated; numbers use shortest round-trip formatting.
void write_workload_csv(std::ostream& out, const std::vector<Job>& jobs);
std::vector<Job> read_workload_csv(std::istream& in);

}  // namespace lpsched
