#include "lpsched/workload.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lpsched/csv.hpp"

namespace lpsched {

ServiceDist ServiceDist::exponential(double mean) {
  ServiceDist d;
  d.kind = Kind::exponential;
  d.mean = mean;
  return d;
}

ServiceDist ServiceDist::deterministic(double value) {
  ServiceDist d;
  d.kind = Kind::deterministic;
  d.value = value;
  return d;
}

ServiceDist ServiceDist::bounded_pareto(double shape, double lo, double hi) {
  ServiceDist d;
  d.kind = Kind::bounded_pareto;
  d.shape = shape;
  d.lo = lo;
  d.hi = hi;
  return d;
}

void ServiceDist::validate() const {
  switch (kind) {
    case Kind::exponential:
      if (!(mean > 0.0) || !std::isfinite(mean)) throw std::invalid_argument("exponential mean must be finite and > 0");
      break;
    case Kind::deterministic:
      if (!(value > 0.0) || !std::isfinite(value)) throw std::invalid_argument("deterministic value must be finite and > 0");
      break;
    case Kind::bounded_pareto:
      if (!(shape > 0.0) || !(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("bounded pareto needs shape > 0, 0 < lo < hi");
      break;
  }
}

namespace {

// E[X^m] for the bounded Pareto on [lo, hi].
double pareto_moment(double a, double lo, double hi, int m) {
  const double norm = 1.0 - std::pow(lo / hi, a);
  const double c = a * std::pow(lo, a) / norm;
  if (std::abs(a - m) < 1e-12) return c * std::log(hi / lo);
  return c * (std::pow(hi, m - a) - std::pow(lo, m - a)) / (m - a);
}

}  // namespace

double ServiceDist::expected() const {
  switch (kind) {
    case Kind::exponential: return mean;
    case Kind::deterministic: return value;
    case Kind::bounded_pareto: return pareto_moment(shape, lo, hi, 1);
  }
  return 0.0;
}

double ServiceDist::second_moment() const {
  switch (kind) {
    case Kind::exponential: return 2.0 * mean * mean;
    case Kind::deterministic: return value * value;
    case Kind::bounded_pareto: return pareto_moment(shape, lo, hi, 2);
  }
  return 0.0;
}

double ServiceDist::sample(Rng& rng) const {
  switch (kind) {
    case Kind::exponential: return rng.exponential(mean);
    case Kind::deterministic: return value;
    case Kind::bounded_pareto: {
      const double u = rng.uniform();
      const double ratio = std::pow(lo / hi, shape);
      return lo * std::pow(1.0 - u * (1.0 - ratio), -1.0 / shape);
    }
  }
  return 0.0;
}

double ServiceDist::pdf(double x) const {
  switch (kind) {
    case Kind::exponential: return x < 0.0 ? 0.0 : std::exp(-x / mean) / mean;
    case Kind::deterministic: throw std::logic_error("deterministic service has no density");
    case Kind::bounded_pareto:
      if (x < lo || x > hi) return 0.0;
      return shape * std::pow(lo, shape) * std::pow(x, -shape - 1.0) / (1.0 - std::pow(lo / hi, shape));
  }
  return 0.0;
}

double ServiceDist::survival(double x) const {
  switch (kind) {
    case Kind::exponential: return x <= 0.0 ? 1.0 : std::exp(-x / mean);
    case Kind::deterministic: return x < value ? 1.0 : 0.0;
    case Kind::bounded_pareto: {
      if (x <= lo) return 1.0;
      if (x >= hi) return 0.0;
      const double ratio = std::pow(lo / hi, shape);
      return (std::pow(lo / x, shape) - ratio) / (1.0 - ratio);
    }
  }
  return 0.0;
}

double ServiceDist::upper_quantile(double tail) const {
  switch (kind) {
    case Kind::exponential: return -mean * std::log(tail);
    case Kind::deterministic: return value;
    case Kind::bounded_pareto: {
      const double ratio = std::pow(lo / hi, shape);
      const double s = tail * (1.0 - ratio) + ratio;
      return std::min(hi, lo * std::pow(s, -1.0 / shape));
    }
  }
  return 0.0;
}

PredictorModel PredictorModel::perfect() { return PredictorModel{}; }

PredictorModel PredictorModel::exponential_noise() {
  PredictorModel m;
  m.kind = Kind::exponential_noise;
  return m;
}

PredictorModel PredictorModel::binned(ObservationModel obs, Bins bins) {
  PredictorModel m;
  m.kind = Kind::binned_synthetic;
  m.observation = obs;
  m.bins = std::move(bins);
  return m;
}

PredictorModel PredictorModel::markov(double step_noise, double persistence) {
  PredictorModel m;
  m.kind = Kind::markov_trajectory;
  m.step_noise = step_noise;
  m.persistence = persistence;
  return m;
}

ArrivalSpec ArrivalSpec::poisson_count(double rate, std::uint64_t count) {
  ArrivalSpec s;
  s.rate = rate;
  s.count = count;
  return s;
}

ArrivalSpec ArrivalSpec::poisson_horizon(double rate, double horizon) {
  ArrivalSpec s;
  s.rate = rate;
  s.horizon = horizon;
  return s;
}

ArrivalSpec ArrivalSpec::burst(std::uint64_t n, double at) {
  ArrivalSpec s;
  s.kind = Kind::burst;
  s.n = n;
  s.at = at;
  return s;
}

void ArrivalSpec::validate() const {
  if (kind == Kind::burst) {
    if (n == 0) throw std::invalid_argument("burst size must be positive");
    if (!(at >= 0.0)) throw std::invalid_argument("burst time must be >= 0");
    return;
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("arrival rate must be positive");
  if (count.has_value() == horizon.has_value())
    throw std::invalid_argument("poisson arrivals need exactly one of count or horizon");
  if (count && *count == 0) throw std::invalid_argument("arrival count must be positive");
  if (horizon && !(*horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
}

std::vector<double> gen_arrivals(const ArrivalSpec& spec, Rng& rng) {
  spec.validate();
  if (spec.kind == ArrivalSpec::Kind::burst) return std::vector<double>(spec.n, spec.at);
  std::vector<double> times;
  const double mean_gap = 1.0 / spec.rate;
  double t = 0.0;
  if (spec.count) {
    times.reserve(*spec.count);
    for (std::uint64_t i = 0; i < *spec.count; ++i) {
      t += rng.exponential(mean_gap);
      times.push_back(t);
    }
  } else {
    for (;;) {
      t += rng.exponential(mean_gap);
      if (t > *spec.horizon) break;
      times.push_back(t);
    }
  }
  return times;
}

std::vector<double> gen_arrivals(const ArrivalSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return gen_arrivals(spec, rng);
}

double sample_service(const ServiceDist& dist, Rng& rng, bool integral) {
  const double x = dist.sample(rng);
  return integral ? std::max(1.0, std::ceil(x)) : x;
}

PredictionSpec sample_prediction(const PredictorModel& model, double x, Rng& rng) {
  if (!(x > 0.0)) throw std::invalid_argument("sample_prediction: size must be positive");
  PredictionSpec p;
  switch (model.kind) {
    case PredictorModel::Kind::perfect:
      p.initial = x;
      break;
    case PredictorModel::Kind::exponential_noise:
      p.initial = rng.exponential(x);
      break;
    case PredictorModel::Kind::binned_synthetic: {
      const double clipped = std::clamp(x, model.bins.lower(), model.bins.upper());
      BeliefState belief = synth_observation(clipped, model.bins, model.observation, rng);
      p.initial = model.bins.midpoint(belief.argmax());
      p.belief = std::move(belief);
      break;
    }
    case PredictorModel::Kind::markov_trajectory: {
      const auto n = static_cast<std::size_t>(std::ceil(x));
      p.trajectory.resize(n);
      double deviation = model.step_noise > 0.0 ? model.step_noise * rng.normal() : 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        if (b > 0) {
          deviation *= model.persistence;
          if (model.step_noise > 0.0) deviation += model.step_noise * rng.normal();
        }
        p.trajectory[b] = std::max(0.0, (x - static_cast<double>(b)) + deviation);
      }
      // predictions are strictly positive at admission
      p.trajectory[0] = std::max(p.trajectory[0], 1e-9);
      p.initial = p.trajectory[0];
      break;
    }
  }
  return p;
}

std::vector<Job> generate_workload(const WorkloadSpec& spec, const SeedStreams& seeds) {
  spec.service.validate();
  Rng arrival_rng = seeds.stream("arrivals");
  Rng size_rng = seeds.stream("sizes");
  Rng prediction_rng = seeds.stream("predictions");
  const std::vector<double> times = gen_arrivals(spec.arrival, arrival_rng);
  std::vector<Job> jobs;
  jobs.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    Job job;
    job.id = i;
    job.arrival_time = times[i];
    job.size = sample_service(spec.service, size_rng, spec.integral_sizes);
    job.prediction = sample_prediction(spec.predictor, job.size, prediction_rng);
    jobs.push_back(std::move(job));
  }
  return jobs;
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += fmt::format("{}", v[i]);
  }
  return out;
}

std::vector<double> split_numbers(const std::string& cell) {
  std::vector<double> out;
  if (cell.empty()) return out;
  std::stringstream ss(cell);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(parse_double(item));
  return out;
}

}  // namespace

void write_workload_csv(std::ostream& out, const std::vector<Job>& jobs) {
  out << "id,arrival,size,prediction,trajectory,belief\n";
  for (const Job& j : jobs) {
    out << fmt::format("{},{},{},{},{},{}\n", j.id, j.arrival_time, j.size, j.prediction.initial,
                       join(j.prediction.trajectory), j.prediction.belief ? join(j.prediction.belief->q) : "");
  }
}

std::vector<Job> read_workload_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("workload csv: empty input");
  if (line != "id,arrival,size,prediction,trajectory,belief")
    throw std::runtime_error("workload csv: unexpected header '" + line + "'");
  std::vector<Job> jobs;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 6)
      throw std::runtime_error(fmt::format("workload csv line {}: expected 6 columns, got {}", lineno, cells.size()));
    Job j;
    j.id = std::stoull(cells[0]);
    j.arrival_time = parse_double(cells[1]);
    j.size = parse_double(cells[2]);
    j.prediction.initial = parse_double(cells[3]);
    j.prediction.trajectory = split_numbers(cells[4]);
    if (!cells[5].empty()) j.prediction.belief = BeliefState{split_numbers(cells[5])};
    jobs.push_back(std::move(j));
  }
  return jobs;
}

}  // namespace lpsched
