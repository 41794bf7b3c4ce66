#include "lpsched/refine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpsched {

std::vector<double> TransitionMatrix::apply(const std::vector<double>& q) const {
  if (q.size() != k_) throw std::invalid_argument("transition/belief size mismatch");
  std::vector<double> out(k_, 0.0);
  for (std::size_t i = 0; i < k_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < k_; ++j) acc += data_[i * k_ + j] * q[j];
    out[i] = acc;
  }
  return out;
}

TransitionMatrix TransitionMatrix::identity(std::size_t k) {
  TransitionMatrix t(k);
  for (std::size_t i = 1; i <= k; ++i) t.at(i, i) = 1.0;
  return t;
}

TransitionMatrix build_transition(const Bins& bins) {
  const std::size_t k = bins.count();
  TransitionMatrix t(k);
  for (std::size_t j = 1; j <= k; ++j) {
    const double w = bins.width(j);
    if (w < 1.0) throw std::domain_error("bin narrower than one unit; transition probability exceeds 1");
    t.at(j, j) = 1.0 - 1.0 / w;
    if (j > 1) t.at(j - 1, j) = 1.0 / w;
  }
  return t;
}

std::optional<BeliefState> bayes_update(const BeliefState& previous, const Observation& observation,
                                        const TransitionMatrix& transition) {
  if (previous.size() != observation.size() || previous.size() != transition.size())
    throw std::invalid_argument("bayes_update: dimension mismatch");
  std::vector<double> post = transition.apply(previous.q);
  double evidence = 0.0;
  for (std::size_t i = 0; i < post.size(); ++i) {
    post[i] *= observation.q[i];
    evidence += post[i];
  }
  if (!(evidence > 0.0)) return std::nullopt;
  for (double& v : post) v /= evidence;
  return BeliefState{std::move(post)};
}

BeliefState bayes_update_or_reset(const BeliefState& previous, const Observation& observation,
                                  const TransitionMatrix& transition) {
  if (auto next = bayes_update(previous, observation, transition)) return *std::move(next);
  return observation;
}

double expected_length(const BeliefState& q, const Bins& bins) {
  if (q.size() != bins.count()) throw std::invalid_argument("belief/bins size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) acc += q.q[i] * bins.midpoint(i + 1);
  return acc;
}

Observation synth_observation(double true_remaining, const Bins& bins, const ObservationModel& model,
                              Rng& rng) {
  const std::size_t k = bins.count();
  std::size_t peak = bins.index_of(true_remaining);
  if (k > 1 && rng.bernoulli(model.mislabel_rate)) {
    const bool down = rng.uniform() < 0.5;
    if (peak == 1) peak = 2;
    else if (peak == k) peak = k - 1;
    else peak = down ? peak - 1 : peak + 1;
  }

  Observation p{std::vector<double>(k, 0.0)};
  if (std::isinf(model.concentration)) {
    p.q[peak - 1] = 1.0;
    return p;
  }
  const double scale = (bins.upper() - bins.lower()) / static_cast<double>(k);
  const double center = bins.midpoint(peak);
  double sum = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    // peak score is 0, so the largest exponent is exactly 1
    const double v = std::exp(-model.concentration * std::abs(bins.midpoint(j) - center) / scale);
    p.q[j - 1] = v;
    sum += v;
  }
  for (double& v : p.q) v /= sum;
  return p;
}

RefinementTrace refine_trajectory(int true_size, const Bins& bins, const TransitionMatrix& transition,
                                  const ObservationModel& model, Rng& rng) {
  if (true_size < 1) throw std::invalid_argument("refine_trajectory: true_size must be >= 1");
  RefinementTrace trace;
  trace.steps.reserve(static_cast<std::size_t>(true_size));
  BeliefState belief;
  double raw_err = 0.0, refined_err = 0.0;
  for (int t = 0; t < true_size; ++t) {
    const double remaining = static_cast<double>(true_size - t);
    const Observation p = synth_observation(remaining, bins, model, rng);
    belief = (t == 0) ? p : bayes_update_or_reset(belief, p, transition);
    RefinementStep step{static_cast<std::size_t>(t), remaining, expected_length(p, bins),
                        expected_length(belief, bins)};
    raw_err += std::abs(step.raw - remaining);
    refined_err += std::abs(step.refined - remaining);
    trace.steps.push_back(step);
  }
  trace.raw_mae = raw_err / true_size;
  trace.refined_mae = refined_err / true_size;
  return trace;
}

}  // namespace lpsched
