#pragma once

// Bayesian refinement of binned remaining-length predictions. A per-step
// classifier output p(t) is folded into a running belief q(t) through a
// bin-transition prior:
//
//   q(0)       = p(0)
//   prior(t)   = T * q(t-1)
//   q(t)(i)    = prior(t)(i) p(t)(i) / sum_j prior(t)(j) p(t)(j)
//
// The classifier itself is replaced by a synthetic observation model.

#include <cstddef>
#include <optional>
#include <vector>

#include "lpsched/domain.hpp"
#include "lpsched/rng.hpp"

namespace lpsched {

// Dense k x k column-stochastic-up-to-leakage matrix. Entry (i, j) is the
// probability that a remaining length in bin j moves to bin i after one step.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(std::size_t k) : k_(k), data_(k * k, 0.0) {}

  std::size_t size() const { return k_; }
  // 1-based indices.
  double at(std::size_t i, std::size_t j) const { return data_[(i - 1) * k_ + (j - 1)]; }
  double& at(std::size_t i, std::size_t j) { return data_[(i - 1) * k_ + (j - 1)]; }

  std::vector<double> apply(const std::vector<double>& q) const;
  static TransitionMatrix identity(std::size_t k);

 private:
  std::size_t k_;
  std::vector<double> data_;
};

// Diagonal 1 - 1/w_j, entry (j-1, j) = 1/w_j, everything else 0.
// Throws std::domain_error if any bin is narrower than one unit.
TransitionMatrix build_transition(const Bins& bins);

using Observation = BeliefState;

// std::nullopt when the prior and the observation have disjoint support.
std::optional<BeliefState> bayes_update(const BeliefState& previous, const Observation& observation,
                                        const TransitionMatrix& transition);

// bayes_update, falling back to the observation itself on zero evidence.
BeliefState bayes_update_or_reset(const BeliefState& previous, const Observation& observation,
                                  const TransitionMatrix& transition);

double expected_length(const BeliefState& q, const Bins& bins);

// Stand-in for the trained length classifier: a softmax over bins of
// -concentration * |m_j - m_peak| / w, where the peak is the true bin, or with
// probability mislabel_rate one of its neighbours.
struct ObservationModel {
  double concentration = 2.0;  // +inf gives one-hot observations
  double mislabel_rate = 0.1;
};

Observation synth_observation(double true_remaining, const Bins& bins, const ObservationModel& model,
                              Rng& rng);

struct RefinementStep {
  std::size_t t = 0;
  double true_remaining = 0.0;
  double raw = 0.0;
  double refined = 0.0;
};

struct RefinementTrace {
  std::vector<RefinementStep> steps;
  double raw_mae = 0.0;
  double refined_mae = 0.0;
};

// Runs the update over t = 0..true_size-1 against true remaining
// true_size - t; raw uses the observation alone, refined uses the belief.
RefinementTrace refine_trajectory(int true_size, const Bins& bins, const TransitionMatrix& transition,
                                  const ObservationModel& model, Rng& rng);

}  // namespace lpsched
