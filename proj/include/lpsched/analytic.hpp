#pragma once

// Mean response time of SPRPT with limited preemption in an M/G/1 queue,
// assembled from the SOAP building blocks for a tagged job of true size x and
// predicted size r with threshold a0 = C * r:
//
//   E[T(x, r)] = lambda (E[X0_old^2] + E[X1_old^2]) / (2 (1 - rho'_r)^2)
//              + int_0^{min(a0, x)} da / (1 - rho'_{r-a}) + max(0, x - a0)
//
//   rho'_r       = lambda * int_0^r int_0^inf x g(x, y) dx dy
//   E[X0_old^2]  = int_0^r int_0^inf x^2 g(x, y) dx dy
//
// Two forms of the recycled-job moment E[X1_old^2] are available:
//   verbatim       int_{t=r+a0}^inf int_{x=t-r}^inf g(x, t) (x - (t - r))^2
//   own_threshold  an old job with prediction t > r re-enters below rank r at
//                  age s = min(t - r, C t), its own limited-preemption cutoff,
//                  and then runs to completion: E[(X - s)_+^2 ; Y > r].
// For C = 1 and exact predictions own_threshold reduces to the classic SRPT
// term x^2 P(X > x); verbatim does not.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lpsched/quadrature.hpp"
#include "lpsched/workload.hpp"

namespace lpsched {

class InstabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Joint density of true size and prediction. Size has density f on [0, U];
// the prediction is either exact (a line mass on y = x) or has a conditional
// density h(y | x) with CDF H(y | x).
struct DensityPair {
  enum class Kind { perfect, conditional };

  Kind kind = Kind::perfect;
  std::function<double(double)> f;
  double x_lower = 0.0;  // f vanishes below
  double x_upper = 0.0;  // U
  std::function<double(double, double)> h;  // (y, x)
  std::function<double(double, double)> H;  // (y, x)
  // Prediction level above which the conditional tail is below the
  // truncation mass, as a function of x.
  std::function<double(double)> y_upper;

  // Only meaningful for conditional pairs.
  double g(double x, double y) const { return f(x) * h(y, x); }
  // Largest prediction level that carries mass in the truncated domain.
  double max_prediction() const;

  // Supports exponential and bounded-Pareto sizes with perfect or exponential
  // noise (prediction ~ Exp(mean x)) predictors.
  static DensityPair from(const ServiceDist& service, const PredictorModel& predictor, const QuadratureSpec& quad);
};

enum class RecycledTerm { own_threshold, verbatim };

// int_0^r int_0^U x^m g(x, y) dx dy for m = 1, 2.
double partial_moment(int m, double r, const DensityPair& pair, const QuadratureSpec& quad);
// The same quantity by nested 2-D quadrature over g; conditional pairs only.
double partial_moment_2d(int m, double r, const DensityPair& pair, const QuadratureSpec& quad);

// Throws InstabilityError when the result reaches 1.
double rho_prime(double r, const DensityPair& pair, double lambda, const QuadratureSpec& quad);
// E[X_new[r - a]]; zero once a >= a0.
double moment_new(double r, double a, double a0, const DensityPair& pair, const QuadratureSpec& quad);
double moment_old0_sq(double r, const DensityPair& pair, const QuadratureSpec& quad);
// Recycled moment with the literal integration limits.
double moment_old1_sq(double r, double a0, const DensityPair& pair, const QuadratureSpec& quad);
// Recycled moment using each old job's own threshold C * t.
double moment_old1_sq_own(double r, double C, const DensityPair& pair, const QuadratureSpec& quad);
double recycled_moment(double r, double C, RecycledTerm term, const DensityPair& pair, const QuadratureSpec& quad);

double mean_response(double x, double r, double C, double lambda, const DensityPair& pair,
                     const QuadratureSpec& quad, RecycledTerm term = RecycledTerm::own_threshold);

struct ResponsePoint {
  double x = 0.0;
  double mean = 0.0;
};

struct AggregateResponse {
  bool unstable = false;
  double mean = 0.0;                 // E[T]
  std::vector<ResponsePoint> curve;  // E[T(x)] on the requested grid
};

// E[T(x)] averages E[T(x, y)] over the conditional prediction density at x;
// E[T] integrates it against f.
AggregateResponse mean_response_aggregate(double C, double lambda, const DensityPair& pair,
                                          const QuadratureSpec& quad, const std::vector<double>& x_grid = {},
                                          RecycledTerm term = RecycledTerm::own_threshold);

// Inputs to the generic SOAP mean-response formula for one job descriptor.
struct SoapMoments {
  double old_second_moment_sum = 0.0;  // sum_i E[X_i_old^2]
  double old0_mean = 0.0;              // E[X_0_old]
  double new_worst0_mean = 0.0;        // E[X_new[r_worst]]
  std::function<double(double)> new_mean_at_age;  // a -> E[X_new[rank_worst(a)]]
  std::vector<double> age_breaks;
};

//   lambda sum_i E[X_i_old^2] / (2 (1 - lambda E[X_0_old]) (1 - lambda E[X_new[r_worst]]))
//   + int_0^x da / (1 - lambda E[X_new[rank_worst(a)]])
double soap_mean_response(const SoapMoments& moments, double lambda, double x, const QuadratureSpec& quad);

SoapMoments limited_preemption_moments(double r, double C, const DensityPair& pair, const QuadratureSpec& quad,
                                       RecycledTerm term = RecycledTerm::own_threshold);
// FCFS: every old job is original and no new job overtakes.
SoapMoments fcfs_moments(const ServiceDist& service);

// Age intervals of a refined-prediction rank trajectory r[a] - a (integer
// ages) during which the job sits below r_max, and the work it receives in
// each given its size.
struct AgeInterval {
  double begin = 0.0;
  double end = 0.0;
  double work = 0.0;
};

struct IntervalSet {
  std::vector<AgeInterval> intervals;
  double total_work = 0.0;
};

IntervalSet intervals(const std::vector<double>& trajectory, double r_max, double size);

// X_i_OLD for one interval [b, c) and job size X_d.
double interval_work(double begin, double end, double size);

}  // namespace lpsched
