#pragma once

// Reference implementations used only by tests. Nothing here calls into the
// library's numerics or its RNG, so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

// ---- closed forms --------------------------------------------------------

inline double mm1_response(double lambda, double mean = 1.0) { return mean / (1.0 - lambda * mean); }

// Pollaczek-Khinchine mean response for M/G/1 FCFS.
inline double pk_response(double lambda, double ex, double ex2) {
  return ex + lambda * ex2 / (2.0 * (1.0 - lambda * ex));
}

// Exp(1) partial moments over [0, x].
inline double exp_m1(double x) { return 1.0 - std::exp(-x) * (1.0 + x); }
inline double exp_m2(double x) { return 2.0 - std::exp(-x) * (x * x + 2.0 * x + 2.0); }

inline double midpoint_rule(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (!(b > a)) return 0.0;
  const double h = (b - a) / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += f(a + (i + 0.5) * h);
  return acc * h;
}

// Classic preemptive SRPT mean response for a job of size x in M/M/1 with
// exact sizes.
inline double srpt_mm1(double x, double lambda) {
  const double rho = lambda * exp_m1(x);
  const double wait = lambda * (exp_m2(x) + x * x * std::exp(-x)) / (2.0 * (1.0 - rho) * (1.0 - rho));
  const double res = midpoint_rule([&](double t) { return 1.0 / (1.0 - lambda * exp_m1(t)); }, 0.0, x, 4000);
  return wait + res;
}

// Non-preemptive SJF with exact sizes, M/M/1.
inline double sjf_mm1(double x, double lambda) {
  const double rho = lambda * exp_m1(x);
  return x + lambda * 2.0 / (2.0 * (1.0 - rho) * (1.0 - rho));
}

inline double average_over_exp1(const std::function<double(double)>& g, double upper = 30.0, int n = 6000) {
  return midpoint_rule([&](double x) { return std::exp(-x) * g(x); }, 0.0, upper, n);
}

// ---- Monte Carlo ---------------------------------------------------------

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;

  bool within(double value, double sigmas) const { return std::abs(value - mean) <= sigmas * stderr_ + 1e-15; }
};

// Draws (X, Y) with X ~ Exp(1) and Y | X ~ Exp(mean X) and averages fn(X, Y).
template <typename Fn>
McEstimate exp_pair_mc(std::uint64_t seed, std::size_t n, Fn&& fn) {
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> unit(1.0);
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = unit(gen);
    const double y = x * unit(gen);
    const double v = fn(x, y);
    s += v;
    s2 += v * v;
  }
  const double m = s / static_cast<double>(n);
  const double var = std::max(0.0, s2 / static_cast<double>(n) - m * m);
  return {m, std::sqrt(var / static_cast<double>(n))};
}

// ---- reference single-server scheduler -----------------------------------
//
// Straightforward O(n^2) event loop: at every arrival or completion scan all
// present jobs for the best rank. Only static predictions.

enum class Policy { fcfs, spjf, sprpt, sprpt_lp };

struct RefJob {
  std::uint64_t id;
  double arrival;
  double size;
  double r;
  double age = 0.0;
  double first = -1.0;
  double done = -1.0;
  int preemptions = 0;
};

// If `memory` is given, it receives (t, sum of ages of started unfinished
// jobs) at every event, taken just before a completing job leaves.
inline std::vector<RefJob> reference_run(std::vector<RefJob> jobs, Policy policy, double C = 1.0,
                                         std::vector<std::pair<double, double>>* memory = nullptr) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::sort(jobs.begin(), jobs.end(), [](const RefJob& a, const RefJob& b) {
    return a.arrival != b.arrival ? a.arrival < b.arrival : a.id < b.id;
  });
  auto key = [&](const RefJob& j) {
    const bool started = j.first >= 0.0;
    switch (policy) {
      case Policy::fcfs: return started ? -inf : j.arrival;
      case Policy::spjf: return started ? -inf : j.r;
      case Policy::sprpt: return j.r - j.age;
      case Policy::sprpt_lp: return (started && j.age >= C * j.r) ? -inf : j.r - j.age;
    }
    return 0.0;
  };
  auto better = [&](const RefJob& a, const RefJob& b) {
    const double ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    if (a.arrival != b.arrival) return a.arrival < b.arrival;
    return a.id < b.id;
  };

  const std::size_t n = jobs.size();
  std::size_t arrived = 0, finished = 0;
  long running = -1;
  double now = 0.0;
  while (finished < n) {
    const double ta = arrived < n ? jobs[arrived].arrival : inf;
    const double tc = running >= 0 ? now + (jobs[running].size - jobs[running].age) : inf;
    const double t = std::min(ta, tc);
    if (running >= 0) jobs[running].age = (tc <= t) ? jobs[running].size : jobs[running].age + (t - now);
    now = t;
    if (memory) {
      double m = 0.0;
      for (const RefJob& j : jobs)
        if (j.first >= 0.0 && j.done < 0.0) m += j.age;
      memory->emplace_back(now, m);
    }
    if (running >= 0 && tc <= t) {
      jobs[running].done = now;
      ++finished;
      running = -1;
    }
    while (arrived < n && jobs[arrived].arrival <= now) ++arrived;

    long best = -1;
    for (std::size_t i = 0; i < arrived; ++i) {
      if (jobs[i].done >= 0.0 || static_cast<long>(i) == running) continue;
      if (best < 0 || better(jobs[i], jobs[best])) best = static_cast<long>(i);
    }
    if (best < 0) continue;
    if (running < 0) {
      running = best;
    } else {
      const double kr = key(jobs[running]);
      if (kr > -inf && key(jobs[best]) < kr) {
        ++jobs[running].preemptions;
        running = best;
      }
    }
    if (jobs[running].first < 0.0) jobs[running].first = now;
  }
  return jobs;
}

}  // namespace oracle
