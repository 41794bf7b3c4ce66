#include "lpsched/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lpsched {

Bins::Bins(std::vector<double> boundaries) : boundaries_(std::move(boundaries)) {
  if (boundaries_.size() < 2) throw std::invalid_argument("bins need at least two boundaries");
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (!(boundaries_[i] > boundaries_[i - 1]))
      throw std::invalid_argument("bin boundaries must be strictly increasing");
  }
}

Bins Bins::uniform(double lower, double upper, std::size_t k) {
  if (k == 0) throw std::invalid_argument("bin count must be positive");
  std::vector<double> b(k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    b[i] = lower + (upper - lower) * static_cast<double>(i) / static_cast<double>(k);
  b[k] = upper;
  return Bins(std::move(b));
}

Bins Bins::standard() { return uniform(0.0, 512.0, 10); }

std::size_t Bins::index_of(double length) const {
  if (!(length >= lower() && length <= upper()))
    throw std::domain_error("length " + std::to_string(length) + " outside bin range");
  if (length == upper()) return count();
  // first boundary strictly greater than length
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), length);
  return static_cast<std::size_t>(it - boundaries_.begin());
}

double Bins::midpoint(std::size_t i) const {
  if (i < 1 || i > count()) throw std::out_of_range("bin index out of range");
  return 0.5 * (boundaries_[i - 1] + boundaries_[i]);
}

double Bins::width(std::size_t i) const {
  if (i < 1 || i > count()) throw std::out_of_range("bin index out of range");
  return boundaries_[i] - boundaries_[i - 1];
}

bool BeliefState::is_simplex(double tol) const {
  if (q.empty()) return false;
  double sum = 0.0;
  for (double v : q) {
    if (!(v >= 0.0)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

std::size_t BeliefState::argmax() const {
  if (q.empty()) throw std::logic_error("argmax of empty belief");
  return static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin()) + 1;
}

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace

void summarize(SimStats& stats, std::size_t warmup) {
  warmup = std::min(warmup, stats.per_job.size());
  stats.warmup = static_cast<std::int64_t>(warmup);
  std::vector<double> lat, ttft;
  lat.reserve(stats.per_job.size() - warmup);
  ttft.reserve(stats.per_job.size() - warmup);
  for (std::size_t i = warmup; i < stats.per_job.size(); ++i) {
    lat.push_back(stats.per_job[i].latency());
    ttft.push_back(stats.per_job[i].ttft());
  }
  const double n = static_cast<double>(lat.size());
  stats.mean_latency = lat.empty() ? 0.0 : std::accumulate(lat.begin(), lat.end(), 0.0) / n;
  stats.mean_ttft = ttft.empty() ? 0.0 : std::accumulate(ttft.begin(), ttft.end(), 0.0) / n;
  stats.median_latency = median_of(std::move(lat));
  stats.median_ttft = median_of(std::move(ttft));
}

}  // namespace lpsched
