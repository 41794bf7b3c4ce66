#include "lpsched/sweep.hpp"

#include <fmt/format.h>

#include <atomic>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lpsched/csv.hpp"

namespace lpsched {

Estimate estimate(const std::vector<double>& samples) {
  Estimate e;
  if (samples.empty()) return e;
  double sum = 0.0;
  for (double v : samples) sum += v;
  const double n = static_cast<double>(samples.size());
  e.mean = sum / n;
  if (samples.size() < 2) return e;
  double ss = 0.0;
  for (double v : samples) ss += (v - e.mean) * (v - e.mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  boost::math::students_t dist(n - 1.0);
  e.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * sd / std::sqrt(n);
  return e;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = cursor++; i < count; i = cursor++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<SweepRow> sweep(const SweepGrid& grid, const SimConfig& base, unsigned threads) {
  base.validate();
  const std::vector<double> rates = grid.rates.empty() ? std::vector<double>{base.arrival.rate} : grid.rates;
  // NaN marks "keep the base policy"
  const std::vector<double> Cs = grid.Cs.empty() ? std::vector<double>{std::nan("")} : grid.Cs;

  std::vector<SimConfig> points;
  std::vector<SweepRow> rows;
  for (double rate : rates) {
    for (double C : Cs) {
      SimConfig cfg = base;
      cfg.arrival.rate = rate;
      if (!std::isnan(C)) {
        cfg.policy.kind = RankPolicy::Kind::sprpt_lp;
        cfg.policy.C = C;
      }
      cfg.validate();
      SweepRow row;
      // a burst has no arrival rate
      row.rate = cfg.arrival.kind == ArrivalSpec::Kind::burst ? std::nan("") : rate;
      row.C = cfg.policy.kind == RankPolicy::Kind::sprpt_lp ? cfg.policy.C
              : cfg.policy.kind == RankPolicy::Kind::sprpt  ? 1.0
                                                            : 0.0;
      row.unstable = cfg.unstable();
      row.runs.resize(static_cast<std::size_t>(cfg.replications));
      points.push_back(std::move(cfg));
      rows.push_back(std::move(row));
    }
  }

  const auto reps = static_cast<std::size_t>(base.replications);
  parallel_for(points.size() * reps, threads, [&](std::size_t task) {
    const std::size_t p = task / reps;
    const std::size_t r = task % reps;
    SimStats stats = run_simulation(points[p], r).stats;
    rows[p].runs[r] = std::move(stats);
  });

  for (SweepRow& row : rows) {
    auto collect = [&](auto member) {
      std::vector<double> v;
      v.reserve(row.runs.size());
      for (const SimStats& s : row.runs) v.push_back(static_cast<double>(s.*member));
      return estimate(v);
    };
    row.mean_latency = collect(&SimStats::mean_latency);
    row.median_latency = collect(&SimStats::median_latency);
    row.mean_ttft = collect(&SimStats::mean_ttft);
    row.median_ttft = collect(&SimStats::median_ttft);
    row.peak_memory = collect(&SimStats::peak_memory);
    row.preemptions = collect(&SimStats::preemptions);
  }
  return rows;
}

std::string sweep_csv_header() {
  return "rate,C,replications,unstable,mean_latency,mean_latency_ci,median_latency,median_latency_ci,"
         "mean_ttft,mean_ttft_ci,median_ttft,median_ttft_ci,peak_memory,peak_memory_ci,preemptions,"
         "preemptions_ci";
}

std::string sweep_csv_row(const SweepRow& row) {
  auto pair = [](const Estimate& e) { return format_number(e.mean) + "," + format_number(e.half_width); };
  return fmt::format("{},{},{},{},{},{},{},{},{},{}", format_number(row.rate), format_number(row.C), row.runs.size(),
                     row.unstable ? 1 : 0, pair(row.mean_latency), pair(row.median_latency), pair(row.mean_ttft),
                     pair(row.median_ttft), pair(row.peak_memory), pair(row.preemptions));
}

}  // namespace lpsched
