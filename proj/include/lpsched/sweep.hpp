#pragma once

#include <string>
#include <vector>

#include "lpsched/simulate.hpp"

namespace lpsched {

struct SweepGrid {
  // Empty means "the base config's value".
  std::vector<double> rates;
  std::vector<double> Cs;
};

// Mean across replications with a 95% Student-t half-width.
struct Estimate {
  double mean = 0.0;
  double half_width = 0.0;
};

Estimate estimate(const std::vector<double>& samples);

struct SweepRow {
  double rate = 0.0;
  double C = 0.0;
  bool unstable = false;
  Estimate mean_latency, median_latency, mean_ttft, median_ttft, peak_memory, preemptions;
  std::vector<SimStats> runs;
};

// Every (rate, C) point gets `base.replications` runs with distinct seeds.
// Setting C switches the policy to SPRPT_LP. Runs use up to `threads` workers
// (0 = hardware concurrency); results do not depend on the thread count.
std::vector<SweepRow> sweep(const SweepGrid& grid, const SimConfig& base, unsigned threads = 0);

// Fixed CSV header and row formatting.
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace lpsched
