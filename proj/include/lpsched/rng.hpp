#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace lpsched {

// Seeded generator with portable variate transforms. The std:: distribution
// classes are implementation-defined, so variates are derived here from raw
// mt19937_64 output to keep workloads bit-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on (0, 1).
  double uniform();
  double exponential(double mean);
  double normal();
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

// One master seed split into independent named streams, e.g. "arrivals",
// "sizes", "predictions", "observations". `index` selects a sub-stream such as
// a replication or a job id.
class SeedStreams {
 public:
  explicit SeedStreams(std::uint64_t master) : master_(master) {}

  std::uint64_t master() const { return master_; }
  std::uint64_t seed_for(std::string_view name, std::uint64_t index = 0) const;
  Rng stream(std::string_view name, std::uint64_t index = 0) const { return Rng(seed_for(name, index)); }

 private:
  std::uint64_t master_;
};

}  // namespace lpsched
