// Acceptance checks. One PASS/FAIL line per criterion; nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "lpsched/analytic.hpp"
#include "lpsched/cli/commands.hpp"
#include "lpsched/refine.hpp"
#include "lpsched/simulate.hpp"
#include "lpsched/sweep.hpp"

namespace fs = std::filesystem;
using namespace lpsched;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& what) {
  fmt::print("{} criterion {}: {}\n", ok ? "PASS" : "FAIL", n, what);
  std::fflush(stdout);
  if (!ok) ++failures;
}

void note(const std::string& s) {
  fmt::print("    {}\n", s);
  std::fflush(stdout);
}

// 1.25M arrivals with a 20% warmup leave 10^6 measured jobs.
constexpr std::uint64_t kJobs = 1250000;

SimConfig steady(double lambda, RankPolicy policy, PredictorModel pred, std::uint64_t seed) {
  SimConfig c;
  c.arrival = ArrivalSpec::poisson_count(lambda, kJobs);
  c.service = ServiceDist::exponential(1.0);
  c.predictor = pred;
  c.policy = policy;
  c.warmup_fraction = 0.2;
  c.seed = seed;
  return c;
}

double rel_gap(double a, double b) { return std::abs(a - b) / b; }

void criterion1() {
  bool ok = true;
  for (double lambda : {0.3, 0.5, 0.8}) {
    const auto t0 = Clock::now();
    const SimStats s = run_simulation(steady(lambda, RankPolicy::fcfs(), PredictorModel::perfect(), 101)).stats;
    const double secs = seconds_since(t0);
    const double expect = 1.0 / (1.0 - lambda);
    const double gap = rel_gap(s.mean_latency, expect);
    const bool point_ok = gap <= 0.02 && secs < 120.0 && s.completed - s.warmup == 1000000;
    note(fmt::format("lambda={} measured={} sim={:.5f} closed form={:.5f} gap={:.3f}% time={:.1f}s", lambda,
                     s.completed - s.warmup, s.mean_latency, expect, 100.0 * gap, secs));
    ok = ok && point_ok;
  }
  report(1, ok, "FCFS mean latency within 2% of 1/(1-lambda), under 2 min per point");
}

QuadratureSpec default_quad() { return QuadratureSpec{}; }

void criterion2() {
  const QuadratureSpec q = default_quad();
  const DensityPair pair = DensityPair::from(ServiceDist::exponential(1.0), PredictorModel::perfect(), q);
  bool ok = true;
  for (double lambda : {0.5, 0.7}) {
    const SimStats s = run_simulation(steady(lambda, RankPolicy::sprpt_lp(1.0), PredictorModel::perfect(), 202)).stats;
    const AggregateResponse a = mean_response_aggregate(1.0, lambda, pair, q);
    const double gap = rel_gap(s.mean_latency, a.mean);
    note(fmt::format("lambda={} sim={:.5f} analytic={:.5f} gap={:.3f}%", lambda, s.mean_latency, a.mean, 100.0 * gap));
    ok = ok && !a.unstable && gap <= 0.05;
  }
  report(2, ok, "C=1 perfect predictor: analytic within 5% of simulation");
}

void criterion3() {
  const QuadratureSpec q = default_quad();
  const DensityPair pair = DensityPair::from(ServiceDist::exponential(1.0), PredictorModel::exponential_noise(), q);
  bool ok = true;
  double worst_verbatim = 0.0;
  for (double lambda : {0.7, 0.8})
    for (double C : {0.25, 0.5}) {
      const SimStats s =
          run_simulation(steady(lambda, RankPolicy::sprpt_lp(C), PredictorModel::exponential_noise(), 303)).stats;
      const AggregateResponse own = mean_response_aggregate(C, lambda, pair, q, {}, RecycledTerm::own_threshold);
      const AggregateResponse lit = mean_response_aggregate(C, lambda, pair, q, {}, RecycledTerm::verbatim);
      const double gap = rel_gap(s.mean_latency, own.mean);
      const double gap_lit = rel_gap(s.mean_latency, lit.mean);
      worst_verbatim = std::max(worst_verbatim, gap_lit);
      note(fmt::format("lambda={} C={} sim={:.5f} own_threshold={:.5f} ({:.2f}%) verbatim={:.5f} ({:.2f}%)", lambda, C,
                       s.mean_latency, own.mean, 100.0 * gap, lit.mean, 100.0 * gap_lit));
      ok = ok && !own.unstable && gap <= 0.10;
    }
  if (worst_verbatim > 0.10)
    note(fmt::format("the literal recycled-term limits (tagged job's threshold) miss by up to {:.1f}%; the quadrature "
                     "is confirmed by the Monte Carlo moment oracles (criterion 4), so the gap is the open question "
                     "over which threshold bounds the recycled integral",
                     100.0 * worst_verbatim));
  else
    note(fmt::format("verbatim recycled term worst gap {:.2f}%", 100.0 * worst_verbatim));
  report(3, ok, "limited preemption with exponential predictor: analytic (own-threshold recycled term) within 10%");
}

void criterion4() {
  const auto t0 = Clock::now();
  const QuadratureSpec q = default_quad();
  const DensityPair pair = DensityPair::from(ServiceDist::exponential(1.0), PredictorModel::exponential_noise(), q);
  std::mt19937_64 pick(4040);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool ok = true;
  for (int point = 0; point < 5; ++point) {
    const double r = 0.2 + 3.8 * u(pick);
    const double C = u(pick);
    const double lambda = 0.3 + 0.6 * u(pick);
    const double a0 = C * r;

    // one pass of 10^7 draws feeds every estimator
    std::mt19937_64 gen(9000 + static_cast<std::uint64_t>(point));
    std::exponential_distribution<double> unit(1.0);
    constexpr std::size_t n = 10000000;
    double s[4] = {0, 0, 0, 0}, s2[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < n; ++i) {
      const double x = unit(gen);
      const double y = x * unit(gen);
      double v[4] = {0, 0, 0, 0};
      if (y < r) {
        v[0] = lambda * x;
        v[1] = x * x;
      } else if (y >= r + a0 && x > y - r) {
        v[2] = (x - (y - r)) * (x - (y - r));
      }
      if (y > r) {
        const double age = std::min(y - r, C * y);
        if (x > age) v[3] = (x - age) * (x - age);
      }
      for (int k = 0; k < 4; ++k) {
        s[k] += v[k];
        s2[k] += v[k] * v[k];
      }
    }
    const double analytic[4] = {rho_prime(r, pair, lambda, q), moment_old0_sq(r, pair, q),
                                moment_old1_sq(r, a0, pair, q), moment_old1_sq_own(r, C, pair, q)};
    const char* names[4] = {"rho'", "old0", "old1", "old1_own"};
    std::string line = fmt::format("r={:.3f} C={:.3f} lambda={:.3f}:", r, C, lambda);
    for (int k = 0; k < 4; ++k) {
      const double mean = s[k] / n;
      const double se = std::sqrt(std::max(0.0, s2[k] / n - mean * mean) / n);
      const double z = se > 0.0 ? (analytic[k] - mean) / se : 0.0;
      line += fmt::format(" {} z={:+.2f}", names[k], z);
      ok = ok && std::abs(analytic[k] - mean) <= 4.0 * se + 1e-15;
    }
    note(line);
  }
  const double secs = seconds_since(t0);
  note(fmt::format("time {:.1f}s", secs));
  report(4, ok && secs < 60.0, "quadrature moments inside the 4-sigma band of 10^7-sample Monte Carlo");
}

void criterion5() {
  SimConfig base;
  base.arrival = ArrivalSpec::poisson_count(0.9, 50000);
  base.service = ServiceDist::exponential(1.0);
  base.predictor = PredictorModel::exponential_noise();
  base.warmup_fraction = 0.2;
  base.seed = 5;
  base.replications = 20;
  const auto rows = sweep(SweepGrid{{0.9}, {0.0, 0.5, 1.0}}, base, 0);
  const SweepRow& c0 = rows[0];
  const SweepRow& c5 = rows[1];
  const SweepRow& c1 = rows[2];
  note(fmt::format("peak memory: C=0.5 {:.3f} +- {:.3f}, C=1 {:.3f} +- {:.3f}", c5.peak_memory.mean,
                   c5.peak_memory.half_width, c1.peak_memory.mean, c1.peak_memory.half_width));
  note(fmt::format("mean latency: C=0.5 {:.4f} +- {:.4f}, C=0 {:.4f} +- {:.4f}", c5.mean_latency.mean,
                   c5.mean_latency.half_width, c0.mean_latency.mean, c0.mean_latency.half_width));
  report(5, c5.peak_memory.mean < c1.peak_memory.mean && c5.mean_latency.mean < c0.mean_latency.mean,
         "lambda=0.9, 20 replications: peak memory C=0.5 < C=1 and latency C=0.5 < C=0");
}

void criterion6() {
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SimConfig c;
    c.arrival = ArrivalSpec::poisson_count(0.85, 20000);
    c.predictor = PredictorModel::exponential_noise();
    c.seed = seed;
    c.policy = RankPolicy::sprpt_lp(1.0);
    const auto lp1 = run_simulation(c).stats.per_job;
    c.policy = RankPolicy::sprpt();
    const auto sp = run_simulation(c).stats.per_job;
    c.policy = RankPolicy::sprpt_lp(0.0);
    const auto lp0 = run_simulation(c).stats.per_job;
    c.policy = RankPolicy::spjf();
    const auto sj = run_simulation(c).stats.per_job;
    ok = ok && lp1 == sp && lp0 == sj && sp != sj;
  }
  report(6, ok, "C=1 matches SPRPT and C=0 matches SPJF record for record over 10 seeds");
}

void criterion7() {
  bool ok = true;
  for (SimMode mode : {SimMode::continuous, SimMode::batch})
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      SimConfig c;
      c.mode = mode;
      c.arrival = ArrivalSpec::burst(1000);
      c.service = ServiceDist::exponential(mode == SimMode::batch ? 50.0 : 1.0);
      c.predictor = PredictorModel::exponential_noise();
      c.seed = seed;
      c.policy = RankPolicy::sprpt_lp(0.8);
      const auto a = run_simulation(c).stats;
      c.policy = RankPolicy::sprpt_lp(1.0);
      const auto b = run_simulation(c).stats;
      ok = ok && a.per_job == b.per_job && a.preemptions == 0;
    }
  note("burst traces identical for C=0.8 and C=1 in continuous mode and in batch mode with unlimited memory");

  bool order_ok = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SimConfig c;
    c.arrival = ArrivalSpec::burst(1000);
    c.predictor = PredictorModel::perfect();
    c.warmup_fraction = 0.0;
    c.seed = seed;
    c.policy = RankPolicy::spjf();
    const double spjf = run_simulation(c).stats.mean_latency;
    c.policy = RankPolicy::fcfs();
    const double fcfs = run_simulation(c).stats.mean_latency;
    if (seed == 1) note(fmt::format("seed 1: SPJF {:.3f} vs FCFS {:.3f}", spjf, fcfs));
    order_ok = order_ok && spjf < fcfs;
  }
  report(7, ok && order_ok, "burst: C=0.8 and C=1 traces identical over 10 seeds; SPJF < FCFS on 1000 Exp(1) jobs");
}

void criterion8() {
  const Bins bins = Bins::standard();
  const TransitionMatrix T = build_transition(bins);
  auto ensemble = [&](const ObservationModel& model) {
    const SeedStreams seeds(20240601);
    Rng sizes = seeds.stream("sizes");
    double raw = 0.0, refined = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const int size = static_cast<int>(std::clamp(std::ceil(sizes.exponential(100.0)), 1.0, 512.0));
      Rng rng = seeds.stream("trajectory", static_cast<std::uint64_t>(i));
      const RefinementTrace tr = refine_trajectory(size, bins, T, model, rng);
      raw += tr.raw_mae;
      refined += tr.refined_mae;
    }
    return std::pair{raw / 1000.0, refined / 1000.0};
  };
  const auto [raw, refined] = ensemble(ObservationModel{2.0, 0.1});
  const auto [raw0, refined0] = ensemble(ObservationModel{kInf, 0.0});
  note(fmt::format("noisy: raw {:.3f} refined {:.3f} (ratio {:.2f}); noiseless: raw {:.4f} refined {:.4f}", raw, refined,
                   raw / refined, raw0, refined0));
  report(8, refined < raw && std::abs(raw0 - refined0) <= 1e-9 * raw0,
         "refined MAE below raw MAE on the seeded ensemble; noiseless control equal");
}

void criterion9() {
  const TransitionMatrix T3 = build_transition(Bins({0.0, 2.0, 4.0, 6.0}));
  const auto out = bayes_update(BeliefState{{0.0, 0.0, 1.0}}, Observation{{0.2, 0.5, 0.3}}, T3);
  bool ok = out && std::abs(out->q[0]) <= 1e-12 && std::abs(out->q[1] - 0.625) <= 1e-12 &&
            std::abs(out->q[2] - 0.375) <= 1e-12;
  ok = ok && expected_length(BeliefState{std::vector<double>(10, 0.1)}, Bins::standard()) == 256.0;
  const TransitionMatrix T = build_transition(Bins::standard());
  for (std::size_t j = 1; j <= 10; ++j) {
    ok = ok && std::abs(T.at(j, j) - (1.0 - 1.0 / 51.2)) <= 1e-15;
    if (j > 1) ok = ok && std::abs(T.at(j - 1, j) - 1.0 / 51.2) <= 1e-15;
  }
  report(9, ok, "Bayes update hand example, uniform expected length 256, transition entries");
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void criterion10() {
  const fs::path root = "acceptance_cli";
  fs::create_directories(root);
  const std::string common = R"(schema_version: 1
seed: 17
replications: 2
arrival: {kind: poisson, rate: 0.6, count: 5000}
service: {kind: exponential, mean: 1.0}
predictor: {kind: exponential_noise}
policy: {kind: sprpt_lp, C: 0.5}
sweep: {rates: [0.4, 0.7], C: [0.25, 1.0]}
validate: {tolerance: 1.0}
refine: {trajectories: 100}
analyze: {rates: [0.5], C: [0.5], x_grid: [1.0]}
output: {memory_trace: true}
)";
  std::ofstream(root / "config.yaml") << common;
  const std::string cfg = (root / "config.yaml").string();

  bool ok = true;
  for (const char* cmd : {"simulate", "sweep", "validate", "refine", "analyze"}) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / fmt::format("{}_{}", cmd, rep);
      fs::remove_all(dir);
      std::ostringstream out, err;
      const int code = cli::run({"lpsched", cmd, cfg, "--out", dir.string()}, out, err);
      ok = ok && code == cli::kOk;
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      std::string all;
      for (const fs::path& f : files) all += f.filename().string() + "\n" + slurp(f);
      // the printed table mentions the output directory, which differs by design
      std::string table = out.str();
      const auto pos = table.rfind("wrote ");
      if (pos != std::string::npos) table.erase(pos);
      outputs[rep] = all + table;
    }
    const bool same = outputs[0] == outputs[1] && !outputs[0].empty();
    note(fmt::format("{}: {} bytes, {}", cmd, outputs[0].size(), same ? "identical" : "DIFFERENT"));
    ok = ok && same;
  }
  report(10, ok, "every command reproduces byte-identical outputs");
}

}  // namespace

int main() {
  const std::function<void()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                            criterion6, criterion7, criterion8, criterion9, criterion10};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      fmt::print("FAIL criterion: exception {}\n", e.what());
      ++failures;
    }
  }
  fmt::print("{} criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
