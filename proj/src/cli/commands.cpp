#include "lpsched/cli/commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "lpsched/analytic.hpp"
#include "lpsched/cli/config.hpp"
#include "lpsched/csv.hpp"
#include "lpsched/refine.hpp"
#include "lpsched/simulate.hpp"
#include "lpsched/sweep.hpp"

namespace lpsched::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Invocation {
  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<unsigned> threads;
};

// --out > output.dir > $LPSCHED_OUT_DIR > ./lpsched_out
fs::path output_dir(const Invocation& inv, const ExperimentConfig& cfg) {
  if (inv.out_dir) return *inv.out_dir;
  if (cfg.output.dir) return *cfg.output.dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "lpsched_out";
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  f << content;
  if (!f) throw std::runtime_error(fmt::format("error writing {}", path.string()));
}

std::string num(double v) { return format_number(v); }

Json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json json_estimate(const Estimate& e) { return Json{{"mean", json_number(e.mean)}, {"ci95", json_number(e.half_width)}}; }

double policy_C(const RankPolicy& p) {
  switch (p.kind) {
    case RankPolicy::Kind::sprpt_lp: return p.C;
    case RankPolicy::Kind::sprpt: return 1.0;
    default: return 0.0;
  }
}

std::string_view predictor_name(PredictorModel::Kind kind) {
  switch (kind) {
    case PredictorModel::Kind::perfect: return "perfect";
    case PredictorModel::Kind::exponential_noise: return "exponential_noise";
    case PredictorModel::Kind::binned_synthetic: return "binned_synthetic";
    case PredictorModel::Kind::markov_trajectory: return "markov_trajectory";
  }
  return "?";
}

std::string_view term_name(RecycledTerm t) { return t == RecycledTerm::verbatim ? "verbatim" : "own_threshold"; }

Json describe(const SimConfig& sim) {
  Json j;
  j["mode"] = sim.mode == SimMode::batch ? "batch" : "continuous";
  j["seed"] = sim.seed;
  j["replications"] = sim.replications;
  j["policy"] = sim.policy.name();
  j["prediction_source"] = std::string(to_string(sim.policy.source));
  j["predictor"] = std::string(predictor_name(sim.predictor.kind));
  j["arrival_rate"] = sim.arrival.kind == ArrivalSpec::Kind::poisson ? json_number(sim.arrival.rate) : Json(nullptr);
  j["mean_service"] = sim.service.expected();
  j["warmup_fraction"] = sim.warmup_fraction;
  if (sim.mode == SimMode::batch) {
    j["memory_budget"] = json_number(sim.memory_budget);
    j["preemption"] = sim.preemption == PreemptionCost::hold ? "hold" : "discard";
    j["recompute_rate"] = sim.recompute_rate;
  }
  return j;
}

Json stats_json(const SimStats& s) {
  return Json{{"completed", s.completed},
              {"warmup", s.warmup},
              {"mean_latency", json_number(s.mean_latency)},
              {"median_latency", json_number(s.median_latency)},
              {"mean_ttft", json_number(s.mean_ttft)},
              {"median_ttft", json_number(s.median_ttft)},
              {"peak_memory", json_number(s.peak_memory)},
              {"preemptions", s.preemptions},
              {"unschedulable", s.unschedulable},
              {"forced_evictions", s.forced_evictions}};
}

void warn_unstable(const SimConfig& sim, std::ostream& err) {
  if (!sim.unstable()) return;
  err << fmt::format("warning: unstable configuration (rate {} x E[X] {} = {} >= 1); the queue does not settle\n",
                     sim.arrival.rate, sim.service.expected(), sim.arrival.rate * sim.service.expected());
}

int cmd_simulate(const Invocation& inv, const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.require("arrival");
  cfg.require("service");
  const SimConfig& sim = cfg.sim;
  warn_unstable(sim, err);

  const std::vector<SweepRow> rows = sweep(SweepGrid{}, sim, cfg.threads);
  const SweepRow& row = rows.front();

  const fs::path dir = output_dir(inv, cfg);
  fs::create_directories(dir);

  if (cfg.output.per_job) {
    std::string jobs = "replication,id,arrival,size,prediction,first_service,completion,latency,ttft,preemptions,warmup\n";
    for (std::size_t r = 0; r < row.runs.size(); ++r) {
      const SimStats& s = row.runs[r];
      for (std::size_t i = 0; i < s.per_job.size(); ++i) {
        const JobRecord& j = s.per_job[i];
        jobs += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r, j.id, num(j.arrival), num(j.size), num(j.prediction),
                            num(j.first_service), num(j.completion), num(j.latency()), num(j.ttft()), j.preemptions,
                            static_cast<std::int64_t>(i) < s.warmup ? 1 : 0);
      }
    }
    write_file(dir / "jobs.csv", jobs);
  }

  std::string summary =
      "replication,seed,completed,warmup,mean_latency,median_latency,mean_ttft,median_ttft,peak_memory,preemptions,"
      "unschedulable,forced_evictions\n";
  Json reps = Json::array();
  for (std::size_t r = 0; r < row.runs.size(); ++r) {
    const SimStats& s = row.runs[r];
    summary += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r, replication_seed(sim.seed, r), s.completed,
                           s.warmup, num(s.mean_latency), num(s.median_latency), num(s.mean_ttft), num(s.median_ttft),
                           num(s.peak_memory), s.preemptions, s.unschedulable, s.forced_evictions);
    Json j = stats_json(s);
    j["replication"] = r;
    j["seed"] = replication_seed(sim.seed, r);
    reps.push_back(std::move(j));
  }
  write_file(dir / "summary.csv", summary);

  if (sim.record_memory_trace) {
    const SimResult first = run_simulation(sim, 0);
    std::string trace = "time,memory\n";
    for (const MemorySample& m : first.memory_trace) trace += fmt::format("{},{}\n", num(m.time), num(m.memory));
    write_file(dir / "memory.csv", trace);
  }

  Json doc;
  doc["command"] = "simulate";
  doc["config"] = describe(sim);
  doc["unstable"] = row.unstable;
  doc["mean_latency"] = json_estimate(row.mean_latency);
  doc["median_latency"] = json_estimate(row.median_latency);
  doc["mean_ttft"] = json_estimate(row.mean_ttft);
  doc["median_ttft"] = json_estimate(row.median_ttft);
  doc["peak_memory"] = json_estimate(row.peak_memory);
  doc["preemptions"] = json_estimate(row.preemptions);
  doc["replications"] = std::move(reps);
  write_file(dir / "summary.json", doc.dump(2) + "\n");

  out << fmt::format("{:<16}{:>14}{:>14}\n", "metric", "mean", "ci95");
  auto line = [&](const char* name, const Estimate& e) {
    out << fmt::format("{:<16}{:>14.6g}{:>14.3g}\n", name, e.mean, e.half_width);
  };
  line("mean_latency", row.mean_latency);
  line("median_latency", row.median_latency);
  line("mean_ttft", row.mean_ttft);
  line("median_ttft", row.median_ttft);
  line("peak_memory", row.peak_memory);
  line("preemptions", row.preemptions);
  std::int64_t unschedulable = 0;
  for (const SimStats& s : row.runs) unschedulable += s.unschedulable;
  if (unschedulable > 0)
    err << fmt::format("warning: {} job(s) could never fit the memory budget and were dropped\n", unschedulable);
  out << fmt::format("wrote {}\n", dir.string());
  return kOk;
}

int cmd_sweep(const Invocation& inv, const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.require("arrival");
  cfg.require("service");
  const std::vector<SweepRow> rows = sweep(cfg.sweep, cfg.sim, cfg.threads);

  const fs::path dir = output_dir(inv, cfg);
  fs::create_directories(dir);

  std::string csv = sweep_csv_header() + "\n";
  Json points = Json::array();
  for (const SweepRow& row : rows) {
    csv += sweep_csv_row(row) + "\n";
    if (row.unstable) err << fmt::format("warning: point rate={} C={} is unstable\n", row.rate, row.C);
    points.push_back(Json{{"rate", json_number(row.rate)},
                          {"C", row.C},
                          {"unstable", row.unstable},
                          {"mean_latency", json_estimate(row.mean_latency)},
                          {"median_latency", json_estimate(row.median_latency)},
                          {"mean_ttft", json_estimate(row.mean_ttft)},
                          {"median_ttft", json_estimate(row.median_ttft)},
                          {"peak_memory", json_estimate(row.peak_memory)},
                          {"preemptions", json_estimate(row.preemptions)}});
  }
  write_file(dir / "sweep.csv", csv);

  Json doc;
  doc["command"] = "sweep";
  doc["config"] = describe(cfg.sim);
  doc["points"] = std::move(points);
  write_file(dir / "summary.json", doc.dump(2) + "\n");

  out << fmt::format("{:>8}{:>8}{:>10}{:>14}{:>14}{:>14}{:>12}\n", "rate", "C", "unstable", "mean_latency", "mean_ttft",
                     "peak_memory", "preempts");
  for (const SweepRow& row : rows)
    out << fmt::format("{:>8.4g}{:>8.4g}{:>10}{:>14.6g}{:>14.6g}{:>14.6g}{:>12.6g}\n", row.rate, row.C,
                       row.unstable ? "yes" : "no", row.mean_latency.mean, row.mean_ttft.mean, row.peak_memory.mean,
                       row.preemptions.mean);
  out << fmt::format("wrote {}\n", dir.string());
  return kOk;
}

std::vector<double> or_default(const std::vector<double>& v, double fallback) {
  return v.empty() ? std::vector<double>{fallback} : v;
}

int cmd_validate(const Invocation& inv, const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.require("arrival");
  cfg.require("service");
  const SimConfig& sim = cfg.sim;
  if (sim.mode != SimMode::continuous) throw ConfigError(fmt::format("{}: validate needs mode continuous", cfg.source));
  if (sim.arrival.kind != ArrivalSpec::Kind::poisson)
    throw ConfigError(fmt::format("{}: validate needs poisson arrivals", cfg.source));
  if (sim.policy.source != RankPolicy::Source::static_prediction)
    throw ConfigError(fmt::format("{}: validate needs static predictions", cfg.source));
  if (cfg.validate.Cs.empty() && sim.policy.kind != RankPolicy::Kind::sprpt &&
      sim.policy.kind != RankPolicy::Kind::sprpt_lp)
    throw ConfigError(fmt::format("{}: validate needs policy sprpt or sprpt_lp, or validate.C", cfg.source));

  const PredictorModel analytic_predictor = cfg.validate.analytic_predictor.value_or(sim.predictor);
  DensityPair pair;
  try {
    pair = DensityPair::from(sim.service, analytic_predictor, cfg.quadrature);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", cfg.source, e.what()));
  }

  SweepGrid grid;
  grid.rates = or_default(cfg.validate.rates, sim.arrival.rate);
  grid.Cs = or_default(cfg.validate.Cs, policy_C(sim.policy));
  for (double rate : grid.rates) {
    SimConfig point = sim;
    point.arrival.rate = rate;
    warn_unstable(point, err);
  }
  const std::vector<SweepRow> rows = sweep(grid, sim, cfg.threads);

  const RecycledTerm term = cfg.validate.recycled_term;
  const RecycledTerm other = term == RecycledTerm::own_threshold ? RecycledTerm::verbatim : RecycledTerm::own_threshold;

  struct Line {
    double rate, C, sim_mean, sim_ci, analytic, alt, gap, alt_gap;
    bool ok;
  };
  std::vector<Line> lines;
  for (const SweepRow& row : rows) {
    const AggregateResponse a = mean_response_aggregate(row.C, row.rate, pair, cfg.quadrature, {}, term);
    const AggregateResponse b = mean_response_aggregate(row.C, row.rate, pair, cfg.quadrature, {}, other);
    Line l{row.rate, row.C, row.mean_latency.mean, row.mean_latency.half_width, kInf, kInf, kInf, kInf, false};
    if (!a.unstable) {
      l.analytic = a.mean;
      l.gap = std::abs(l.sim_mean - a.mean) / a.mean;
    }
    if (!b.unstable) {
      l.alt = b.mean;
      l.alt_gap = std::abs(l.sim_mean - b.mean) / b.mean;
    }
    l.ok = !row.unstable && !a.unstable && l.gap <= cfg.validate.tolerance;
    lines.push_back(l);
  }

  const fs::path dir = output_dir(inv, cfg);
  fs::create_directories(dir);
  std::string csv = fmt::format("rate,C,sim_mean,sim_ci,analytic_{0},rel_gap_{0},analytic_{1},rel_gap_{1},within\n",
                                term_name(term), term_name(other));
  Json jrows = Json::array();
  for (const Line& l : lines) {
    csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", num(l.rate), num(l.C), num(l.sim_mean), num(l.sim_ci),
                       num(l.analytic), num(l.gap), num(l.alt), num(l.alt_gap), l.ok ? 1 : 0);
    jrows.push_back(Json{{"rate", l.rate},
                         {"C", l.C},
                         {"sim_mean", json_number(l.sim_mean)},
                         {"sim_ci95", json_number(l.sim_ci)},
                         {"analytic", json_number(l.analytic)},
                         {"rel_gap", json_number(l.gap)},
                         {"analytic_alternative", json_number(l.alt)},
                         {"rel_gap_alternative", json_number(l.alt_gap)},
                         {"within_tolerance", l.ok}});
  }
  write_file(dir / "validate.csv", csv);

  const bool all_ok = std::all_of(lines.begin(), lines.end(), [](const Line& l) { return l.ok; });
  Json doc;
  doc["command"] = "validate";
  doc["config"] = describe(sim);
  doc["analytic_predictor"] = std::string(predictor_name(analytic_predictor.kind));
  doc["recycled_term"] = std::string(term_name(term));
  doc["alternative_term"] = std::string(term_name(other));
  doc["tolerance"] = cfg.validate.tolerance;
  doc["rows"] = std::move(jrows);
  doc["passed"] = all_ok;
  write_file(dir / "summary.json", doc.dump(2) + "\n");

  out << fmt::format("analytic recycled term: {} (alternative: {}), tolerance {}\n", term_name(term), term_name(other),
                     cfg.validate.tolerance);
  out << fmt::format("{:>7}{:>7}{:>12}{:>10}{:>12}{:>9}{:>12}{:>9}  {}\n", "rate", "C", "sim", "ci95", "analytic", "gap",
                     "alt", "alt_gap", "status");
  for (const Line& l : lines)
    out << fmt::format("{:>7.4g}{:>7.4g}{:>12.6g}{:>10.3g}{:>12.6g}{:>8.2f}%{:>12.6g}{:>8.2f}%  {}\n", l.rate, l.C,
                       l.sim_mean, l.sim_ci, l.analytic, 100.0 * l.gap, l.alt, 100.0 * l.alt_gap,
                       l.ok ? "ok" : "OUTSIDE");
  out << fmt::format("wrote {}\n", dir.string());
  if (all_ok) return kOk;
  for (const Line& l : lines)
    if (!l.ok)
      err << fmt::format("validate: rate={} C={} gap {:.2f}% exceeds tolerance {:.2f}%\n", l.rate, l.C, 100.0 * l.gap,
                         100.0 * cfg.validate.tolerance);
  return kToleranceFailure;
}

int cmd_refine(const Invocation& inv, const ExperimentConfig& cfg, std::ostream& out, std::ostream&) {
  const Bins& bins = cfg.bins;
  const RefineSpec& spec = cfg.refine;
  if (spec.size_max > bins.upper())
    throw ConfigError(fmt::format("{}: refine.size_max {} exceeds the top bin boundary {}", cfg.source, spec.size_max,
                                  bins.upper()));
  if (spec.size_min < bins.lower())
    throw ConfigError(fmt::format("{}: refine.size_min {} lies below the first bin boundary {}", cfg.source,
                                  spec.size_min, bins.lower()));
  TransitionMatrix transition(1);
  try {
    transition = build_transition(bins);
  } catch (const std::domain_error& e) {
    throw ConfigError(fmt::format("{}: {}", cfg.source, e.what()));
  }

  const SeedStreams seeds(cfg.sim.seed);
  Rng size_rng = seeds.stream("refine_sizes");
  std::string steps = "trajectory,t,true_remaining,raw_Lt,refined_Lt\n";
  std::string per_traj = "trajectory,size,raw_mae,refined_mae\n";
  double raw_sum = 0.0, refined_sum = 0.0;
  for (int i = 0; i < spec.trajectories; ++i) {
    const double draw = std::ceil(size_rng.exponential(spec.size_mean));
    const int size = static_cast<int>(std::clamp(draw, static_cast<double>(spec.size_min), static_cast<double>(spec.size_max)));
    Rng rng = seeds.stream("refine", static_cast<std::uint64_t>(i));
    const RefinementTrace trace = refine_trajectory(size, bins, transition, cfg.sim.observation, rng);
    for (const RefinementStep& s : trace.steps)
      steps += fmt::format("{},{},{},{},{}\n", i, s.t, num(s.true_remaining), num(s.raw), num(s.refined));
    per_traj += fmt::format("{},{},{},{}\n", i, size, num(trace.raw_mae), num(trace.refined_mae));
    raw_sum += trace.raw_mae;
    refined_sum += trace.refined_mae;
  }
  const double raw_mae = raw_sum / spec.trajectories;
  const double refined_mae = refined_sum / spec.trajectories;

  const fs::path dir = output_dir(inv, cfg);
  fs::create_directories(dir);
  write_file(dir / "refine.csv", steps);
  write_file(dir / "refine_trajectories.csv", per_traj);

  Json doc;
  doc["command"] = "refine";
  doc["seed"] = cfg.sim.seed;
  doc["bins"] = bins.boundaries();
  doc["concentration"] = json_number(cfg.sim.observation.concentration);
  doc["mislabel_rate"] = cfg.sim.observation.mislabel_rate;
  doc["trajectories"] = spec.trajectories;
  doc["mean_raw_mae"] = raw_mae;
  doc["mean_refined_mae"] = refined_mae;
  doc["raw_to_refined_ratio"] = refined_mae > 0.0 ? json_number(raw_mae / refined_mae) : Json(nullptr);
  write_file(dir / "summary.json", doc.dump(2) + "\n");

  out << fmt::format("trajectories      {}\nmean raw MAE      {:.6g}\nmean refined MAE  {:.6g}\n", spec.trajectories,
                     raw_mae, refined_mae);
  out << fmt::format("wrote {}\n", dir.string());
  return kOk;
}

int cmd_analyze(const Invocation& inv, const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.require("service");
  const SimConfig& sim = cfg.sim;
  DensityPair pair;
  try {
    pair = DensityPair::from(sim.service, sim.predictor, cfg.quadrature);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(fmt::format("{}: {}", cfg.source, e.what()));
  }
  const std::vector<double> rates = or_default(cfg.analyze.rates, sim.arrival.rate);
  const std::vector<double> Cs = or_default(cfg.analyze.Cs, policy_C(sim.policy));

  std::string table = "rate,C,mean_response,unstable\n";
  std::string curve = "rate,C,x,mean_response\n";
  Json points = Json::array();
  out << fmt::format("{:>8}{:>8}{:>16}\n", "rate", "C", "E[T]");
  for (double rate : rates) {
    for (double C : Cs) {
      const AggregateResponse a =
          mean_response_aggregate(C, rate, pair, cfg.quadrature, cfg.analyze.x_grid, cfg.analyze.recycled_term);
      if (a.unstable) err << fmt::format("warning: rate={} C={} is unstable\n", rate, C);
      table += fmt::format("{},{},{},{}\n", num(rate), num(C), a.unstable ? "" : num(a.mean), a.unstable ? 1 : 0);
      Json jc = Json::array();
      for (const ResponsePoint& p : a.curve) {
        curve += fmt::format("{},{},{},{}\n", num(rate), num(C), num(p.x), num(p.mean));
        jc.push_back(Json{{"x", p.x}, {"mean_response", json_number(p.mean)}});
      }
      points.push_back(Json{{"rate", rate},
                            {"C", C},
                            {"unstable", a.unstable},
                            {"mean_response", a.unstable ? Json(nullptr) : json_number(a.mean)},
                            {"curve", std::move(jc)}});
      out << fmt::format("{:>8.4g}{:>8.4g}{:>16}\n", rate, C, a.unstable ? "unstable" : fmt::format("{:.8g}", a.mean));
    }
  }

  const fs::path dir = output_dir(inv, cfg);
  fs::create_directories(dir);
  write_file(dir / "analyze.csv", table);
  if (!cfg.analyze.x_grid.empty()) write_file(dir / "analyze_curve.csv", curve);

  Json doc;
  doc["command"] = "analyze";
  doc["predictor"] = std::string(predictor_name(sim.predictor.kind));
  doc["mean_service"] = sim.service.expected();
  doc["recycled_term"] = std::string(term_name(cfg.analyze.recycled_term));
  doc["truncation"] = pair.x_upper;
  doc["points"] = std::move(points);
  write_file(dir / "summary.json", doc.dump(2) + "\n");
  out << fmt::format("wrote {}\n", dir.string());
  return kOk;
}

using Command = int (*)(const Invocation&, const ExperimentConfig&, std::ostream&, std::ostream&);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limited-preemption SPRPT queueing toolkit", "lpsched"};
  app.require_subcommand(1, 1);

  Invocation inv;
  std::uint64_t seed = 0;
  std::string out_dir;
  unsigned threads = 0;

  struct Entry {
    const char* name;
    const char* help;
    Command fn;
    CLI::App* sub = nullptr;
  };
  Entry entries[] = {
      {"simulate", "Run the simulator and write per-job records and a summary", cmd_simulate},
      {"sweep", "Simulate a grid over arrival rate and C with replication CIs", cmd_sweep},
      {"validate", "Compare the analytic mean response time with simulation", cmd_validate},
      {"refine", "Run Bayesian refinement over a seeded trajectory ensemble", cmd_refine},
      {"analyze", "Evaluate the analytic mean response time", cmd_analyze},
  };
  for (Entry& e : entries) {
    e.sub = app.add_subcommand(e.name, e.help);
    e.sub->add_option("config", inv.config_path, "YAML configuration file")->required();
    e.sub->add_option("--set", inv.sets, "Override a config field, e.g. --set arrival.rate=0.7");
    e.sub->add_option("--seed", seed, "Override the master seed");
    e.sub->add_option("--out", out_dir, "Output directory");
    e.sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
  }

  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  Entry* chosen = nullptr;
  for (Entry& e : entries)
    if (e.sub->parsed()) chosen = &e;

  std::vector<std::string> overrides = inv.sets;
  if (chosen->sub->count("--seed")) overrides.push_back(fmt::format("seed={}", seed));
  if (chosen->sub->count("--threads")) overrides.push_back(fmt::format("threads={}", threads));
  if (chosen->sub->count("--out")) inv.out_dir = out_dir;

  try {
    const ExperimentConfig cfg = load_config_file(inv.config_path, overrides);
    return chosen->fn(inv, cfg, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace lpsched::cli
