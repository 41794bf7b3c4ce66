#pragma once

// Experiment configuration: one YAML document with `schema_version: 1`.
// Unknown keys are rejected; diagnostics carry the file position of the
// offending node. Scalar overrides (`--set a.b=v`) are applied to the document
// before it is interpreted, so they go through the same checks.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpsched/analytic.hpp"
#include "lpsched/quadrature.hpp"
#include "lpsched/simulate.hpp"
#include "lpsched/sweep.hpp"

namespace lpsched::cli {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ValidateSpec {
  double tolerance = 0.05;
  std::vector<double> rates;  // empty: arrival.rate
  std::vector<double> Cs;     // empty: the policy's C
  // Density used by the analytic side; defaults to the simulated predictor.
  // Setting it to something else is a negative control.
  std::optional<PredictorModel> analytic_predictor;
  RecycledTerm recycled_term = RecycledTerm::own_threshold;
};

struct RefineSpec {
  int trajectories = 1000;
  double size_mean = 100.0;
  int size_min = 1;
  int size_max = 512;
};

struct AnalyzeSpec {
  std::vector<double> rates;
  std::vector<double> Cs;
  std::vector<double> x_grid;
  RecycledTerm recycled_term = RecycledTerm::own_threshold;
};

struct OutputSpec {
  std::optional<std::string> dir;
  bool per_job = true;
};

struct ExperimentConfig {
  SimConfig sim;
  Bins bins = Bins::standard();
  QuadratureSpec quadrature;
  SweepGrid sweep;
  ValidateSpec validate;
  RefineSpec refine;
  AnalyzeSpec analyze;
  OutputSpec output;
  unsigned threads = 0;
  std::string source;               // file name used in diagnostics
  std::set<std::string> sections;   // top-level keys present in the document

  // Throws ConfigError naming the section when it is absent.
  void require(const std::string& section) const;
};

ExperimentConfig load_config_file(const std::string& path, const std::vector<std::string>& overrides = {});
ExperimentConfig load_config_string(const std::string& text, const std::string& source = "<string>",
                                    const std::vector<std::string>& overrides = {});

}  // namespace lpsched::cli
