#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "majdyn/coloring.hpp"
#include "majdyn/io.hpp"

namespace majdyn {

inline constexpr const char* kVersion = "0.1.0";

/// Parsed experiment config. Keys of the JSON form:
///
///   experiment   fig2-left | fig2-middle | fig2-right | quadratic-growth |
///                martingale | absorption                       (required)
///   output       CSV path; the sidecar goes next to it as .json (required)
///   master_seed  unsigned integer                               (required)
///   trials       >= 1
///   families     subset of cycle, two-cycle, cycle-random
///   sizes        node counts
///   models       subset of mm, rmm
///   p_values     reals in [0,1]
///   b0           explicit initial blue counts (martingale, absorption)
///   coloring     initial coloring kind, checked against the experiment
///   max_rounds   round cap; the model default otherwise
///   horizon      last recorded round of the martingale study
///
/// Unknown keys are rejected. Omitted keys take the per-experiment defaults
/// listed in docs/experiments.md.
struct ExperimentConfig {
  std::string experiment;
  std::string output;
  std::uint64_t master_seed = 0;
  std::size_t trials = 1000;
  std::vector<std::string> families;
  std::vector<std::size_t> sizes;
  std::vector<Model> models;
  std::vector<double> p_values;
  std::vector<std::size_t> b0;
  std::string coloring;
  std::optional<std::uint64_t> max_rounds;
  std::size_t horizon = 50;

  /// Every field, defaults resolved. Echoed into the sidecar.
  Json to_json() const;
};

ExperimentConfig parse_experiment_config(const Json& j);
ExperimentConfig load_experiment_config(const std::string& path);

/// Seed of trial `trial` at grid point `point`.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t point, std::size_t trial);

struct SummaryPoint {
  std::string label;
  double x = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  double min = 0.0;
  double max = 0.0;
};

/// Sample mean, sample stddev / sqrt(count), min and max. Empty input gives
/// NaN statistics; a single value gives std_error 0.
SummaryPoint summarize(const std::vector<double>& values, std::string label = {}, double x = 0.0);

struct ExperimentReport {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<SummaryPoint> points;
  /// Experiment-specific extras (e.g. the fitted exponent).
  Json extra = Json::object();

  std::string csv() const;
  Json sidecar(const ExperimentConfig& config) const;
};

struct RunnerOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned jobs = 0;
  /// Receives one human-readable line per finished grid point.
  std::function<void(const std::string&)> progress;
};

ExperimentReport run_experiment(const ExperimentConfig& config, const RunnerOptions& options = {});

/// Writes the CSV to config.output (or output_override) and the sidecar
/// beside it. Returns the two paths.
std::pair<std::string, std::string> write_experiment(const ExperimentConfig& config, const ExperimentReport& report,
                                                     const std::optional<std::string>& output_override = std::nullopt);

/// Least-squares slope of log(y) against log(x) over pairs with x, y > 0.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Runs fn(0..count-1) on up to `jobs` threads and returns the results in
/// index order. The first exception thrown by any call is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& fn);

}  // namespace majdyn

#include "majdyn/detail/parallel.hpp"
