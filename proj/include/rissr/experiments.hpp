#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rissr/benchmarks.hpp"
#include "rissr/channels.hpp"

namespace rissr {

enum class SweepAxis { kNone, kElements, kEnergy, kAlpha };

std::string axis_name(SweepAxis a);
SweepAxis parse_axis(std::string_view name);

struct ExperimentSpec {
  std::string figure = "custom";  // fig3 .. fig7 or custom
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> values;     // ignored when axis is none
  int trials = 50;
  std::uint64_t seed = 1;
  std::vector<Scheme> schemes{Scheme::kProposed};
  std::string out_dir = "out";
  bool write_traces = false;
  int threads = 0;                // 0: hardware concurrency
  AOSettings ao{};

  /// Sweep values actually iterated: {0} standing in for the single point when axis is none.
  std::vector<double> points() const;
  void validate() const;
};

struct Scenario {
  SystemConfig system;
  Geometry geometry = Geometry::reference(4);
  FadingParams fading;
  ExperimentSpec experiment;
};

/// Sets the sweep, schemes and fixed parameters of a figure on top of `s`.
/// Throws ValidationError for unknown ids.
void apply_figure_preset(Scenario& s, std::string_view figure);

/// Parses flat `key = value` text. '#' starts a comment. A `figure` key (or
/// `figure_override`) applies the preset first; other keys then override it.
/// Throws ParseError for unknown keys and malformed values and
/// ValidationError for out-of-range settings.
Scenario parse_config(const std::string& text, std::optional<std::string> figure_override = std::nullopt);
Scenario load_config(const std::filesystem::path& path,
                     std::optional<std::string> figure_override = std::nullopt);

/// SystemConfig at one sweep value.
SystemConfig config_at(const Scenario& s, double value);

/// Seed of trial t; the same at every sweep point so that curves along a
/// sweep share channel draws.
std::uint64_t trial_seed(std::uint64_t root, int trial);

struct ResultRow {
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::kProposed;
  double objective = 0.0;
  double sum_R_p = 0.0;
  double sum_R_s = 0.0;
  double sum_local = 0.0;
  double sensed_user = 0.0;
  double sensed_ris = 0.0;
  int iterations = 0;
  bool converged = false;
  double mean_beta = 0.0;
  bool c4_user_ok = false;
  bool c4_ris_ok = false;
  std::string error;   // empty on success
  double wall_ms = 0.0;
  Trace trace;         // kept only when traces are written
};

struct ExperimentOutput {
  std::vector<ResultRow> rows;  // sorted by sweep index, trial, scheme
  std::filesystem::path results_csv;
};

/// Runs every (sweep point, trial, scheme) and writes results.csv,
/// timing.csv, summary.csv, trace.csv (if traces are on) and frontier.csv
/// (alpha sweeps) to spec.out_dir.
ExperimentOutput run_experiment(const Scenario& scenario);

/// Writes rows in the results.csv schema; the output depends only on the rows.
void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows,
                       SweepAxis axis);

struct SummaryRow {
  std::string scheme;
  double sweep_value = 0.0;
  int count = 0;
  std::vector<double> mean, stddev;  // one entry per summary_columns()
};

/// Numeric columns that are averaged.
const std::vector<std::string>& summary_columns();

/// Groups successful rows of results.csv by (scheme, sweep value) and
/// reports mean and population standard deviation. Throws EmptyInput when
/// no successful rows exist.
std::vector<SummaryRow> summarize_file(const std::filesystem::path& results_csv);
/// summarize_file on dir/results.csv, also writing dir/summary.csv.
std::vector<SummaryRow> summarize(const std::filesystem::path& dir);

/// Mean and population standard deviation.
std::pair<double, double> mean_std(const std::vector<double>& xs);

}  // namespace rissr
