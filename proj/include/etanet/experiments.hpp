#ifndef ETANET_EXPERIMENTS_HPP_
#define ETANET_EXPERIMENTS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "etanet/generator.hpp"
#include "etanet/metrics.hpp"
#include "etanet/theory.hpp"

namespace etanet {

// One built-in network configuration.
struct Preset {
  std::string name;   // e.g. "roget", "table2-eta0.8"
  std::string group;  // "table1", "table2" or "table3"
  std::size_t n = 0;  // final vertex count
  std::size_t m = 0;
  double eta = 0.0;
};

// Real-world equivalents (table1), the eta sweep at m = 2 (table2) and the
// m sweep at eta = 1 (table3), all with n counting the 2-vertex seed graph.
const std::vector<Preset>& builtin_presets();

// Presets whose name or group equals `name`, in table order. Throws
// ConfigError listing the valid names when nothing matches.
std::vector<Preset> find_presets(const std::string& name);

// 30 replicates for n <= 1,022, 10 otherwise.
std::size_t default_replicates(std::size_t n);

enum class Metric { kClustering, kDistance, kPowerLaw };

struct RunPoint {
  std::string label;
  ModelParams params;  // seed is replaced by base_seed + replicate
  std::size_t replicates = 1;
};

struct ExperimentSpec {
  std::string name;
  std::vector<RunPoint> runs;
  std::vector<Metric> metrics_requested{Metric::kClustering, Metric::kDistance, Metric::kPowerLaw};
  std::filesystem::path output_path;  // empty: nothing written
  std::uint64_t base_seed = 1;
  DistanceMode distance_mode = DistanceMode::exact();
  bool write_edge_lists = true;

  // Throws ConfigError for empty runs, zero replicates or invalid params.
  void validate() const;
};

// Builds the spec for a preset name or group. `replicates` overrides the
// per-preset default.
ExperimentSpec experiment_from_preset(const std::string& name,
                                      std::optional<std::size_t> replicates = std::nullopt,
                                      std::uint64_t base_seed = 1);

// key=value experiment description:
//   name = my-sweep
//   base_seed = 1
//   replicates = 5                      (default for the points below it)
//   metrics = clustering,distance,power_law
//   distance = exact | sampled:<sources>
//   point = label=a eta=0.5 m=2 n=1000  (T=... instead of n=...; replicates=..., closure=...)
ExperimentSpec parse_experiment_spec(std::istream& in);

struct TheoryComparison {
  double measured_cc = 0.0;
  double B = 0.0;
  bool cc_at_least_B = false;
  std::optional<double> fitted_gamma;
  double predicted_gamma = 0.0;
  std::optional<double> gamma_abs_diff;
  double avg_degree = 0.0;
  double predicted_avg_degree = 0.0;  // 2 (m + eta)
  double degree_ratio = 0.0;          // avg_degree / predicted_avg_degree
};

// Requires report.avg_clustering to be set.
TheoryComparison compare_with_theory(const MetricsReport& report, const TheoryPredictions& pred);

struct RunRecord {
  std::size_t point = 0;  // index into ExperimentSpec::runs
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  ModelParams params;
  GenerationStats stats;
  MetricsReport metrics;
  TheoryPredictions theory;
  std::optional<TheoryComparison> comparison;
};

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
  std::size_t count = 0;
};

Summary summarize(const std::vector<double>& values);

struct PointAggregate {
  std::size_t point = 0;
  Summary edges;
  Summary avg_degree;
  std::optional<Summary> avg_clustering;
  std::optional<Summary> global_transitivity;
  std::optional<Summary> mean_distance;
  std::optional<Summary> gamma_mle;
  std::optional<Summary> gamma_regression;
  std::size_t bound_violations = 0;  // runs with measured clustering < B
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<RunRecord> runs;  // point-major, replicate-minor
  std::vector<PointAggregate> aggregates;
};

// Generates, measures and compares every replicate (concurrently), then
// aggregates per point. With an output path, writes
//   <out>/<name>/run_<i>.edges, <out>/<name>/metrics.csv, <out>/<name>/theory.txt
// Throws IoError when the directory cannot be created or written.
ExperimentResult run_experiment(const ExperimentSpec& spec);

std::string experiment_csv_header();
void write_experiment_csv(std::ostream& out, const ExperimentResult& result);
void write_experiment_theory(std::ostream& out, const ExperimentResult& result);

}  // namespace etanet

#endif  // ETANET_EXPERIMENTS_HPP_
