#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "etanet/edge_list.hpp"
#include "etanet/error.hpp"
#include "etanet/experiments.hpp"
#include "etanet/format.hpp"
#include "etanet/generator.hpp"
#include "etanet/metrics.hpp"
#include "etanet/theory.hpp"

namespace etanet::cli {
namespace {

// Failure to read a user-supplied file; reported with the input exit code.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateArgs {
  std::optional<double> eta;
  std::optional<std::size_t> m;
  std::optional<std::size_t> T;
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string closure;
  std::string initial_graph;
  std::string out;
};

struct MetricsArgs {
  std::string in;
  bool exact_paths = false;
  std::optional<std::size_t> sample_sources;
  std::optional<std::size_t> kmin;
  std::uint64_t seed = 1;
  std::string csv;
  std::string hist;
  bool text = false;
  bool no_distance = false;
};

struct TheoryArgs {
  double eta = 0.0;
  std::size_t m = 0;
  std::optional<double> T;
  std::optional<double> tv;
  bool csv = false;
};

struct ExperimentArgs {
  std::string preset;
  std::string spec;
  std::optional<std::size_t> replicates;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sample_sources;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

// Writes through `fn` to `path`, or to `fallback` when path is empty or "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  fn(file);
  file.flush();
  if (!file) throw IoError("write failed: " + path);
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  ModelParams params;
  if (!a.config.empty()) {
    std::ifstream in = open_input(a.config);
    params = parse_model_params(in);
  }
  if (a.eta) params.eta = *a.eta;
  if (a.m) params.m = *a.m;
  if (a.T) params.T = *a.T;
  if (a.seed) params.seed = *a.seed;
  if (!a.closure.empty()) params.closure = parse_closure_policy(a.closure);
  if (!a.initial_graph.empty()) params.initial_graph = parse_initial_graph(a.initial_graph);
  params.validate();

  const GenerationResult result = generate(params);
  const Metadata meta = generation_metadata(params, result);
  if (a.out.empty() || a.out == "-") {
    write_edge_list(out, result.graph, meta);
  } else {
    write_edge_list(std::filesystem::path(a.out), result.graph, meta);
  }
  return kOk;
}

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  EdgeListFile file;
  {
    std::ifstream in = open_input(a.in);
    file = read_edge_list(in);
  }

  MetricsOptions options;
  options.distance = !a.no_distance;
  if (a.sample_sources) options.distance_mode = DistanceMode::sampled(*a.sample_sources, a.seed);
  options.k_min = a.kmin;
  if (const auto m = file.metadata.get("m")) {
    try {
      options.m_hint = std::stoul(*m);
    } catch (const std::exception&) {
      throw ParseError("header m=" + *m + " is not an integer", 0);
    }
  }

  const MetricsReport report = compute_metrics(file.graph, options);
  if (a.text) {
    write_metrics_text(out, report);
  } else {
    emit(a.csv, out, [&](std::ostream& os) {
      os << metrics_csv_header() << '\n' << metrics_csv_row(report) << '\n';
    });
  }
  if (!a.hist.empty()) {
    emit(a.hist, out, [&](std::ostream& os) { write_histogram_csv(os, report.degree_histogram); });
  }
  return kOk;
}

int cmd_theory(const TheoryArgs& a, std::ostream& out) {
  const TheoryPredictions pred = predict(a.eta, a.m);
  if (a.csv) {
    out << theory_csv_header() << '\n' << theory_csv_row(pred) << '\n';
    return kOk;
  }
  TheoryQuery query;
  query.T = a.T;
  query.tv = a.tv;
  write_theory_text(out, pred, query);
  return kOk;
}

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  ExperimentSpec spec;
  if (!a.preset.empty()) {
    spec = experiment_from_preset(a.preset, a.replicates, a.seed.value_or(1));
  } else {
    std::ifstream in = open_input(a.spec);
    spec = parse_experiment_spec(in);
    if (a.replicates) {
      for (RunPoint& run : spec.runs) run.replicates = *a.replicates;
    }
    if (a.seed) spec.base_seed = *a.seed;
  }
  if (a.sample_sources) {
    spec.distance_mode = DistanceMode::sampled(*a.sample_sources, spec.base_seed);
  }
  if (!a.out.empty()) spec.output_path = a.out;

  const ExperimentResult result = run_experiment(spec);
  if (spec.output_path.empty()) {
    write_experiment_csv(out, result);
  } else {
    out << "wrote " << (spec.output_path / spec.name).string() << " (" << result.runs.size()
        << " runs)\n";
  }
  return kOk;
}

int cmd_presets(std::ostream& out) {
  out << std::left << std::setw(22) << "name" << std::setw(8) << "group" << std::setw(8) << "n"
      << std::setw(4) << "m" << "eta\n";
  for (const Preset& p : builtin_presets()) {
    out << std::left << std::setw(22) << p.name << std::setw(8) << p.group << std::setw(8) << p.n
        << std::setw(4) << p.m << format_number(p.eta) << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"etanet: eta-model network generator, theory and metrics", "etanet"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Grow a network and write its edge list");
  generate_cmd->add_option("--eta", gen.eta, "Transitivity rate (>= 0)");
  generate_cmd->add_option("--m", gen.m, "Attachment edges per new vertex (>= 1)");
  generate_cmd->add_option("--T", gen.T, "Number of growth steps");
  generate_cmd->add_option("--seed", gen.seed, "RNG seed");
  generate_cmd->add_option("--config", gen.config, "key=value parameter file (flags override it)");
  generate_cmd->add_option("--closure", gen.closure, "resample (default) or skip");
  generate_cmd->add_option("--initial-graph", gen.initial_graph,
                           "two-vertices (default) or edges:u-v,u-v,...");
  generate_cmd->add_option("--out", gen.out, "Output edge list (default: stdout)");

  MetricsArgs met;
  auto* metrics_cmd = app.add_subcommand("metrics", "Measure an edge-list file");
  metrics_cmd->add_option("--in", met.in, "Input edge list")->required();
  auto* exact_flag = metrics_cmd->add_flag("--exact-paths", met.exact_paths,
                                           "All-pairs mean distance (default)");
  metrics_cmd->add_option("--sample-sources", met.sample_sources,
                          "Estimate mean distance from N BFS sources")
      ->check(CLI::PositiveNumber)
      ->excludes(exact_flag);
  metrics_cmd->add_flag("--no-distance", met.no_distance, "Skip the mean distance");
  metrics_cmd->add_option("--kmin", met.kmin, "Lower degree cutoff of the power-law fit");
  metrics_cmd->add_option("--seed", met.seed, "Seed for source sampling");
  metrics_cmd->add_option("--csv", met.csv, "Metrics CSV output (default: stdout)");
  metrics_cmd->add_option("--hist", met.hist, "Degree histogram CSV output");
  metrics_cmd->add_flag("--text", met.text, "Print a readable report instead of CSV");

  TheoryArgs th;
  auto* theory_cmd = app.add_subcommand("theory", "Print closed-form predictions");
  theory_cmd->add_option("--eta", th.eta, "Transitivity rate")->required();
  theory_cmd->add_option("--m", th.m, "Attachment edges per new vertex")->required();
  theory_cmd->add_option("--T", th.T, "Horizon for the edge-count law");
  theory_cmd->add_option("--tv", th.tv, "Birth time of a tracked vertex");
  theory_cmd->add_flag("--csv", th.csv, "Print one CSV row instead of text");

  ExperimentArgs ex;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a preset or experiment file");
  auto* preset_opt = experiment_cmd->add_option("--preset", ex.preset, "Preset name or table group");
  auto* spec_opt = experiment_cmd->add_option("--spec", ex.spec, "Experiment description file");
  preset_opt->excludes(spec_opt);
  experiment_cmd->add_option("--replicates", ex.replicates, "Replicates per point")
      ->check(CLI::PositiveNumber);
  experiment_cmd->add_option("--out", ex.out, "Output directory (default: CSV to stdout)");
  experiment_cmd->add_option("--seed", ex.seed, "Base seed; replicate i uses base + i");
  experiment_cmd->add_option("--sample-sources", ex.sample_sources,
                             "Estimate mean distance from N BFS sources")
      ->check(CLI::PositiveNumber);

  auto* presets_cmd = app.add_subcommand("presets", "List built-in presets");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (experiment_cmd->parsed() && ex.preset.empty() && ex.spec.empty()) {
      throw CLI::RequiredError("experiment needs --preset or --spec");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (generate_cmd->parsed()) return cmd_generate(gen, out);
    if (metrics_cmd->parsed()) return cmd_metrics(met, out);
    if (theory_cmd->parsed()) return cmd_theory(th, out);
    if (experiment_cmd->parsed()) return cmd_experiment(ex, out);
    if (presets_cmd->parsed()) return cmd_presets(out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace etanet::cli
