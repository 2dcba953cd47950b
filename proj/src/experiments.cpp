#include "etanet/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "etanet/edge_list.hpp"
#include "etanet/error.hpp"
#include "etanet/format.hpp"
#include "etanet/parallel.hpp"

namespace etanet {
namespace {

constexpr std::size_t kSeedVertices = 2;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_or_throw(std::string_view text, const std::string& what, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad value for " + what + ": '" + std::string(text) + "'", line);
  }
  return value;
}

std::vector<Preset> make_presets() {
  std::vector<Preset> presets = {
      {"electronic-circuits", "table1", 24097, 2, 0.23},
      {"email", "table1", 16881, 3, 0.5},
      {"marine-food-web", "table1", 135, 4, 0.54},
      {"neural", "table1", 307, 5, 2.8},
      {"roget", "table1", 1022, 4, 1.4},
  };
  for (const double eta : {0.0, 0.4, 0.8, 1.2, 1.6, 2.0}) {
    presets.push_back({"table2-eta" + format_number(eta), "table2", 10000, 2, eta});
  }
  for (const std::size_t m : {2, 3, 4, 5}) {
    presets.push_back({"table3-m" + std::to_string(m), "table3", 10000, m, 1.0});
  }
  return presets;
}

Metric parse_metric(std::string_view name, std::size_t line) {
  if (name == "clustering") return Metric::kClustering;
  if (name == "distance") return Metric::kDistance;
  if (name == "power_law" || name == "gamma") return Metric::kPowerLaw;
  throw ParseError("unknown metric '" + std::string(name) + "'", line);
}

bool wants(const ExperimentSpec& spec, Metric metric) {
  return std::find(spec.metrics_requested.begin(), spec.metrics_requested.end(), metric) !=
         spec.metrics_requested.end();
}

std::string opt_number(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string();
}

}  // namespace

const std::vector<Preset>& builtin_presets() {
  static const std::vector<Preset> presets = make_presets();
  return presets;
}

std::vector<Preset> find_presets(const std::string& name) {
  std::vector<Preset> found;
  for (const Preset& p : builtin_presets()) {
    if (p.name == name || p.group == name) found.push_back(p);
  }
  if (found.empty()) {
    std::string valid = "table1, table2, table3";
    for (const Preset& p : builtin_presets()) valid += ", " + p.name;
    throw ConfigError("unknown preset '" + name + "'; valid presets: " + valid);
  }
  return found;
}

std::size_t default_replicates(std::size_t n) { return n <= 1022 ? 30 : 10; }

void ExperimentSpec::validate() const {
  if (name.empty()) throw ConfigError("experiment needs a name");
  if (runs.empty()) throw ConfigError("experiment '" + name + "' has no run points");
  for (const RunPoint& run : runs) {
    if (run.replicates < 1) throw ConfigError("replicate count must be >= 1 (" + run.label + ")");
    run.params.validate();
  }
  if (distance_mode.kind == DistanceMode::Kind::kSampled && distance_mode.sources == 0) {
    throw ConfigError("sampled distance needs at least one source");
  }
}

ExperimentSpec experiment_from_preset(const std::string& name,
                                      std::optional<std::size_t> replicates,
                                      std::uint64_t base_seed) {
  ExperimentSpec spec;
  spec.name = name;
  spec.base_seed = base_seed;
  for (const Preset& preset : find_presets(name)) {
    RunPoint run;
    run.label = preset.name;
    run.params.eta = preset.eta;
    run.params.m = preset.m;
    run.params.T = preset.n - kSeedVertices;
    run.replicates = replicates.value_or(default_replicates(preset.n));
    spec.runs.push_back(run);
  }
  return spec;
}

ExperimentSpec parse_experiment_spec(std::istream& in) {
  ExperimentSpec spec;
  std::size_t default_reps = 1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    const std::string key(trim(text.substr(0, eq)));
    const std::string_view value = trim(text.substr(eq + 1));

    if (key == "name") {
      spec.name = std::string(value);
    } else if (key == "base_seed") {
      spec.base_seed = parse_or_throw<std::uint64_t>(value, key, line_no);
    } else if (key == "replicates") {
      default_reps = parse_or_throw<std::size_t>(value, key, line_no);
    } else if (key == "output") {
      spec.output_path = std::string(value);
    } else if (key == "metrics") {
      spec.metrics_requested.clear();
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        spec.metrics_requested.push_back(parse_metric(trim(rest.substr(0, comma)), line_no));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
    } else if (key == "distance") {
      if (value == "exact") {
        spec.distance_mode = DistanceMode::exact();
      } else if (value.starts_with("sampled:")) {
        spec.distance_mode = DistanceMode::sampled(
            parse_or_throw<std::size_t>(value.substr(8), "distance sources", line_no), 1);
      } else {
        throw ParseError("distance must be 'exact' or 'sampled:<sources>'", line_no);
      }
    } else if (key == "point") {
      RunPoint run;
      run.replicates = default_reps;
      std::optional<std::size_t> n;
      std::istringstream fields{std::string(value)};
      std::string field;
      while (fields >> field) {
        const auto feq = field.find('=');
        if (feq == std::string::npos) throw ParseError("point field '" + field + "' needs '='", line_no);
        const std::string fkey = field.substr(0, feq);
        const std::string_view fval = std::string_view(field).substr(feq + 1);
        if (fkey == "label") {
          run.label = std::string(fval);
        } else if (fkey == "eta") {
          run.params.eta = parse_or_throw<double>(fval, fkey, line_no);
        } else if (fkey == "m") {
          run.params.m = parse_or_throw<std::size_t>(fval, fkey, line_no);
        } else if (fkey == "T") {
          run.params.T = parse_or_throw<std::size_t>(fval, fkey, line_no);
        } else if (fkey == "n") {
          n = parse_or_throw<std::size_t>(fval, fkey, line_no);
        } else if (fkey == "replicates") {
          run.replicates = parse_or_throw<std::size_t>(fval, fkey, line_no);
        } else if (fkey == "closure") {
          try {
            run.params.closure = parse_closure_policy(std::string(fval));
          } catch (const ConfigError& e) {
            throw ParseError(e.what(), line_no);
          }
        } else {
          throw ParseError("unknown point field '" + fkey + "'", line_no);
        }
      }
      if (n) {
        if (*n <= kSeedVertices) throw ParseError("n must exceed the 2-vertex seed graph", line_no);
        run.params.T = *n - kSeedVertices;
      }
      if (run.label.empty()) run.label = "point" + std::to_string(spec.runs.size());
      spec.runs.push_back(run);
    } else {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
  }
  return spec;
}

TheoryComparison compare_with_theory(const MetricsReport& report, const TheoryPredictions& pred) {
  if (!report.avg_clustering) throw EstimationError("comparison needs a measured clustering coefficient");
  TheoryComparison c;
  c.measured_cc = *report.avg_clustering;
  c.B = pred.B;
  c.cc_at_least_B = c.measured_cc >= c.B;
  c.predicted_gamma = pred.gamma;
  if (report.power_law) {
    c.fitted_gamma = report.power_law->gamma_mle;
    c.gamma_abs_diff = std::abs(*c.fitted_gamma - c.predicted_gamma);
  }
  c.avg_degree = report.avg_degree;
  c.predicted_avg_degree = 2.0 * (static_cast<double>(pred.m) + pred.eta);
  c.degree_ratio = c.avg_degree / c.predicted_avg_degree;
  return c;
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double sq = 0.0;
    for (const double v : values) sq += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(sq / static_cast<double>(s.count - 1));
  }
  return s;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult result;
  result.spec = spec;

  for (std::size_t p = 0; p < spec.runs.size(); ++p) {
    for (std::size_t r = 0; r < spec.runs[p].replicates; ++r) {
      RunRecord record;
      record.point = p;
      record.replicate = r;
      record.seed = spec.base_seed + r;
      record.params = spec.runs[p].params;
      record.params.seed = record.seed;
      result.runs.push_back(std::move(record));
    }
  }

  std::filesystem::path dir;
  if (!spec.output_path.empty()) {
    dir = spec.output_path / spec.name;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
      throw IoError("cannot create output directory " + dir.string() +
                    (ec ? ": " + ec.message() : std::string()));
    }
  }

  MetricsOptions options;
  options.clustering = wants(spec, Metric::kClustering);
  options.distance = wants(spec, Metric::kDistance);
  options.power_law = wants(spec, Metric::kPowerLaw);
  options.distance_mode = spec.distance_mode;

  parallel_for(result.runs.size(), [&](std::size_t i) {
    RunRecord& record = result.runs[i];
    const GenerationResult generated = generate(record.params);
    record.stats = generated.stats;
    MetricsOptions local = options;
    local.m_hint = record.params.m;
    record.metrics = compute_metrics(generated.graph, local);
    record.theory = predict(record.params.eta, record.params.m);
    if (record.metrics.avg_clustering) {
      record.comparison = compare_with_theory(record.metrics, record.theory);
    }
    if (!dir.empty() && spec.write_edge_lists) {
      Metadata meta = generation_metadata(record.params, generated);
      meta.set("experiment", spec.name);
      meta.set("point", spec.runs[record.point].label);
      meta.set("replicate", std::to_string(record.replicate));
      write_edge_list(dir / ("run_" + std::to_string(i) + ".edges"), generated.graph, meta);
    }
  });

  for (std::size_t p = 0; p < spec.runs.size(); ++p) {
    PointAggregate agg;
    agg.point = p;
    std::vector<double> edges, degree, cc, gt, dist, gmle, greg;
    for (const RunRecord& r : result.runs) {
      if (r.point != p) continue;
      edges.push_back(static_cast<double>(r.metrics.num_edges));
      degree.push_back(r.metrics.avg_degree);
      if (r.metrics.avg_clustering) cc.push_back(*r.metrics.avg_clustering);
      if (r.metrics.global_transitivity) gt.push_back(*r.metrics.global_transitivity);
      if (r.metrics.mean_distance) dist.push_back(r.metrics.mean_distance->value);
      if (r.metrics.power_law) {
        gmle.push_back(r.metrics.power_law->gamma_mle);
        greg.push_back(r.metrics.power_law->gamma_regression);
      }
      if (r.comparison && !r.comparison->cc_at_least_B) ++agg.bound_violations;
    }
    agg.edges = summarize(edges);
    agg.avg_degree = summarize(degree);
    if (!cc.empty()) agg.avg_clustering = summarize(cc);
    if (!gt.empty()) agg.global_transitivity = summarize(gt);
    if (!dist.empty()) agg.mean_distance = summarize(dist);
    if (!gmle.empty()) agg.gamma_mle = summarize(gmle);
    if (!greg.empty()) agg.gamma_regression = summarize(greg);
    result.aggregates.push_back(agg);
  }

  if (!dir.empty()) {
    std::ofstream csv(dir / "metrics.csv", std::ios::binary);
    std::ofstream theory(dir / "theory.txt", std::ios::binary);
    if (!csv || !theory) throw IoError("cannot write results into " + dir.string());
    write_experiment_csv(csv, result);
    write_experiment_theory(theory, result);
    if (!csv || !theory) throw IoError("write failed in " + dir.string());
  }
  return result;
}

std::string experiment_csv_header() {
  return "kind,point,eta,m,n,T,replicate,seed,replicates,edges,avg_degree,avg_clustering,"
         "global_transitivity,mean_distance,distance_method,gamma_mle,gamma_regression,k_min,"
         "B,gamma_predicted,cc_ge_B,pa_edges_added,transitivity_edges_added,duplicate_skips,"
         "edges_sd,avg_degree_sd,avg_clustering_sd,global_transitivity_sd,mean_distance_sd,"
         "gamma_mle_sd,gamma_regression_sd";
}

void write_experiment_csv(std::ostream& out, const ExperimentResult& result) {
  const ExperimentSpec& spec = result.spec;
  out << "# experiment=" << spec.name << " base_seed=" << spec.base_seed << '\n';
  out << "# columns: " << experiment_csv_header() << '\n';
  out << "# kind=run rows hold one replicate (seed = base_seed + replicate); kind=aggregate rows "
         "hold replicate means, with sample standard deviations in the *_sd columns\n";
  out << experiment_csv_header() << '\n';

  auto point_prefix = [&](const char* kind, std::size_t p) {
    const ModelParams& params = spec.runs[p].params;
    return std::string(kind) + ',' + spec.runs[p].label + ',' + format_number(params.eta) + ',' +
           std::to_string(params.m) + ',' + std::to_string(params.T + kSeedVertices) + ',' +
           std::to_string(params.T) + ',';
  };
  const char* method = spec.distance_mode.kind == DistanceMode::Kind::kExact ? "exact" : "sampled";

  for (const RunRecord& r : result.runs) {
    const MetricsReport& mr = r.metrics;
    out << point_prefix("run", r.point) << r.replicate << ',' << r.seed << ",," << mr.num_edges
        << ',' << format_number(mr.avg_degree) << ',' << opt_number(mr.avg_clustering) << ','
        << opt_number(mr.global_transitivity) << ',';
    if (mr.mean_distance) {
      out << format_number(mr.mean_distance->value) << ',' << method << ',';
    } else {
      out << ",,";
    }
    if (mr.power_law) {
      out << format_number(mr.power_law->gamma_mle) << ','
          << format_number(mr.power_law->gamma_regression) << ',' << mr.power_law->k_min << ',';
    } else {
      out << ",,,";
    }
    out << format_number(r.theory.B) << ',' << format_number(r.theory.gamma) << ','
        << (r.comparison ? (r.comparison->cc_at_least_B ? "1" : "0") : "") << ','
        << r.stats.pa_edges_added << ',' << r.stats.transitivity_edges_added << ','
        << r.stats.duplicate_skips << ",,,,,,,\n";
  }

  for (const PointAggregate& agg : result.aggregates) {
    const TheoryPredictions pred =
        predict(spec.runs[agg.point].params.eta, spec.runs[agg.point].params.m);
    auto mean = [](const std::optional<Summary>& s) {
      return s ? format_number(s->mean) : std::string();
    };
    auto sd = [](const std::optional<Summary>& s) {
      return s ? format_number(s->sd) : std::string();
    };
    out << point_prefix("aggregate", agg.point) << ",," << agg.edges.count << ','
        << mean(agg.edges) << ',' << mean(agg.avg_degree) << ',' << mean(agg.avg_clustering) << ','
        << mean(agg.global_transitivity) << ',' << mean(agg.mean_distance) << ','
        << (agg.mean_distance ? method : "") << ',' << mean(agg.gamma_mle) << ','
        << mean(agg.gamma_regression) << ",," << format_number(pred.B) << ','
        << format_number(pred.gamma) << ','
        << (agg.avg_clustering ? (agg.bound_violations == 0 ? "1" : "0") : "") << ",,,,"
        << sd(agg.edges) << ',' << sd(agg.avg_degree) << ',' << sd(agg.avg_clustering) << ','
        << sd(agg.global_transitivity) << ',' << sd(agg.mean_distance) << ','
        << sd(agg.gamma_mle) << ',' << sd(agg.gamma_regression) << '\n';
  }
}

void write_experiment_theory(std::ostream& out, const ExperimentResult& result) {
  const ExperimentSpec& spec = result.spec;
  for (std::size_t p = 0; p < spec.runs.size(); ++p) {
    const ModelParams& params = spec.runs[p].params;
    if (p > 0) out << '\n';
    out << "# point=" << spec.runs[p].label << '\n';
    TheoryQuery query;
    query.T = static_cast<double>(params.T);
    query.e0 = static_cast<double>(params.initial_graph.build().num_edges());
    write_theory_text(out, predict(params.eta, params.m), query);
  }
}

}  // namespace etanet
