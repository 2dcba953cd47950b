#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <stdlib.h>

#include "etanet/error.hpp"
#include "etanet/experiments.hpp"

using namespace etanet;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("etanet_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("built-in presets") {
  const auto& all = builtin_presets();
  CHECK(all.size() == 15);
  const Preset circuits = find_presets("electronic-circuits").at(0);
  CHECK(circuits.n == 24097);
  CHECK(circuits.m == 2);
  CHECK(circuits.eta == 0.23);
  const Preset roget = find_presets("roget").at(0);
  CHECK(roget.n == 1022);
  CHECK(roget.m == 4);
  CHECK(roget.eta == 1.4);
  CHECK(find_presets("neural").at(0).n == 307);
  CHECK(find_presets("email").at(0).n == 16881);
  CHECK(find_presets("marine-food-web").at(0).eta == 0.54);
  CHECK(find_presets("table1").size() == 5);
  const auto table2 = find_presets("table2");
  REQUIRE(table2.size() == 6);
  for (const Preset& p : table2) {
    CHECK(p.n == 10000);
    CHECK(p.m == 2);
  }
  CHECK(table2[2].eta == 0.8);
  const auto table3 = find_presets("table3");
  REQUIRE(table3.size() == 4);
  CHECK(table3[3].m == 5);
  CHECK(table3[3].eta == 1.0);
}

TEST_CASE("unknown preset lists the valid names") {
  try {
    find_presets("unknown");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("roget") != std::string::npos);
    CHECK(msg.find("table2") != std::string::npos);
  }
}

TEST_CASE("preset experiments use T = n - 2 and default replicate counts") {
  const ExperimentSpec neural = experiment_from_preset("neural");
  REQUIRE(neural.runs.size() == 1);
  CHECK(neural.runs[0].params.T == 305);
  CHECK(neural.runs[0].replicates == 30);
  const ExperimentSpec t3 = experiment_from_preset("table3");
  CHECK(t3.runs[1].params.T == 9998);
  CHECK(t3.runs[1].replicates == 10);
  CHECK(experiment_from_preset("table3", 2).runs[0].replicates == 2);
  CHECK(default_replicates(1022) == 30);
  CHECK(default_replicates(1023) == 10);
}

TEST_CASE("experiment validation") {
  ExperimentSpec spec = experiment_from_preset("neural", 1);
  CHECK_NOTHROW(spec.validate());
  spec.runs[0].replicates = 0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.runs[0].replicates = 1;
  spec.runs[0].params.m = 0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.runs.clear();
  CHECK_THROWS_AS(spec.validate(), ConfigError);
}

TEST_CASE("experiment file parsing") {
  std::istringstream in(
      "# sweep\n"
      "name = small\n"
      "base_seed = 40\n"
      "replicates = 3\n"
      "metrics = clustering,power_law\n"
      "distance = sampled:64\n"
      "point = label=a eta=0.5 m=2 n=500\n"
      "point = eta=1 m=3 T=200 replicates=2 closure=skip\n");
  const ExperimentSpec spec = parse_experiment_spec(in);
  CHECK(spec.name == "small");
  CHECK(spec.base_seed == 40);
  CHECK(spec.metrics_requested.size() == 2);
  CHECK(spec.distance_mode.kind == DistanceMode::Kind::kSampled);
  CHECK(spec.distance_mode.sources == 64);
  REQUIRE(spec.runs.size() == 2);
  CHECK(spec.runs[0].label == "a");
  CHECK(spec.runs[0].params.T == 498);
  CHECK(spec.runs[0].replicates == 3);
  CHECK(spec.runs[1].params.T == 200);
  CHECK(spec.runs[1].replicates == 2);
  CHECK(spec.runs[1].params.closure == ClosurePolicy::kSkip);

  std::istringstream bad("name = x\npoint = eta=1 q=2\n");
  try {
    parse_experiment_spec(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("theory comparison") {
  MetricsReport r;
  r.avg_clustering = 0.27;
  r.avg_degree = 7.7;
  PowerLawFit fit;
  fit.gamma_mle = 2.4;
  r.power_law = fit;
  const TheoryComparison c = compare_with_theory(r, predict(2.0, 2));
  CHECK(c.B == doctest::Approx(0.0571428).epsilon(1e-5));
  CHECK(c.cc_at_least_B);
  CHECK(c.predicted_avg_degree == 8.0);
  CHECK(c.degree_ratio == doctest::Approx(7.7 / 8.0));
  CHECK(*c.gamma_abs_diff == doctest::Approx(2.4 - 14.0 / 6.0));

  MetricsReport zero;
  zero.avg_clustering = 0.0;
  CHECK(compare_with_theory(zero, predict(0.0, 2)).cc_at_least_B);
  CHECK_THROWS(compare_with_theory(MetricsReport{}, predict(0.0, 2)));
}

TEST_CASE("summary uses the sample standard deviation") {
  const Summary s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == 2.5);
  CHECK(s.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(summarize({7.0}).sd == 0.0);
}

TEST_CASE("run_experiment writes the documented layout and is reproducible") {
  const auto dir = scratch("layout");
  ExperimentSpec spec = experiment_from_preset("marine-food-web", 4, 11);
  spec.output_path = dir;
  const ExperimentResult first = run_experiment(spec);
  REQUIRE(first.runs.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(first.runs[i].seed == 11 + i);
    CHECK(std::filesystem::exists(dir / "marine-food-web" / ("run_" + std::to_string(i) + ".edges")));
  }
  REQUIRE(first.aggregates.size() == 1);
  CHECK(first.aggregates[0].avg_clustering->count == 4);
  CHECK(first.aggregates[0].bound_violations == 0);

  const std::string csv = slurp(dir / "marine-food-web" / "metrics.csv");
  CHECK(csv.rfind("# experiment=marine-food-web base_seed=11\n# columns: ", 0) == 0);
  std::size_t runs = 0, aggregates = 0;
  std::istringstream lines(csv);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("run,", 0) == 0) ++runs;
    if (line.rfind("aggregate,", 0) == 0) ++aggregates;
  }
  CHECK(runs == 4);
  CHECK(aggregates == 1);
  CHECK(slurp(dir / "marine-food-web" / "theory.txt").find("B ") != std::string::npos);

  const std::string edges = slurp(dir / "marine-food-web" / "run_2.edges");
  run_experiment(spec);
  CHECK(slurp(dir / "marine-food-web" / "metrics.csv") == csv);
  CHECK(slurp(dir / "marine-food-web" / "run_2.edges") == edges);
  std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable output directory") {
  const auto file = scratch("blocker");
  std::ofstream(file) << "x";
  ExperimentSpec spec = experiment_from_preset("marine-food-web", 1);
  spec.output_path = file;
  CHECK_THROWS_AS(run_experiment(spec), IoError);
  std::filesystem::remove(file);
}

TEST_CASE("results do not depend on the worker count") {
  ExperimentSpec spec = experiment_from_preset("roget", 3, 5);
  std::string csv[2];
  const char* threads[2] = {"1", "4"};
  for (int i = 0; i < 2; ++i) {
    setenv("ETANET_THREADS", threads[i], 1);
    std::ostringstream out;
    write_experiment_csv(out, run_experiment(spec));
    csv[i] = out.str();
  }
  unsetenv("ETANET_THREADS");
  CHECK(csv[0] == csv[1]);
}
