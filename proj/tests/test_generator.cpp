#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "etanet/edge_list.hpp"
#include "etanet/error.hpp"
#include "etanet/generator.hpp"
#include "etanet/metrics.hpp"
#include "etanet/theory.hpp"
#include "oracles.hpp"

using namespace etanet;

namespace {

Graph seed_graph() {
  Graph g(2);
  g.add_edge(0, 1);
  return g;
}

std::string serialize(const GenerationResult& r, const ModelParams& p) {
  std::ostringstream out;
  write_edge_list(out, r.graph, generation_metadata(p, r));
  return out.str();
}

// Binomial z-score of `hits` successes in `trials` at probability p.
double z_score(std::uint64_t hits, std::uint64_t trials, double p) {
  const double n = static_cast<double>(trials);
  return (static_cast<double>(hits) - n * p) / std::sqrt(n * p * (1.0 - p));
}

}  // namespace

TEST_CASE("pa_step on the seed edge") {
  Rng rng(1);
  SUBCASE("m = 2 takes both seed vertices") {
    Graph g = seed_graph();
    const VertexId v = g.add_vertex(1);
    CHECK(pa_step(g, v, 2, rng) == 2);
    CHECK(g.has_edge(2, 0));
    CHECK(g.has_edge(2, 1));
  }
  SUBCASE("m = 5 is clipped to the two candidates") {
    Graph g = seed_graph();
    const VertexId v = g.add_vertex(1);
    CHECK(pa_step(g, v, 5, rng) == 2);
    CHECK(g.degree(v) == 2);
  }
}

TEST_CASE("pa_step with m = 1 on a path follows the endpoint list") {
  Rng rng(99);
  std::vector<std::uint64_t> counts(3, 0);
  for (int i = 0; i < 200000; ++i) {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    const VertexId v = g.add_vertex(1);
    REQUIRE(pa_step(g, v, 1, rng) == 1);
    ++counts[g.neighbors(v)[0]];
  }
  CHECK(oracle::chi_square_p(counts, {0.25, 0.5, 0.25}) > 0.01);
}

TEST_CASE("pa_step targets are distinct and never the new vertex") {
  Rng rng(4);
  const GenerationResult base = generate_ba(3, 300, 4);
  for (int i = 0; i < 200; ++i) {
    Graph g = base.graph;
    const VertexId v = g.add_vertex(301);
    CHECK(pa_step(g, v, 6, rng) == 6);
    const auto nb = g.neighbors(v);
    CHECK(std::set<VertexId>(nb.begin(), nb.end()).size() == 6);
  }
}

TEST_CASE("transitivity_sweep with eta = 0 does nothing") {
  const GenerationResult r = generate_ba(2, 200, 3);
  Graph g = r.graph;
  Rng rng(2);
  GenerationStats stats;
  CHECK(transitivity_sweep(g, 0.0, rng, stats) == 0);
  CHECK(g.sorted_edges() == r.graph.sorted_edges());
  CHECK(stats == GenerationStats{});
}

TEST_CASE("transitivity_sweep on a triangle only records skips") {
  for (const ClosurePolicy policy : {ClosurePolicy::kResample, ClosurePolicy::kSkip}) {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    Rng rng(7);
    GenerationStats stats;
    // eta = 3 makes every selection probability 3 * 2 / 6 = 1.
    CHECK(transitivity_sweep(g, 3.0, rng, stats, policy) == 0);
    CHECK(g.num_edges() == 3);
    CHECK(stats.duplicate_skips == 3);
    CHECK(stats.transitivity_edges_added == 0);
  }
}

TEST_CASE("transitivity_sweep on a star adds 0.5 edges on average") {
  for (const SweepSampler sampler : {SweepSampler::kPerVertex, SweepSampler::kThinned}) {
    Rng rng(21);
    const int sweeps = 200000;
    std::uint64_t added = 0;
    for (int i = 0; i < sweeps; ++i) {
      Graph star(5);
      for (VertexId v = 1; v < 5; ++v) star.add_edge(0, v);
      GenerationStats stats;
      added += transitivity_sweep(star, 1.0, rng, stats, ClosurePolicy::kResample, sampler);
    }
    const double sigma = 0.5 / std::sqrt(static_cast<double>(sweeps));
    CHECK(std::abs(static_cast<double>(added) / sweeps - 0.5) < 3.0 * sigma);
  }
}

TEST_CASE("both samplers select each vertex with probability min(1, eta d / 2e)") {
  const GenerationResult r = generate_ba(2, 60, 5);
  const Graph& g = r.graph;
  const double two_e = 2.0 * static_cast<double>(g.num_edges());
  // eta large enough that the hubs are clamped at probability 1.
  for (const double eta : {0.7, 12.0}) {
    std::vector<double> p(g.num_vertices());
    std::uint64_t expected_clamps = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const double raw = eta * static_cast<double>(g.degree(v)) / two_e;
      p[v] = std::min(1.0, raw);
      if (raw > 1.0) ++expected_clamps;
    }
    for (const SweepSampler sampler : {SweepSampler::kPerVertex, SweepSampler::kThinned}) {
      Rng rng(31);
      const std::uint64_t trials = 100000;
      std::vector<std::uint64_t> hits(g.num_vertices(), 0);
      std::uint64_t both = 0;  // vertices 0 and 1 jointly
      std::uint64_t clamps = 0;
      for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t c = 0;
        const std::vector<VertexId> picked = select_for_closure(g, eta, rng, sampler, &c);
        clamps += c;
        CHECK(std::is_sorted(picked.begin(), picked.end()));
        bool has0 = false, has1 = false;
        for (const VertexId v : picked) {
          ++hits[v];
          has0 = has0 || v == 0;
          has1 = has1 || v == 1;
        }
        both += (has0 && has1) ? 1 : 0;
      }
      CHECK(clamps == expected_clamps * trials);
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (p[v] >= 1.0) {
          CHECK(hits[v] == trials);
        } else {
          CHECK(std::abs(z_score(hits[v], trials, p[v])) < 4.5);
        }
      }
      const double joint = p[0] * p[1];
      if (joint < 1.0) CHECK(std::abs(z_score(both, trials, joint)) < 4.5);
    }
  }
}

TEST_CASE("sample_open_neighbor_pair is uniform over unconnected pairs") {
  // w = 0 with neighbours 1..4; pairs {1,2} and {3,4} already closed.
  Graph g(5);
  for (VertexId v = 1; v < 5; ++v) g.add_edge(0, v);
  g.add_edge(1, 2);
  g.add_edge(3, 4);
  Rng rng(17);
  std::map<std::pair<VertexId, VertexId>, std::uint64_t> counts;
  for (int i = 0; i < 200000; ++i) {
    const auto pair = sample_open_neighbor_pair(g, 0, rng);
    REQUIRE(pair.has_value());
    CHECK_FALSE(g.has_edge(pair->first, pair->second));
    ++counts[*pair];
  }
  REQUIRE(counts.size() == 4);
  std::vector<std::uint64_t> observed;
  for (const auto& [pair, n] : counts) observed.push_back(n);
  CHECK(oracle::chi_square_p(observed, {0.25, 0.25, 0.25, 0.25}) > 0.01);

  g.add_edge(1, 3);
  g.add_edge(1, 4);
  g.add_edge(2, 3);
  g.add_edge(2, 4);
  CHECK_FALSE(sample_open_neighbor_pair(g, 0, rng).has_value());
}

TEST_CASE("generate bookkeeping") {
  for (const std::size_t m : {1, 2, 5}) {
    for (const double eta : {0.0, 0.5, 2.8}) {
      ModelParams p;
      p.eta = eta;
      p.m = m;
      p.T = 500;
      p.seed = 3;
      const GenerationResult r = generate(p);
      CHECK(r.graph.num_vertices() == 2 + p.T);
      CHECK(r.initial_edges == 1);
      CHECK(r.stats.pa_edges_added + r.stats.transitivity_edges_added ==
            r.graph.num_edges() - r.initial_edges);
      // Step t sees t + 1 earlier vertices, all with positive degree.
      std::uint64_t pa_expected = 0;
      for (std::size_t t = 1; t <= p.T; ++t) pa_expected += std::min(m, t + 1);
      CHECK(r.stats.pa_edges_added == pa_expected);
      CHECK(r.stats.pa_edges_added <= m * p.T);
      CHECK(static_cast<double>(r.graph.num_edges()) >= 1.0 + static_cast<double>(pa_expected));
      for (VertexId v = 2; v < r.graph.num_vertices(); ++v) CHECK(r.graph.birth_time(v) == v - 1);
      if (eta == 0.0) CHECK(r.stats.transitivity_edges_added == 0);
    }
  }
}

TEST_CASE("generate is deterministic in the seed") {
  ModelParams p;
  p.eta = 1.3;
  p.m = 3;
  p.T = 2000;
  p.seed = 77;
  const GenerationResult a = generate(p);
  const GenerationResult b = generate(p);
  CHECK(a.stats == b.stats);
  CHECK(serialize(a, p) == serialize(b, p));
  p.seed = 78;
  CHECK(serialize(generate(p), p) != serialize(a, p));
}

TEST_CASE("generate_ba equals generate with eta = 0") {
  ModelParams p;
  p.m = 3;
  p.T = 400;
  p.seed = 9;
  const GenerationResult a = generate(p);
  const GenerationResult b = generate_ba(3, 400, 9);
  CHECK(a.graph.sorted_edges() == b.graph.sorted_edges());
  CHECK(b.stats.transitivity_edges_added == 0);
}

TEST_CASE("BA clustering for the email parameters is small") {
  // Target about 0.0047. Finite-size BA clustering moves by tens of percent
  // between runs, so only the order of magnitude is checked.
  const GenerationResult r = generate_ba(3, 16879, 1);
  const double cc = average_clustering(r.graph);
  CHECK(cc > 0.002);
  CHECK(cc < 0.008);
}

TEST_CASE("edge count stays within the growth-law envelope") {
  ModelParams p;
  p.m = 2;
  p.T = 3000;
  double previous = 0.0;
  for (const double eta : {0.0, 0.5, 1.0, 2.0}) {
    p.eta = eta;
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      p.seed = seed;
      const GenerationResult r = generate(p);
      const double e = static_cast<double>(r.graph.num_edges());
      CHECK(e >= 1.0 + 2.0 * 3000 - 1.0);
      CHECK(e <= expected_edges(3000, eta, 2, 1.0) * 1.05);
      total += e;
    }
    CHECK(total >= previous);
    previous = total;
  }
}

TEST_CASE("skip closure never adds more than resample on average") {
  ModelParams p;
  p.eta = 2.0;
  p.m = 2;
  p.T = 3000;
  double skip = 0.0, resample = 0.0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    p.seed = seed;
    p.closure = ClosurePolicy::kResample;
    resample += static_cast<double>(generate(p).graph.num_edges());
    p.closure = ClosurePolicy::kSkip;
    const GenerationResult r = generate(p);
    CHECK(r.stats.resampled_pairs == 0);
    skip += static_cast<double>(r.graph.num_edges());
  }
  CHECK(skip < resample);
}

TEST_CASE("explicit initial graph") {
  ModelParams p;
  p.m = 2;
  p.T = 10;
  p.initial_graph = InitialGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  const GenerationResult r = generate(p);
  CHECK(r.graph.num_vertices() == 14);
  CHECK(r.initial_vertices == 4);
  CHECK(r.initial_edges == 3);
  CHECK(p.initial_graph.describe() == "edges:0-1,1-2,2-3");
  CHECK(parse_initial_graph("edges:0-1,1-2,2-3").edges.size() == 3);
}

TEST_CASE("parameter validation names the violated constraint") {
  auto message = [](ModelParams p) -> std::string {
    try {
      p.validate();
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  ModelParams p;
  CHECK(message(p).empty());
  p.m = 0;
  CHECK(message(p) == "m must be >= 1");
  p = {};
  p.eta = -0.1;
  CHECK(message(p).find("eta") != std::string::npos);
  p = {};
  p.T = 0;
  CHECK(message(p) == "T must be >= 1");
  p = {};
  p.initial_graph = InitialGraph::from_edges(3, {});
  CHECK(message(p).find("at least one edge") != std::string::npos);
  p.m = 0;
  CHECK_THROWS_AS(generate(p), ConfigError);
}

TEST_CASE("metadata lists parameters and counters") {
  ModelParams p;
  p.eta = 2;
  p.m = 2;
  p.T = 10000;
  p.seed = 1;
  const GenerationResult r = generate(p);
  const Metadata meta = generation_metadata(p, r);
  CHECK(meta.get("expected_edges") == "40001");
  CHECK(meta.get("seed") == "1");
  CHECK(meta.get("transitivity_edges_added") ==
        std::to_string(r.stats.transitivity_edges_added));
  CHECK(meta.get("closure") == "resample");
}

TEST_CASE("config parsing") {
  std::istringstream in("# comment\neta = 0.5\nm=3\nT=20\nseed=4\nclosure=skip\n");
  const ModelParams p = parse_model_params(in);
  CHECK(p.eta == 0.5);
  CHECK(p.m == 3);
  CHECK(p.T == 20);
  CHECK(p.seed == 4);
  CHECK(p.closure == ClosurePolicy::kSkip);

  std::istringstream bad("eta=1\nwidth=3\n");
  try {
    parse_model_params(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream bad_value("m=two\n");
  CHECK_THROWS_AS(parse_model_params(bad_value), ParseError);
  CHECK(to_string(parse_closure_policy("resample")) == "resample");
  CHECK_THROWS_AS(parse_closure_policy("sometimes"), ConfigError);
}
