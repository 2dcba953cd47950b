#include "etanet/generator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include "etanet/error.hpp"
#include "etanet/theory.hpp"

namespace etanet {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_value(std::string_view text, T& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return !text.empty() && ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

InitialGraph InitialGraph::from_edges(std::size_t num_vertices, std::vector<Edge> edges) {
  InitialGraph g;
  g.kind = Kind::kExplicitEdgeList;
  g.num_vertices = num_vertices;
  g.edges = std::move(edges);
  return g;
}

Graph InitialGraph::build() const {
  if (kind == Kind::kTwoVerticesOneEdge) {
    Graph g(2);
    g.add_edge(0, 1);
    return g;
  }
  Graph g(num_vertices);
  for (const Edge& e : edges) g.add_edge(e.u, e.v);
  return g;
}

std::string InitialGraph::describe() const {
  if (kind == Kind::kTwoVerticesOneEdge) return "two-vertices";
  std::string out = "edges:";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(edges[i].u) + '-' + std::to_string(edges[i].v);
  }
  return out;
}

void ModelParams::validate() const {
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw ConfigError("eta must be a finite number >= 0");
  if (m < 1) throw ConfigError("m must be >= 1");
  if (T < 1) throw ConfigError("T must be >= 1");
  if (initial_graph.kind == InitialGraph::Kind::kExplicitEdgeList) {
    std::size_t real_edges = 0;
    for (const Edge& e : initial_graph.edges) {
      if (e.u >= initial_graph.num_vertices || e.v >= initial_graph.num_vertices) {
        throw ConfigError("initial graph edge references a vertex outside [0, " +
                          std::to_string(initial_graph.num_vertices) + ")");
      }
      if (e.u != e.v) ++real_edges;
    }
    if (real_edges == 0) throw ConfigError("initial graph must have at least one edge");
  }
}

std::size_t pa_step(Graph& g, VertexId v, std::size_t m, Rng& rng, std::size_t candidates) {
  const std::size_t wanted = std::min(m, candidates);
  std::vector<VertexId> targets;
  targets.reserve(wanted);
  while (targets.size() < wanted) {
    const VertexId w = sample_vertex_by_degree(g, rng);
    if (w == v || std::find(targets.begin(), targets.end(), w) != targets.end()) continue;
    targets.push_back(w);
  }
  std::size_t added = 0;
  for (const VertexId w : targets) added += g.add_edge(v, w) ? 1 : 0;
  return added;
}

std::size_t pa_step(Graph& g, VertexId v, std::size_t m, Rng& rng) {
  std::size_t candidates = 0;
  for (VertexId w = 0; w < g.num_vertices(); ++w) {
    if (w != v && g.degree(w) > 0) ++candidates;
  }
  return pa_step(g, v, m, rng, candidates);
}

std::optional<std::pair<VertexId, VertexId>> sample_open_neighbor_pair(const Graph& g, VertexId w,
                                                                       Rng& rng,
                                                                       std::uint64_t* redraws) {
  // Rejection draws are uniform over the open pairs; after a bounded number of
  // misses the open pairs are enumerated, which keeps the same distribution
  // and terminates on fully closed neighbourhoods.
  constexpr int kRejectionTries = 32;
  for (int attempt = 0; attempt < kRejectionTries; ++attempt) {
    const auto pair = sample_neighbor_pair(g, w, rng);
    if (!pair) return std::nullopt;
    if (!g.has_edge(pair->first, pair->second)) return pair;
    if (redraws) ++*redraws;
  }
  const auto nbrs = g.neighbors(w);
  std::vector<std::pair<VertexId, VertexId>> open;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      if (!g.has_edge(nbrs[i], nbrs[j])) open.push_back(std::minmax(nbrs[i], nbrs[j]));
    }
  }
  if (open.empty()) return std::nullopt;
  return open[uniform_index(rng, open.size())];
}

std::vector<VertexId> select_for_closure(const Graph& g, double eta, Rng& rng, SweepSampler sampler,
                                         std::uint64_t* clamped) {
  std::vector<VertexId> selected;
  if (eta <= 0.0 || g.num_edges() == 0) return selected;
  const double scale = eta / (2.0 * static_cast<double>(g.num_edges()));
  const auto n = static_cast<VertexId>(g.num_vertices());
  const double p_max = scale * static_cast<double>(g.max_degree());

  if (sampler == SweepSampler::kPerVertex || p_max >= 1.0) {
    for (VertexId w = 0; w < n; ++w) {
      const double p = scale * static_cast<double>(g.degree(w));
      if (p > 1.0 && clamped) ++*clamped;
      if (bernoulli(rng, p)) selected.push_back(w);
    }
    return selected;
  }

  // Candidates form a Bernoulli(p_max) process over ids (geometric gaps); a
  // candidate w is kept with probability p_w / p_max, so each vertex is kept
  // independently with probability p_w.
  std::geometric_distribution<std::uint64_t> gap(p_max);
  for (std::uint64_t w = gap(rng); w < n; w += 1 + gap(rng)) {
    const double ratio = static_cast<double>(g.degree(static_cast<VertexId>(w))) /
                         static_cast<double>(g.max_degree());
    if (bernoulli(rng, ratio)) selected.push_back(static_cast<VertexId>(w));
  }
  return selected;
}

std::size_t transitivity_sweep(Graph& g, double eta, Rng& rng, GenerationStats& stats,
                               ClosurePolicy closure, SweepSampler sampler) {
  const std::vector<VertexId> selected =
      select_for_closure(g, eta, rng, sampler, &stats.clamped_selections);

  std::size_t added = 0;
  for (const VertexId w : selected) {
    if (g.degree(w) < 2) {
      ++stats.degree_deficient_skips;
      continue;
    }
    const auto pair = closure == ClosurePolicy::kResample
                          ? sample_open_neighbor_pair(g, w, rng, &stats.resampled_pairs)
                          : sample_neighbor_pair(g, w, rng);
    if (pair && g.add_edge(pair->first, pair->second)) {
      ++added;
    } else {
      ++stats.duplicate_skips;
    }
  }
  stats.transitivity_edges_added += added;
  return added;
}

GenerationResult generate(const ModelParams& params) {
  params.validate();
  GenerationResult result;
  Graph& g = result.graph;
  g = params.initial_graph.build();
  result.initial_vertices = g.num_vertices();
  result.initial_edges = g.num_edges();

  const double expected = expected_edges(static_cast<double>(params.T), params.eta, params.m,
                                         static_cast<double>(result.initial_edges));
  g.reserve(g.num_vertices() + params.T, static_cast<std::size_t>(expected) + 16);

  std::size_t candidates = 0;
  for (VertexId w = 0; w < g.num_vertices(); ++w) candidates += g.degree(w) > 0 ? 1 : 0;

  Rng rng(params.seed);
  for (std::size_t t = 1; t <= params.T; ++t) {
    const VertexId v = g.add_vertex(t);
    const std::size_t added = pa_step(g, v, params.m, rng, candidates);
    result.stats.pa_edges_added += added;
    if (added > 0) ++candidates;
    transitivity_sweep(g, params.eta, rng, result.stats, params.closure, params.sampler);
  }
  return result;
}

GenerationResult generate_ba(std::size_t m, std::size_t T, std::uint64_t seed) {
  ModelParams params;
  params.eta = 0.0;
  params.m = m;
  params.T = T;
  params.seed = seed;
  return generate(params);
}

Metadata generation_metadata(const ModelParams& params, const GenerationResult& result) {
  Metadata meta;
  meta.set("eta", format_number(params.eta));
  meta.set("m", std::to_string(params.m));
  meta.set("T", std::to_string(params.T));
  meta.set("seed", std::to_string(params.seed));
  meta.set("initial_graph", params.initial_graph.describe());
  meta.set("closure", to_string(params.closure));
  meta.set("expected_edges",
           format_number(expected_edges(static_cast<double>(params.T), params.eta, params.m,
                                        static_cast<double>(result.initial_edges))));
  const GenerationStats& s = result.stats;
  meta.set("pa_edges_added", std::to_string(s.pa_edges_added));
  meta.set("transitivity_edges_added", std::to_string(s.transitivity_edges_added));
  meta.set("duplicate_skips", std::to_string(s.duplicate_skips));
  meta.set("degree_deficient_skips", std::to_string(s.degree_deficient_skips));
  meta.set("resampled_pairs", std::to_string(s.resampled_pairs));
  meta.set("clamped_selections", std::to_string(s.clamped_selections));
  return meta;
}

InitialGraph parse_initial_graph(const std::string& text) {
  const std::string_view s = trim(text);
  if (s == "two-vertices") return InitialGraph::two_vertices();
  constexpr std::string_view kPrefix = "edges:";
  if (!s.starts_with(kPrefix)) {
    throw ConfigError("initial graph must be 'two-vertices' or 'edges:u-v,...' (got '" + text + "')");
  }
  std::vector<Edge> edges;
  std::size_t n = 0;
  std::string_view rest = s.substr(kPrefix.size());
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto dash = item.find('-');
    VertexId u = 0;
    VertexId v = 0;
    if (dash == std::string_view::npos || !parse_value(trim(item.substr(0, dash)), u) ||
        !parse_value(trim(item.substr(dash + 1)), v)) {
      throw ConfigError("bad initial graph edge '" + std::string(item) + "'");
    }
    edges.push_back({u, v});
    n = std::max<std::size_t>(n, std::max(u, v) + std::size_t{1});
  }
  return InitialGraph::from_edges(n, std::move(edges));
}

ClosurePolicy parse_closure_policy(const std::string& text) {
  if (text == "resample") return ClosurePolicy::kResample;
  if (text == "skip") return ClosurePolicy::kSkip;
  throw ConfigError("closure policy must be 'resample' or 'skip' (got '" + text + "')");
}

std::string to_string(ClosurePolicy policy) {
  return policy == ClosurePolicy::kResample ? "resample" : "skip";
}

ModelParams parse_model_params(std::istream& in, ModelParams params) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    const std::string key(trim(text.substr(0, eq)));
    const std::string_view value = trim(text.substr(eq + 1));
    bool ok = true;
    if (key == "eta") {
      ok = parse_value(value, params.eta);
    } else if (key == "m") {
      ok = parse_value(value, params.m);
    } else if (key == "T") {
      ok = parse_value(value, params.T);
    } else if (key == "seed") {
      ok = parse_value(value, params.seed);
    } else if (key == "initial_graph" || key == "closure") {
      try {
        if (key == "closure") {
          params.closure = parse_closure_policy(std::string(value));
        } else {
          params.initial_graph = parse_initial_graph(std::string(value));
        }
      } catch (const ConfigError& e) {
        throw ParseError(e.what(), line_no);
      }
    } else {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
    if (!ok) throw ParseError("bad value for " + key + ": '" + std::string(value) + "'", line_no);
  }
  return params;
}

}  // namespace etanet
