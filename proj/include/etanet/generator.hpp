#ifndef ETANET_GENERATOR_HPP_
#define ETANET_GENERATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "etanet/edge_list.hpp"
#include "etanet/graph.hpp"

namespace etanet {

// Seed graph the growth process starts from.
struct InitialGraph {
  enum class Kind { kTwoVerticesOneEdge, kExplicitEdgeList };

  Kind kind = Kind::kTwoVerticesOneEdge;
  std::size_t num_vertices = 2;  // used for kExplicitEdgeList
  std::vector<Edge> edges;       // used for kExplicitEdgeList

  static InitialGraph two_vertices() { return {}; }
  static InitialGraph from_edges(std::size_t num_vertices, std::vector<Edge> edges);

  Graph build() const;
  std::string describe() const;
};

// What the transitivity step does when the drawn neighbour pair is already
// connected.
enum class ClosurePolicy {
  kResample,  // draw again, uniformly over the still-unconnected pairs
  kSkip,      // give up for this selection
};

// How the transitivity step draws its independent per-vertex selections.
enum class SweepSampler {
  kPerVertex,  // one Bernoulli draw per vertex
  kThinned,    // geometric skips at the largest probability, then acceptance
};

struct ModelParams {
  double eta = 0.0;
  std::size_t m = 2;
  std::size_t T = 1;
  std::uint64_t seed = 1;
  InitialGraph initial_graph;
  ClosurePolicy closure = ClosurePolicy::kResample;
  SweepSampler sampler = SweepSampler::kThinned;

  // Throws ConfigError naming the first violated constraint.
  void validate() const;
};

struct GenerationStats {
  std::uint64_t pa_edges_added = 0;
  std::uint64_t transitivity_edges_added = 0;
  std::uint64_t duplicate_skips = 0;         // selection closed no pair (all pairs / drawn pair connected)
  std::uint64_t resampled_pairs = 0;         // extra pair draws after hitting a connected pair
  std::uint64_t degree_deficient_skips = 0;  // selected vertex had fewer than two neighbours
  std::uint64_t clamped_selections = 0;      // eta d_w / 2e exceeded 1

  friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

struct GenerationResult {
  Graph graph;
  GenerationStats stats;
  std::size_t initial_vertices = 0;
  std::size_t initial_edges = 0;
};

// Grows a graph: from the seed graph, T steps of (new vertex, m preferential
// attachment edges, transitivity sweep). Deterministic in params.seed.
GenerationResult generate(const ModelParams& params);

// Same process with eta = 0.
GenerationResult generate_ba(std::size_t m, std::size_t T, std::uint64_t seed);

// Connects the fresh vertex v to min(m, candidates) distinct vertices drawn
// proportionally to degree. All targets are drawn against the graph as it is
// on entry and inserted afterwards. `candidates` is the number of vertices
// other than v with positive degree; the overload without it counts them.
std::size_t pa_step(Graph& g, VertexId v, std::size_t m, Rng& rng, std::size_t candidates);
std::size_t pa_step(Graph& g, VertexId v, std::size_t m, Rng& rng);

// Each vertex w is selected independently with probability
// min(1, eta d_w / 2e), degrees and e taken at sweep start. Selected vertices
// are then visited in ascending id order and each one connects a uniformly
// chosen pair of its current neighbours. Under kResample the pair is uniform
// over the unconnected pairs (nothing happens when every pair is connected);
// under kSkip an already-connected draw is dropped. Returns edges added.
std::size_t transitivity_sweep(Graph& g, double eta, Rng& rng, GenerationStats& stats,
                               ClosurePolicy closure = ClosurePolicy::kResample,
                               SweepSampler sampler = SweepSampler::kThinned);

// The selection half of the sweep: ascending ids of the vertices picked with
// probability min(1, eta d_w / 2e). Both samplers give every vertex the same
// marginal and keep the picks independent; they consume the RNG differently.
// `clamped` (optional) is increased by the number of vertices whose raw
// probability exceeds 1.
std::vector<VertexId> select_for_closure(const Graph& g, double eta, Rng& rng, SweepSampler sampler,
                                         std::uint64_t* clamped = nullptr);

// Uniform pair among the neighbours of w that are not yet adjacent, or nothing
// if there is none. `redraws` counts rejected draws.
std::optional<std::pair<VertexId, VertexId>> sample_open_neighbor_pair(const Graph& g, VertexId w,
                                                                       Rng& rng,
                                                                       std::uint64_t* redraws = nullptr);

// Header block written alongside a generated edge list: parameters, the
// expected edge count and the stats counters.
Metadata generation_metadata(const ModelParams& params, const GenerationResult& result);

// Plain key=value configuration (keys: eta, m, T, seed, initial_graph,
// closure). initial_graph is "two-vertices" or "edges:u-v,u-v,..."; closure is
// "resample" or "skip". Unknown keys and
// malformed values throw ParseError with the line number.
ModelParams parse_model_params(std::istream& in, ModelParams defaults = {});
InitialGraph parse_initial_graph(const std::string& text);
ClosurePolicy parse_closure_policy(const std::string& text);
std::string to_string(ClosurePolicy policy);

}  // namespace etanet

#endif  // ETANET_GENERATOR_HPP_
