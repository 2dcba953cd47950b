#ifndef ETANET_GRAPH_HPP_
#define ETANET_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

namespace etanet {

using VertexId = std::uint32_t;
using TimeStep = std::uint64_t;
using Rng = std::mt19937_64;

struct Edge {
  VertexId u;
  VertexId v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected simple graph that grows by appending vertices and edges.
//
// Besides the adjacency lists, every edge contributes both of its endpoints to
// a flat endpoint list, so a vertex w appears there exactly degree(w) times and
// a uniform index into the list is a degree-proportional draw.
class Graph {
 public:
  Graph() = default;

  // Creates `n` isolated vertices born at time 0.
  explicit Graph(std::size_t n);

  VertexId add_vertex(TimeStep birth_time);

  // Inserts {u, v}. Returns false and leaves the graph untouched for a
  // self-loop or an existing edge. Throws std::out_of_range on a bad id.
  bool add_edge(VertexId u, VertexId v);

  bool has_edge(VertexId u, VertexId v) const;

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return endpoints_.size() / 2; }

  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_.at(v); }
  TimeStep birth_time(VertexId v) const { return birth_time_.at(v); }

  std::span<const VertexId> endpoints() const noexcept { return endpoints_; }

  // All edges as (min, max) pairs in lexicographic order.
  std::vector<Edge> sorted_edges() const;

  void reserve(std::size_t vertices, std::size_t edges);

 private:
  void check_vertex(VertexId v) const;
  static std::uint64_t edge_key(VertexId u, VertexId v) noexcept;

  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<TimeStep> birth_time_;
  std::vector<VertexId> endpoints_;
  std::unordered_set<std::uint64_t> edge_keys_;
  std::size_t max_degree_ = 0;
};

// Draws w with probability degree(w) / (2 * num_edges).
// Throws std::logic_error when the graph has no edges.
VertexId sample_vertex_by_degree(const Graph& g, Rng& rng);

// Draws one of the C(d_w, 2) unordered neighbour pairs of w uniformly, or
// nothing when d_w < 2. The first element is the smaller id.
std::optional<std::pair<VertexId, VertexId>> sample_neighbor_pair(const Graph& g, VertexId w,
                                                                  Rng& rng);

// Uniform integer in [0, bound). bound must be positive.
inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
}

// Bernoulli(p) from the top 53 bits of one draw; p >= 1 always succeeds.
inline bool bernoulli(Rng& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

}  // namespace etanet

#endif  // ETANET_GRAPH_HPP_
