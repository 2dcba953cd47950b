#include "etanet/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace etanet {

Graph::Graph(std::size_t n) : adjacency_(n), birth_time_(n, 0) {}

VertexId Graph::add_vertex(TimeStep birth_time) {
  const auto id = static_cast<VertexId>(adjacency_.size());
  adjacency_.emplace_back();
  birth_time_.push_back(birth_time);
  return id;
}

void Graph::check_vertex(VertexId v) const {
  if (v >= adjacency_.size()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range (n=" +
                            std::to_string(adjacency_.size()) + ")");
  }
}

std::uint64_t Graph::edge_key(VertexId u, VertexId v) noexcept {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

bool Graph::add_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return false;
  if (!edge_keys_.insert(edge_key(u, v)).second) return false;
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  endpoints_.push_back(u);
  endpoints_.push_back(v);
  max_degree_ = std::max({max_degree_, adjacency_[u].size(), adjacency_[v].size()});
  return true;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  return u != v && edge_keys_.contains(edge_key(u, v));
}

std::vector<Edge> Graph::sorted_edges() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  for (std::size_t i = 0; i < endpoints_.size(); i += 2) {
    edges.push_back({std::min(endpoints_[i], endpoints_[i + 1]),
                     std::max(endpoints_[i], endpoints_[i + 1])});
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  return edges;
}

void Graph::reserve(std::size_t vertices, std::size_t edges) {
  adjacency_.reserve(vertices);
  birth_time_.reserve(vertices);
  endpoints_.reserve(2 * edges);
  edge_keys_.reserve(edges);
}

VertexId sample_vertex_by_degree(const Graph& g, Rng& rng) {
  const auto ends = g.endpoints();
  if (ends.empty()) throw std::logic_error("degree-proportional sampling needs at least one edge");
  return ends[uniform_index(rng, ends.size())];
}

std::optional<std::pair<VertexId, VertexId>> sample_neighbor_pair(const Graph& g, VertexId w,
                                                                  Rng& rng) {
  const auto nbrs = g.neighbors(w);
  const std::size_t d = nbrs.size();
  if (d < 2) return std::nullopt;
  const std::size_t i = uniform_index(rng, d);
  std::size_t j = uniform_index(rng, d - 1);
  if (j >= i) ++j;
  return std::minmax(nbrs[i], nbrs[j]);
}

}  // namespace etanet
