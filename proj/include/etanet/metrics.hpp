#ifndef ETANET_METRICS_HPP_
#define ETANET_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etanet/graph.hpp"

namespace etanet {

using DegreeHistogram = std::map<std::size_t, std::size_t>;

// Edges among the neighbours of v divided by C(d_v, 2); 0 when d_v < 2.
double local_clustering(const Graph& g, VertexId v);

// Number of triangles through each vertex.
std::vector<std::uint64_t> triangles_per_vertex(const Graph& g);

// Mean of local_clustering over all vertices, degree < 2 vertices counted as 0.
double average_clustering(const Graph& g);

// 3 * triangles / connected triples; 0 when there are no triples.
double global_transitivity(const Graph& g);

struct DistanceMode {
  enum class Kind { kExact, kSampled };
  Kind kind = Kind::kExact;
  std::size_t sources = 0;  // kSampled only
  std::uint64_t seed = 1;   // kSampled only

  static DistanceMode exact() { return {}; }
  static DistanceMode sampled(std::size_t sources, std::uint64_t seed) {
    return {Kind::kSampled, sources, seed};
  }
};

struct MeanDistance {
  double value = 0.0;
  bool exact = true;
  std::size_t sources = 0;         // BFS roots actually used
  std::size_t component_size = 0;  // vertices in the largest component
};

// Vertices of the largest connected component, ascending. Ties go to the
// component holding the smallest vertex id.
std::vector<VertexId> largest_component(const Graph& g);

// Mean shortest-path length over ordered pairs of distinct vertices of the
// largest component. Sampled mode draws `sources` distinct BFS roots
// uniformly from that component (all of them if it is smaller). Throws
// EstimationError for an empty graph or a component without pairs.
MeanDistance mean_distance(const Graph& g, const DistanceMode& mode = DistanceMode::exact());

DegreeHistogram degree_histogram(const Graph& g);

struct PowerLawFit {
  double gamma_mle = 0.0;
  double gamma_regression = 0.0;
  std::size_t k_min = 0;
  std::size_t samples = 0;  // degrees >= k_min
};

inline constexpr std::size_t kMinFitSamples = 50;
inline constexpr double kDefaultBinRatio = 1.3;

// Discrete power-law MLE over degrees >= k_min:
//   gamma = 1 + N / sum ln(k_i / (k_min - 1/2)),
// plus a least-squares slope of log density against log degree over
// logarithmic bins (edge ratio bin_ratio) starting at k_min. Throws
// EstimationError for fewer than kMinFitSamples samples, a single distinct
// degree, or fewer than two populated bins.
PowerLawFit fit_power_law(const DegreeHistogram& hist, std::size_t k_min,
                          double bin_ratio = kDefaultBinRatio);

struct MetricsOptions {
  bool clustering = true;
  bool distance = true;
  bool power_law = true;
  DistanceMode distance_mode = DistanceMode::exact();
  std::optional<std::size_t> k_min;  // default: smallest degree >= m + 1 (see default_k_min)
  std::size_t m_hint = 0;            // attachment edges, when known; 0 = infer minimum degree
  double bin_ratio = kDefaultBinRatio;
};

struct MetricsReport {
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  double avg_degree = 0.0;
  std::optional<double> avg_clustering;
  std::optional<double> global_transitivity;
  std::optional<MeanDistance> mean_distance;
  DegreeHistogram degree_histogram;
  std::optional<PowerLawFit> power_law;
  std::string power_law_error;  // set when fitting was requested but failed
};

// Smallest degree present that is >= m + 1. With m == 0 the minimum degree
// present stands in for m.
std::size_t default_k_min(const DegreeHistogram& hist, std::size_t m);

MetricsReport compute_metrics(const Graph& g, const MetricsOptions& options = {});

// Comma-separated header and row, same column order.
std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& report);

void write_metrics_text(std::ostream& out, const MetricsReport& report);

// "degree,count" header followed by one row per populated degree.
void write_histogram_csv(std::ostream& out, const DegreeHistogram& hist);

}  // namespace etanet

#endif  // ETANET_METRICS_HPP_
