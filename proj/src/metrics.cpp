#include "etanet/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "etanet/edge_list.hpp"
#include "etanet/error.hpp"
#include "etanet/parallel.hpp"

namespace etanet {
namespace {

// Compressed adjacency with each neighbour list sorted ascending.
struct Csr {
  std::vector<std::size_t> offsets;
  std::vector<VertexId> targets;

  explicit Csr(const Graph& g) : offsets(g.num_vertices() + 1, 0) {
    const auto n = static_cast<VertexId>(g.num_vertices());
    for (VertexId v = 0; v < n; ++v) offsets[v + 1] = offsets[v] + g.degree(v);
    targets.resize(offsets[n]);
    for (VertexId v = 0; v < n; ++v) {
      const auto nbrs = g.neighbors(v);
      auto first = targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
      std::copy(nbrs.begin(), nbrs.end(), first);
      std::sort(first, first + static_cast<std::ptrdiff_t>(nbrs.size()));
    }
  }

  std::size_t size() const { return offsets.size() - 1; }
  std::span<const VertexId> operator[](VertexId v) const {
    return {targets.data() + offsets[v], offsets[v + 1] - offsets[v]};
  }
};

double pairs(std::size_t d) { return 0.5 * static_cast<double>(d) * static_cast<double>(d - 1); }

// Breadth-first search from up to 64 sources at once: bit i of a vertex word
// marks source i. Returns the summed distances from all sources to every
// vertex they reach and the number of (source, reached vertex) pairs, the
// sources themselves excluded.
struct DistanceTally {
  std::uint64_t distance_sum = 0;
  std::uint64_t pairs = 0;
};

class BitParallelBfs {
 public:
  explicit BitParallelBfs(const Csr& csr)
      : csr_(csr), visited_(csr.size()), frontier_(csr.size()), next_(csr.size()) {}

  DistanceTally run(std::span<const VertexId> sources) {
    const std::size_t n = csr_.size();
    std::fill(visited_.begin(), visited_.end(), 0);
    std::fill(frontier_.begin(), frontier_.end(), 0);
    for (std::size_t i = 0; i < sources.size(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      visited_[sources[i]] |= bit;
      frontier_[sources[i]] |= bit;
    }
    DistanceTally tally;
    for (std::uint64_t level = 1;; ++level) {
      bool grew = false;
      for (VertexId v = 0; v < n; ++v) {
        std::uint64_t reach = 0;
        for (const VertexId u : csr_[v]) reach |= frontier_[u];
        const std::uint64_t fresh = reach & ~visited_[v];
        next_[v] = fresh;
        if (fresh != 0) {
          const auto count = static_cast<std::uint64_t>(std::popcount(fresh));
          tally.distance_sum += level * count;
          tally.pairs += count;
          grew = true;
        }
      }
      if (!grew) break;
      for (VertexId v = 0; v < n; ++v) visited_[v] |= next_[v];
      std::swap(frontier_, next_);
    }
    return tally;
  }

 private:
  const Csr& csr_;
  std::vector<std::uint64_t> visited_;
  std::vector<std::uint64_t> frontier_;
  std::vector<std::uint64_t> next_;
};

}  // namespace

double local_clustering(const Graph& g, VertexId v) {
  const auto nbrs = g.neighbors(v);
  if (nbrs.size() < 2) return 0.0;
  std::vector<VertexId> sorted(nbrs.begin(), nbrs.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t links = 0;
  for (const VertexId u : sorted) {
    for (const VertexId x : g.neighbors(u)) {
      if (x > u && std::binary_search(sorted.begin(), sorted.end(), x)) ++links;
    }
  }
  return static_cast<double>(links) / pairs(nbrs.size());
}

std::vector<std::uint64_t> triangles_per_vertex(const Graph& g) {
  const Csr csr(g);
  const auto n = static_cast<VertexId>(csr.size());
  // Orient each edge towards the endpoint with larger (degree, id).
  auto ranks_below = [&](VertexId a, VertexId b) {
    const auto da = csr[a].size();
    const auto db = csr[b].size();
    return da != db ? da < db : a < b;
  };
  std::vector<std::vector<VertexId>> forward(n);
  for (VertexId u = 0; u < n; ++u) {
    for (const VertexId w : csr[u]) {
      if (ranks_below(u, w)) forward[u].push_back(w);
    }
  }

  std::vector<std::uint64_t> tri(n, 0);
  std::vector<VertexId> mark(n, std::numeric_limits<VertexId>::max());
  for (VertexId u = 0; u < n; ++u) {
    for (const VertexId w : forward[u]) mark[w] = u;
    for (const VertexId v : forward[u]) {
      for (const VertexId w : forward[v]) {
        if (mark[w] == u) {
          ++tri[u];
          ++tri[v];
          ++tri[w];
        }
      }
    }
  }
  return tri;
}

double average_clustering(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw EstimationError("average clustering of an empty graph");
  const auto tri = triangles_per_vertex(g);
  double sum = 0.0;
  for (VertexId v = 0; v < n; ++v) {
    const std::size_t d = g.degree(v);
    if (d >= 2) sum += static_cast<double>(tri[v]) / pairs(d);
  }
  return sum / static_cast<double>(n);
}

double global_transitivity(const Graph& g) {
  const auto tri = triangles_per_vertex(g);
  // Each triangle is counted once at each corner, so the sum is 3 * triangles.
  const std::uint64_t closed = std::accumulate(tri.begin(), tri.end(), std::uint64_t{0});
  std::uint64_t triples = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const std::uint64_t d = g.degree(v);
    if (d >= 2) triples += d * (d - 1) / 2;
  }
  return triples == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triples);
}

std::vector<VertexId> largest_component(const Graph& g) {
  const auto n = static_cast<VertexId>(g.num_vertices());
  std::vector<std::int32_t> label(n, -1);
  std::vector<VertexId> queue;
  std::vector<VertexId> best;
  std::int32_t next_label = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    queue.assign(1, s);
    label[s] = next_label;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const VertexId w : g.neighbors(queue[head])) {
        if (label[w] < 0) {
          label[w] = next_label;
          queue.push_back(w);
        }
      }
    }
    if (queue.size() > best.size()) best = queue;
    ++next_label;
  }
  std::sort(best.begin(), best.end());
  return best;
}

MeanDistance mean_distance(const Graph& g, const DistanceMode& mode) {
  if (g.num_vertices() == 0) throw EstimationError("mean distance of an empty graph");
  const std::vector<VertexId> component = largest_component(g);
  if (component.size() < 2) throw EstimationError("largest component has no vertex pairs");

  MeanDistance result;
  result.component_size = component.size();
  std::vector<VertexId> sources = component;
  if (mode.kind == DistanceMode::Kind::kSampled) {
    if (mode.sources == 0) throw EstimationError("sampled mean distance needs at least one source");
    if (mode.sources < component.size()) {
      result.exact = false;
      Rng rng(mode.seed);
      // Partial Fisher-Yates: the first `mode.sources` slots become the sample.
      for (std::size_t i = 0; i < mode.sources; ++i) {
        std::swap(sources[i], sources[i + uniform_index(rng, sources.size() - i)]);
      }
      sources.resize(mode.sources);
      std::sort(sources.begin(), sources.end());
    }
  }
  result.sources = sources.size();

  const Csr csr(g);
  constexpr std::size_t kBatch = 64;
  const std::size_t batches = (sources.size() + kBatch - 1) / kBatch;
  const std::size_t workers = std::min(worker_count(), batches);
  std::vector<DistanceTally> per_worker(workers);
  parallel_for(workers, [&](std::size_t w) {
    BitParallelBfs bfs(csr);
    for (std::size_t b = w; b < batches; b += workers) {
      const std::size_t first = b * kBatch;
      const std::size_t count = std::min(kBatch, sources.size() - first);
      const DistanceTally t = bfs.run(std::span<const VertexId>(sources).subspan(first, count));
      per_worker[w].distance_sum += t.distance_sum;
      per_worker[w].pairs += t.pairs;
    }
  });
  std::uint64_t total = 0;
  std::uint64_t count = 0;
  for (const DistanceTally& t : per_worker) {
    total += t.distance_sum;
    count += t.pairs;
  }
  result.value = static_cast<double>(total) / static_cast<double>(count);
  return result;
}

DegreeHistogram degree_histogram(const Graph& g) {
  DegreeHistogram hist;
  for (VertexId v = 0; v < g.num_vertices(); ++v) ++hist[g.degree(v)];
  return hist;
}

PowerLawFit fit_power_law(const DegreeHistogram& hist, std::size_t k_min, double bin_ratio) {
  if (k_min < 1) throw EstimationError("k_min must be >= 1");
  if (!(bin_ratio > 1.0)) throw EstimationError("bin ratio must be > 1");
  PowerLawFit fit;
  fit.k_min = k_min;

  std::size_t distinct = 0;
  double log_sum = 0.0;
  const double shift = static_cast<double>(k_min) - 0.5;
  for (auto it = hist.lower_bound(k_min); it != hist.end(); ++it) {
    if (it->second == 0) continue;
    fit.samples += it->second;
    ++distinct;
    log_sum += static_cast<double>(it->second) * std::log(static_cast<double>(it->first) / shift);
  }
  if (fit.samples < kMinFitSamples) {
    throw EstimationError("only " + std::to_string(fit.samples) + " degrees >= k_min=" +
                          std::to_string(k_min) + " (need " + std::to_string(kMinFitSamples) + ")");
  }
  if (distinct < 2) throw EstimationError("degenerate histogram: a single distinct degree >= k_min");
  fit.gamma_mle = 1.0 + static_cast<double>(fit.samples) / log_sum;

  // Logarithmic bins [lo, hi) over integer degrees.
  const std::size_t k_max = hist.rbegin()->first;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t lo = k_min; lo <= k_max;) {
    const std::size_t hi =
        std::max(lo + 1, static_cast<std::size_t>(std::ceil(static_cast<double>(lo) * bin_ratio)));
    std::size_t count = 0;
    for (auto it = hist.lower_bound(lo); it != hist.end() && it->first < hi; ++it) count += it->second;
    if (count > 0) {
      const double width = static_cast<double>(hi - lo);
      xs.push_back(0.5 * (std::log(static_cast<double>(lo)) + std::log(static_cast<double>(hi - 1))));
      ys.push_back(std::log(static_cast<double>(count) / width / static_cast<double>(fit.samples)));
    }
    lo = hi;
  }
  if (xs.size() < 2) throw EstimationError("fewer than two populated degree bins");
  const double n = static_cast<double>(xs.size());
  const double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  fit.gamma_regression = -sxy / sxx;
  return fit;
}

std::size_t default_k_min(const DegreeHistogram& hist, std::size_t m) {
  if (hist.empty()) return 1;
  std::size_t base = m;
  if (base == 0) {
    auto first_positive = hist.upper_bound(0);
    base = first_positive == hist.end() ? 0 : first_positive->first;
  }
  const auto it = hist.lower_bound(base + 1);
  return it == hist.end() ? base + 1 : it->first;
}

MetricsReport compute_metrics(const Graph& g, const MetricsOptions& options) {
  MetricsReport report;
  report.num_vertices = g.num_vertices();
  report.num_edges = g.num_edges();
  report.avg_degree = report.num_vertices == 0
                          ? 0.0
                          : 2.0 * static_cast<double>(report.num_edges) /
                                static_cast<double>(report.num_vertices);
  report.degree_histogram = degree_histogram(g);
  if (options.clustering && report.num_vertices > 0) {
    report.avg_clustering = average_clustering(g);
    report.global_transitivity = global_transitivity(g);
  }
  if (options.distance) {
    try {
      report.mean_distance = mean_distance(g, options.distance_mode);
    } catch (const EstimationError&) {
      // left unset: no pairs to measure
    }
  }
  if (options.power_law) {
    const std::size_t k_min =
        options.k_min.value_or(default_k_min(report.degree_histogram, options.m_hint));
    try {
      report.power_law = fit_power_law(report.degree_histogram, k_min, options.bin_ratio);
    } catch (const EstimationError& e) {
      report.power_law_error = e.what();
    }
  }
  return report;
}

std::string metrics_csv_header() {
  return "n,edges,avg_degree,avg_clustering,global_transitivity,mean_distance,distance_method,"
         "distance_sources,lcc_size,gamma_mle,gamma_regression,k_min,fit_samples";
}

std::string metrics_csv_row(const MetricsReport& r) {
  auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
  std::string row = std::to_string(r.num_vertices) + ',' + std::to_string(r.num_edges) + ',' +
                    format_number(r.avg_degree) + ',' + opt(r.avg_clustering) + ',' +
                    opt(r.global_transitivity) + ',';
  if (r.mean_distance) {
    const MeanDistance& d = *r.mean_distance;
    row += format_number(d.value) + ',' + (d.exact ? "exact" : "sampled") + ',' +
           std::to_string(d.sources) + ',' + std::to_string(d.component_size) + ',';
  } else {
    row += ",,,,";
  }
  if (r.power_law) {
    const PowerLawFit& f = *r.power_law;
    row += format_number(f.gamma_mle) + ',' + format_number(f.gamma_regression) + ',' +
           std::to_string(f.k_min) + ',' + std::to_string(f.samples);
  } else {
    row += ",,,";
  }
  return row;
}

void write_metrics_text(std::ostream& out, const MetricsReport& r) {
  out << "vertices             " << r.num_vertices << '\n';
  out << "edges                " << r.num_edges << '\n';
  out << "avg_degree           " << format_number(r.avg_degree) << '\n';
  if (r.avg_clustering) out << "avg_clustering       " << format_number(*r.avg_clustering) << '\n';
  if (r.global_transitivity) {
    out << "global_transitivity  " << format_number(*r.global_transitivity) << '\n';
  }
  if (r.mean_distance) {
    const MeanDistance& d = *r.mean_distance;
    out << "mean_distance        " << format_number(d.value) << " ("
        << (d.exact ? "exact" : "sampled, " + std::to_string(d.sources) + " sources")
        << ", component " << d.component_size << ")\n";
  }
  if (r.power_law) {
    out << "gamma_mle            " << format_number(r.power_law->gamma_mle) << " (k_min "
        << r.power_law->k_min << ", " << r.power_law->samples << " samples)\n";
    out << "gamma_regression     " << format_number(r.power_law->gamma_regression) << '\n';
  } else if (!r.power_law_error.empty()) {
    out << "gamma                unavailable: " << r.power_law_error << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const DegreeHistogram& hist) {
  out << "degree,count\n";
  for (const auto& [degree, count] : hist) out << degree << ',' << count << '\n';
}

}  // namespace etanet
