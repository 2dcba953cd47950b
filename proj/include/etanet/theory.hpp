#ifndef ETANET_THEORY_HPP_
#define ETANET_THEORY_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace etanet {

// Mean-field predictions for a network grown with transitivity rate eta and
// m attachment edges per new vertex.
struct TheoryPredictions {
  double eta = 0.0;
  std::size_t m = 0;
  double alpha = 0.0;  // degree growth exponent: d_v(t) ~ (t / t_v)^alpha
  double gamma = 0.0;  // degree distribution exponent: Pr[k] ~ k^-gamma
  double K = 0.0;      // 2 eta / (2 eta + m)
  double B = 0.0;      // size-independent lower bound on average clustering
  std::size_t L = 20;  // birth time from which the asymptotic degree law is used
};

inline constexpr std::size_t kDefaultEarlyCutoff = 20;

// Throws ConfigError for eta < 0 (or NaN) and m == 0.
TheoryPredictions predict(double eta, std::size_t m, std::size_t early_cutoff = kDefaultEarlyCutoff);

double growth_exponent(double eta, std::size_t m);
double degree_exponent(double eta, std::size_t m);
double clustering_lower_bound(double eta, std::size_t m);

// (m + eta) t + e0
double expected_edges(double t, double eta, std::size_t m, double e0);

// Degree at time t of the vertex born at tv (1 <= tv <= t). The full form
// carries the transitivity edges a vertex collects on arrival; the asymptotic
// form drops them and is meant for tv >= L.
enum class DegreeForm { kFull, kAsymptotic };
double expected_degree(double tv, double t, double eta, std::size_t m,
                       DegreeForm form = DegreeForm::kFull);

// Degree right after arrival: m + eta m / ((m + eta) tv).
double initial_degree(double tv, double eta, std::size_t m);

// K (tv/T)^alpha / m - K (tv/T)^(2 alpha) / m, for L <= tv <= T.
double expected_cc_v_lower_bound(double tv, double T, double eta, std::size_t m);

// Aligned key=value listing. With a horizon T (and seed edge count e0) the
// expected edge count is added; with a birth time tv also the degree and
// per-vertex clustering bound of that vertex.
struct TheoryQuery {
  std::optional<double> T;
  std::optional<double> tv;
  double e0 = 1.0;
};
void write_theory_text(std::ostream& out, const TheoryPredictions& p, const TheoryQuery& query = {});
std::string theory_csv_header();
std::string theory_csv_row(const TheoryPredictions& p);

}  // namespace etanet

#endif  // ETANET_THEORY_HPP_
