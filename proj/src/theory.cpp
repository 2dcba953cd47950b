#include "etanet/theory.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "etanet/error.hpp"
#include "etanet/format.hpp"

namespace etanet {
namespace {

void check_params(double eta, std::size_t m) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw ConfigError("eta must be a finite number >= 0 (got " + std::to_string(eta) + ")");
  }
  if (m == 0) throw ConfigError("m must be >= 1");
}

void check_times(double tv, double t) {
  if (!(tv >= 1.0) || !(tv <= t)) {
    throw ConfigError("need 1 <= tv <= t (got tv=" + std::to_string(tv) +
                      ", t=" + std::to_string(t) + ")");
  }
}

}  // namespace

double growth_exponent(double eta, std::size_t m) {
  check_params(eta, m);
  const double md = static_cast<double>(m);
  return (2.0 * eta + md) / (2.0 * (eta + md));
}

double degree_exponent(double eta, std::size_t m) {
  check_params(eta, m);
  const double md = static_cast<double>(m);
  return 2.0 + md / (2.0 * eta + md);
}

double clustering_lower_bound(double eta, std::size_t m) {
  check_params(eta, m);
  const double md = static_cast<double>(m);
  return 2.0 * eta * (eta + md) / (md * (4.0 * eta + 3.0 * md) * (3.0 * eta + 2.0 * md));
}

TheoryPredictions predict(double eta, std::size_t m, std::size_t early_cutoff) {
  check_params(eta, m);
  const double md = static_cast<double>(m);
  TheoryPredictions p;
  p.eta = eta;
  p.m = m;
  p.alpha = growth_exponent(eta, m);
  p.gamma = degree_exponent(eta, m);
  p.K = 2.0 * eta / (2.0 * eta + md);
  p.B = clustering_lower_bound(eta, m);
  p.L = early_cutoff;
  return p;
}

double expected_edges(double t, double eta, std::size_t m, double e0) {
  check_params(eta, m);
  if (!(t >= 0.0)) throw ConfigError("t must be >= 0");
  return (static_cast<double>(m) + eta) * t + e0;
}

double initial_degree(double tv, double eta, std::size_t m) {
  check_params(eta, m);
  check_times(tv, tv);
  const double md = static_cast<double>(m);
  return md + eta * md / ((md + eta) * tv);
}

double expected_degree(double tv, double t, double eta, std::size_t m, DegreeForm form) {
  check_params(eta, m);
  check_times(tv, t);
  const double growth = std::pow(t / tv, growth_exponent(eta, m));
  const double start = form == DegreeForm::kFull ? initial_degree(tv, eta, m)
                                                 : static_cast<double>(m);
  return start * growth;
}

double expected_cc_v_lower_bound(double tv, double T, double eta, std::size_t m) {
  check_params(eta, m);
  check_times(tv, T);
  const double alpha = growth_exponent(eta, m);
  const double md = static_cast<double>(m);
  const double K = 2.0 * eta / (2.0 * eta + md);
  const double x = std::pow(tv / T, alpha);
  return K * x / md - K * x * x / md;
}

void write_theory_text(std::ostream& out, const TheoryPredictions& p, const TheoryQuery& query) {
  auto line = [&out](const char* key, const std::string& value) {
    out << std::left << std::setw(22) << key << "= " << value << '\n';
  };
  line("eta", format_number(p.eta));
  line("m", std::to_string(p.m));
  line("alpha", format_number(p.alpha));
  line("gamma", format_number(p.gamma));
  line("K", format_number(p.K));
  line("B", format_number(p.B));
  line("L", std::to_string(p.L));
  if (query.T) {
    line("T", format_number(*query.T));
    line("expected_edges", format_number(expected_edges(*query.T, p.eta, p.m, query.e0)));
    line("expected_avg_degree", format_number(2.0 * (static_cast<double>(p.m) + p.eta)));
  }
  if (query.tv) {
    const double horizon = query.T.value_or(*query.tv);
    line("tv", format_number(*query.tv));
    line("initial_degree", format_number(initial_degree(*query.tv, p.eta, p.m)));
    line("expected_degree", format_number(expected_degree(*query.tv, horizon, p.eta, p.m)));
    line("expected_degree_asym",
         format_number(expected_degree(*query.tv, horizon, p.eta, p.m, DegreeForm::kAsymptotic)));
    line("cc_v_lower_bound",
         format_number(expected_cc_v_lower_bound(*query.tv, horizon, p.eta, p.m)));
  }
}

std::string theory_csv_header() { return "eta,m,alpha,gamma,K,B,L"; }

std::string theory_csv_row(const TheoryPredictions& p) {
  return format_number(p.eta) + ',' + std::to_string(p.m) + ',' + format_number(p.alpha) + ',' +
         format_number(p.gamma) + ',' + format_number(p.K) + ',' + format_number(p.B) + ',' +
         std::to_string(p.L);
}

}  // namespace etanet
