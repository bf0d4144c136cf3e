#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sinrg/kernel.hpp"
#include "sinrg/measures.hpp"
#include "sinrg/sinr_graph.hpp"
#include "sinrg/theory.hpp"

namespace sinrg {

struct ModelParams {
  DeviceDomain domain = DeviceDomain::box(2, 1.0, Boundary::Periodic);
  double alpha = 1.0;
  MarkLaw marks{1.0};
  BaseBeta beta0;
  double noise = 0.0;
  TauSplit split = TauSplit::GammaOne;
  InterferenceConvention convention = InterferenceConvention::PaperLiteral;

  SinrParams sinr(double lambda) const;
  KernelParams kernel(double lambda) const;
};

enum class Suite { Connectivity, Aep, Wlln, Concentration, KernelLimit };

// How the two test points of the connectivity experiment see interference.
enum class FieldMode {
  // Each direction uses its own process, receiver at the origin and the
  // transmitter at the test distance.
  PalmCentered,
  // One process shared by both directions; test points at +-distance/2.
  Shared,
};

enum class GraphLaw {
  Sinr,    // two-sided SINR rule
  Kernel,  // independent edges with the finite-lambda kernel probabilities
};

struct TestPair {
  double distance;
  double mark_x;
  double mark_y;
};

struct ExperimentPlan {
  Suite suite = Suite::Aep;
  ModelParams model;
  std::vector<double> lambdas{100.0};
  std::uint64_t replicates = 50;
  std::uint64_t seed = 1;
  unsigned workers = 0;

  // connectivity
  double distance = 0.3;
  FieldMode field = FieldMode::PalmCentered;
  bool random_test_marks = true;
  double test_mark_x = 1.0;
  double test_mark_y = 1.0;
  InterferenceConvention connectivity_convention = InterferenceConvention::ExcludeDesired;

  // aep
  GraphLaw aep_law = GraphLaw::Sinr;
  std::uint64_t entropy_samples = 10'000'000;
  double entropy_agreement = 0.01;
  double aep_final_gap = 0.20;
  double clamp_warning_fraction = 1e-3;

  // wlln
  int divisions = 4;
  int mark_intervals = 3;
  double mark_cutoff = NAN;  // default ln(mark_intervals + 1) / c
  double epsilon_l1 = NAN;   // default from the oracle rule
  double epsilon_l2 = NAN;
  GraphLaw wlln_law = GraphLaw::Kernel;
  int reference_refinement = 8;
  std::uint64_t sinr_diagnostic_replicates = 0;
  double within_sigma_fraction = 0.99;

  // kernel limit
  std::vector<TestPair> pairs;
  double limit_final_gap = 0.05;

  void validate() const;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> scalars;
  double runtime_seconds = 0.0;  // never serialized

  bool passed() const;
  std::size_t column(const std::string& name) const;
  double value(std::size_t row, const std::string& name) const;
  double scalar(const std::string& name) const;
};

ExperimentReport connectivity_experiment(const ExperimentPlan& plan);
ExperimentReport aep_sweep(const ExperimentPlan& plan);
ExperimentReport wlln_sweep(const ExperimentPlan& plan);
ExperimentReport count_concentration(const ExperimentPlan& plan);
ExperimentReport kernel_limit_sweep(const ExperimentPlan& plan);
ExperimentReport run_experiment(const ExperimentPlan& plan);

// Bennett function (1 + u) log(1 + u) - u.
double bennett_h(double u);
// 1 - exp(-lambda^2 h(a) / a^2)
double bennett_bound(double lambda, double a);
// P(N <= k) for N ~ Poisson(mean).
double poisson_cdf(double mean, std::uint64_t k);

// Threshold eps with P(max_b |Z_b| > eps) = level for independent
// Z_b ~ N(0, sd_b^2).
double sup_gaussian_threshold(const std::vector<double>& sd, double level);

// Oracle standard deviations of the binned pair measure of a graph with
// independent edges, Poisson counts with bin means lambda * rho, bin-pair
// kernel k and target t = k rho_a rho_b. Row-major, n x n.
std::vector<double> pair_measure_oracle_sd(const std::vector<double>& rho, const std::vector<double>& kernel,
                                           double lambda);

std::string_view to_string(Suite suite);
Suite parse_suite(std::string_view text);
std::string_view to_string(FieldMode mode);
FieldMode parse_field_mode(std::string_view text);
std::string_view to_string(GraphLaw law);
GraphLaw parse_graph_law(std::string_view text);

std::vector<TestPair> default_test_pairs();

}  // namespace sinrg
