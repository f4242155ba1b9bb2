#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "costquery/model.hpp"
#include "costquery/oracle.hpp"
#include "costquery/scenarios.hpp"

namespace costquery {

/// Slack allowed on every bound comparison.
inline constexpr double kBoundSlack = 1e-6;

/// 12 C* ln(1 / min pi)
double greedy_bound(double optimal_cost, double min_prior);
/// (12 / (1 - eps)) C* ln(1 / min pi)
double epsilon_greedy_bound(double optimal_cost, double min_prior, double epsilon);
/// 108 C* ln(n c_max / c_min)
double rounded_bound(double optimal_cost, std::size_t n, double c_min, double c_max);

struct SuiteConfig {
  std::size_t instances = 200;
  std::uint64_t seed = 1;
  std::size_t max_n = 8;
  std::size_t max_m = 12;
  std::size_t max_k = 4;
  double cost_low = 0.1;
  double cost_high = 10.0;
  std::vector<double> concentrations{0.3, 1.0, 10.0};
};

/// Generator settings of the i-th instance in a suite; deterministic in (cfg, i).
GeneratorConfig suite_instance_config(const SuiteConfig& cfg, std::size_t i);

struct BoundCheck {
  double cost = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct BoundRow {
  std::size_t index = 0;
  GeneratorConfig generator;
  double min_prior = 0.0;
  double optimal_cost = 0.0;
  BoundCheck greedy;
  std::vector<BoundCheck> epsilon;   // aligned with ReportConfig::epsilons
  std::optional<BoundCheck> rounded;  // only for n > 2
  bool pass = false;

  double ratio() const { return greedy.cost / optimal_cost; }
};

struct ReportConfig {
  SuiteConfig suite;
  std::vector<double> epsilons{0.1, 0.5};
  OracleOptions oracle;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  double max_ratio = 0.0;
  std::size_t failures = 0;
};

BoundRow check_instance(const Instance& inst, const ReportConfig& cfg);
BoundReport run_bound_report(const ReportConfig& cfg);

// Columns: instance, seed, n, m, k, concentration, min_prior, c_star,
// greedy_cost, greedy_bound, ratio, greedy_pass, then eps_<e>_cost,
// eps_<e>_bound, eps_<e>_pass per epsilon, then rounded_cost, rounded_bound,
// rounded_pass (empty when n <= 2).
std::string report_to_csv(const BoundReport& report, const ReportConfig& cfg);
std::string report_summary(const BoundReport& report);

}  // namespace costquery
