#include "costquery/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "costquery/builder.hpp"
#include "costquery/format.hpp"
#include "costquery/random.hpp"

namespace costquery {

double greedy_bound(double optimal_cost, double min_prior) { return 12.0 * optimal_cost * std::log(1.0 / min_prior); }

double epsilon_greedy_bound(double optimal_cost, double min_prior, double epsilon) {
  return 12.0 / (1.0 - epsilon) * optimal_cost * std::log(1.0 / min_prior);
}

double rounded_bound(double optimal_cost, std::size_t n, double c_min, double c_max) {
  return 108.0 * optimal_cost * std::log(static_cast<double>(n) * c_max / c_min);
}

GeneratorConfig suite_instance_config(const SuiteConfig& cfg, std::size_t i) {
  Rng rng = Rng(cfg.seed).split(i);
  GeneratorConfig g;
  g.seed = rng.next();
  g.n = static_cast<std::size_t>(rng.uniform_int(2, cfg.max_n));
  // Enough questions that random tables separate all pairs reasonably often.
  std::size_t min_m = 1;
  while ((std::size_t{1} << min_m) < g.n) ++min_m;
  min_m = std::min(min_m + 1, cfg.max_m);
  g.m = static_cast<std::size_t>(rng.uniform_int(min_m, cfg.max_m));
  g.k = static_cast<std::size_t>(rng.uniform_int(2, cfg.max_k));
  g.cost_low = cfg.cost_low;
  g.cost_high = cfg.cost_high;
  g.concentration = cfg.concentrations[i % cfg.concentrations.size()];
  return g;
}

namespace {

BoundCheck make_check(double cost, double bound) { return {cost, bound, cost <= bound + kBoundSlack}; }

}  // namespace

BoundRow check_instance(const Instance& inst, const ReportConfig& cfg) {
  BoundRow row;
  row.min_prior = inst.prior.min();
  row.optimal_cost = optimal_tree(inst, cfg.oracle).cost;

  const double greedy_cost = tree_cost(greedy_tree(inst), inst, inst.prior).expected_cost;
  row.greedy = make_check(greedy_cost, greedy_bound(row.optimal_cost, row.min_prior));
  row.pass = row.greedy.pass;

  for (double eps : cfg.epsilons) {
    const double cost = tree_cost(epsilon_greedy_tree(inst, EpsilonPolicy(eps)), inst, inst.prior).expected_cost;
    row.epsilon.push_back(make_check(cost, epsilon_greedy_bound(row.optimal_cost, row.min_prior, eps)));
    row.pass = row.pass && row.epsilon.back().pass;
  }

  if (inst.num_hypotheses() > 2) {
    const auto rounded = greedy_rounded_tree(inst);
    row.rounded = make_check(rounded.cost.expected_cost, rounded_bound(row.optimal_cost, inst.num_hypotheses(),
                                                                       inst.min_cost(), inst.max_cost()));
    row.pass = row.pass && row.rounded->pass;
  }
  return row;
}

BoundReport run_bound_report(const ReportConfig& cfg) {
  BoundReport report;
  for (std::size_t i = 0; i < cfg.suite.instances; ++i) {
    const GeneratorConfig g = suite_instance_config(cfg.suite, i);
    BoundRow row = check_instance(gen_random(g), cfg);
    row.index = i;
    row.generator = g;
    report.max_ratio = std::max(report.max_ratio, row.ratio());
    if (!row.pass) ++report.failures;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string report_to_csv(const BoundReport& report, const ReportConfig& cfg) {
  std::ostringstream os;
  os << "instance,seed,n,m,k,concentration,min_prior,c_star,greedy_cost,greedy_bound,ratio,greedy_pass";
  for (double eps : cfg.epsilons) {
    const std::string tag = "eps_" + format_number(eps);
    os << ',' << tag << "_cost," << tag << "_bound," << tag << "_pass";
  }
  os << ",rounded_cost,rounded_bound,rounded_pass\n";

  auto check = [&os](const BoundCheck& c) {
    os << ',' << format_number(c.cost) << ',' << format_number(c.bound) << ',' << (c.pass ? 1 : 0);
  };
  for (const auto& row : report.rows) {
    const auto& g = row.generator;
    os << row.index << ',' << g.seed << ',' << g.n << ',' << g.m << ',' << g.k << ',' << format_number(g.concentration)
       << ',' << format_number(row.min_prior) << ',' << format_number(row.optimal_cost) << ','
       << format_number(row.greedy.cost) << ',' << format_number(row.greedy.bound) << ','
       << format_number(row.ratio()) << ',' << (row.greedy.pass ? 1 : 0);
    for (const auto& c : row.epsilon) check(c);
    if (row.rounded) {
      check(*row.rounded);
    } else {
      os << ",,,";
    }
    os << '\n';
  }
  return os.str();
}

std::string report_summary(const BoundReport& report) {
  std::ostringstream os;
  os << "instances: " << report.rows.size() << "\n"
     << "failures: " << report.failures << "\n"
     << "max C_greedy/C*: " << format_number(report.max_ratio) << "\n";
  return os.str();
}

}  // namespace costquery
