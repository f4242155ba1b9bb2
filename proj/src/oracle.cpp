#include "costquery/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>

#include "costquery/errors.hpp"

namespace costquery {

std::size_t oracle_cap_from_env(std::size_t fallback) {
  const char* raw = std::getenv("COSTQUERY_ORACLE_CAP");
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long value = std::stoul(raw, &used);
    if (used == std::string(raw).size() && value > 0) return value;
  } catch (const std::exception&) {
  }
  throw PreconditionError(std::string("COSTQUERY_ORACLE_CAP must be a positive integer, got '") + raw + "'");
}

namespace {

class ExactSolver {
 public:
  ExactSolver(const Instance& inst, OracleOptions options)
      : inst_(inst), options_(options), min_cost_(inst.min_cost()) {}

  double solve(const VersionSpace& s) {
    if (s.size() == 1) return 0.0;
    if (auto it = memo_.find(s); it != memo_.end()) return it->second.cost;

    const double total = mass(inst_.prior, s);
    double best = std::numeric_limits<double>::infinity();
    std::optional<QuestionIndex> best_question;
    for (std::size_t i = 0; i < inst_.num_questions(); ++i) {
      const auto& q = inst_.questions[i];
      const auto blocks = partition(s, q);
      if (blocks.size() < 2) continue;

      if (options_.prune && best_question) {
        double bound = q.cost;
        for (const auto& [answer, block] : blocks) {
          if (block.size() > 1) bound += mass(inst_.prior, block) / total * min_cost_;
        }
        if (bound >= best - kTolerance) continue;
      }

      double cost = q.cost;
      for (const auto& [answer, block] : blocks) cost += mass(inst_.prior, block) / total * solve(block);
      if (!best_question || cost < best - kTolerance) {
        best = cost;
        best_question = static_cast<QuestionIndex>(i);
      }
    }
    if (!best_question) throw InvalidInstance("not identifiable under reached version space");
    memo_.emplace(s, Entry{best, *best_question});
    return best;
  }

  QueryTree::NodeId emit(const VersionSpace& s, QueryTree& t) const {
    if (s.size() == 1) return t.add_leaf(s.front());
    const QuestionIndex q = memo_.at(s).question;
    std::vector<QueryTree::Edge> children;
    for (const auto& [answer, block] : partition(s, inst_.questions[q])) children.push_back({answer, emit(block, t)});
    return t.add_internal(q, std::move(children));
  }

  std::size_t states() const noexcept { return memo_.size(); }

 private:
  struct Entry {
    double cost;
    QuestionIndex question;
  };

  const Instance& inst_;
  OracleOptions options_;
  double min_cost_;
  std::unordered_map<VersionSpace, Entry> memo_;
};

}  // namespace

OptimalResult optimal_tree(const Instance& inst, OracleOptions options) {
  require_valid(inst);
  if (inst.num_hypotheses() > options.cap_n) {
    throw PreconditionError("instance has " + std::to_string(inst.num_hypotheses()) +
                            " hypotheses, above the oracle cap of " + std::to_string(options.cap_n));
  }
  ExactSolver solver(inst, options);
  const VersionSpace all = VersionSpace::full(inst.num_hypotheses());
  OptimalResult result;
  // OPT(S) is relative to pi_S; at the root pi_S = pi.
  result.cost = solver.solve(all);
  result.tree.set_root(solver.emit(all, result.tree));
  result.subproblems_solved = solver.states();
  return result;
}

double huffman_cost(const Distribution& prior) {
  if (prior.size() < 2) return 0.0;
  // (weight, smallest symbol index in the subtree); lowest index merges first on ties.
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t h = 0; h < prior.size(); ++h) heap.emplace(prior[h], h);
  double total_length = 0.0;
  while (heap.size() > 1) {
    auto [wa, ia] = heap.top();
    heap.pop();
    auto [wb, ib] = heap.top();
    heap.pop();
    total_length += wa + wb;
    heap.emplace(wa + wb, std::min(ia, ib));
  }
  return total_length / prior.total();
}

double entropy(const Distribution& prior) {
  double h = 0.0;
  for (double p : prior.values()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace costquery
