#pragma once

// Shared fixtures and independent reference computations for the test suites.
// Nothing here calls into the code paths it is used to check: the brute-force
// tree enumerator, the double-sum shrinkage and the path-cost walker are
// written from the definitions.

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include "costquery/model.hpp"
#include "costquery/random.hpp"
#include "costquery/scenarios.hpp"
#include "costquery/tree.hpp"

namespace costquery::testing {

inline Question make_question(std::string id, double cost, std::vector<Answer> answers) {
  return Question{std::move(id), cost, std::move(answers)};
}

inline Instance make_instance(std::vector<double> prior, std::vector<Question> questions) {
  Instance inst;
  for (std::size_t h = 0; h < prior.size(); ++h) inst.hypotheses.push_back("h" + std::to_string(h));
  inst.prior = Distribution(std::move(prior));
  inst.questions = std::move(questions);
  return inst;
}

/// Two hypotheses, one separating question.
inline Instance two_hypotheses(double cost = 5.0) {
  return make_instance({0.5, 0.5}, {make_question("q", cost, {0, 1})});
}

// Four uniform hypotheses; q1 (cost 1) splits 2|2, q2 (cost 0.4) splits 1|3.
// q3 (cost 1, ratio 0.375) only exists to separate h2 from h3.
inline Instance four_uniform_q1_q2() {
  return make_instance({0.25, 0.25, 0.25, 0.25},
                       {make_question("q1", 1.0, {0, 0, 1, 1}), make_question("q2", 0.4, {0, 1, 1, 1}),
                        make_question("q3", 1.0, {0, 0, 0, 1})});
}

/// Four uniform hypotheses, two balanced unit-cost binary questions.
inline Instance four_uniform_binary() {
  return make_instance({0.25, 0.25, 0.25, 0.25},
                       {make_question("a", 1.0, {0, 0, 1, 1}), make_question("b", 1.0, {0, 1, 0, 1})});
}

/// Three uniform hypotheses; question i isolates hypothesis i at unit cost.
inline Instance three_isolating() {
  return make_instance({1.0 / 3, 1.0 / 3, 1.0 / 3}, {make_question("i0", 1.0, {1, 0, 0}),
                                                     make_question("i1", 1.0, {0, 1, 0}),
                                                     make_question("i2", 1.0, {0, 0, 1})});
}

// Majority hypothesis h0 (collision probability 0.555) where the
// largest-shrinkage question is not the question separating the most mass
// from h0. Found by grid search over 4-hypothesis, 3-answer instances and
// pinned:
//   split3   (0,2,0,1): shrinkage 0.4306, delta 27/28
//   isolate0 (0,1,1,1): shrinkage 0.4032, delta 1
inline Instance majority_counterexample() {
  return make_instance({0.72, 0.14, 0.01, 0.13},
                       {make_question("split3", 1.0, {0, 2, 0, 1}), make_question("isolate0", 1.0, {0, 1, 1, 1})});
}

/// Shrinkage from the pairwise definition: sum_j pi(S^j)/pi(S) * sum_{k != j} pi(S^k).
inline double shrinkage_double_sum(const VersionSpace& s, const Distribution& dist, const Question& q) {
  std::map<Answer, double> blocks;
  double total = 0.0;
  for (auto h : s) {
    blocks[q.answers[h]] += dist[h];
    total += dist[h];
  }
  double out = 0.0;
  for (const auto& [j, mj] : blocks) {
    double others = 0.0;
    for (const auto& [k, mk] : blocks) {
      if (k != j) others += mk;
    }
    out += mj / total * others;
  }
  return out;
}

/// Path cost of h by walking the tree with h's own answers.
inline double walk_cost(const QueryTree& t, const Instance& inst, HypothesisIndex h) {
  double cost = 0.0;
  auto node = t.root();
  while (!t.node(node).is_leaf()) {
    const auto& q = inst.questions[t.node(node).question];
    cost += q.cost;
    node = *t.child(node, q.answers[h]);
  }
  return cost;
}

inline double walk_expected_cost(const QueryTree& t, const Instance& inst, const Distribution& dist) {
  double total = 0.0;
  for (std::size_t h = 0; h < dist.size(); ++h) {
    if (dist[h] > 0.0) total += dist[h] * walk_cost(t, inst, static_cast<HypothesisIndex>(h));
  }
  return total;
}

// Every irreducible query tree on members, as its vector of per-hypothesis
// path costs (indexed like members). No memoization: each subtree choice is
// enumerated independently.
inline std::vector<std::vector<double>> enumerate_tree_costs(const Instance& inst,
                                                             const std::vector<HypothesisIndex>& members) {
  if (members.size() == 1) return {{0.0}};
  std::vector<std::vector<double>> out;
  for (const auto& q : inst.questions) {
    std::map<Answer, std::vector<std::size_t>> positions;
    for (std::size_t i = 0; i < members.size(); ++i) positions[q.answers[members[i]]].push_back(i);
    if (positions.size() < 2) continue;

    std::vector<std::vector<std::size_t>> block_positions;
    std::vector<std::vector<std::vector<double>>> block_trees;
    for (const auto& [answer, pos] : positions) {
      std::vector<HypothesisIndex> sub;
      for (auto i : pos) sub.push_back(members[i]);
      block_positions.push_back(pos);
      block_trees.push_back(enumerate_tree_costs(inst, sub));
    }

    // Cartesian product over the block subtrees.
    std::vector<std::size_t> pick(block_trees.size(), 0);
    while (true) {
      std::vector<double> costs(members.size(), q.cost);
      for (std::size_t b = 0; b < block_trees.size(); ++b) {
        const auto& sub = block_trees[b][pick[b]];
        for (std::size_t i = 0; i < sub.size(); ++i) costs[block_positions[b][i]] += sub[i];
      }
      out.push_back(std::move(costs));
      std::size_t b = 0;
      while (b < pick.size() && ++pick[b] == block_trees[b].size()) pick[b++] = 0;
      if (b == pick.size()) break;
    }
  }
  return out;
}

/// Minimum expected cost over every enumerated tree.
inline double brute_force_optimal_cost(const Instance& inst) {
  std::vector<HypothesisIndex> all;
  for (std::size_t h = 0; h < inst.num_hypotheses(); ++h) all.push_back(static_cast<HypothesisIndex>(h));
  double best = std::numeric_limits<double>::infinity();
  for (const auto& costs : enumerate_tree_costs(inst, all)) {
    double expected = 0.0;
    for (std::size_t i = 0; i < costs.size(); ++i) expected += inst.prior[all[i]] * costs[i];
    best = std::min(best, expected);
  }
  return best;
}

/// Uniformly random non-empty subset of s.
inline VersionSpace random_nonempty_subset(Rng& rng, const VersionSpace& s) {
  while (true) {
    std::vector<HypothesisIndex> out;
    for (auto h : s) {
      if (rng.next() & 1) out.push_back(h);
    }
    if (!out.empty()) return VersionSpace(std::move(out));
  }
}

/// Random partition of s into non-empty blocks.
inline std::vector<VersionSpace> random_cover(Rng& rng, const VersionSpace& s) {
  const auto blocks = static_cast<std::size_t>(rng.uniform_int(1, s.size()));
  std::vector<std::vector<HypothesisIndex>> parts(blocks);
  std::size_t i = 0;
  for (auto h : s) {
    // First `blocks` members seed distinct blocks so none is empty.
    const auto b = i < blocks ? i : static_cast<std::size_t>(rng.uniform_int(0, blocks - 1));
    parts[b].push_back(h);
    ++i;
  }
  std::vector<VersionSpace> out;
  for (auto& p : parts) out.emplace_back(std::move(p));
  return out;
}

}  // namespace costquery::testing
