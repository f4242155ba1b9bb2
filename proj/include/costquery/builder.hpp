#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "costquery/measures.hpp"
#include "costquery/tree.hpp"

namespace costquery {

/// Shrinkage and shrinkage-cost ratio of one question at a node.
struct ScoredQuestion {
  QuestionIndex question;
  ShrinkageValue value;
};

/// Scores every question on S under the conditional distribution pi_S.
std::vector<ScoredQuestion> score_questions(const Instance& inst, const VersionSpace& s, const Distribution& weights);

// Picks a question from the scored bank, or nullopt when nothing splits the
// node. Scores arrive in question-index order.
using QuestionSelector = std::function<std::optional<QuestionIndex>(std::span<const ScoredQuestion>)>;

/// Highest ratio; ratios within kTolerance of the maximum tie, lowest index wins.
std::optional<QuestionIndex> select_max_ratio(std::span<const ScoredQuestion> scores);

class EpsilonPolicy {
 public:
  /// Throws PreconditionError unless 0 <= epsilon < 1.
  explicit EpsilonPolicy(double epsilon);
  double epsilon() const noexcept { return epsilon_; }

 private:
  double epsilon_;
};

/// Lowest-index splitting question whose ratio is >= (1 - eps) * max (within kTolerance).
std::optional<QuestionIndex> select_epsilon(std::span<const ScoredQuestion> scores, EpsilonPolicy policy);

/// The greedy choice at version space S under weights (restricted to S internally).
QuestionIndex greedy_choice(const Instance& inst, const VersionSpace& s, const Distribution& weights);

// Materializes the full tree by running the selection loop on every answer
// branch. Throws InvalidInstance if some node with |S| > 1 has no splitting
// question.
QueryTree build_tree(const Instance& inst, const Distribution& weights, const QuestionSelector& select);

/// Cost-sensitive greedy tree: argmax shrinkage-cost ratio at every node.
QueryTree greedy_tree(const Instance& inst);
/// Greedy tree built against an alternative weighting of the hypotheses.
QueryTree greedy_tree(const Instance& inst, const Distribution& weights);

QueryTree epsilon_greedy_tree(const Instance& inst, EpsilonPolicy policy);

struct RoundedPrior {
  Distribution mass;
  HypothesisIndex donor = 0;
  std::vector<HypothesisIndex> bumped;
  /// c_min / (c_max * n^3).
  double threshold = 0.0;
};

// Adds `threshold` to every hypothesis below it and debits the total from
// the heaviest hypothesis (ties to the lowest index). Requires n > 2.
RoundedPrior round_distribution(const Instance& inst);

struct RoundedBuild {
  QueryTree tree;
  RoundedPrior rounded;
  /// Evaluated under the instance's original prior.
  CostReport cost;
};

/// Greedy tree for the rounded prior, costed under the original prior.
RoundedBuild greedy_rounded_tree(const Instance& inst);

}  // namespace costquery
