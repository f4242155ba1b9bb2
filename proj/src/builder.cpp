#include "costquery/builder.hpp"

#include <algorithm>
#include <cmath>

#include "costquery/errors.hpp"

namespace costquery {

std::vector<ScoredQuestion> score_questions(const Instance& inst, const VersionSpace& s,
                                            const Distribution& weights) {
  const Distribution conditional = restrict(weights, s);
  std::vector<ScoredQuestion> scores;
  scores.reserve(inst.num_questions());
  for (std::size_t i = 0; i < inst.num_questions(); ++i) {
    scores.push_back({static_cast<QuestionIndex>(i), shrinkage(s, conditional, inst.questions[i])});
  }
  return scores;
}

namespace {

double max_ratio(std::span<const ScoredQuestion> scores) {
  double best = 0.0;
  for (const auto& sq : scores) {
    if (sq.value.delta > 0.0) best = std::max(best, sq.value.ratio);
  }
  return best;
}

std::optional<QuestionIndex> first_at_least(std::span<const ScoredQuestion> scores, double threshold) {
  for (const auto& sq : scores) {
    if (sq.value.delta > 0.0 && sq.value.ratio >= threshold - kTolerance) return sq.question;
  }
  return std::nullopt;
}

}  // namespace

std::optional<QuestionIndex> select_max_ratio(std::span<const ScoredQuestion> scores) {
  return first_at_least(scores, max_ratio(scores));
}

EpsilonPolicy::EpsilonPolicy(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw PreconditionError("epsilon must lie in [0, 1), got " + std::to_string(epsilon));
  }
}

std::optional<QuestionIndex> select_epsilon(std::span<const ScoredQuestion> scores, EpsilonPolicy policy) {
  return first_at_least(scores, (1.0 - policy.epsilon()) * max_ratio(scores));
}

QuestionIndex greedy_choice(const Instance& inst, const VersionSpace& s, const Distribution& weights) {
  const auto scores = score_questions(inst, s, weights);
  auto choice = select_max_ratio(scores);
  if (!choice) throw InvalidInstance("not identifiable under reached version space");
  return *choice;
}

namespace {

QueryTree::NodeId build_node(const Instance& inst, const Distribution& weights, const QuestionSelector& select,
                             const VersionSpace& s, QueryTree& t) {
  if (s.size() == 1) return t.add_leaf(s.front());
  const auto scores = score_questions(inst, s, weights);
  const auto choice = select(scores);
  if (!choice) throw InvalidInstance("not identifiable under reached version space");
  const auto& q = inst.questions.at(*choice);

  auto blocks = partition(s, q);
  if (blocks.size() < 2) throw InvalidInstance("selector chose question '" + q.id + "' which does not split the node");
  std::vector<QueryTree::Edge> children;
  children.reserve(blocks.size());
  for (const auto& [answer, block] : blocks) {
    children.push_back({answer, build_node(inst, weights, select, block, t)});
  }
  return t.add_internal(*choice, std::move(children));
}

}  // namespace

QueryTree build_tree(const Instance& inst, const Distribution& weights, const QuestionSelector& select) {
  require_valid(inst);
  if (weights.size() != inst.num_hypotheses()) throw PreconditionError("weights do not match the hypothesis count");
  QueryTree t;
  t.set_root(build_node(inst, weights, select, VersionSpace::full(inst.num_hypotheses()), t));
  return t;
}

QueryTree greedy_tree(const Instance& inst) { return greedy_tree(inst, inst.prior); }

QueryTree greedy_tree(const Instance& inst, const Distribution& weights) {
  return build_tree(inst, weights, [](std::span<const ScoredQuestion> s) { return select_max_ratio(s); });
}

QueryTree epsilon_greedy_tree(const Instance& inst, EpsilonPolicy policy) {
  return build_tree(inst, inst.prior,
                    [policy](std::span<const ScoredQuestion> s) { return select_epsilon(s, policy); });
}

RoundedPrior round_distribution(const Instance& inst) {
  require_valid(inst);
  const std::size_t n = inst.num_hypotheses();
  if (n <= 2) throw PreconditionError("rounding requires n > 2 hypotheses, got " + std::to_string(n));

  const double nd = static_cast<double>(n);
  RoundedPrior out;
  out.threshold = inst.min_cost() / (inst.max_cost() * nd * nd * nd);

  std::vector<double> mass(inst.prior.values().begin(), inst.prior.values().end());
  const auto heaviest = std::max_element(mass.begin(), mass.end());  // first maximum
  out.donor = static_cast<HypothesisIndex>(heaviest - mass.begin());
  if (!(mass[out.donor] >= 1.0 / nd - kTolerance)) {
    throw Error("rounding: no hypothesis holds at least 1/n of the mass");
  }

  for (std::size_t h = 0; h < n; ++h) {
    if (inst.prior[h] < out.threshold) {
      mass[h] += out.threshold;
      out.bumped.push_back(static_cast<HypothesisIndex>(h));
    }
  }
  mass[out.donor] -= out.threshold * static_cast<double>(out.bumped.size());
  out.mass = Distribution(std::move(mass));
  return out;
}

RoundedBuild greedy_rounded_tree(const Instance& inst) {
  RoundedBuild out{{}, round_distribution(inst), {}};
  out.tree = greedy_tree(inst, out.rounded.mass);
  out.cost = tree_cost(out.tree, inst, inst.prior);
  return out;
}

}  // namespace costquery
