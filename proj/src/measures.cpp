#include "costquery/measures.hpp"

#include <algorithm>

#include "costquery/errors.hpp"

namespace costquery {

ShrinkageValue shrinkage(const VersionSpace& s, const Distribution& dist, const Question& q) {
  const double total = mass(dist, s);
  if (!(total > 0.0)) throw PreconditionError("shrinkage undefined on a version space with zero mass");

  std::map<Answer, double> block_mass;
  for (auto h : s) block_mass[q.answers.at(h)] += dist[h];
  if (block_mass.size() < 2) return {0.0, 0.0};

  double squares = 0.0;
  for (const auto& [answer, m] : block_mass) squares += m * m;
  const double delta = std::max(0.0, total - squares / total);
  return {delta, delta / q.cost};
}

double collision_probability(const Distribution& dist) {
  double cp = 0.0;
  for (double p : dist.values()) cp += p * p;
  return cp;
}

std::optional<HypothesisIndex> majority_hypothesis(const Distribution& dist) {
  for (std::size_t h = 0; h < dist.size(); ++h) {
    if (dist[h] > 0.5) return static_cast<HypothesisIndex>(h);
  }
  return std::nullopt;
}

double distinct_fraction(const VersionSpace& s, HypothesisIndex h0, const Distribution& dist,
                         const Question& q) {
  if (!s.contains(h0)) throw PreconditionError("h0 is not in the version space");
  if (s.size() < 2) throw PreconditionError("distinct fraction needs at least two hypotheses");

  const Answer reference = q.answers.at(h0);
  double rest = 0.0;
  double disagreeing = 0.0;
  for (auto h : s) {
    if (h == h0) continue;
    rest += dist[h];
    if (q.answers.at(h) != reference) disagreeing += dist[h];
  }
  if (!(rest > 0.0)) throw PreconditionError("residual set has zero mass");
  return disagreeing / rest;
}

}  // namespace costquery
