#pragma once

#include <optional>

#include "costquery/model.hpp"

namespace costquery {

struct ShrinkageValue {
  /// Expected absolute mass removed from S by asking the question.
  double delta = 0.0;
  /// delta / cost.
  double ratio = 0.0;
};

// Shrinkage of q on S under an arbitrary (possibly unnormalized) measure:
//   pi(S) - sum_j pi(S^j)^2 / pi(S)
// Exactly zero when q is constant on S. Throws PreconditionError when S is
// empty or carries no mass.
ShrinkageValue shrinkage(const VersionSpace& s, const Distribution& dist, const Question& q);

/// Sum of squared masses.
double collision_probability(const Distribution& dist);

/// Index holding strictly more than half the mass, if any.
std::optional<HypothesisIndex> majority_hypothesis(const Distribution& dist);

// Fraction of the mass of R = S \ {h0} whose answer to q differs from h0's.
// Throws PreconditionError if h0 is not in S, S is a singleton, or R has no mass.
double distinct_fraction(const VersionSpace& s, HypothesisIndex h0, const Distribution& dist,
                         const Question& q);

}  // namespace costquery
