#pragma once

#include <cstddef>

#include "costquery/tree.hpp"

namespace costquery {

inline constexpr std::size_t kDefaultOracleCap = 14;

/// Oracle size cap, overridable through COSTQUERY_ORACLE_CAP.
std::size_t oracle_cap_from_env(std::size_t fallback = kDefaultOracleCap);

struct OracleOptions {
  std::size_t cap_n = kDefaultOracleCap;
  /// Skip questions whose admissible lower bound cannot beat the incumbent.
  /// Does not change the returned tree.
  bool prune = false;
};

struct OptimalResult {
  QueryTree tree;
  double cost = 0.0;
  std::size_t subproblems_solved = 0;
};

// Minimum expected-cost query tree by memoized search over version spaces:
//   OPT(S) = 0 if |S| = 1
//   OPT(S) = min_q c_q + sum_j pi(S^j)/pi(S) * OPT(S^j)   over splitting q
// Ties (within kTolerance) go to the lowest question index.
OptimalResult optimal_tree(const Instance& inst, OracleOptions options = {});

/// Expected codeword length of an optimal binary prefix code for the weights.
double huffman_cost(const Distribution& prior);

/// Shannon entropy in bits.
double entropy(const Distribution& prior);

}  // namespace costquery
