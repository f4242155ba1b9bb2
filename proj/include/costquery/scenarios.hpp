#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "costquery/model.hpp"

namespace costquery {

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::size_t n = 6;
  std::size_t m = 6;
  /// Each question draws its answer count uniformly from [2, k].
  std::size_t k = 2;
  double cost_low = 1.0;
  double cost_high = 1.0;
  /// Symmetric Dirichlet parameter; large values give near-uniform priors.
  double concentration = 1.0;

  /// Throws PreconditionError on n < 2, m < 1, k < 2, bad cost range, concentration <= 0.
  void validate() const;
};

/// Smallest prior mass emitted by gen_random.
inline constexpr double kPriorFloor = 1e-6;

// Random identifiable instance. The prior is drawn once; the answer table and
// costs are redrawn until every pair of hypotheses is separated (at most 1000
// attempts, then PreconditionError). Deterministic in cfg.
Instance gen_random(const GeneratorConfig& cfg);

/// One question per data point; labelings[h][x] is hypothesis h's label of point x.
Instance gen_label_cost(const std::vector<std::vector<Answer>>& labelings, std::span<const double> costs,
                        std::optional<Prior> prior = std::nullopt);

// Per point: one multiclass question at full_cost, plus one "is it class c?"
// question per class in the global label alphabet at partial_cost.
Instance gen_partial_label(const std::vector<std::vector<Answer>>& labels, double full_cost, double partial_cost,
                           std::optional<Prior> prior = std::nullopt);

enum class BatchMode { kSum, kMax };

inline constexpr std::size_t kDefaultBatchCap = 4096;

// Every non-empty subset of base questions with at most max_batch members
// becomes a question. Its answer packs the member answers in mixed radix
// (member order = question index order, radix = member's answer count); its
// cost is overhead + sum (kSum) or overhead + max (kMax) of member costs.
Instance gen_batch(const Instance& base, double overhead, std::size_t max_batch, BatchMode mode,
                   std::size_t cap = kDefaultBatchCap);

inline constexpr std::size_t kDefaultCompressionCap = 10;

// Every partition of the hypotheses into 2..max_blocks blocks, each costing
// log2(number of blocks). With max_blocks = 2 this is the 2^(n-1) - 1
// bipartitions at unit cost.
Instance gen_compression(const Prior& prior, std::size_t cap_n = kDefaultCompressionCap,
                         std::size_t max_blocks = 2);

}  // namespace costquery
