#include "costquery/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "costquery/errors.hpp"
#include "costquery/random.hpp"

namespace costquery {

void GeneratorConfig::validate() const {
  if (n < 2) throw PreconditionError("generator needs n > 1");
  if (m < 1) throw PreconditionError("generator needs m >= 1");
  if (k < 2) throw PreconditionError("generator needs k >= 2");
  if (!(cost_low > 0.0 && cost_low <= cost_high)) throw PreconditionError("generator needs 0 < cost_low <= cost_high");
  if (!(concentration > 0.0)) throw PreconditionError("generator needs concentration > 0");
}

namespace {

std::vector<std::string> numbered(const char* prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Raises entries below the floor to exactly the floor and rescales the rest
// so the total stays 1.
std::vector<double> floor_prior(std::vector<double> mass, double floor) {
  std::vector<bool> pinned(mass.size(), false);
  while (true) {
    double free_mass = 0.0;
    std::size_t pinned_count = 0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
      if (pinned[i]) {
        ++pinned_count;
      } else {
        free_mass += mass[i];
      }
    }
    const double target = 1.0 - floor * static_cast<double>(pinned_count);
    bool changed = false;
    for (std::size_t i = 0; i < mass.size(); ++i) {
      if (pinned[i]) {
        mass[i] = floor;
      } else {
        mass[i] *= target / free_mass;
        if (mass[i] < floor) {
          pinned[i] = true;
          changed = true;
        }
      }
    }
    if (!changed) return mass;
  }
}

Instance finish(Instance inst) {
  require_valid(inst);
  return inst;
}

}  // namespace

Instance gen_random(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  Rng prior_rng = rng.split(0);
  Rng table_rng = rng.split(1);

  Instance inst;
  inst.hypotheses = numbered("h", cfg.n);
  inst.prior = Distribution(floor_prior(prior_rng.dirichlet(cfg.n, cfg.concentration), kPriorFloor));

  for (int attempt = 0; attempt < 1000; ++attempt) {
    inst.questions.clear();
    for (std::size_t i = 0; i < cfg.m; ++i) {
      Question q;
      q.id = "q" + std::to_string(i);
      q.cost = cfg.cost_low == cfg.cost_high ? cfg.cost_low : table_rng.uniform(cfg.cost_low, cfg.cost_high);
      const auto arity = table_rng.uniform_int(2, cfg.k);
      for (std::size_t h = 0; h < cfg.n; ++h) q.answers.push_back(static_cast<Answer>(table_rng.uniform_int(0, arity - 1)));
      inst.questions.push_back(std::move(q));
    }
    if (validate_instance(inst).ok()) return inst;
  }
  throw PreconditionError("could not draw an identifiable instance in 1000 attempts");
}

Instance gen_label_cost(const std::vector<std::vector<Answer>>& labelings, std::span<const double> costs,
                        std::optional<Prior> prior) {
  const std::size_t n = labelings.size();
  const std::size_t d = costs.size();
  for (const auto& row : labelings) {
    if (row.size() != d) throw PreconditionError("every labeling must cover all " + std::to_string(d) + " points");
  }
  std::set<std::vector<Answer>> distinct(labelings.begin(), labelings.end());
  if (distinct.size() != n) throw InvalidInstance("not identifiable: duplicate labelings");

  Instance inst;
  inst.hypotheses = numbered("h", n);
  inst.prior = prior ? *prior : Distribution::uniform(n);
  for (std::size_t x = 0; x < d; ++x) {
    Question q{"x" + std::to_string(x), costs[x], {}};
    for (const auto& row : labelings) q.answers.push_back(row[x]);
    inst.questions.push_back(std::move(q));
  }
  return finish(std::move(inst));
}

Instance gen_partial_label(const std::vector<std::vector<Answer>>& labels, double full_cost, double partial_cost,
                           std::optional<Prior> prior) {
  if (labels.empty()) throw PreconditionError("no hypotheses");
  const std::size_t d = labels.front().size();
  std::set<Answer> classes;
  for (const auto& row : labels) {
    if (row.size() != d) throw PreconditionError("every label vector must cover all points");
    classes.insert(row.begin(), row.end());
  }
  if (classes.size() < 2) throw PreconditionError("partial-label scenario needs at least two classes");
  if (partial_cost > full_cost) throw PreconditionError("partial_cost must not exceed full_cost");

  Instance inst;
  inst.hypotheses = numbered("h", labels.size());
  inst.prior = prior ? *prior : Distribution::uniform(labels.size());
  for (std::size_t x = 0; x < d; ++x) {
    Question full{"x" + std::to_string(x), full_cost, {}};
    for (const auto& row : labels) full.answers.push_back(row[x]);
    inst.questions.push_back(std::move(full));
    for (Answer c : classes) {
      Question one_vs_rest{"x" + std::to_string(x) + "=" + std::to_string(c), partial_cost, {}};
      for (const auto& row : labels) one_vs_rest.answers.push_back(row[x] == c ? 1 : 0);
      inst.questions.push_back(std::move(one_vs_rest));
    }
  }
  return finish(std::move(inst));
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls fn for each k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Instance gen_batch(const Instance& base, double overhead, std::size_t max_batch, BatchMode mode, std::size_t cap) {
  require_valid(base);
  if (max_batch < 1) throw PreconditionError("max_batch must be at least 1");
  if (!(overhead >= 0.0)) throw PreconditionError("overhead must be non-negative");
  const std::size_t m = base.num_questions();
  max_batch = std::min(max_batch, m);

  std::uint64_t total = 0;
  for (std::size_t size = 1; size <= max_batch; ++size) total += binomial(m, size);
  if (total > cap) {
    throw PreconditionError("batch instance would have " + std::to_string(total) + " questions, above the cap of " +
                            std::to_string(cap));
  }

  std::vector<std::uint64_t> radix(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = base.questions[i].answers;
    radix[i] = static_cast<std::uint64_t>(*std::max_element(a.begin(), a.end())) + 1;
  }

  Instance out;
  out.hypotheses = base.hypotheses;
  out.prior = base.prior;
  for (std::size_t size = 1; size <= max_batch; ++size) {
    for_each_combination(m, size, [&](std::span<const std::size_t> members) {
      Question q;
      double sum = 0.0;
      double max = 0.0;
      std::uint64_t capacity = 1;
      for (auto i : members) {
        q.id += (q.id.empty() ? "" : "+") + base.questions[i].id;
        sum += base.questions[i].cost;
        max = std::max(max, base.questions[i].cost);
        if (capacity > (std::uint64_t{1} << 32) / radix[i]) {
          throw PreconditionError("packed batch answers for '" + q.id + "' overflow 32 bits");
        }
        capacity *= radix[i];
      }
      q.cost = overhead + (mode == BatchMode::kSum ? sum : max);
      for (std::size_t h = 0; h < base.num_hypotheses(); ++h) {
        std::uint64_t code = 0;
        std::uint64_t place = 1;
        for (auto i : members) {
          code += base.questions[i].answers[h] * place;
          place *= radix[i];
        }
        q.answers.push_back(static_cast<Answer>(code));
      }
      out.questions.push_back(std::move(q));
    });
  }
  return finish(std::move(out));
}

Instance gen_compression(const Prior& prior, std::size_t cap_n, std::size_t max_blocks) {
  const std::size_t n = prior.size();
  if (n < 2) throw PreconditionError("compression scenario needs at least 2 hypotheses");
  if (n > cap_n) {
    throw PreconditionError("compression scenario has " + std::to_string(n) + " hypotheses, above the cap of " +
                            std::to_string(cap_n));
  }
  if (max_blocks < 2) throw PreconditionError("max_blocks must be at least 2");

  Instance inst;
  inst.hypotheses = numbered("h", n);
  inst.prior = prior;

  // Restricted growth strings enumerate each set partition exactly once.
  std::vector<Answer> rgs(n, 0);
  std::vector<Answer> prefix_max(n, 0);
  std::size_t next_id = 0;
  while (true) {
    const std::size_t blocks = prefix_max[n - 1] + 1;
    if (blocks >= 2 && blocks <= max_blocks) {
      inst.questions.push_back({"p" + std::to_string(next_id++), std::log2(static_cast<double>(blocks)), rgs});
    }
    std::size_t i = n - 1;
    while (i > 0 && (rgs[i] > prefix_max[i - 1] || rgs[i] + 1 >= max_blocks)) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
  return finish(std::move(inst));
}

}  // namespace costquery
