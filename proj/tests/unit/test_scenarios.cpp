#include "doctest.h"

#include <cmath>
#include <set>

#include "costquery/builder.hpp"
#include "costquery/errors.hpp"
#include "costquery/instance_io.hpp"
#include "costquery/oracle.hpp"
#include "costquery/scenarios.hpp"
#include "test_support.hpp"

using namespace costquery;
using namespace costquery::testing;

TEST_CASE("gen_random") {
  SUBCASE("deterministic for a seed") {
    GeneratorConfig cfg;
    cfg.seed = 1;
    cfg.n = 4;
    cfg.m = 4;
    cfg.k = 2;
    const Instance a = gen_random(cfg);
    CHECK(validate_instance(a).ok());
    CHECK(dump_instance(a) == dump_instance(gen_random(cfg)));
    cfg.seed = 2;
    CHECK(dump_instance(a) != dump_instance(gen_random(cfg)));
  }
  SUBCASE("a single question must separate two hypotheses") {
    GeneratorConfig cfg;
    cfg.n = 2;
    cfg.m = 1;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      cfg.seed = seed;
      const Instance inst = gen_random(cfg);
      CHECK(inst.questions[0].answers[0] != inst.questions[0].answers[1]);
    }
  }
  SUBCASE("concentrated and sharp priors respect the floor") {
    GeneratorConfig cfg;
    cfg.n = 8;
    cfg.m = 8;
    cfg.concentration = 100.0;
    const Instance flat = gen_random(cfg);
    CHECK(flat.prior.min() >= kPriorFloor);
    CHECK(flat.prior.min() > 0.05);
    cfg.concentration = 0.05;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      cfg.seed = seed;
      const Instance sharp = gen_random(cfg);
      CHECK(sharp.prior.min() >= kPriorFloor);
      CHECK(std::abs(sharp.prior.total() - 1.0) < kTolerance);
    }
  }
  SUBCASE("costs and arities stay in range") {
    GeneratorConfig cfg;
    cfg.n = 9;
    cfg.m = 10;
    cfg.k = 4;
    cfg.cost_low = 0.1;
    cfg.cost_high = 10.0;
    const Instance inst = gen_random(cfg);
    for (const auto& q : inst.questions) {
      CHECK(q.cost >= 0.1);
      CHECK(q.cost <= 10.0);
      for (auto a : q.answers) CHECK(a < 4);
    }
  }
  SUBCASE("config validation") {
    GeneratorConfig cfg;
    cfg.k = 1;
    CHECK_THROWS_AS(gen_random(cfg), PreconditionError);
    cfg = {};
    cfg.cost_low = 2.0;
    CHECK_THROWS_AS(gen_random(cfg), PreconditionError);
    cfg = {};
    cfg.concentration = 0.0;
    CHECK_THROWS_AS(gen_random(cfg), PreconditionError);
    // Eight hypotheses cannot be told apart by two binary questions.
    cfg = {};
    cfg.n = 8;
    cfg.m = 2;
    CHECK_THROWS_AS(gen_random(cfg), PreconditionError);
  }
}

TEST_CASE("gen_label_cost") {
  SUBCASE("every pair needs both points") {
    const std::vector<double> costs{1.0, 2.0};
    const Instance inst = gen_label_cost({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, costs);
    CHECK(inst.num_questions() == 2);
    CHECK(tree_cost(greedy_tree(inst), inst, inst.prior).expected_cost == doctest::Approx(3.0));
  }
  SUBCASE("costs pass through") {
    const std::vector<double> lengths{120.0, 45.0, 300.0};
    const Instance inst = gen_label_cost({{0, 0, 0}, {1, 0, 0}, {1, 1, 1}}, lengths);
    for (std::size_t x = 0; x < 3; ++x) CHECK(inst.questions[x].cost == lengths[x]);
  }
  SUBCASE("one multiclass point") {
    const std::vector<double> costs{7.0};
    const Instance inst = gen_label_cost({{0}, {1}, {2}}, costs);
    const auto t = greedy_tree(inst);
    CHECK(t.internal_nodes().size() == 1);
    CHECK(tree_cost(t, inst, inst.prior).expected_cost == doctest::Approx(7.0));
  }
  SUBCASE("duplicate labelings") {
    const std::vector<double> costs{1.0, 1.0};
    CHECK_THROWS_AS(gen_label_cost({{0, 1}, {0, 1}}, costs), InvalidInstance);
  }
}

TEST_CASE("gen_partial_label") {
  const Instance inst = gen_partial_label({{0}, {1}, {2}}, 2.0, 1.0);
  REQUIRE(inst.num_questions() == 4);
  CHECK(inst.questions[0].cost == 2.0);
  CHECK(inst.questions[0].answers == std::vector<Answer>{0, 1, 2});
  std::size_t binary = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(inst.questions[i].cost == 1.0);
    CHECK(std::set<Answer>(inst.questions[i].answers.begin(), inst.questions[i].answers.end()).size() == 2);
    ++binary;
  }
  CHECK(binary == 3);
  CHECK(validate_tree(greedy_tree(inst), inst).ok());
  CHECK_THROWS_AS(gen_partial_label({{0}, {0}}, 2.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(gen_partial_label({{0}, {1}}, 1.0, 2.0), PreconditionError);
  CHECK_THROWS_AS(gen_partial_label({{0, 1}, {0, 1}, {1, 0}}, 2.0, 1.0), InvalidInstance);
}

TEST_CASE("gen_batch") {
  const Instance base = four_uniform_binary();
  SUBCASE("sum mode with overhead") {
    const Instance batch = gen_batch(base, 0.5, 2, BatchMode::kSum);
    REQUIRE(batch.num_questions() == 3);
    CHECK(batch.questions[0].cost == 1.5);
    CHECK(batch.questions[1].cost == 1.5);
    CHECK(batch.questions[2].id == "a+b");
    CHECK(batch.questions[2].cost == 2.5);
    // Mixed radix: a + 2 b.
    CHECK(batch.questions[2].answers == std::vector<Answer>{0, 2, 1, 3});
  }
  SUBCASE("max mode") {
    auto uneven = base;
    uneven.questions[1].cost = 3.0;
    const Instance batch = gen_batch(uneven, 0.0, 2, BatchMode::kMax);
    CHECK(batch.questions[2].cost == 3.0);
  }
  SUBCASE("singleton batches reproduce the base") {
    const Instance batch = gen_batch(base, 0.0, 1, BatchMode::kSum);
    CHECK(dump_instance(batch) == dump_instance(base));
  }
  SUBCASE("question cap") {
    CHECK_THROWS_AS(gen_batch(base, 0.0, 2, BatchMode::kSum, 2), PreconditionError);
  }
}

TEST_CASE("property: free batching leaves the optimum unchanged") {
  Rng rng(600);
  for (int trial = 0; trial < 40; ++trial) {
    GeneratorConfig cfg;
    cfg.seed = rng.next();
    cfg.n = rng.uniform_int(2, 7);
    cfg.m = rng.uniform_int(3, 5);
    cfg.k = 3;
    cfg.cost_low = 0.1;
    cfg.cost_high = 10.0;
    const Instance base = gen_random(cfg);
    const Instance batch = gen_batch(base, 0.0, cfg.m, BatchMode::kSum);
    CHECK(validate_instance(batch).ok());
    CHECK(std::abs(optimal_tree(batch).cost - optimal_tree(base).cost) < kTolerance);
  }
}

TEST_CASE("gen_compression") {
  SUBCASE("three hypotheses") {
    const Instance inst = gen_compression(Distribution{0.5, 0.25, 0.25});
    CHECK(inst.num_questions() == 3);
    for (const auto& q : inst.questions) CHECK(q.cost == 1.0);
    CHECK(optimal_tree(inst).cost == doctest::Approx(huffman_cost(inst.prior)));
  }
  SUBCASE("bipartition count") {
    for (std::size_t n = 2; n <= 8; ++n) {
      CHECK(gen_compression(Distribution::uniform(n)).num_questions() == (std::size_t{1} << (n - 1)) - 1);
    }
  }
  SUBCASE("k-way variant charges log2 of the block count") {
    const Instance inst = gen_compression(Distribution::uniform(3), kDefaultCompressionCap, 3);
    REQUIRE(inst.num_questions() == 4);
    std::size_t three_way = 0;
    for (const auto& q : inst.questions) {
      if (std::set<Answer>(q.answers.begin(), q.answers.end()).size() == 3) {
        ++three_way;
        CHECK(q.cost == doctest::Approx(std::log2(3.0)));
      }
    }
    CHECK(three_way == 1);
  }
  SUBCASE("size cap") {
    CHECK_THROWS_AS(gen_compression(Distribution::uniform(11)), PreconditionError);
  }
}

TEST_CASE("property: compression optimum sits in the Huffman sandwich") {
  Rng rng(601);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = rng.uniform_int(2, 7);
    const Distribution prior(rng.dirichlet(n, trial % 2 ? 0.3 : 2.0));
    const Instance inst = gen_compression(prior);
    const double c_star = optimal_tree(inst).cost;
    const double h = entropy(inst.prior);
    CHECK(std::abs(c_star - huffman_cost(inst.prior)) < kTolerance);
    CHECK(h <= c_star + kTolerance);
    CHECK(c_star <= h + 1.0 + kTolerance);
  }
}
