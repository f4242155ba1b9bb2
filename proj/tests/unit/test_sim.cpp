#include "doctest.h"

#include <sstream>

#include "json.hpp"

#include "costquery/builder.hpp"
#include "costquery/errors.hpp"
#include "costquery/sim.hpp"
#include "test_support.hpp"

using namespace costquery;
using namespace costquery::testing;

TEST_CASE("simulate") {
  SUBCASE("single leaf") {
    auto inst = two_hypotheses();
    const auto est = simulate(QueryTree::single_leaf(0), inst, Distribution{1.0, 0.0}, 1000, 3);
    CHECK(est.mean == 0.0);
    CHECK(est.standard_error == 0.0);
    CHECK(est.trials == 1000);
  }
  SUBCASE("constant path cost has no variance") {
    const auto inst = four_uniform_binary();
    const auto est = simulate(greedy_tree(inst), inst, inst.prior, 5000, 11);
    CHECK(est.mean == 2.0);
    CHECK(est.standard_error == 0.0);
  }
  SUBCASE("estimate lands within four standard errors") {
    const auto inst = four_uniform_q1_q2();
    const auto t = greedy_tree(inst);
    const auto est = simulate(t, inst, inst.prior, 100000, 7);
    const double exact = tree_cost(t, inst, inst.prior).expected_cost;
    CHECK(est.standard_error > 0.0);
    CHECK(std::abs(est.mean - exact) <= 4.0 * est.standard_error);
  }
  SUBCASE("same seed, same answer") {
    const auto inst = four_uniform_q1_q2();
    const auto t = greedy_tree(inst);
    CHECK(simulate(t, inst, inst.prior, 2000, 5).mean == simulate(t, inst, inst.prior, 2000, 5).mean);
  }
  SUBCASE("preconditions") {
    const auto inst = four_uniform_binary();
    CHECK_THROWS_AS(simulate(greedy_tree(inst), inst, inst.prior, 0, 1), PreconditionError);
    CHECK_THROWS_AS(simulate(QueryTree::single_leaf(0), inst, inst.prior, 10, 1), PreconditionError);
  }
}

TEST_CASE("run_session follows the tree") {
  const auto inst = four_uniform_q1_q2();
  const auto t = greedy_tree(inst);
  for (HypothesisIndex h = 0; h < 4; ++h) {
    HypothesisOracle oracle(h);
    const auto transcript = run_session(inst, SessionStrategy::follow(t), oracle);
    CHECK(transcript.identified == h);
    CHECK(transcript.total_cost == path_cost(t, inst, h));
    const auto path = t.path_to(h);
    REQUIRE(transcript.steps.size() + 1 == path.size());
    for (std::size_t i = 0; i < transcript.steps.size(); ++i) {
      CHECK(transcript.steps[i].question == t.node(path[i]).question);
    }
  }
}

TEST_CASE("inconsistent oracle names the step and question") {
  const auto inst = four_uniform_binary();
  ScriptedOracle nobody({5});
  try {
    run_session(inst, SessionStrategy::online_greedy(), nobody);
    FAIL("expected InconsistentOracle");
  } catch (const InconsistentOracle& e) {
    CHECK(e.step() == 1);
    CHECK(e.question_id() == "a");
  }

  // Answer 2 to "wide" is legal on its own but h2 was ruled out at step 1.
  const auto late = make_instance({1.0 / 3, 1.0 / 3, 1.0 / 3},
                                  {make_question("wide", 10.0, {0, 1, 2}), make_question("cheap", 1.0, {0, 0, 1})});
  ScriptedOracle contradictory({0, 2});
  try {
    run_session(late, SessionStrategy::online_greedy(), contradictory);
    FAIL("expected InconsistentOracle");
  } catch (const InconsistentOracle& e) {
    CHECK(e.step() == 2);
    CHECK(e.question_id() == "wide");
  }
}

TEST_CASE("property: online greedy walks the greedy tree") {
  Rng rng(700);
  for (int trial = 0; trial < 60; ++trial) {
    GeneratorConfig cfg;
    cfg.seed = rng.next();
    cfg.n = rng.uniform_int(2, 10);
    cfg.m = rng.uniform_int(4, 12);
    cfg.k = rng.uniform_int(2, 4);
    cfg.cost_low = 0.1;
    cfg.cost_high = 10.0;
    const Instance inst = gen_random(cfg);
    const auto t = greedy_tree(inst);
    for (HypothesisIndex h = 0; h < cfg.n; ++h) {
      HypothesisOracle a(h);
      HypothesisOracle b(h);
      const auto online = run_session(inst, SessionStrategy::online_greedy(), a);
      const auto offline = run_session(inst, SessionStrategy::follow(t), b);
      CHECK(transcript_to_jsonl(online, inst) == transcript_to_jsonl(offline, inst));
      CHECK(online.identified == h);
      CHECK(offline.total_cost == path_cost(t, inst, h));
    }
  }
}

TEST_CASE("StreamOracle protocol") {
  const auto inst = two_hypotheses(5.0);
  std::istringstream in("maybe 7 1\n");
  std::ostringstream out;
  StreamOracle oracle(in, out);
  const auto transcript = run_session(inst, SessionStrategy::online_greedy(), oracle);
  CHECK(transcript.identified == 1);
  CHECK(transcript.total_cost == 5.0);

  const std::string text = out.str();
  CHECK(text.rfind("Q q 5.0 ", 0) == 0);
  CHECK(text.find("A 0 1\nA 1 1\n> ") != std::string::npos);
  CHECK(text.find("invalid answer 'maybe'") != std::string::npos);
  CHECK(text.find("invalid answer '7'") != std::string::npos);

  std::istringstream empty("");
  StreamOracle eof(empty, out);
  CHECK_THROWS_AS(run_session(inst, SessionStrategy::online_greedy(), eof), IoError);
}

TEST_CASE("transcript JSON lines") {
  const auto inst = four_uniform_binary();
  HypothesisOracle oracle(3);
  const auto transcript = run_session(inst, SessionStrategy::online_greedy(), oracle);
  const std::string jsonl = transcript_to_jsonl(transcript, inst);
  std::istringstream lines(jsonl);
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const auto doc = nlohmann::json::parse(line);
    ++count;
    CHECK(doc["step"] == count);
    CHECK(doc["cost"] == 1.0);
    CHECK(doc["cumulative_cost"] == static_cast<double>(count));
    CHECK(doc["answer"] == 1);
  }
  CHECK(count == 2);
}
