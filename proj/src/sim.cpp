#include "costquery/sim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include "costquery/builder.hpp"
#include "costquery/errors.hpp"
#include "costquery/format.hpp"
#include "costquery/random.hpp"
#include "json.hpp"

namespace costquery {

MonteCarloEstimate simulate(const QueryTree& t, const Instance& inst, const Prior& prior, std::size_t trials,
                            std::uint64_t seed) {
  if (trials < 1) throw PreconditionError("simulate needs at least one trial");
  if (prior.size() != inst.num_hypotheses()) throw PreconditionError("prior does not match the hypothesis count");
  // Hypotheses the prior never draws need not appear in the tree.
  std::vector<HypothesisIndex> support;
  for (std::size_t h = 0; h < prior.size(); ++h) {
    if (prior[h] > 0.0) support.push_back(static_cast<HypothesisIndex>(h));
  }
  if (const auto report = validate_tree(t, inst, VersionSpace(std::move(support))); !report.ok()) {
    throw PreconditionError("cannot simulate an invalid tree: " + report.errors.front().message);
  }

  std::vector<double> cumulative;
  double running = 0.0;
  for (double p : prior.values()) cumulative.push_back(running += p);

  Rng rng(seed);
  MonteCarloEstimate est;
  double m2 = 0.0;
  for (std::size_t trial = 1; trial <= trials; ++trial) {
    const double u = rng.uniform01() * running;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto target = static_cast<HypothesisIndex>(std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1));

    double cost = 0.0;
    QueryTree::NodeId node = t.root();
    while (!t.node(node).is_leaf()) {
      const auto& q = inst.questions[t.node(node).question];
      cost += q.cost;
      node = *t.child(node, q.answers[target]);
    }

    // Welford update.
    const double delta = cost - est.mean;
    est.mean += delta / static_cast<double>(trial);
    m2 += delta * (cost - est.mean);
  }
  est.trials = trials;
  if (trials > 1) {
    const double variance = m2 / static_cast<double>(trials - 1);
    est.standard_error = std::sqrt(variance / static_cast<double>(trials));
  }
  return est;
}

Answer ScriptedOracle::answer(const Instance& inst, QuestionIndex q, const VersionSpace&) {
  if (answers_.empty()) throw PreconditionError("scripted oracle ran out of answers at '" + inst.questions.at(q).id + "'");
  const Answer a = answers_.front();
  answers_.pop_front();
  return a;
}

Answer StreamOracle::answer(const Instance& inst, QuestionIndex qi, const VersionSpace& surviving) {
  const auto& q = inst.questions.at(qi);
  const std::set<Answer> alphabet(q.answers.begin(), q.answers.end());
  while (true) {
    out_ << "Q " << q.id << ' ' << format_number(q.cost) << " which answer does the target give to " << q.id
         << "?\n";
    for (const auto& [answer, block] : partition(surviving, q)) out_ << "A " << answer << ' ' << block.size() << '\n';
    out_ << "> " << std::flush;

    std::string token;
    if (!(in_ >> token)) throw IoError("input ended before the target was identified");
    try {
      std::size_t used = 0;
      const unsigned long value = std::stoul(token, &used);
      if (used == token.size() && token.front() != '-' && alphabet.contains(static_cast<Answer>(value))) {
        return static_cast<Answer>(value);
      }
    } catch (const std::exception&) {
    }
    out_ << "invalid answer '" << token << "'\n";
  }
}

namespace {

VersionSpace filter(const VersionSpace& s, const Question& q, Answer a) {
  std::vector<HypothesisIndex> kept;
  for (auto h : s) {
    if (q.answers[h] == a) kept.push_back(h);
  }
  return VersionSpace(std::move(kept));
}

}  // namespace

SessionTranscript run_session(const Instance& inst, SessionStrategy strategy, AnswerSource& source) {
  require_valid(inst);
  SessionTranscript transcript;
  VersionSpace surviving = VersionSpace::full(inst.num_hypotheses());
  std::optional<QueryTree::NodeId> node;
  if (strategy.tree) node = strategy.tree->root();

  while (true) {
    QuestionIndex qi;
    if (strategy.tree) {
      const auto& n = strategy.tree->node(*node);
      if (n.is_leaf()) break;
      qi = n.question;
    } else {
      if (surviving.size() == 1) break;
      qi = greedy_choice(inst, surviving, inst.prior);
    }

    const auto& q = inst.questions.at(qi);
    const Answer a = source.answer(inst, qi, surviving);
    VersionSpace next = filter(surviving, q, a);
    std::optional<QueryTree::NodeId> next_node;
    if (strategy.tree) next_node = strategy.tree->child(*node, a);
    if (next.empty() || (strategy.tree && !next_node)) {
      throw InconsistentOracle(transcript.steps.size() + 1, q.id, a);
    }
    transcript.total_cost += q.cost;
    transcript.steps.push_back({qi, a, transcript.total_cost});
    surviving = std::move(next);
    node = next_node;
  }

  if (strategy.tree) {
    transcript.identified = *strategy.tree->node(*node).hypothesis;
    if (!surviving.contains(transcript.identified)) {
      throw Error("tree leaf '" + inst.hypotheses[transcript.identified] + "' contradicts the recorded answers");
    }
  } else {
    transcript.identified = surviving.front();
  }
  return transcript;
}

std::string transcript_to_jsonl(const SessionTranscript& transcript, const Instance& inst) {
  std::string out;
  for (std::size_t i = 0; i < transcript.steps.size(); ++i) {
    const auto& step = transcript.steps[i];
    const auto& q = inst.questions.at(step.question);
    nlohmann::json line = {{"step", i + 1},
                           {"question", q.id},
                           {"answer", step.answer},
                           {"cost", q.cost},
                           {"cumulative_cost", step.cumulative_cost}};
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace costquery
