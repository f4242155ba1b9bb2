#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <string>
#include <vector>

#include "costquery/tree.hpp"

namespace costquery {

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

// Draws targets i.i.d. from prior, descends t for each, and averages the
// incurred cost. Deterministic for a given seed.
MonteCarloEstimate simulate(const QueryTree& t, const Instance& inst, const Prior& prior, std::size_t trials,
                            std::uint64_t seed);

/// Where answers come from during a session.
class AnswerSource {
 public:
  virtual ~AnswerSource() = default;
  virtual Answer answer(const Instance& inst, QuestionIndex q, const VersionSpace& surviving) = 0;
};

/// Answers truthfully on behalf of a fixed target hypothesis.
class HypothesisOracle final : public AnswerSource {
 public:
  explicit HypothesisOracle(HypothesisIndex target) : target_(target) {}
  Answer answer(const Instance& inst, QuestionIndex q, const VersionSpace&) override {
    return inst.questions.at(q).answers.at(target_);
  }

 private:
  HypothesisIndex target_;
};

/// Replays a fixed answer sequence; throws PreconditionError when it runs out.
class ScriptedOracle final : public AnswerSource {
 public:
  explicit ScriptedOracle(std::vector<Answer> answers) : answers_(answers.begin(), answers.end()) {}
  Answer answer(const Instance& inst, QuestionIndex q, const VersionSpace& surviving) override;

 private:
  std::deque<Answer> answers_;
};

// Line protocol for a human (or script) on the other end of a stream pair.
// For each question it writes
//   Q <id> <cost> <prompt>
//   A <answer> <surviving hypotheses giving it>     (one line per option)
// and reads one whitespace-delimited token. Tokens that are not answers of
// the question re-prompt without changing state; end of input raises IoError.
class StreamOracle final : public AnswerSource {
 public:
  StreamOracle(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  Answer answer(const Instance& inst, QuestionIndex q, const VersionSpace& surviving) override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

struct SessionStep {
  QuestionIndex question;
  Answer answer;
  double cumulative_cost;
};

struct SessionTranscript {
  std::vector<SessionStep> steps;
  HypothesisIndex identified = 0;
  double total_cost = 0.0;
};

struct SessionStrategy {
  /// Follow this tree; nullptr means recompute the greedy choice at every step.
  const QueryTree* tree = nullptr;

  static SessionStrategy online_greedy() { return {}; }
  static SessionStrategy follow(const QueryTree& t) { return {&t}; }
};

// Asks questions until one hypothesis survives. Throws InconsistentOracle if
// an answer leaves no hypothesis standing.
SessionTranscript run_session(const Instance& inst, SessionStrategy strategy, AnswerSource& source);

/// One JSON object per step: {"step", "question", "answer", "cost", "cumulative_cost"}.
std::string transcript_to_jsonl(const SessionTranscript& transcript, const Instance& inst);

}  // namespace costquery
