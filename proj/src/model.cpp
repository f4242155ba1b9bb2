#include "costquery/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "costquery/errors.hpp"

namespace costquery {

Distribution Distribution::uniform(std::size_t n) {
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double Distribution::total() const { return std::accumulate(mass_.begin(), mass_.end(), 0.0); }

double Distribution::min() const {
  if (mass_.empty()) return 0.0;
  return *std::min_element(mass_.begin(), mass_.end());
}

VersionSpace::VersionSpace(std::vector<HypothesisIndex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw PreconditionError("version space has duplicate members");
  }
}

VersionSpace VersionSpace::full(std::size_t n) {
  std::vector<HypothesisIndex> all(n);
  std::iota(all.begin(), all.end(), HypothesisIndex{0});
  return VersionSpace(std::move(all));
}

bool VersionSpace::contains(HypothesisIndex h) const {
  return std::binary_search(members_.begin(), members_.end(), h);
}

double Instance::min_cost() const {
  double c = questions.at(0).cost;
  for (const auto& q : questions) c = std::min(c, q.cost);
  return c;
}

double Instance::max_cost() const {
  double c = questions.at(0).cost;
  for (const auto& q : questions) c = std::max(c, q.cost);
  return c;
}

QuestionIndex Instance::question_index(const std::string& id) const {
  for (std::size_t i = 0; i < questions.size(); ++i) {
    if (questions[i].id == id) return static_cast<QuestionIndex>(i);
  }
  throw InvalidInstance("unknown question id '" + id + "'");
}

HypothesisIndex Instance::hypothesis_index(const std::string& label) const {
  for (std::size_t h = 0; h < hypotheses.size(); ++h) {
    if (hypotheses[h] == label) return static_cast<HypothesisIndex>(h);
  }
  throw InvalidInstance("unknown hypothesis '" + label + "'");
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(errors.begin(), errors.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

namespace {

// Refines the full hypothesis set by every question; any block left with more
// than one member is a set of mutually indistinguishable hypotheses.
std::vector<VersionSpace> indistinguishable_groups(const Instance& inst) {
  std::vector<VersionSpace> blocks{VersionSpace::full(inst.num_hypotheses())};
  for (const auto& q : inst.questions) {
    std::vector<VersionSpace> next;
    for (const auto& b : blocks) {
      if (b.size() == 1) {
        next.push_back(b);
        continue;
      }
      for (auto& [answer, sub] : partition(b, q)) next.push_back(std::move(sub));
    }
    blocks = std::move(next);
  }
  std::erase_if(blocks, [](const VersionSpace& b) { return b.size() < 2; });
  return blocks;
}

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto error = [&](ViolationKind kind, std::string message) {
    report.errors.push_back({kind, std::move(message)});
  };

  const std::size_t n = inst.num_hypotheses();
  if (n < 2) error(ViolationKind::kTooFewHypotheses, "need at least 2 hypotheses, got " + std::to_string(n));
  if (inst.questions.empty()) error(ViolationKind::kNoQuestions, "no questions");

  std::set<std::string> labels;
  for (const auto& label : inst.hypotheses) {
    if (!labels.insert(label).second) error(ViolationKind::kDuplicateId, "duplicate hypothesis label '" + label + "'");
  }

  bool prior_usable = inst.prior.size() == n;
  if (!prior_usable) {
    error(ViolationKind::kSizeMismatch, "prior has " + std::to_string(inst.prior.size()) +
                                            " entries for " + std::to_string(n) + " hypotheses");
  } else {
    for (std::size_t h = 0; h < n; ++h) {
      const double p = inst.prior[h];
      if (!std::isfinite(p)) {
        error(ViolationKind::kNonFinite, "prior entry " + std::to_string(h) + " is not finite");
        prior_usable = false;
      } else if (p <= 0.0) {
        error(ViolationKind::kZeroMass, "zero prior mass on hypothesis '" + inst.hypotheses[h] + "'");
      }
    }
    if (prior_usable) {
      const double drift = std::abs(inst.prior.total() - 1.0);
      if (drift >= kRenormalizeTolerance) {
        std::ostringstream msg;
        msg << "prior sums to " << inst.prior.total() << ", not 1";
        error(ViolationKind::kPriorNotNormalized, msg.str());
      } else if (drift > kTolerance) {
        std::ostringstream msg;
        msg << "prior sum off by " << drift << "; renormalize before use";
        report.warnings.push_back(msg.str());
      }
    }
  }

  std::set<std::string> ids;
  bool answers_usable = true;
  for (const auto& q : inst.questions) {
    if (!ids.insert(q.id).second) error(ViolationKind::kDuplicateId, "duplicate question id '" + q.id + "'");
    if (!std::isfinite(q.cost)) {
      error(ViolationKind::kNonFinite, "question '" + q.id + "' has non-finite cost");
    } else if (q.cost <= 0.0) {
      error(ViolationKind::kNonPositiveCost, "question '" + q.id + "' has non-positive cost");
    }
    if (q.answers.size() != n) {
      error(ViolationKind::kSizeMismatch, "question '" + q.id + "' has " + std::to_string(q.answers.size()) +
                                              " answers for " + std::to_string(n) + " hypotheses");
      answers_usable = false;
    }
  }

  if (n >= 2 && answers_usable && !inst.questions.empty()) {
    for (const auto& group : indistinguishable_groups(inst)) {
      std::string names;
      for (auto h : group) names += (names.empty() ? "" : ", ") + inst.hypotheses[h];
      error(ViolationKind::kNotIdentifiable, "not identifiable: {" + names + "} share every answer");
    }
  } else if (n >= 2 && inst.questions.empty()) {
    error(ViolationKind::kNotIdentifiable, "not identifiable: no questions to separate hypotheses");
  }
  return report;
}

void require_valid(const Instance& inst) {
  const auto report = validate_instance(inst);
  if (report.ok()) return;
  std::string message = "invalid instance:";
  for (const auto& v : report.errors) message += "\n  " + v.message;
  throw InvalidInstance(message);
}

double mass(const Distribution& dist, const VersionSpace& s) {
  if (s.empty()) throw PreconditionError("mass of an empty version space");
  double total = 0.0;
  for (auto h : s) total += dist[h];
  return total;
}

Distribution restrict(const Distribution& dist, const VersionSpace& s) {
  const double total = mass(dist, s);
  if (!(total > 0.0)) throw PreconditionError("cannot restrict to a version space with zero mass");
  std::vector<double> out(dist.size(), 0.0);
  for (auto h : s) out[h] = dist[h] / total;
  return Distribution(std::move(out));
}

std::map<Answer, VersionSpace> partition(const VersionSpace& s, const Question& q) {
  std::map<Answer, std::vector<HypothesisIndex>> blocks;
  for (auto h : s) blocks[q.answers.at(h)].push_back(h);
  std::map<Answer, VersionSpace> out;
  // Members arrive in increasing order, so each block is already sorted.
  for (auto& [answer, members] : blocks) out.emplace(answer, VersionSpace(std::move(members)));
  return out;
}

std::size_t count_blocks(const VersionSpace& s, const Question& q) {
  std::set<Answer> seen;
  for (auto h : s) seen.insert(q.answers.at(h));
  return seen.size();
}

}  // namespace costquery

std::size_t std::hash<costquery::VersionSpace>::operator()(const costquery::VersionSpace& s) const noexcept {
  std::size_t seed = s.size();
  for (auto h : s) seed ^= std::hash<std::uint32_t>{}(h) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}
