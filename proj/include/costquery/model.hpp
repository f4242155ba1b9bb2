#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace costquery {

using HypothesisIndex = std::uint32_t;
using QuestionIndex = std::uint32_t;
using Answer = std::uint32_t;

/// Comparison tolerance for probability and cost arithmetic.
inline constexpr double kTolerance = 1e-9;

/// Priors whose sum is off by less than this are renormalized on load.
inline constexpr double kRenormalizeTolerance = 1e-6;

struct Question {
  std::string id;
  double cost = 1.0;
  /// answers[h] is the response of hypothesis h.
  std::vector<Answer> answers;
};

/// A non-negative measure over hypothesis indices. Used for priors (sum 1),
/// conditional distributions (sum 1, zero off the version space) and
/// unnormalized measures alike.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(std::vector<double> mass) : mass_(std::move(mass)) {}
  Distribution(std::initializer_list<double> mass) : mass_(mass) {}

  static Distribution uniform(std::size_t n);

  std::size_t size() const noexcept { return mass_.size(); }
  double operator[](std::size_t h) const { return mass_[h]; }
  std::span<const double> values() const noexcept { return mass_; }

  double total() const;
  double min() const;

  bool operator==(const Distribution&) const = default;

 private:
  std::vector<double> mass_;
};

using Prior = Distribution;

/// Sorted, duplicate-free set of hypothesis indices.
class VersionSpace {
 public:
  VersionSpace() = default;
  /// Sorts the indices; throws PreconditionError on duplicates.
  explicit VersionSpace(std::vector<HypothesisIndex> members);
  VersionSpace(std::initializer_list<HypothesisIndex> members)
      : VersionSpace(std::vector<HypothesisIndex>(members)) {}

  static VersionSpace full(std::size_t n);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(HypothesisIndex h) const;
  std::span<const HypothesisIndex> members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  HypothesisIndex front() const { return members_.front(); }

  bool operator==(const VersionSpace&) const = default;
  auto operator<=>(const VersionSpace&) const = default;

 private:
  std::vector<HypothesisIndex> members_;
};

struct Instance {
  std::vector<std::string> hypotheses;
  Prior prior;
  std::vector<Question> questions;

  std::size_t num_hypotheses() const noexcept { return hypotheses.size(); }
  std::size_t num_questions() const noexcept { return questions.size(); }
  double min_cost() const;
  double max_cost() const;
  /// Index of the question with the given id; throws InvalidInstance if absent.
  QuestionIndex question_index(const std::string& id) const;
  /// Index of the hypothesis with the given label; throws InvalidInstance if absent.
  HypothesisIndex hypothesis_index(const std::string& label) const;
};

enum class ViolationKind {
  kTooFewHypotheses,
  kNoQuestions,
  kSizeMismatch,
  kNonFinite,
  kNonPositiveCost,
  kZeroMass,
  kPriorNotNormalized,
  kDuplicateId,
  kNotIdentifiable,
  // Tree-level violations.
  kUnknownReference,
  kIncompleteCover,
  kDuplicateLeaf,
  kInconsistentBranch,
  kReducible,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> errors;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return errors.empty(); }
  bool has(ViolationKind kind) const;
};

ValidationReport validate_instance(const Instance& inst);

/// Throws InvalidInstance carrying every violation message if the instance is invalid.
void require_valid(const Instance& inst);

/// pi(S). Throws PreconditionError for an empty version space.
double mass(const Distribution& dist, const VersionSpace& s);

/// pi_S: the measure restricted to S and renormalized; zero outside S.
Distribution restrict(const Distribution& dist, const VersionSpace& s);

/// Blocks S^j of S under q, keyed by the answers q realizes on S.
std::map<Answer, VersionSpace> partition(const VersionSpace& s, const Question& q);

/// Number of distinct answers q gives on s.
std::size_t count_blocks(const VersionSpace& s, const Question& q);

}  // namespace costquery

template <>
struct std::hash<costquery::VersionSpace> {
  std::size_t operator()(const costquery::VersionSpace& s) const noexcept;
};
