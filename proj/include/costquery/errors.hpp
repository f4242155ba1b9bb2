#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace costquery {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The instance violates a hard invariant (identifiability, positive mass, ...).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition failed: bad epsilon, rounding with n <= 2,
/// empty version space, instance above the oracle cap.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An answer source gave an answer that no surviving hypothesis produces.
class InconsistentOracle : public Error {
 public:
  InconsistentOracle(std::size_t step, std::string question_id, unsigned answer)
      : Error("inconsistent answer " + std::to_string(answer) + " to question '" + question_id +
              "' at step " + std::to_string(step) + ": no surviving hypothesis gives it"),
        step_(step),
        question_id_(std::move(question_id)) {}

  std::size_t step() const noexcept { return step_; }
  const std::string& question_id() const noexcept { return question_id_; }

 private:
  std::size_t step_;
  std::string question_id_;
};

}  // namespace costquery
