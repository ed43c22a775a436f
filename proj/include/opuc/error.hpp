#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace opuc {

/// A caller-supplied value violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The inputs were admissible but the computation broke down.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Levinson recursion met |alpha_k| >= 1: the moment table is not positive definite.
class IndefiniteMoments : public NumericalFailure {
 public:
  IndefiniteMoments(std::size_t index, const std::string& what)
      : NumericalFailure(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace opuc
