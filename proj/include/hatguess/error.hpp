#pragma once

#include <stdexcept>
#include <string>

namespace hatguess {

// Malformed input or a violated operation precondition. Maps to CLI exit code 3.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// graph6 / JSON decoding failure. `offset` is the byte offset of the fault (or npos).
class ParseError : public ContractError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : ContractError(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// A search hit its node or wall-time cap. Never conflated with a negative answer. Exit code 2.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructive procedure could not finish on this instance (e.g. the adversary
// recursion found an empty intersection). Carries a human-readable witness. Exit code 3.
class ConstructionFailure : public ContractError {
 public:
  using ContractError::ContractError;
};

// A postcondition that should always hold did not. This is a bug
// or an interpretation error, never a property of the input. Exit code 4.
class ClaimViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hatguess
