#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace residua {

// Caller-supplied value violates a documented precondition.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// No certificate exists for the requested (a1, n) at all.
struct Unrepresentable : std::domain_error {
  using std::domain_error::domain_error;
};

// Zero-free residues were requested where they provably cannot exist
// (|a1| = 1 with n <= 3).
struct ImpossibleNonzero : std::domain_error {
  using std::domain_error::domain_error;
};

// Factoring effort ran out before the computation could be completed.
// index records the sequence index that could not be resolved (0 when
// the failure is not tied to a particular index).
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(const std::string& what, std::uint64_t index_)
      : std::runtime_error(what), index(index_) {}
  std::uint64_t index;
};

// Consistency check inside the library failed; indicates a bug, never
// bad input.  Thrown e.g. when a certificate fails its own replay.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace residua
