#pragma once

#include <stdexcept>
#include <string>

namespace macblocks {

// Filesystem-level failures (cannot open/write); malformed content raises
// std::invalid_argument instead so callers can map the two differently.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown before starting work whose estimated cost exceeds the caller's cap.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace macblocks
