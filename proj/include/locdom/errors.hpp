#pragma once

#include <stdexcept>
#include <string>

namespace locdom {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A vertex index outside 0..n-1.
struct InvalidVertexError : Error {
  using Error::Error;
};

// Grid/torus dimensions that cannot be constructed.
struct DimensionError : Error {
  using Error::Error;
};

// Bad input data: malformed JSON, edge list, ASCII pattern, flags.
struct FormatError : Error {
  using Error::Error;
};

// An operation would exceed its configured work budget.
struct BudgetError : Error {
  using Error::Error;
};

// Share of a detector is undefined because some covered vertex has
// domination count zero (the set is not even dominating).
struct UndefinedShareError : Error {
  using Error::Error;
};

// A torus lift too small to wrap faithfully.
struct NonFaithfulError : Error {
  using Error::Error;
};

}  // namespace locdom
