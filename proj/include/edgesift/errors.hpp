#pragma once

#include <stdexcept>

namespace edgesift {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: malformed files, values outside declared domains, impossible
// arguments. The CLI maps these to exit code 1.
struct ValidationError : Error {
  using Error::Error;
};

// Problems in a schema document; messages carry a path into the document.
struct SchemaError : ValidationError {
  using ValidationError::ValidationError;
};

// Problems in edge / node / label files; messages carry a line number.
struct DataError : ValidationError {
  using ValidationError::ValidationError;
};

// A caller broke an API precondition (k = 0, mismatched dimensions, ...).
struct UsageError : ValidationError {
  using ValidationError::ValidationError;
};

// A library invariant failed. The CLI maps these to exit code 2.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace edgesift
