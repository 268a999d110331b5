#pragma once

#include <stdexcept>
#include <string>

namespace centra {

// Error categories shared by the library and the CLI; the CLI maps them
// to process exit codes (parse/validation 2, resource cap 3, unsupported 4).

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace centra
