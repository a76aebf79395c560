#pragma once

#include <stdexcept>
#include <string>

namespace ipdw {

// Bad user input: malformed files, invalid arguments. CLI exit status 1.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public InputError {
public:
  using InputError::InputError;
};

class FormatError : public InputError {
public:
  using InputError::InputError;
};

// A computed result violated one of its own invariants. CLI exit status 2.
class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ipdw
