#pragma once

#include <stdexcept>
#include <string>

namespace s2h {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling gave up after its attempt budget.
class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (JSONL, dump files, style files).
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace s2h
