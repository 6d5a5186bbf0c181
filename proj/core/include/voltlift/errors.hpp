#pragma once

#include <stdexcept>
#include <string>

namespace voltlift {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (bad JSON, wrong field types). Carries context in the message.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally well-formed input that violates a semantic constraint.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnknownVertexError : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraphError : public Error {
 public:
  using Error::Error;
};

class EdgeInTreeError : public Error {
 public:
  using Error::Error;
};

class InvalidWalkError : public Error {
 public:
  using Error::Error;
};

class SpecMismatchError : public Error {
 public:
  using Error::Error;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

class InfiniteGroupError : public Error {
 public:
  using Error::Error;
};

class FiberMismatchError : public Error {
 public:
  using Error::Error;
};

class NotCondensedError : public Error {
 public:
  using Error::Error;
};

/// Permutation-group closure grew past the configured bound.
class GroupTooLargeError : public Error {
 public:
  using Error::Error;
};

/// The backtracking search exhausted its node budget. Distinct from "none
/// exist": callers must not interpret this as a mathematical verdict.
class SearchBudgetExceededError : public Error {
 public:
  using Error::Error;
};

/// A brute-force oracle was asked for more work than its size budget allows.
class SizeBudgetExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace voltlift
