#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tts {

enum class ErrorKind {
  kParse,
  kUnknownIdentifier,
  kContextMismatch,
  kBoundExceeded,
  kValidation,
  kInvariant,
  kPrecondition,
  kNoVariance,
  kUnknownPoint,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::kParse, "parse error at " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifierError : public Error {
 public:
  explicit UnknownIdentifierError(const std::string& name)
      : Error(ErrorKind::kUnknownIdentifier, "unknown identifier '" + name + "'") {}
};

class ContextMismatchError : public Error {
 public:
  ContextMismatchError() : Error(ErrorKind::kContextMismatch, "type terms belong to different contexts") {}
};

class BoundExceededError : public Error {
 public:
  explicit BoundExceededError(const std::string& what) : Error(ErrorKind::kBoundExceeded, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::kValidation, what) {}
};

// A theorem-backed runtime assertion failed. Never caught inside the library.
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(ErrorKind::kInvariant, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::kPrecondition, what) {}
};

class NoVarianceError : public Error {
 public:
  explicit NoVarianceError(const std::string& what) : Error(ErrorKind::kNoVariance, what) {}
};

class UnknownPointError : public Error {
 public:
  explicit UnknownPointError(const std::string& id)
      : Error(ErrorKind::kUnknownPoint, "unknown point '" + id + "'") {}
};

}  // namespace tts
