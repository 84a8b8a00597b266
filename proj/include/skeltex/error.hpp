#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skeltex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed skeleton file. Carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input carrying unusable values (NaN, Inf). Frame and joint are 0-based.
class DataError : public Error {
 public:
  DataError(std::size_t frame, std::size_t joint, const std::string& what)
      : Error("frame " + std::to_string(frame) + ", joint " + std::to_string(joint) + ": " + what),
        frame_(frame),
        joint_(joint) {}

  std::size_t frame() const noexcept { return frame_; }
  std::size_t joint() const noexcept { return joint_; }

 private:
  std::size_t frame_;
  std::size_t joint_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a precondition (shape mismatch, empty input, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class EmptySequenceError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace skeltex
