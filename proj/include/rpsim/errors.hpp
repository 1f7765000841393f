#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rpsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scene file rejected; `line` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(std::move(reason)) {}

  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

/// The render would emit no rays (empty source grid or zero samples).
class ZeroRays : public Error {
 public:
  ZeroRays() : Error("source emits zero rays") {}
};

class EmptySpot : public Error {
 public:
  EmptySpot() : Error("spot has no hits") {}
};

class DivisionUndefined : public Error {
 public:
  explicit DivisionUndefined(const std::string& what) : Error(what) {}
};

class IoFailure : public Error {
 public:
  explicit IoFailure(const std::string& what) : Error(what) {}
};

class EmptyScan : public Error {
 public:
  EmptyScan() : Error("scan has no points") {}
};

}  // namespace rpsim
