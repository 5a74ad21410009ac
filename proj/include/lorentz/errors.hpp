#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lorentz {

// Root of every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UndeclaredName : public Error {
 public:
  explicit UndeclaredName(std::string name)
      : Error("undeclared name '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class EvalError : public Error {
 public:
  EvalError(const std::string& msg, std::string subtree)
      : Error(msg + " in '" + subtree + "'"), subtree_(std::move(subtree)) {}
  const std::string& subtree() const { return subtree_; }

 private:
  std::string subtree_;
};

// Malformed DSL document; line is 1-based, 0 when not tied to a line.
class SpecError : public Error {
 public:
  SpecError(const std::string& msg, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

class DegeneratePlane : public Error {
 public:
  using Error::Error;
};

class DependentVectors : public Error {
 public:
  using Error::Error;
};

class CausalCharacterError : public Error {
 public:
  using Error::Error;
};

class SubspaceNotInvariant : public Error {
 public:
  using Error::Error;
};

class KernelNotFound : public Error {
 public:
  using Error::Error;
};

class NotCritical : public Error {
 public:
  using Error::Error;
};

}  // namespace lorentz
